#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("kout_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = std::string(KOUT_BINARY) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream buffer;
  buffer << in.rdbuf();
  r.out = buffer.str();
  return r;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, SolveTriangle) {
  const auto path = write_file("triangle.txt", "2 3\n0 1\n1 2\n0 2\n");
  const auto r = run("solve " + path + " --shape");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("nu_star 3/2"), std::string::npos);
  EXPECT_NE(r.out.find("tau_star 3/2"), std::string::npos);
  EXPECT_NE(r.out.find("perfect=true"), std::string::npos);
  EXPECT_NE(r.out.find("unique_uniform=true"), std::string::npos);
}

TEST(Cli, SolveFloat) {
  const auto path = write_file("path.txt", "2 3\n0 1\n1 2\n");
  const auto r = run("solve " + path + " --mode float");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("perfect=false"), std::string::npos);
}

TEST(Cli, ExpandCheckWitness) {
  const auto path = write_file("edge.txt", "3 3\n0 1 2\n");
  const auto r = run("expand-check " + path + " --strict");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict=false"), std::string::npos);
  EXPECT_NE(r.out.find("witness_x={0}"), std::string::npos);
  EXPECT_NE(r.out.find("witness_y={1}"), std::string::npos);
}

TEST(Cli, AlphaBudgetFailure) {
  const auto path = write_file("fano.txt", "3 7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n");
  EXPECT_EQ(run("expand-check " + path + " --check alpha").code, 0);
  EXPECT_EQ(run("expand-check " + path + " --check alpha --budget 1").code, 4);
}

TEST(Cli, SampleIsReproducible) {
  const auto a = run("sample --n 12 --r 3 --k 2 --seed 5");
  const auto b = run("sample --n 12 --r 3 --k 2 --seed 5");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("3 12"), std::string::npos);
}

TEST(Cli, ProcessDiagnostics) {
  const auto r = run("process --n 30 --r 3 --seed 1 --diagnostics");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# xi 1 "), std::string::npos);
  EXPECT_NE(r.out.find("lambda_in_window="), std::string::npos);
}

TEST(Cli, ExperimentCsv) {
  const auto r = run("experiment kout-pfm --n 9 --r 3 --k-range 1..2 --trials 3 --seed 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "trial,seed,n,r,k,nu_num,nu_den,perfect,unique_cover,block_constant,T,elapsed_ms");
  EXPECT_NE(r.out.find("summary,"), std::string::npos);
  const auto imp = run("experiment implication --trials 30 --seed 2 --dump-dir " + (scratch() / "dumps").string());
  EXPECT_EQ(imp.code, 0);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("solve " + (scratch() / "missing.txt").string()).code, 2);
  EXPECT_EQ(run("solve " + write_file("bad.txt", "2 3\n0 0\n")).code, 2);
  EXPECT_EQ(run("sample --n 12 --host triangle").code, 2);
  EXPECT_EQ(run("experiment kout-pfm --n 5 --r 2 --k 1 --k-range 1..2").code, 2);
  EXPECT_EQ(run("experiment kout-pfm --n 5 --r 2 --k-range 1-2").code, 2);
  EXPECT_EQ(run("process --r 3").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
}
