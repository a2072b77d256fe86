#include "kout/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>

#include "kout/errors.hpp"
#include "kout/rng.hpp"
#include "parallel.hpp"

namespace kout {

namespace {

constexpr std::uint64_t kCountLimit = std::uint64_t{1} << 63;

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent) {
  unsigned __int128 value = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    value *= base;
    if (value >= kCountLimit) throw InputError("count exceeds 2^63");
  }
  return static_cast<std::uint64_t>(value);
}

double binomial_double(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double value = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return value;
}

std::string decimal(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

/// All edges of the host containing v, in lexicographic order.
std::vector<Edge> host_incident_edges(const HostModel& host, Vertex v) {
  std::vector<Edge> out;
  const std::size_t r = host.r;
  if (host.kind == HostKind::kComplete) {
    std::vector<Vertex> others;
    for (std::size_t u = 0; u < host.n; ++u) {
      if (u != v) others.push_back(static_cast<Vertex>(u));
    }
    std::vector<std::size_t> pick(r - 1);
    for (std::size_t i = 0; i + 1 < r; ++i) pick[i] = i;
    if (others.size() < r - 1) return out;
    while (true) {
      Edge e{v};
      for (std::size_t i : pick) e.push_back(others[i]);
      std::sort(e.begin(), e.end());
      out.push_back(std::move(e));
      std::size_t i = r - 1;
      while (i > 0 && pick[i - 1] == others.size() - (r - 1) + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < r - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
  } else {
    const std::size_t b = host.n;
    const std::size_t own = v / b;
    std::vector<std::size_t> digit(r, 0);
    while (true) {
      Edge e(r);
      for (std::size_t j = 0; j < r; ++j) {
        e[j] = static_cast<Vertex>(j == own ? v : j * b + digit[j]);
      }
      out.push_back(std::move(e));
      std::size_t j = r;
      bool advanced = false;
      while (j > 0 && !advanced) {
        --j;
        if (j == own) continue;
        if (++digit[j] < b) {
          advanced = true;
        } else {
          digit[j] = 0;
        }
      }
      if (!advanced) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Edge draw_incident_edge(const HostModel& host, Vertex v, Engine& engine) {
  const std::size_t r = host.r;
  Edge e;
  e.reserve(r);
  e.push_back(v);
  if (host.kind == HostKind::kComplete) {
    std::uniform_int_distribution<std::size_t> pick(0, host.n - 2);
    while (e.size() < r) {
      auto u = static_cast<Vertex>(pick(engine));
      if (u >= v) ++u;
      if (std::find(e.begin(), e.end(), u) == e.end()) e.push_back(u);
    }
  } else {
    const std::size_t b = host.n;
    std::uniform_int_distribution<std::size_t> pick(0, b - 1);
    for (std::size_t j = 0; j < r; ++j) {
      if (j == v / b) continue;
      e.push_back(static_cast<Vertex>(j * b + pick(engine)));
    }
  }
  std::sort(e.begin(), e.end());
  return e;
}

/// Edge with lexicographic rank `rank` among the r-subsets of [n].
Edge unrank_combination(std::size_t n, std::size_t r, std::uint64_t rank) {
  Edge e;
  e.reserve(r);
  std::size_t x = 0;
  for (std::size_t i = 0; i < r; ++i) {
    while (true) {
      const std::uint64_t block = binomial(n - x - 1, r - i - 1);
      if (rank < block) {
        e.push_back(static_cast<Vertex>(x++));
        break;
      }
      rank -= block;
      ++x;
    }
  }
  return e;
}

}  // namespace

const char* to_string(HostKind kind) {
  return kind == HostKind::kComplete ? "complete" : "partite";
}

HostKind parse_host_kind(std::string_view text) {
  if (text == "complete") return HostKind::kComplete;
  if (text == "partite") return HostKind::kPartite;
  throw InputError("unknown host kind: " + std::string(text));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 value = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value >= kCountLimit) throw InputError("binomial coefficient exceeds 2^63");
  }
  return static_cast<std::uint64_t>(value);
}

std::size_t HostModel::num_vertices() const { return kind == HostKind::kComplete ? n : r * n; }

std::uint64_t HostModel::incident_edge_count() const {
  if (kind == HostKind::kComplete) return n == 0 ? 0 : binomial(n - 1, r - 1);
  return checked_power(n, r - 1);
}

void HostModel::validate() const {
  if (r == 0) throw InputError("r must be at least 1");
  if (n == 0) throw InputError("n must be at least 1");
  if (kind == HostKind::kComplete && n < r) throw InputError("complete host needs n >= r");
}

std::vector<Edge> sample_vertex_choice(const HostModel& host, std::size_t k, Vertex v,
                                       std::uint64_t seed) {
  const std::uint64_t available = host.incident_edge_count();
  if (k > available) throw InputError("k exceeds the number of incident host edges");
  auto engine = make_engine(seed, rng_stream::kKOutVertex, v);
  std::vector<Edge> chosen;
  chosen.reserve(k);
  if (available <= 4 * static_cast<std::uint64_t>(k)) {
    auto pool = host_incident_edges(host, v);
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(engine)]);
      chosen.push_back(pool[i]);
    }
    return chosen;
  }
  while (chosen.size() < k) {
    Edge e = draw_incident_edge(host, v, engine);
    if (std::find(chosen.begin(), chosen.end(), e) == chosen.end()) chosen.push_back(std::move(e));
  }
  return chosen;
}

KOutSample sample_kout(const HostModel& host, std::size_t k, std::uint64_t seed,
                       Execution execution) {
  host.validate();
  if (k > host.incident_edge_count()) {
    throw InputError("k exceeds the number of incident host edges");
  }
  KOutSample sample;
  sample.host = host;
  sample.k = k;
  sample.seed = seed;
  const std::size_t n = host.num_vertices();
  sample.choices.resize(n);
  detail::parallel_for(n, execution, [&](std::size_t v) {
    sample.choices[v] = sample_vertex_choice(host, k, static_cast<Vertex>(v), seed);
  });
  std::vector<Edge> edges;
  edges.reserve(n * k);
  for (const auto& choice : sample.choices) edges.insert(edges.end(), choice.begin(), choice.end());
  sample.hypergraph = host.kind == HostKind::kComplete
                          ? Hypergraph(n, host.r, std::move(edges))
                          : Hypergraph::partite(host.r, host.n, std::move(edges));
  return sample;
}

UniformityStats per_vertex_uniformity_check(const HostModel& host, std::size_t k, Vertex v,
                                            std::size_t trials, std::uint64_t seed) {
  host.validate();
  if (v >= host.num_vertices()) throw InputError("vertex out of range");
  const auto pool = host_incident_edges(host, v);
  if (k > pool.size()) throw InputError("k exceeds the number of incident host edges");
  if (binomial(pool.size(), k) > 1'000'000) throw InputError("outcome space too large");

  std::map<std::vector<Edge>, std::size_t> index;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::vector<Edge> subset;
    for (std::size_t i : pick) subset.push_back(pool[i]);
    index.emplace(std::move(subset), index.size());
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  UniformityStats stats;
  stats.outcomes = index.size();
  stats.trials = trials;
  stats.counts.assign(stats.outcomes, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    auto choice = sample_vertex_choice(host, k, v, derive_seed(seed, rng_stream::kUniformity, t));
    std::sort(choice.begin(), choice.end());
    ++stats.counts.at(index.at(choice));
  }
  const double p = 1.0 / static_cast<double>(stats.outcomes);
  stats.expected = static_cast<double>(trials) * p;
  stats.degrees_of_freedom = stats.outcomes - 1;
  const double sd = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
  for (std::size_t count : stats.counts) {
    const double diff = static_cast<double>(count) - stats.expected;
    if (stats.expected > 0) stats.chi_square += diff * diff / stats.expected;
    if (sd > 0) stats.max_abs_z = std::max(stats.max_abs_z, std::abs(diff) / sd);
  }
  return stats;
}

std::uint64_t complete_host_preset_k(std::size_t r) { return checked_power(2 * r * r, r); }

std::uint64_t partite_host_preset_k(std::size_t r) {
  // eps^-1 = 2 r lambda = 8 r^4
  return 2 * r * checked_power(8 * checked_power(r, 4), r);
}

Hypergraph ProcessTrace::prefix(std::size_t t) const {
  if (t > order.size()) throw InputError("prefix beyond the realized process");
  return Hypergraph(n, r, std::vector<Edge>(order.begin(), order.begin() + t));
}

ProcessTrace run_process(std::size_t n, std::size_t r, std::uint64_t seed, StopRule stop) {
  if (r == 0 || n < r) throw InputError("process needs n >= r >= 1");
  const std::uint64_t total = binomial(n, r);
  ProcessTrace trace;
  trace.n = n;
  trace.r = r;
  trace.seed = seed;

  auto order_engine = make_engine(seed, rng_stream::kProcessOrder);
  auto mark_engine = make_engine(seed, rng_stream::kProcessMarks);
  std::exponential_distribution<double> spacing(1.0);
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto slot = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };

  std::vector<std::size_t> degree(n, 0);
  std::size_t uncovered = n;
  double exponential_sum = 0.0;
  for (std::uint64_t t = 0; t < total; ++t) {
    if (stop.kind == StopRule::Kind::kAtT && trace.T) break;
    if (stop.kind == StopRule::Kind::kAtStep && t >= stop.step) break;
    exponential_sum += spacing(mark_engine) / static_cast<double>(total - t);
    const double mark = -std::expm1(-exponential_sum);
    if (stop.kind == StopRule::Kind::kAtMark && trace.T && mark > stop.mark) {
      trace.horizon = stop.mark;
      return trace;
    }
    std::uniform_int_distribution<std::uint64_t> pick(t, total - 1);
    const std::uint64_t j = pick(order_engine);
    const std::uint64_t rank = slot(j);
    swapped[j] = slot(t);
    Edge e = unrank_combination(n, r, rank);
    for (Vertex v : e) {
      if (degree[v]++ == 0) --uncovered;
    }
    trace.order.push_back(std::move(e));
    trace.marks.push_back(mark);
    if (!trace.T && uncovered == 0) trace.T = trace.order.size();
  }
  trace.horizon = trace.order.size() == total ? 1.0 : (trace.marks.empty() ? 0.0 : trace.marks.back());
  return trace;
}

double default_slack(std::size_t n) {
  return std::log(std::log(static_cast<double>(n)));
}

double diagnostic_mark_bound(std::size_t n, std::size_t r, double g) {
  const double beta = (std::log(static_cast<double>(n)) + g) / binomial_double(n - 1, r - 1);
  return std::clamp(beta, 0.0, 1.0);
}

ThresholdDiagnostics threshold_diagnostics(const ProcessTrace& trace, double epsilon,
                                           std::optional<double> g) {
  if (!trace.T) throw InputError("trace did not reach the stopping time");
  if (trace.marks.size() != trace.order.size()) throw InputError("trace lacks marks");
  if (trace.n < 2) throw InputError("diagnostics need n >= 2");
  ThresholdDiagnostics d;
  const std::size_t n = trace.n;
  const double log_n = std::log(static_cast<double>(n));
  const double degree_pool = binomial_double(n - 1, trace.r - 1);
  d.epsilon = epsilon;
  d.g = g.value_or(default_slack(n));
  d.c_threshold = epsilon * log_n;
  d.sigma = (log_n - d.g) / degree_pool;
  d.beta = (log_n + d.g) / degree_pool;
  d.Lambda = trace.marks[*trace.T - 1];
  d.lambda_in_window = d.sigma <= d.Lambda && d.Lambda <= d.beta;

  auto edges_up_to = [&](double x) {
    if (x > 0.0 && trace.horizon < std::min(x, 1.0)) {
      throw InputError("trace horizon " + decimal(trace.horizon) + " is below mark " + decimal(x));
    }
    return static_cast<std::size_t>(std::upper_bound(trace.marks.begin(), trace.marks.end(), x) -
                                    trace.marks.begin());
  };

  std::vector<std::size_t> degree(n, 0);
  const std::size_t sigma_edges = d.sigma <= 0.0 ? 0 : edges_up_to(d.sigma);
  for (std::size_t t = 0; t < sigma_edges; ++t) {
    for (Vertex v : trace.order[t]) ++degree[v];
  }
  std::vector<Vertex> w;
  std::vector<char> in_w(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<double>(degree[v]) <= d.c_threshold) {
      w.push_back(static_cast<Vertex>(v));
      in_w[v] = 1;
    }
  }
  d.W_sigma = VertexSet(w);

  std::vector<char> in_n = in_w;
  if (d.beta >= 1.0) {
    if (!w.empty() && trace.r >= 2) in_n.assign(n, 1);
  } else {
    const std::size_t beta_edges = edges_up_to(d.beta);
    for (std::size_t t = 0; t < beta_edges; ++t) {
      const Edge& e = trace.order[t];
      if (std::any_of(e.begin(), e.end(), [&](Vertex v) { return in_w[v] != 0; })) {
        for (Vertex v : e) in_n[v] = 1;
      }
    }
  }
  std::vector<Vertex> members;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_n[v]) members.push_back(static_cast<Vertex>(v));
  }
  d.N = VertexSet(std::move(members));
  return d;
}

void write_kout_sample(std::ostream& out, const KOutSample& sample) {
  out << "# host=" << to_string(sample.host.kind) << " n=" << sample.host.n
      << " r=" << sample.host.r << " k=" << sample.k << " seed=" << sample.seed << '\n';
  write_hypergraph(out, sample.hypergraph);
}

void write_process_trace(std::ostream& out, const ProcessTrace& trace) {
  out << "# seed=" << trace.seed << " T=";
  if (trace.T) out << *trace.T;
  out << " horizon=" << decimal(trace.horizon) << '\n';
  for (std::size_t t = 0; t < trace.marks.size(); ++t) {
    out << "# xi " << t + 1 << ' ' << decimal(trace.marks[t]) << '\n';
  }
  out << trace.r << ' ' << trace.n << '\n';
  for (const Edge& e : trace.order) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

}  // namespace kout
