#pragma once

#include <cstdint>
#include <random>

namespace kout {

using Engine = std::mt19937_64;

/// Stream tags used to keep independent consumers of one master seed apart.
namespace rng_stream {
inline constexpr std::uint64_t kKOutVertex = 1;
inline constexpr std::uint64_t kProcessOrder = 2;
inline constexpr std::uint64_t kProcessMarks = 3;
inline constexpr std::uint64_t kTrial = 4;
inline constexpr std::uint64_t kInstance = 5;
inline constexpr std::uint64_t kUniformity = 6;
inline constexpr std::uint64_t kScanSample = 1000;
}  // namespace rng_stream

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for (master, stream, index); distinct triples give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

Engine make_engine(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

}  // namespace kout
