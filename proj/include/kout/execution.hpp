#pragma once

namespace kout {

// Kernels that have an OpenMP implementation keep the serial loop as the
// reference path; tests compare the two.
enum class Execution { kSerial, kParallel };

}  // namespace kout
