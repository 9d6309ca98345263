#pragma once

namespace steiner {

// Selects the serial reference kernel or its OpenMP counterpart. Both produce
// identical results; the serial path is kept as the reference for tests.
enum class Execution { kSerial, kParallel };

}  // namespace steiner
