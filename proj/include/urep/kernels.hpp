#pragma once

// Polynomial multiplication kernels. `multiply_reference` is the plain
// term-by-term serial product kept as the test oracle; `multiply_parallel`
// packs exponent vectors into machine words and splits the outer loop
// across OpenMP threads.

#include "urep/polynomial.hpp"

namespace urep::kernels {

Polynomial multiply_reference(const Polynomial& lhs, const Polynomial& rhs);

/// threads <= 0 uses the OpenMP default team size.
Polynomial multiply_parallel(const Polynomial& lhs, const Polynomial& rhs, int threads = 0);

/// Products with fewer term pairs than this stay on one thread.
inline constexpr std::size_t kParallelWorkThreshold = 1u << 14;

}  // namespace urep::kernels
