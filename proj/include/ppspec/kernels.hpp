#ifndef PPSPEC_KERNELS_HPP
#define PPSPEC_KERNELS_HPP

// Data-parallel inner loops. Each kernel has an OpenMP version and a plain
// serial reference used by the tests and the benchmark. Parallel versions
// split only over independent outputs and reduce with a fixed pairwise
// tree, so their results do not depend on the thread count.

#include "ppspec/smoothing.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ppspec {

using cplx = std::complex<double>;

/// Bounds the OpenMP team size; n <= 0 leaves the runtime default.
void set_threads(int n);
int max_threads();

double pairwise_sum(std::span<const double> v);
cplx pairwise_sum(std::span<const cplx> v);

/// out[j] = scale * sum_i w[i] exp(-2 pi i k[j] x[i]).
std::vector<cplx> exponential_sums(std::span<const double> x, std::span<const cplx> w,
                                   std::span<const double> k, double scale);
std::vector<cplx> exponential_sums_serial(std::span<const double> x, std::span<const cplx> w,
                                          std::span<const double> k, double scale);

/// Index pairs (i, j), i != j, with |x[i] - x[j]| <= radius; x sorted.
/// Ordered by i, then j.
std::vector<std::pair<std::uint32_t, std::uint32_t>> neighbor_pairs(std::span<const double> x, double radius);
std::vector<std::pair<std::uint32_t, std::uint32_t>> neighbor_pairs_serial(std::span<const double> x,
                                                                           double radius);

/// rho(y_j) = sum_i w[i] omega(y_j - x[i]) on y_j = start + j * step,
/// j < count; x sorted.
std::vector<cplx> smoothed_density(std::span<const double> x, std::span<const cplx> w,
                                   const SmoothingKernel& omega, double start, double step,
                                   std::size_t count);
std::vector<cplx> smoothed_density_serial(std::span<const double> x, std::span<const cplx> w,
                                          const SmoothingKernel& omega, double start, double step,
                                          std::size_t count);

} // namespace ppspec

#endif
