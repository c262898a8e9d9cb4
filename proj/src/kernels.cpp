#include "ppspec/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace ppspec {

namespace {

constexpr std::size_t kLeaf = 16;

template <typename T>
T tree_sum(std::span<const T> v)
{
    if (v.size() <= kLeaf) {
        T s{};
        for (const T& x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return tree_sum(v.first(half)) + tree_sum(v.subspan(half));
}

// exp(-2 pi i k x) with the phase reduced mod 1 first
inline cplx phase(double k, double x)
{
    double t = k * x;
    t -= std::nearbyint(t);
    const double a = -2.0 * M_PI * t;
    return {std::cos(a), std::sin(a)};
}

} // namespace

void set_threads(int n)
{
    if (n > 0)
        omp_set_num_threads(n);
}

int max_threads()
{
    return omp_get_max_threads();
}

double pairwise_sum(std::span<const double> v)
{
    return tree_sum(v);
}

cplx pairwise_sum(std::span<const cplx> v)
{
    return tree_sum(v);
}

std::vector<cplx> exponential_sums(std::span<const double> x, std::span<const cplx> w,
                                   std::span<const double> k, double scale)
{
    std::vector<cplx> out(k.size());
#pragma omp parallel
    {
        std::vector<cplx> terms(x.size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(k.size()); ++j) {
            const double kj = k[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < x.size(); ++i)
                terms[i] = w[i] * phase(kj, x[i]);
            out[static_cast<std::size_t>(j)] = scale * pairwise_sum(std::span<const cplx>(terms));
        }
    }
    return out;
}

std::vector<cplx> exponential_sums_serial(std::span<const double> x, std::span<const cplx> w,
                                          std::span<const double> k, double scale)
{
    std::vector<cplx> out;
    out.reserve(k.size());
    for (double kj : k) {
        cplx s{};
        for (std::size_t i = 0; i < x.size(); ++i)
            s += w[i] * phase(kj, x[i]);
        out.push_back(scale * s);
    }
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> neighbor_pairs(std::span<const double> x, double radius)
{
    const std::size_t n = x.size();
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        auto first = std::lower_bound(x.begin(), x.end(), x[i] - radius - 1e-9);
        for (auto it = first; it != x.end() && *it <= x[i] + radius + 1e-9; ++it) {
            const auto j = static_cast<std::size_t>(it - x.begin());
            if (j != i && std::abs(x[i] - x[j]) <= radius + 1e-9)
                rows[i].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& r : rows)
        out.insert(out.end(), r.begin(), r.end());
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> neighbor_pairs_serial(std::span<const double> x,
                                                                           double radius)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i && std::abs(x[i] - x[j]) <= radius + 1e-9)
                out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    return out;
}

std::vector<cplx> smoothed_density(std::span<const double> x, std::span<const cplx> w,
                                   const SmoothingKernel& omega, double start, double step,
                                   std::size_t count)
{
    std::vector<cplx> out(count);
    const double lo = omega.support_lo();
    const double hi = omega.support_hi();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(count); ++jj) {
        const double y = start + static_cast<double>(jj) * step;
        // omega(y - x) != 0 only for x in [y - hi, y - lo]
        auto it = std::lower_bound(x.begin(), x.end(), y - hi);
        cplx s{};
        for (; it != x.end() && *it <= y - lo; ++it)
            s += w[static_cast<std::size_t>(it - x.begin())] * omega(y - *it);
        out[static_cast<std::size_t>(jj)] = s;
    }
    return out;
}

std::vector<cplx> smoothed_density_serial(std::span<const double> x, std::span<const cplx> w,
                                          const SmoothingKernel& omega, double start, double step,
                                          std::size_t count)
{
    std::vector<cplx> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double y = start + static_cast<double>(j) * step;
        cplx s{};
        for (std::size_t i = 0; i < x.size(); ++i)
            s += w[i] * omega(y - x[i]);
        out[j] = s;
    }
    return out;
}

} // namespace ppspec
