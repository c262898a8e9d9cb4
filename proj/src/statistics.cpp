#include "ppspec/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppspec {

VanHoveSpec VanHoveSpec::geometric(int dim, double n0, int doublings)
{
    if (!(n0 > 0.0) || doublings < 0)
        throw std::invalid_argument("VanHoveSpec: n0 must be positive and doublings >= 0");
    VanHoveSpec s;
    s.dim = dim;
    s.K = std::pow(2.0, dim);
    for (int k = 0; k <= doublings; ++k)
        s.schedule.push_back(n0 * std::pow(2.0, k));
    return s;
}

double VanHoveSpec::largest() const
{
    if (schedule.empty())
        throw std::invalid_argument("VanHoveSpec: empty schedule");
    return *std::max_element(schedule.begin(), schedule.end());
}

Region van_hove_set(int dim, double n)
{
    return Region::centered_cube(dim, n);
}

double boundary_layer_ratio(int dim, double n, double r)
{
    const double outer = std::pow(2.0 * (n + r), dim);
    const double inner = r < n ? std::pow(2.0 * (n - r), dim) : 0.0;
    return (outer - inner) / std::pow(2.0 * n, dim);
}

VanHoveDiagnostics van_hove_region(const VanHoveSpec& spec, double n, std::span<const double> rs)
{
    if (std::find(spec.schedule.begin(), spec.schedule.end(), n) == spec.schedule.end())
        throw std::invalid_argument("van_hove_region: n is not in the schedule");
    VanHoveDiagnostics d;
    d.n = n;
    d.region = van_hove_set(spec.dim, n);
    static constexpr double kDefault[] = {1.0, 10.0};
    if (rs.empty())
        rs = kDefault;
    for (double r : rs)
        d.boundary_ratios.emplace_back(r, boundary_layer_ratio(spec.dim, n, r));
    // F_n - F_n = [-2n, 2n]^d
    d.difference_ratio = std::pow(4.0 * n, spec.dim) / std::pow(2.0 * n, spec.dim);
    d.satisfies_k = d.difference_ratio <= spec.K + 1e-12;
    return d;
}

std::vector<Point> cluster_occurrences(const MultiSetPatch& patch, const Cluster& p)
{
    const auto anchor = p.anchor();
    if (!anchor)
        throw std::invalid_argument("cluster_occurrences: empty cluster");
    if (p.colors() != patch.colors() || p.dim() != patch.dim())
        throw std::invalid_argument("cluster_occurrences: cluster/patch shape mismatch");
    const auto& [p0, color] = *anchor;
    auto less = [](const Point& a, const Point& b) { return compare(a, b) < 0; };
    std::vector<Point> out;
    for (const Point& q : patch.cluster.part(color)) {
        const Point x = q - p0;
        bool ok = true;
        for (int c = 0; c < p.colors() && ok; ++c) {
            const auto& part = patch.cluster.part(c);
            for (const Point& y : p.part(c)) {
                const Point target = y + x;
                auto it = std::lower_bound(part.begin(), part.end(), target, less);
                if (it == part.end() || !same_point(*it, target)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok)
            out.push_back(x);
    }
    return out;
}

std::int64_t count_cluster(const MultiSetPatch& patch, const Cluster& p)
{
    return static_cast<std::int64_t>(cluster_occurrences(patch, p).size());
}

std::int64_t count_cluster(const PointSource& source, const Cluster& p, const Region& a)
{
    return count_cluster(window(source, a), p);
}

namespace {

double radical_inverse(std::size_t i, std::size_t base)
{
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

} // namespace

std::vector<Point> low_discrepancy_offsets(std::size_t count, double span, int dim)
{
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (dim == 1)
            out.emplace_back(span * radical_inverse(i, 2));
        else
            out.emplace_back(span * radical_inverse(i, 2), span * radical_inverse(i, 3));
    }
    return out;
}

FrequencyEstimate estimate_frequency(const PointSource& source, const Cluster& p, const VanHoveSpec& spec,
                                     std::span<const Point> offsets)
{
    if (offsets.empty())
        throw std::invalid_argument("estimate_frequency: offsets must be non-empty");
    if (spec.schedule.empty())
        throw std::invalid_argument("estimate_frequency: empty schedule");
    FrequencyEstimate e;
    e.cluster = p;
    e.ns = spec.schedule;
    std::sort(e.ns.begin(), e.ns.end());
    e.offsets.assign(offsets.begin(), offsets.end());
    const std::size_t nk = e.ns.size();
    const std::size_t no = offsets.size();
    e.counts.assign(nk, std::vector<std::int64_t>(no, 0));
    e.ratios.assign(nk, std::vector<double>(no, 0.0));

#pragma omp parallel for collapse(2) schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(nk); ++k)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(no); ++j) {
            const auto ku = static_cast<std::size_t>(k);
            const auto ju = static_cast<std::size_t>(j);
            const Region f = van_hove_set(spec.dim, e.ns[ku]).translated(offsets[ju]);
            const auto count = count_cluster(source, p, f);
            e.counts[ku][ju] = count;
            e.ratios[ku][ju] = static_cast<double>(count) / f.volume();
        }

    for (std::size_t k = 0; k < nk; ++k) {
        double s = 0.0;
        for (double r : e.ratios[k])
            s += r;
        e.mean_ratio.push_back(s / static_cast<double>(no));
    }
    e.value = e.mean_ratio.back();
    for (double r : e.ratios.back())
        e.uniformity_gap = std::max(e.uniformity_gap, std::abs(r - e.value));
    for (std::size_t k = 1; k < nk; ++k)
        e.cauchy_gaps.push_back(std::abs(e.mean_ratio[k] - e.mean_ratio[k - 1]));
    return e;
}

} // namespace ppspec
