#ifndef PPSPEC_STATISTICS_HPP
#define PPSPEC_STATISTICS_HPP

#include "ppspec/point_source.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ppspec {

/// Averaging sequence F_n = [-n, n]^d along an explicit schedule of n.
struct VanHoveSpec {
    int dim = 1;
    std::vector<double> schedule;
    /// Constant with Vol(F_n - F_n) <= K Vol(F_n); 2^d for centered cubes.
    double K = 2.0;

    /// n = n0 * 2^k, k = 0..doublings.
    static VanHoveSpec geometric(int dim = 1, double n0 = 125.0, int doublings = 4);
    double largest() const;
};

Region van_hove_set(int dim, double n);

/// Vol((dF_n)^{+r}) / Vol(F_n) for the centered cube.
double boundary_layer_ratio(int dim, double n, double r);

struct VanHoveDiagnostics {
    Region region;
    double n = 0.0;
    /// (r, Vol((dF_n)^{+r}) / Vol(F_n)) for each requested r.
    std::vector<std::pair<double, double>> boundary_ratios;
    /// Vol(F_n - F_n) / Vol(F_n).
    double difference_ratio = 0.0;
    bool satisfies_k = false;
};

/// F_n and its van Hove diagnostics; n must belong to the schedule.
VanHoveDiagnostics van_hove_region(const VanHoveSpec& spec, double n,
                                   std::span<const double> rs = std::span<const double>());

/// L_P(A) = #{x : x + P ⊂ A ∩ Λ}.
std::int64_t count_cluster(const PointSource& source, const Cluster& p, const Region& a);
/// Same count on an already windowed patch A ∩ Λ.
std::int64_t count_cluster(const MultiSetPatch& patch, const Cluster& p);
/// All x with x + P ⊂ patch, sorted.
std::vector<Point> cluster_occurrences(const MultiSetPatch& patch, const Cluster& p);

/// `count` Halton points in [0, span]^d; the first one is the origin.
std::vector<Point> low_discrepancy_offsets(std::size_t count, double span, int dim = 1);

struct FrequencyEstimate {
    Cluster cluster;
    std::vector<double> ns;
    std::vector<Point> offsets;
    /// counts[k][j] = L_P(offsets[j] + F_{ns[k]}).
    std::vector<std::vector<std::int64_t>> counts;
    std::vector<std::vector<double>> ratios;
    /// Mean ratio over offsets, per n.
    std::vector<double> mean_ratio;
    /// Point estimate: mean ratio at the largest n.
    double value = 0.0;
    /// max over offsets of |ratio - value| at the largest n.
    double uniformity_gap = 0.0;
    /// |mean_ratio[k+1] - mean_ratio[k]|.
    std::vector<double> cauchy_gaps;
};

/// Cluster frequency along the schedule. With offsets = {0} this is the
/// single-orbit frequency; with many offsets the spread is the uniformity
/// diagnostic.
FrequencyEstimate estimate_frequency(const PointSource& source, const Cluster& p, const VanHoveSpec& spec,
                                     std::span<const Point> offsets);

} // namespace ppspec

#endif
