#ifndef PPSPEC_HULL_HPP
#define PPSPEC_HULL_HPP

#include "ppspec/flc.hpp"
#include "ppspec/smoothing.hpp"
#include "ppspec/statistics.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ppspec {

inline const double kMetricCap = 0.70710678118654752440;  // 2^{-1/2}

/// Certified bracket lower <= d(L1, L2) <= upper.
struct MetricBracket {
    double lower = 0.0;
    double upper = kMetricCap;
    double eps_grid = 0.0;
};

/// True when some x, y in B_eps(0) give
/// B_{1/eps}(0) ∩ (-x + L1) = B_{1/eps}(0) ∩ (-y + L2). 1D, decided exactly
/// up to kTolEq on coordinates. Monotone in eps.
bool hull_metric_predicate(const PointSource& a, const PointSource& b, double eps);

/// Bisection on the predicate between eps_grid and 2^{-1/2}; the returned
/// bracket has width <= eps_grid unless a window could not be decided.
MetricBracket hull_metric(const PointSource& a, const PointSource& b, double eps_grid);

/// -h + L for each offset h.
std::vector<SourcePtr> orbit_sources(const SourcePtr& source, std::span<const Point> offsets);
/// Windows of -h + L over `region` for each offset h.
std::vector<MultiSetPatch> sample_orbit(const SourcePtr& source, std::span<const Point> offsets,
                                        const Region& region);

/// X_{P,V} = {G : -g + P ⊂ G for some g in V}, 1D.
struct CylinderSpec {
    Cluster cluster;
    Interval window;
};

/// Decides G ∈ X_{P,V}. Throws InsufficientWindowError when the patch region
/// does not cover supp(P) - V.
bool cylinder_contains(const MultiSetPatch& gamma, const CylinderSpec& c);

class IncompleteFlcError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One piece of the partition. `patch` is the R-patch class B_R(0) ∩ G up to
/// translation; `cluster` adds the nearest outside neighbour on each side,
/// which is what makes the cylinders X_{cluster,window} pairwise disjoint.
struct PartitionCell {
    Cluster patch;
    Cluster cluster;
    Interval window;
    std::size_t patch_class = 0;
};

struct HullPartition {
    double radius = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    double b = 0.0;
    /// Distinct R-patch classes.
    std::vector<Cluster> classes;
    std::vector<PartitionCell> cells;
    /// Total length of the windows per R-patch class.
    std::vector<double> class_length;
};

struct PartitionOptions {
    /// Runs are collected from anchors in [-scan, scan]; a second pass at
    /// half the size must find the same cells.
    double scan = 1000.0;
};

HullPartition build_partition_1d(const PointSource& source, double radius, double delta,
                                 const PartitionOptions& opts = {});

/// Cells whose window contains u when B_R(0) ∩ G = -u + patch, with the
/// same outside neighbours.
std::vector<std::size_t> partition_cells_exact(const HullPartition& part, const MultiSetPatch& gamma);
/// Cells whose cylinder X_{cluster,window} contains G.
std::vector<std::size_t> partition_cells_cylinder(const HullPartition& part, const MultiSetPatch& gamma);

/// sum_j Vol(V_j) freq(cluster_j), and the same sum with the bare R-patch
/// classes for comparison.
struct PartitionMeasure {
    double total = 0.0;
    double total_patch_only = 0.0;
    std::vector<double> cluster_freq;
};

PartitionMeasure partition_measure(const HullPartition& part, const PointSource& source, double n);

/// (1 / Vol F_n) Vol{x in F_n : -x + L ∈ X_{P,V}}; requires diam(V) < eta.
double empirical_cylinder_measure(const PointSource& source, const CylinderSpec& c, double n,
                                  std::optional<double> eta = std::nullopt);

struct PartitionParams {
    double epsilon = 0.0;
    double theta1 = 0.0;
    double eta = 0.0;
    double theta = 0.0;
    double zeta = 0.0;
};

/// theta1 is half a certified lower bound on the translation-minimized
/// rho_H distance between distinct classes at radius 1/eps (eta/2 when
/// only one class exists); theta = min(eps, theta1, eta), zeta = theta/4.
PartitionParams partition_params(const PointSource& source, double eps, const Region& scan);

struct ProductCheck {
    std::size_t samples = 0;
    std::size_t violations = 0;
    /// Samples where the cylinder indicator is 1.
    std::size_t positives = 0;
    Cluster cluster;
    Interval window;
};

/// Compares chi_{P,V} with the product of single-point indicators over
/// orbit samples, P = B_{1/eps}(0) ∩ L, diam(V) < theta.
ProductCheck product_identity_check(const SourcePtr& source, const PartitionParams& params, const Interval& v,
                                    std::span<const Point> offsets);

struct TaperBound {
    double lhs = 0.0;
    double bound = 0.0;
    double freq = 0.0;
    double boundary_volume = 0.0;
};

/// Orbit average over F_n of |f_{i,omega} - chi_{E_i,V}|^2 with omega the
/// plateau kernel of V with taper zeta, against freq(E_i) Vol((dV)^{+zeta}).
TaperBound taper_bound_check(const PointSource& source, int color, const Interval& v, double zeta, double n);

} // namespace ppspec

#endif
