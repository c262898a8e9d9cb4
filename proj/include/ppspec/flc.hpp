#ifndef PPSPEC_FLC_HPP
#define PPSPEC_FLC_HPP

#include "ppspec/point_source.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ppspec {

/// Strict ordering on clusters used for deterministic deduplication.
struct ClusterLess {
    bool operator()(const Cluster& a, const Cluster& b) const;
};

/// Translation classes of the clusters B_R(x) ∩ Λ, x ∈ supp(Λ) ∩ scan.
/// Each representative is anchored with its lexicographically smallest
/// support point at the origin.
struct ClusterClassTable {
    double radius = 0.0;
    std::vector<Cluster> representatives;
    std::vector<std::size_t> counts;
    Region scan;

    std::size_t size() const { return representatives.size(); }
    /// Index of the class equivalent to `p`, if any.
    std::optional<std::size_t> classify(const Cluster& p) const;
};

ClusterClassTable enumerate_cluster_classes(const PointSource& source, double radius,
                                            const Region& scan);

/// Observed Delone constants: eta is the minimal point separation, b the
/// maximal gap (1D) or twice the sampled covering radius (2D).
struct DeloneParams {
    double eta = 0.0;
    double b = 0.0;
    Region scan;
};

DeloneParams delone_params(const PointSource& source, const Region& scan);

/// B_R(x) ∩ Λ - x for every support point x of `patch` lying in `anchors`;
/// the patch must cover anchors dilated by R.
std::vector<Cluster> centered_clusters(const MultiSetPatch& patch, const Region& anchors, double radius);

} // namespace ppspec

#endif
