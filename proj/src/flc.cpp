#include "ppspec/flc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <omp.h>

namespace ppspec {

bool ClusterLess::operator()(const Cluster& a, const Cluster& b) const
{
    if (a.colors() != b.colors())
        return a.colors() < b.colors();
    if (a.size() != b.size())
        return a.size() < b.size();
    for (int c = 0; c < a.colors(); ++c) {
        const auto& pa = a.part(c);
        const auto& pb = b.part(c);
        if (pa.size() != pb.size())
            return pa.size() < pb.size();
        for (std::size_t i = 0; i < pa.size(); ++i) {
            const int cmp = compare(pa[i], pb[i]);
            if (cmp != 0)
                return cmp < 0;
        }
    }
    return false;
}

std::optional<std::size_t> ClusterClassTable::classify(const Cluster& p) const
{
    const Cluster canon = p.anchored();
    for (std::size_t i = 0; i < representatives.size(); ++i)
        if (representatives[i] == canon)
            return i;
    return std::nullopt;
}

std::vector<Cluster> centered_clusters(const MultiSetPatch& patch, const Region& anchors, double radius)
{
    if (!patch.region.covers(anchors.dilated(radius).bounding_box(), 1e-7) &&
        !patch.region.covers(anchors.dilated(radius), 1e-7))
        throw InsufficientWindowError("centered_clusters: patch does not cover anchors + R");
    const auto support = patch.support();
    const int colors = patch.colors();
    const int dim = patch.dim();

    std::vector<std::size_t> anchor_idx;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (anchors.contains(support[i].first))
            anchor_idx.push_back(i);

    std::vector<Cluster> out(anchor_idx.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(anchor_idx.size()); ++k) {
        const std::size_t i = anchor_idx[static_cast<std::size_t>(k)];
        const Point& x = support[i].first;
        std::vector<std::vector<Point>> parts(static_cast<std::size_t>(colors));
        // support is sorted by first coordinate; walk outwards from i
        for (std::size_t j = i + 1; j-- > 0;) {
            if (support[j].first[0] < x[0] - radius - kTolEq)
                break;
            if (distance(support[j].first, x) <= radius + kTolEq)
                parts[static_cast<std::size_t>(support[j].second)].push_back(support[j].first - x);
        }
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            if (support[j].first[0] > x[0] + radius + kTolEq)
                break;
            if (distance(support[j].first, x) <= radius + kTolEq)
                parts[static_cast<std::size_t>(support[j].second)].push_back(support[j].first - x);
        }
        out[static_cast<std::size_t>(k)] = Cluster::from_parts(std::move(parts), dim);
    }
    return out;
}

ClusterClassTable enumerate_cluster_classes(const PointSource& source, double radius, const Region& scan)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("enumerate_cluster_classes: radius must be positive");
    const MultiSetPatch patch = window(source, scan.dilated(radius));
    const auto clusters = centered_clusters(patch, scan, radius);
    if (clusters.empty())
        throw std::invalid_argument("enumerate_cluster_classes: scan region contains no anchor point");

    std::map<Cluster, std::size_t, ClusterLess> classes;
    for (const auto& c : clusters)
        ++classes[c.anchored()];

    ClusterClassTable table;
    table.radius = radius;
    table.scan = scan;
    for (auto& [rep, count] : classes) {
        table.representatives.push_back(rep);
        table.counts.push_back(count);
    }
    return table;
}

DeloneParams delone_params(const PointSource& source, const Region& scan)
{
    DeloneParams out;
    out.scan = scan;
    if (source.dim() == 1) {
        const auto v = window(source, scan).support_values();
        if (v.size() < 2)
            throw std::invalid_argument("delone_params: fewer than 2 points in scan region");
        double eta = std::numeric_limits<double>::infinity();
        double b = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            eta = std::min(eta, v[i] - v[i - 1]);
            b = std::max(b, v[i] - v[i - 1]);
        }
        out.eta = eta;
        out.b = b;
        return out;
    }

    const auto lo = scan.lo();
    const auto hi = scan.hi();
    const double margin = 0.25 * std::min(hi[0] - lo[0], hi[1] - lo[1]);
    const auto all = window(source, scan.bounding_box().dilated(margin)).support();
    std::vector<Point> pts;
    for (const auto& [p, c] : all)
        pts.push_back(p);
    std::size_t inside = 0;
    double eta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!scan.contains(pts[i]))
            continue;
        ++inside;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i)
                continue;
            if (std::abs(pts[j][0] - pts[i][0]) >= eta)
                continue;
            eta = std::min(eta, distance(pts[i], pts[j]));
        }
    }
    if (inside < 2)
        throw std::invalid_argument("delone_params: fewer than 2 points in scan region");

    constexpr int kSamples = 64;
    double cover = 0.0;
    for (int a = 0; a <= kSamples; ++a)
        for (int c = 0; c <= kSamples; ++c) {
            const Point s(lo[0] + (hi[0] - lo[0]) * a / kSamples, lo[1] + (hi[1] - lo[1]) * c / kSamples);
            if (!scan.contains(s))
                continue;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& p : pts)
                best = std::min(best, distance(p, s));
            cover = std::max(cover, best);
        }
    out.eta = eta;
    out.b = 2.0 * cover;
    return out;
}

} // namespace ppspec
