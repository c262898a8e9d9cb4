#include "ppspec/hull.hpp"

#include "ppspec/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <utility>

namespace ppspec {

namespace {

void require_1d(int dim, const char* what)
{
    if (dim != 1)
        throw std::invalid_argument(std::string(what) + ": only 1D is supported");
}

using ColoredValues = std::vector<std::vector<double>>;

ColoredValues colored_values(const MultiSetPatch& patch)
{
    ColoredValues out(static_cast<std::size_t>(patch.colors()));
    for (int c = 0; c < patch.colors(); ++c) {
        for (const auto& p : patch.cluster.part(c))
            out[static_cast<std::size_t>(c)].push_back(p[0]);
        std::sort(out[static_cast<std::size_t>(c)].begin(), out[static_cast<std::size_t>(c)].end());
    }
    return out;
}

// Points of (a - s) and b that have no partner in the other set, per color.
std::vector<double> symmetric_difference(const ColoredValues& a, double s, const ColoredValues& b, double lo,
                                         double hi)
{
    std::vector<double> out;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const auto& x = a[c];
        const auto& y = b[c];
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < x.size() || j < y.size()) {
            const double xv = i < x.size() ? x[i] - s : std::numeric_limits<double>::infinity();
            const double yv = j < y.size() ? y[j] : std::numeric_limits<double>::infinity();
            if (std::abs(xv - yv) <= kTolEq) {
                ++i;
                ++j;
                continue;
            }
            const double v = xv < yv ? xv : yv;
            (xv < yv ? i : j)++;
            if (v >= lo && v <= hi)
                out.push_back(v);
        }
    }
    return out;
}

// Is [lo, hi] covered by the closed intervals [d - r, d + r]?
bool covered(double lo, double hi, std::vector<double> centers, double r)
{
    std::sort(centers.begin(), centers.end());
    double reach = lo;
    bool started = false;
    for (double d : centers) {
        if (d + r < reach)
            continue;
        if (d - r > reach + 1e-12)
            return false;
        reach = std::max(reach, d + r);
        started = true;
        if (reach >= hi)
            return true;
    }
    return started && reach >= hi;
}

bool empty_window_possible(const ColoredValues& v, double eps, double r)
{
    std::vector<double> all;
    for (const auto& c : v)
        all.insert(all.end(), c.begin(), c.end());
    return !covered(-eps, eps, std::move(all), r);
}

Point lookup_nearest(const MultiSetPatch& patch)
{
    double best = std::numeric_limits<double>::infinity();
    Point out;
    for (const auto& part : patch.cluster.parts())
        for (const auto& p : part)
            if (std::abs(p[0]) < best) {
                best = std::abs(p[0]);
                out = p;
            }
    return out;
}

bool contains_point(const std::vector<Point>& part, const Point& p)
{
    auto it = std::lower_bound(part.begin(), part.end(), p,
                               [](const Point& a, const Point& b) { return compare(a, b) < 0; });
    return it != part.end() && same_point(*it, p);
}

// Distinct support positions of a 1D patch, each with the colors present.
struct Site {
    Point pos;
    std::vector<int> colors;
};

std::vector<Site> sites_of(const MultiSetPatch& patch)
{
    std::vector<Site> out;
    for (const auto& [p, c] : patch.support()) {
        if (!out.empty() && same_point(out.back().pos, p))
            out.back().colors.push_back(c);
        else
            out.push_back({p, {c}});
    }
    return out;
}

Cluster run_cluster(const std::vector<Site>& s, std::size_t first, std::size_t last, const Point& origin, int colors)
{
    Cluster out(colors, 1);
    for (std::size_t k = first; k <= last; ++k)
        for (int c : s[k].colors)
            out.insert(c, s[k].pos - origin);
    return out;
}

struct PairLess {
    bool operator()(const std::pair<Cluster, Cluster>& a, const std::pair<Cluster, Cluster>& b) const
    {
        ClusterLess less;
        if (less(a.first, b.first))
            return true;
        if (less(b.first, a.first))
            return false;
        return less(a.second, b.second);
    }
};

using RunMap = std::map<std::pair<Cluster, Cluster>, std::vector<Interval>, PairLess>;

RunMap collect_runs(const PointSource& source, double radius, double scan, double b)
{
    const double reach = 2.0 * radius + 2.0 * b + 2.0;
    const MultiSetPatch patch = window(source, Region::interval(-scan - reach, scan + reach));
    const auto s = sites_of(patch);
    RunMap runs;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double pi = s[i].pos[0];
        if (pi < -scan || pi > scan)
            continue;
        for (std::size_t j = i; j < s.size(); ++j) {
            const double pj = s[j].pos[0];
            if (pj - pi > 2.0 * radius + kTolEq)
                break;
            if (j + 1 >= s.size())
                throw InsufficientWindowError("build_partition_1d: run reaches the window edge");
            const double lo1 = pj - pi - radius;
            const double lo2 = s[i - 1].pos[0] - pi + radius;
            const double hi1 = radius;
            const double hi2 = s[j + 1].pos[0] - pi - radius;
            Interval v;
            v.lo = std::max(lo1, lo2);
            v.lo_closed = lo1 > lo2 + kTolEq;
            v.hi = std::min(hi1, hi2);
            v.hi_closed = hi1 < hi2 - kTolEq;
            const bool point = std::abs(v.hi - v.lo) <= kTolEq;
            if (point) {
                if (!(v.lo_closed && v.hi_closed))
                    continue;
                v.hi = v.lo;
            } else if (v.hi < v.lo) {
                continue;
            }
            const Point& origin = s[i].pos;
            runs[{run_cluster(s, i, j, origin, patch.colors()), run_cluster(s, i - 1, j + 1, origin, patch.colors())}]
                .push_back(v);
        }
    }
    return runs;
}

std::vector<Interval> merge_intervals(std::vector<Interval> v)
{
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo)
            return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> out;
    for (const auto& x : v) {
        if (!out.empty()) {
            Interval& cur = out.back();
            const bool overlap = x.lo < cur.hi - kTolEq ||
                                 (std::abs(x.lo - cur.hi) <= kTolEq && (x.lo_closed || cur.hi_closed));
            if (overlap) {
                if (x.hi > cur.hi + kTolEq) {
                    cur.hi = x.hi;
                    cur.hi_closed = x.hi_closed;
                } else if (std::abs(x.hi - cur.hi) <= kTolEq) {
                    cur.hi_closed = cur.hi_closed || x.hi_closed;
                }
                continue;
            }
        }
        out.push_back(x);
    }
    return out;
}

double total_length(const std::vector<Interval>& v)
{
    double s = 0.0;
    for (const auto& x : v)
        s += x.length();
    return s;
}

} // namespace

bool hull_metric_predicate(const PointSource& a, const PointSource& b, double eps)
{
    require_1d(a.dim(), "hull_metric");
    require_1d(b.dim(), "hull_metric");
    if (a.colors() != b.colors())
        throw std::invalid_argument("hull_metric: color counts differ");
    if (!(eps > 0.0))
        throw std::invalid_argument("hull_metric: eps must be positive");
    const double r = 1.0 / eps;
    const double w = r + 3.0 * eps + 1.0;
    const Region span = Region::interval(-w, w);
    const MultiSetPatch pa = window(a, span);
    const MultiSetPatch pb = window(b, span);
    const ColoredValues va = colored_values(pa);
    const ColoredValues vb = colored_values(pb);

    if (empty_window_possible(va, eps, r) && empty_window_possible(vb, eps, r))
        return true;

    // With -x + L1 and -y + L2 agreeing on B_r(0), some point p of L1 near
    // the origin sits at p - x in the ball, so p - s ∈ L2 for s = x - y.
    std::vector<std::pair<double, int>> anchors;
    if (pa.size() > 0) {
        const Point near = lookup_nearest(pa);
        for (int c = 0; c < pa.colors(); ++c)
            for (const auto& p : pa.cluster.part(c)) {
                const bool use = std::abs(near[0]) <= r - eps ? same_point(p, near) : std::abs(p[0]) <= r + eps;
                if (use)
                    anchors.emplace_back(p[0], c);
            }
    }
    for (const auto& [p, c] : anchors) {
        const auto& part = vb[static_cast<std::size_t>(c)];
        auto it = std::lower_bound(part.begin(), part.end(), p - 2.0 * eps - kTolEq);
        for (; it != part.end() && *it <= p + 2.0 * eps + kTolEq; ++it) {
            const double s = p - *it;
            const double lo = std::max(-eps, -eps - s);
            const double hi = std::min(eps, eps - s);
            if (lo > hi + kTolEq)
                continue;
            auto diff = symmetric_difference(va, s, vb, -r - eps - kTolEq, r + eps + kTolEq);
            if (!covered(lo, std::max(lo, hi), std::move(diff), r))
                return true;
        }
    }
    return false;
}

MetricBracket hull_metric(const PointSource& a, const PointSource& b, double eps_grid)
{
    if (!(eps_grid > 0.0) || eps_grid >= kMetricCap)
        throw std::invalid_argument("hull_metric: eps_grid must lie in (0, 2^-1/2)");
    MetricBracket out;
    out.eps_grid = eps_grid;
    if (!hull_metric_predicate(a, b, kMetricCap)) {
        out.lower = kMetricCap;
        out.upper = kMetricCap;
        return out;
    }
    // smallest eps whose window both sources can serve
    double lo = eps_grid;
    for (;;) {
        try {
            if (hull_metric_predicate(a, b, lo)) {
                out.lower = 0.0;
                out.upper = lo;
                return out;
            }
            break;
        } catch (const InsufficientWindowError&) {
            lo *= 2.0;
            if (lo >= kMetricCap)
                throw;
        }
    }
    double hi = kMetricCap;
    while (hi - lo > eps_grid) {
        const double mid = 0.5 * (lo + hi);
        if (hull_metric_predicate(a, b, mid))
            hi = mid;
        else
            lo = mid;
    }
    out.lower = lo;
    out.upper = hi;
    return out;
}

std::vector<SourcePtr> orbit_sources(const SourcePtr& source, std::span<const Point> offsets)
{
    std::vector<SourcePtr> out;
    out.reserve(offsets.size());
    for (const auto& h : offsets)
        out.push_back(translate_source(source, h));
    return out;
}

std::vector<MultiSetPatch> sample_orbit(const SourcePtr& source, std::span<const Point> offsets,
                                        const Region& region)
{
    const auto srcs = orbit_sources(source, offsets);
    std::vector<MultiSetPatch> out(srcs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(srcs.size()); ++i)
        out[static_cast<std::size_t>(i)] = window(*srcs[static_cast<std::size_t>(i)], region);
    return out;
}

bool cylinder_contains(const MultiSetPatch& gamma, const CylinderSpec& c)
{
    require_1d(gamma.dim(), "cylinder_contains");
    const auto anchor = c.cluster.anchor();
    if (!anchor)
        throw std::invalid_argument("cylinder_contains: empty cluster");
    if (c.cluster.colors() != gamma.colors())
        throw std::invalid_argument("cylinder_contains: color counts differ");
    if (c.window.empty())
        return false;
    const auto& [p0, color] = *anchor;
    double pmax = p0[0];
    for (const auto& part : c.cluster.parts())
        for (const auto& p : part)
            pmax = std::max(pmax, p[0]);
    const Region need = Region::interval(p0[0] - c.window.hi, pmax - c.window.lo);
    if (!gamma.region.covers(need))
        throw InsufficientWindowError("cylinder_contains: patch region does not cover supp(P) - V");

    // -g + p0 = q for some q of the anchor color, g ∈ V
    for (const Point& q : gamma.cluster.part(color)) {
        const Point g = p0 - q;
        if (!c.window.contains(g[0]))
            continue;
        bool ok = true;
        for (int cc = 0; cc < c.cluster.colors() && ok; ++cc)
            for (const Point& y : c.cluster.part(cc))
                if (!contains_point(gamma.cluster.part(cc), y - g)) {
                    ok = false;
                    break;
                }
        if (ok)
            return true;
    }
    return false;
}

HullPartition build_partition_1d(const PointSource& source, double radius, double delta,
                                 const PartitionOptions& opts)
{
    require_1d(source.dim(), "build_partition_1d");
    if (!(radius > 0.0))
        throw std::invalid_argument("build_partition_1d: R must be positive");
    const double scan = opts.scan;
    const DeloneParams dp = delone_params(source, Region::interval(-scan, scan));
    if (!(delta > 0.0) || !(delta < dp.eta))
        throw std::invalid_argument("build_partition_1d: need 0 < delta < eta");

    const RunMap runs = collect_runs(source, radius, scan, dp.b);
    const RunMap check = collect_runs(source, radius, 0.5 * scan, dp.b);
    if (runs.size() != check.size())
        throw IncompleteFlcError("build_partition_1d: run classes not stable between scan sizes " +
                                 std::to_string(0.5 * scan) + " and " + std::to_string(scan));

    HullPartition part;
    part.radius = radius;
    part.delta = delta;
    part.eta = dp.eta;
    part.b = dp.b;

    std::map<Cluster, std::vector<Interval>, ClusterLess> by_class;
    for (const auto& [key, ivs] : runs) {
        auto& v = by_class[key.first];
        v.insert(v.end(), ivs.begin(), ivs.end());
    }
    std::map<Cluster, std::size_t, ClusterLess> class_index;
    for (const auto& [cls, ivs] : by_class) {
        class_index[cls] = part.classes.size();
        part.classes.push_back(cls);
        part.class_length.push_back(total_length(merge_intervals(ivs)));
    }

    const double m = std::max(radius, dp.b);
    const auto boxes = static_cast<std::size_t>(std::floor(2.0 * m / delta)) + 1;
    const double step = 2.0 * m / static_cast<double>(boxes);
    for (const auto& [key, ivs] : runs) {
        for (const auto& w : merge_intervals(ivs)) {
            for (std::size_t k = 0; k < boxes; ++k) {
                Interval box;
                box.lo = -m + static_cast<double>(k) * step;
                box.hi = k + 1 == boxes ? m : -m + static_cast<double>(k + 1) * step;
                box.lo_closed = true;
                box.hi_closed = k + 1 == boxes;
                const Interval v = w.intersect(box);
                if (v.empty())
                    continue;
                part.cells.push_back({key.first, key.second, v, class_index.at(key.first)});
            }
        }
    }
    return part;
}

std::vector<std::size_t> partition_cells_exact(const HullPartition& part, const MultiSetPatch& gamma)
{
    require_1d(gamma.dim(), "partition_cells_exact");
    const double r = part.radius;
    if (!gamma.region.covers(Region::interval(-r - part.b - 1.0, r + part.b + 1.0)))
        throw InsufficientWindowError("partition_cells_exact: patch too small");
    const auto s = sites_of(gamma);
    std::size_t first = s.size();
    std::size_t last = 0;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (std::abs(s[k].pos[0]) <= r + kTolEq) {
            first = std::min(first, k);
            last = k;
        }
    std::vector<std::size_t> out;
    if (first == s.size())
        return out;
    if (first == 0 || last + 1 >= s.size())
        throw InsufficientWindowError("partition_cells_exact: neighbours outside the patch");
    const Point& a = s[first].pos;
    const Cluster p = run_cluster(s, first, last, a, gamma.colors());
    const Cluster q = run_cluster(s, first - 1, last + 1, a, gamma.colors());
    const double u = -a[0];
    for (std::size_t j = 0; j < part.cells.size(); ++j) {
        const auto& cell = part.cells[j];
        if (cell.window.contains(u) && cell.patch == p && cell.cluster == q)
            out.push_back(j);
    }
    return out;
}

std::vector<std::size_t> partition_cells_cylinder(const HullPartition& part, const MultiSetPatch& gamma)
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < part.cells.size(); ++j)
        if (cylinder_contains(gamma, {part.cells[j].cluster, part.cells[j].window}))
            out.push_back(j);
    return out;
}

PartitionMeasure partition_measure(const HullPartition& part, const PointSource& source, double n)
{
    VanHoveSpec spec;
    spec.dim = 1;
    spec.schedule = {n};
    const Point zero[] = {Point::zero(1)};

    std::map<Cluster, std::size_t, ClusterLess> index;
    std::vector<Cluster> distinct;
    for (const auto& cell : part.cells)
        if (index.emplace(cell.cluster, distinct.size()).second)
            distinct.push_back(cell.cluster);
    for (const auto& cls : part.classes)
        if (index.emplace(cls, distinct.size()).second)
            distinct.push_back(cls);

    std::vector<double> freq(distinct.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(distinct.size()); ++i)
        freq[static_cast<std::size_t>(i)] =
            estimate_frequency(source, distinct[static_cast<std::size_t>(i)], spec, zero).value;

    PartitionMeasure out;
    for (const auto& cell : part.cells) {
        const double f = freq[index.at(cell.cluster)];
        out.cluster_freq.push_back(f);
        out.total += cell.window.length() * f;
    }
    for (std::size_t j = 0; j < part.classes.size(); ++j)
        out.total_patch_only += part.class_length[j] * freq[index.at(part.classes[j])];
    return out;
}

double empirical_cylinder_measure(const PointSource& source, const CylinderSpec& c, double n,
                                  std::optional<double> eta)
{
    require_1d(source.dim(), "empirical_cylinder_measure");
    if (!(n > 0.0))
        throw std::invalid_argument("empirical_cylinder_measure: n must be positive");
    const double e = eta ? *eta : [&] {
        const double h = std::min(n, 500.0);
        return delone_params(source, Region::interval(-h, h)).eta;
    }();
    const double diam = c.window.hi - c.window.lo;
    if (!(diam < e))
        throw std::invalid_argument("empirical_cylinder_measure: diam(V) must be below eta");
    const auto anchor = c.cluster.anchor();
    if (!anchor)
        throw std::invalid_argument("empirical_cylinder_measure: empty cluster");
    double pmin = anchor->first[0];
    double pmax = pmin;
    for (const auto& part : c.cluster.parts())
        for (const auto& p : part)
            pmax = std::max(pmax, p[0]);

    // -x + L ∈ X_{P,V} iff x ∈ x_nu + V for an occurrence x_nu + P ⊂ L
    const Region reg = Region::interval(-n - c.window.hi + pmin - 1.0, n - c.window.lo + pmax + 1.0);
    const auto occ = cluster_occurrences(window(source, reg), c.cluster);
    std::vector<Interval> pieces;
    const Interval f = Interval::closed(-n, n);
    for (const auto& x : occ) {
        Interval v = c.window;
        v.lo += x[0];
        v.hi += x[0];
        const Interval s = v.intersect(f);
        if (!s.empty())
            pieces.push_back(s);
    }
    return total_length(merge_intervals(std::move(pieces))) / (2.0 * n);
}

PartitionParams partition_params(const PointSource& source, double eps, const Region& scan)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("partition_params: eps must be positive");
    PartitionParams out;
    out.epsilon = eps;
    out.eta = delone_params(source, scan).eta;
    const auto table = enumerate_cluster_classes(source, 1.0 / eps, scan);
    const auto& reps = table.representatives;

    // rho_H after aligning some same-colored pair; its minimum is at most
    // twice the translation-minimized distance
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            bool aligned = false;
            for (int c = 0; c < reps[i].colors(); ++c)
                for (const auto& p : reps[i].part(c))
                    for (const auto& q : reps[j].part(c)) {
                        aligned = true;
                        m = std::min(m, cluster_distance(reps[i], translate_cluster(reps[j], p - q)));
                    }
            if (!aligned)
                m = std::min(m, 1.0);
        }
    const bool resolved = std::isfinite(m) && m > kTolEq;
    out.theta1 = resolved ? std::min(0.25 * m, 0.999) : 0.5 * out.eta;
    out.theta = std::min({eps, out.theta1, out.eta});
    out.zeta = 0.25 * out.theta;
    return out;
}

ProductCheck product_identity_check(const SourcePtr& source, const PartitionParams& params, const Interval& v,
                                    std::span<const Point> offsets)
{
    require_1d(source->dim(), "product_identity_check");
    if (!(v.hi - v.lo < params.theta))
        throw std::invalid_argument("product_identity_check: diam(V) must be below theta");
    const double r = 1.0 / params.epsilon;
    ProductCheck out;
    out.cluster = window(*source, Region::interval(-r, r)).cluster;
    out.window = v;
    if (out.cluster.empty())
        throw std::invalid_argument("product_identity_check: B_{1/eps}(0) holds no point");
    const Region reg = Region::interval(-r - v.hi - 1.0, r - v.lo + 1.0);
    const auto patches = sample_orbit(source, offsets, reg);

    std::vector<char> viol(patches.size(), 0);
    std::vector<char> pos(patches.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(patches.size()); ++i) {
        const auto& g = patches[static_cast<std::size_t>(i)];
        const bool chi = cylinder_contains(g, {out.cluster, v});
        bool prod = true;
        for (int c = 0; c < out.cluster.colors() && prod; ++c)
            for (const auto& x : out.cluster.part(c))
                if (!cylinder_contains(g, {Cluster::single(out.cluster.colors(), c, x), v})) {
                    prod = false;
                    break;
                }
        viol[static_cast<std::size_t>(i)] = chi != prod;
        pos[static_cast<std::size_t>(i)] = chi;
    }
    out.samples = patches.size();
    out.violations = static_cast<std::size_t>(std::count(viol.begin(), viol.end(), 1));
    out.positives = static_cast<std::size_t>(std::count(pos.begin(), pos.end(), 1));
    return out;
}

TaperBound taper_bound_check(const PointSource& source, int color, const Interval& v, double zeta, double n)
{
    require_1d(source.dim(), "taper_bound_check");
    if (color < 0 || color >= source.colors())
        throw std::invalid_argument("taper_bound_check: color out of range");
    const SmoothingKernel omega = SmoothingKernel::plateau(v, zeta);
    const Region reg = Region::interval(-n - v.hi - 1.0, n - v.lo + 1.0);
    const MultiSetPatch patch = window(source, reg);
    std::vector<double> pts;
    for (const auto& p : patch.cluster.part(color))
        pts.push_back(p[0]);

    // f(-h + L) = sum_p omega(h - p); chi(-h + L) = 1 iff h - p ∈ V for some p
    const double step_req = zeta / 20.0;
    const auto count = static_cast<std::size_t>(std::ceil(2.0 * n / step_req));
    const double h = 2.0 * n / static_cast<double>(count);
    std::vector<double> terms(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
        const double y = -n + (static_cast<double>(k) + 0.5) * h;
        auto it = std::lower_bound(pts.begin(), pts.end(), y - v.hi - kTolEq);
        double f = 0.0;
        bool chi = false;
        for (; it != pts.end() && *it <= y - v.lo + kTolEq; ++it) {
            f += omega(y - *it);
            chi = chi || v.contains(y - *it, 0.0);
        }
        const double d = f - (chi ? 1.0 : 0.0);
        terms[static_cast<std::size_t>(k)] = d * d;
    }

    TaperBound out;
    out.lhs = pairwise_sum(std::span<const double>(terms)) * h / (2.0 * n);
    VanHoveSpec spec;
    spec.dim = 1;
    spec.schedule = {n};
    const Point zero[] = {Point::zero(1)};
    out.freq = estimate_frequency(source, Cluster::single(source.colors(), color, Point::zero(1)), spec, zero).value;
    out.boundary_volume = 4.0 * zeta;
    out.bound = out.freq * out.boundary_volume;
    return out;
}

} // namespace ppspec
