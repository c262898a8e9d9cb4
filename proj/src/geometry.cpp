#include "ppspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ppspec {

double QuadInt::value() const
{
    return static_cast<double>(a) + static_cast<double>(b) * kTau;
}

int QuadInt::sign() const
{
    // 2(a + b tau) = (2a + b) + b sqrt5
    const __int128 u = 2 * static_cast<__int128>(a) + b;
    const __int128 v = b;
    if (u >= 0 && v >= 0)
        return (u == 0 && v == 0) ? 0 : 1;
    if (u <= 0 && v <= 0)
        return -1;
    const __int128 u2 = u * u;
    const __int128 v2 = 5 * v * v;
    if (u > 0) // v < 0
        return u2 > v2 ? 1 : -1;
    return v2 > u2 ? 1 : -1;
}

std::string QuadInt::str() const
{
    std::ostringstream os;
    os << a << (b < 0 ? "-" : "+") << (b < 0 ? -b : b) << "t";
    return os.str();
}

int compare(const Coord& x, const Coord& y, double tol)
{
    if (x.is_exact() && y.is_exact())
        return (x.exact_value() - y.exact_value()).sign();
    const double d = x.value() - y.value();
    if (std::abs(d) <= tol)
        return 0;
    return d < 0 ? -1 : 1;
}

Point::Point(std::span<const double> v)
{
    if (v.empty() || v.size() > 2)
        throw std::invalid_argument("point dimension must be 1 or 2");
    dim = static_cast<int>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        x[i] = Coord(v[i]);
}

Point Point::zero(int dim)
{
    Point p;
    p.dim = dim;
    return p;
}

std::vector<double> Point::values() const
{
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        v[static_cast<std::size_t>(i)] = (*this)[i];
    return v;
}

bool Point::is_exact() const
{
    for (int i = 0; i < dim; ++i)
        if (!x[static_cast<std::size_t>(i)].is_exact())
            return false;
    return true;
}

double Point::norm() const
{
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
        s += (*this)[i] * (*this)[i];
    return std::sqrt(s);
}

Point Point::operator-() const
{
    Point r = *this;
    for (auto& c : r.x)
        c = -c;
    return r;
}

Point operator+(const Point& p, const Point& q)
{
    if (p.dim != q.dim)
        throw std::invalid_argument("dimension mismatch");
    Point r;
    r.dim = p.dim;
    for (std::size_t i = 0; i < 2; ++i)
        r.x[i] = p.x[i] + q.x[i];
    return r;
}

int compare(const Point& p, const Point& q, double tol)
{
    for (int i = 0; i < std::min(p.dim, q.dim); ++i) {
        const int c = compare(p.x[static_cast<std::size_t>(i)], q.x[static_cast<std::size_t>(i)], tol);
        if (c != 0)
            return c;
    }
    return p.dim == q.dim ? 0 : (p.dim < q.dim ? -1 : 1);
}

double distance(const Point& p, const Point& q)
{
    double s = 0.0;
    for (int i = 0; i < p.dim; ++i) {
        const double d = p[i] - q[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------

namespace {

void normalize(std::vector<Point>& part)
{
    std::sort(part.begin(), part.end(),
              [](const Point& a, const Point& b) { return compare(a, b) < 0; });
    part.erase(std::unique(part.begin(), part.end(), same_point), part.end());
}

} // namespace

Cluster::Cluster(int colors, int dim) : parts_(static_cast<std::size_t>(colors)), dim_(dim)
{
    if (colors < 1)
        throw std::invalid_argument("cluster needs at least one color");
    if (dim < 1 || dim > 2)
        throw std::invalid_argument("dimension must be 1 or 2");
}

Cluster Cluster::from_parts(std::vector<std::vector<Point>> parts, int dim)
{
    Cluster c(static_cast<int>(parts.size()), dim);
    for (auto& part : parts) {
        for (const auto& p : part)
            if (p.dim != dim)
                throw std::invalid_argument("point dimension does not match cluster");
        normalize(part);
    }
    c.parts_ = std::move(parts);
    return c;
}

Cluster Cluster::single(int colors, int color, const Point& p)
{
    Cluster c(colors, p.dim);
    c.parts_.at(static_cast<std::size_t>(color)).push_back(p);
    return c;
}

std::size_t Cluster::size() const
{
    std::size_t n = 0;
    for (const auto& part : parts_)
        n += part.size();
    return n;
}

std::optional<std::pair<Point, int>> Cluster::anchor() const
{
    std::optional<std::pair<Point, int>> best;
    for (std::size_t c = 0; c < parts_.size(); ++c) {
        if (parts_[c].empty())
            continue;
        if (!best || compare(parts_[c].front(), best->first) < 0)
            best = std::pair{parts_[c].front(), static_cast<int>(c)};
    }
    return best;
}

Cluster Cluster::anchored() const
{
    auto a = anchor();
    if (!a)
        return *this;
    return translate_cluster(*this, -a->first);
}

double Cluster::radius() const
{
    double r = 0.0;
    for (const auto& part : parts_)
        for (const auto& p : part)
            r = std::max(r, p.norm());
    return r;
}

double Cluster::diameter() const
{
    double d = 0.0;
    std::vector<Point> all;
    for (const auto& part : parts_)
        all.insert(all.end(), part.begin(), part.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            d = std::max(d, distance(all[i], all[j]));
    return d;
}

bool Cluster::insert(int color, const Point& p)
{
    if (p.dim != dim_)
        throw std::invalid_argument("point dimension does not match cluster");
    auto& part = parts_.at(static_cast<std::size_t>(color));
    auto it = std::lower_bound(part.begin(), part.end(), p,
                               [](const Point& a, const Point& b) { return compare(a, b) < 0; });
    if (it != part.end() && same_point(*it, p))
        return false;
    part.insert(it, p);
    return true;
}

bool operator==(const Cluster& a, const Cluster& b)
{
    if (a.colors() != b.colors() || a.dim() != b.dim())
        return false;
    for (int c = 0; c < a.colors(); ++c) {
        const auto& pa = a.part(c);
        const auto& pb = b.part(c);
        if (pa.size() != pb.size())
            return false;
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (!same_point(pa[i], pb[i]))
                return false;
    }
    return true;
}

Cluster translate_cluster(const Cluster& p, const Point& x)
{
    if (x.dim != p.dim())
        throw std::invalid_argument("translate_cluster: dimension mismatch");
    std::vector<std::vector<Point>> parts = p.parts();
    for (auto& part : parts)
        for (auto& q : part)
            q = q + x;
    // translation preserves the lexicographic order
    Cluster out(p.colors(), p.dim());
    out = Cluster::from_parts(std::move(parts), p.dim());
    return out;
}

std::optional<Point> match_clusters(const Cluster& p, const Cluster& q)
{
    if (p.colors() != q.colors() || p.dim() != q.dim() || p.size() != q.size())
        return std::nullopt;
    const auto ap = p.anchor();
    const auto aq = q.anchor();
    if (!ap && !aq)
        return Point::zero(p.dim());
    if (!ap || !aq || ap->second != aq->second)
        return std::nullopt;
    const Point x = aq->first - ap->first;
    if (translate_cluster(p, x) == q)
        return x;
    return std::nullopt;
}

namespace {

double dist_to_set(const Point& x, const std::vector<Point>& set)
{
    double d = std::numeric_limits<double>::infinity();
    for (const auto& y : set)
        d = std::min(d, distance(x, y));
    return d;
}

} // namespace

double cluster_distance(const Cluster& p, const Cluster& q)
{
    if (p.colors() != q.colors() || p.dim() != q.dim())
        throw std::invalid_argument("cluster_distance: incompatible clusters");
    double worst = 0.0;
    for (int c = 0; c < p.colors(); ++c) {
        const auto& a = p.part(c);
        const auto& b = q.part(c);
        if (a.empty() && b.empty())
            continue;
        if (a.empty() || b.empty()) {
            worst = std::max(worst, 1.0);
            continue;
        }
        for (const auto& x : a)
            worst = std::max(worst, dist_to_set(x, b));
        for (const auto& y : b)
            worst = std::max(worst, dist_to_set(y, a));
    }
    return worst;
}

// ---------------------------------------------------------------------------

Region Region::ball(std::span<const double> center, double radius)
{
    if (center.empty() || center.size() > 2)
        throw std::invalid_argument("region dimension must be 1 or 2");
    if (!(radius >= 0.0))
        throw std::invalid_argument("ball radius must be non-negative");
    Region r;
    r.kind_ = Kind::Ball;
    r.dim_ = static_cast<int>(center.size());
    for (std::size_t i = 0; i < center.size(); ++i)
        r.a_[i] = center[i];
    r.radius_ = radius;
    return r;
}

Region Region::box(std::span<const double> lo, std::span<const double> hi)
{
    if (lo.size() != hi.size() || lo.empty() || lo.size() > 2)
        throw std::invalid_argument("box corners must have matching dimension 1 or 2");
    Region r;
    r.kind_ = Kind::Box;
    r.dim_ = static_cast<int>(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] <= hi[i]))
            throw std::invalid_argument("box corners out of order");
        r.a_[i] = lo[i];
        r.b_[i] = hi[i];
    }
    return r;
}

Region Region::interval(double lo, double hi)
{
    const double l[1] = {lo};
    const double h[1] = {hi};
    return box(l, h);
}

Region Region::centered_cube(int dim, double half_width)
{
    std::array<double, 2> lo{-half_width, -half_width};
    std::array<double, 2> hi{half_width, half_width};
    return box(std::span<const double>(lo.data(), static_cast<std::size_t>(dim)),
               std::span<const double>(hi.data(), static_cast<std::size_t>(dim)));
}

std::array<double, 2> Region::lo() const
{
    if (kind_ == Kind::Box)
        return a_;
    return {a_[0] - radius_, a_[1] - radius_};
}

std::array<double, 2> Region::hi() const
{
    if (kind_ == Kind::Box)
        return b_;
    return {a_[0] + radius_, a_[1] + radius_};
}

bool Region::contains(const Point& p, double tol) const
{
    if (p.dim != dim_)
        throw std::invalid_argument("region/point dimension mismatch");
    if (kind_ == Kind::Box) {
        for (int i = 0; i < dim_; ++i) {
            const auto k = static_cast<std::size_t>(i);
            if (p[i] < a_[k] - tol || p[i] > b_[k] + tol)
                return false;
        }
        return true;
    }
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
        const double d = p[i] - a_[static_cast<std::size_t>(i)];
        s += d * d;
    }
    return std::sqrt(s) <= radius_ + tol;
}

bool Region::covers(const Region& other, double tol) const
{
    if (other.dim_ != dim_)
        return false;
    if (kind_ == Kind::Box) {
        const auto ol = other.lo();
        const auto oh = other.hi();
        for (std::size_t i = 0; i < static_cast<std::size_t>(dim_); ++i)
            if (ol[i] < a_[i] - tol || oh[i] > b_[i] + tol)
                return false;
        return true;
    }
    if (other.kind_ == Kind::Ball) {
        double s = 0.0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(dim_); ++i)
            s += (other.a_[i] - a_[i]) * (other.a_[i] - a_[i]);
        return std::sqrt(s) + other.radius_ <= radius_ + tol;
    }
    // box inside ball: every corner inside
    const auto ol = other.lo();
    const auto oh = other.hi();
    const int corners = dim_ == 1 ? 2 : 4;
    for (int c = 0; c < corners; ++c) {
        std::array<double, 2> v{(c & 1) ? oh[0] : ol[0], (c & 2) ? oh[1] : ol[1]};
        if (!contains(Point(std::span<const double>(v.data(), static_cast<std::size_t>(dim_))), tol))
            return false;
    }
    return true;
}

bool Region::bounded() const
{
    for (std::size_t i = 0; i < static_cast<std::size_t>(dim_); ++i)
        if (!std::isfinite(a_[i]) || (kind_ == Kind::Box && !std::isfinite(b_[i])))
            return false;
    return std::isfinite(radius_);
}

double Region::volume() const
{
    if (kind_ == Kind::Box) {
        double v = 1.0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(dim_); ++i)
            v *= b_[i] - a_[i];
        return v;
    }
    return dim_ == 1 ? 2.0 * radius_ : M_PI * radius_ * radius_;
}

Region Region::translated(const Point& shift) const
{
    if (shift.dim != dim_)
        throw std::invalid_argument("region/shift dimension mismatch");
    Region r = *this;
    for (int i = 0; i < dim_; ++i) {
        const auto k = static_cast<std::size_t>(i);
        r.a_[k] += shift[i];
        r.b_[k] += shift[i];
    }
    return r;
}

Region Region::dilated(double rad) const
{
    Region r = *this;
    if (kind_ == Kind::Ball) {
        r.radius_ = std::max(0.0, radius_ + rad);
        return r;
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(dim_); ++i) {
        r.a_[i] -= rad;
        r.b_[i] += rad;
        if (r.a_[i] > r.b_[i])
            r.a_[i] = r.b_[i] = 0.5 * (r.a_[i] + r.b_[i]);
    }
    return r;
}

Region Region::bounding_box() const
{
    const auto l = lo();
    const auto h = hi();
    return box(std::span<const double>(l.data(), static_cast<std::size_t>(dim_)),
               std::span<const double>(h.data(), static_cast<std::size_t>(dim_)));
}

std::string Region::str() const
{
    std::ostringstream os;
    if (kind_ == Kind::Ball) {
        os << "ball(c=" << a_[0];
        if (dim_ == 2)
            os << "," << a_[1];
        os << ", r=" << radius_ << ")";
    } else {
        os << "box([" << a_[0];
        if (dim_ == 2)
            os << "," << a_[1];
        os << "], [" << b_[0];
        if (dim_ == 2)
            os << "," << b_[1];
        os << "])";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

bool Interval::empty() const
{
    if (hi < lo)
        return true;
    if (hi == lo)
        return !(lo_closed && hi_closed);
    return false;
}

bool Interval::contains(double v, double tol) const
{
    const bool above = lo_closed ? v >= lo - tol : v > lo + tol;
    const bool below = hi_closed ? v <= hi + tol : v < hi - tol;
    return above && below;
}

Interval Interval::intersect(const Interval& o) const
{
    Interval r;
    if (lo > o.lo) {
        r.lo = lo;
        r.lo_closed = lo_closed;
    } else if (o.lo > lo) {
        r.lo = o.lo;
        r.lo_closed = o.lo_closed;
    } else {
        r.lo = lo;
        r.lo_closed = lo_closed && o.lo_closed;
    }
    if (hi < o.hi) {
        r.hi = hi;
        r.hi_closed = hi_closed;
    } else if (o.hi < hi) {
        r.hi = o.hi;
        r.hi_closed = o.hi_closed;
    } else {
        r.hi = hi;
        r.hi_closed = hi_closed && o.hi_closed;
    }
    return r;
}

std::string Interval::str() const
{
    std::ostringstream os;
    os.precision(17);
    os << (lo_closed ? "[" : "(") << lo << ", " << hi << (hi_closed ? "]" : ")");
    return os.str();
}

// ---------------------------------------------------------------------------

MultiSetPatch MultiSetPatch::restricted(const Region& sub) const
{
    if (!region.covers(sub))
        throw InsufficientWindowError("restriction region " + sub.str() + " exceeds patch region " +
                                      region.str());
    std::vector<std::vector<Point>> parts(static_cast<std::size_t>(colors()));
    for (int c = 0; c < colors(); ++c)
        for (const auto& p : cluster.part(c))
            if (sub.contains(p))
                parts[static_cast<std::size_t>(c)].push_back(p);
    return {sub, Cluster::from_parts(std::move(parts), dim())};
}

std::vector<std::pair<Point, int>> MultiSetPatch::support() const
{
    std::vector<std::pair<Point, int>> out;
    out.reserve(size());
    for (int c = 0; c < colors(); ++c)
        for (const auto& p : cluster.part(c))
            out.emplace_back(p, c);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    return out;
}

std::vector<double> MultiSetPatch::support_values() const
{
    std::vector<double> v;
    v.reserve(size());
    for (int c = 0; c < colors(); ++c)
        for (const auto& p : cluster.part(c))
            v.push_back(p[0]);
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace ppspec
