#ifndef PPSPEC_GEOMETRY_HPP
#define PPSPEC_GEOMETRY_HPP

#include "ppspec/quadratic.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppspec {

/// Equality slack for floating coordinates and closed-region boundaries.
inline constexpr double kTolEq = 1e-9;

class InsufficientWindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A real coordinate, either exact in Z[tau] or a plain double.
class Coord {
public:
    Coord() = default;
    explicit Coord(double v) : value_(v) {}
    explicit Coord(QuadInt q) : value_(q.value()), exact_(q), is_exact_(true) {}

    bool is_exact() const { return is_exact_; }
    double value() const { return value_; }
    const QuadInt& exact_value() const { return exact_; }

    /// Drops exactness; used when an exact point is moved by a float shift.
    Coord as_float() const { return Coord(value_); }

    Coord operator-() const { return is_exact_ ? Coord(-exact_) : Coord(-value_); }
    friend Coord operator+(const Coord& x, const Coord& y)
    {
        if (x.is_exact_ && y.is_exact_)
            return Coord(x.exact_ + y.exact_);
        return Coord(x.value_ + y.value_);
    }
    friend Coord operator-(const Coord& x, const Coord& y) { return x + (-y); }

private:
    double value_ = 0.0;
    QuadInt exact_{};
    bool is_exact_ = false;
};

/// Three-way comparison; exact when both sides are exact, otherwise values
/// within kTolEq compare equal.
int compare(const Coord& x, const Coord& y, double tol = kTolEq);

/// A point (or translation vector) of R^d, d in {1, 2}.
struct Point {
    std::array<Coord, 2> x{};
    int dim = 1;

    Point() = default;
    explicit Point(double v) : x{Coord(v), Coord()}, dim(1) {}
    explicit Point(QuadInt q) : x{Coord(q), Coord()}, dim(1) {}
    Point(double v0, double v1) : x{Coord(v0), Coord(v1)}, dim(2) {}
    explicit Point(std::span<const double> v);

    static Point zero(int dim);

    double operator[](int i) const { return x[static_cast<std::size_t>(i)].value(); }
    std::vector<double> values() const;
    bool is_exact() const;
    double norm() const;

    Point operator-() const;
    friend Point operator+(const Point& p, const Point& q);
    friend Point operator-(const Point& p, const Point& q) { return p + (-q); }
};

int compare(const Point& p, const Point& q, double tol = kTolEq);
inline bool same_point(const Point& p, const Point& q) { return compare(p, q) == 0; }
double distance(const Point& p, const Point& q);

/// Finite colored configuration P = (P_1, ..., P_m). Parts are kept sorted
/// lexicographically and duplicate free.
class Cluster {
public:
    Cluster() = default;
    Cluster(int colors, int dim);
    static Cluster from_parts(std::vector<std::vector<Point>> parts, int dim);
    static Cluster single(int colors, int color, const Point& p);

    int colors() const { return static_cast<int>(parts_.size()); }
    int dim() const { return dim_; }
    const std::vector<Point>& part(int color) const { return parts_.at(static_cast<std::size_t>(color)); }
    const std::vector<std::vector<Point>>& parts() const { return parts_; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }

    /// Lexicographically smallest support point, with its color.
    std::optional<std::pair<Point, int>> anchor() const;
    /// Translate so that the anchor sits at the origin.
    Cluster anchored() const;
    /// Max distance of a support point from the origin (0 for empty).
    double radius() const;
    double diameter() const;

    /// Inserts a point, keeping the part sorted; returns false on duplicate.
    bool insert(int color, const Point& p);

    friend bool operator==(const Cluster& a, const Cluster& b);

private:
    std::vector<std::vector<Point>> parts_;
    int dim_ = 1;
};

/// x + P.
Cluster translate_cluster(const Cluster& p, const Point& x);

/// The shift x with P = -x + P', if the clusters are translationally
/// equivalent.
std::optional<Point> match_clusters(const Cluster& p, const Cluster& q);

/// Color-wise symmetric point-set distance rho_H, maximized over colors.
double cluster_distance(const Cluster& p, const Cluster& q);

/// Closed ball or closed axis-aligned box in R^d.
class Region {
public:
    enum class Kind { Ball, Box };

    static Region ball(std::span<const double> center, double radius);
    static Region box(std::span<const double> lo, std::span<const double> hi);
    static Region interval(double lo, double hi);
    static Region centered_cube(int dim, double half_width);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    /// Box corners; for a ball, its bounding box.
    std::array<double, 2> lo() const;
    std::array<double, 2> hi() const;
    const std::array<double, 2>& center() const { return a_; }
    double radius() const { return radius_; }

    bool contains(const Point& p, double tol = kTolEq) const;
    /// True when `other` lies inside this region.
    bool covers(const Region& other, double tol = kTolEq) const;
    bool bounded() const;
    double volume() const;
    Region translated(const Point& shift) const;
    /// Minkowski dilation by r (box stays a box, ball grows its radius).
    Region dilated(double r) const;
    Region bounding_box() const;

    std::string str() const;

private:
    Kind kind_ = Kind::Box;
    int dim_ = 1;
    std::array<double, 2> a_{};  // box lo or ball center
    std::array<double, 2> b_{};  // box hi
    double radius_ = 0.0;
};

/// Interval in R with explicit endpoint closedness; the windows V of
/// cylinder sets and partition cells.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = false;

    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval half_open(double lo, double hi) { return {lo, hi, true, false}; }

    double length() const { return hi > lo ? hi - lo : 0.0; }
    bool empty() const;
    /// Membership with tolerance: closed ends widen, open ends shrink, so
    /// abutting [a,b) and [b,c) stay disjoint.
    bool contains(double v, double tol = kTolEq) const;
    Interval intersect(const Interval& o) const;
    std::string str() const;
};

/// A ∩ Λ together with the region A.
struct MultiSetPatch {
    Region region;
    Cluster cluster;

    int colors() const { return cluster.colors(); }
    int dim() const { return cluster.dim(); }
    std::size_t size() const { return cluster.size(); }

    /// Points of the patch in `sub`; `sub` must lie inside `region`.
    MultiSetPatch restricted(const Region& sub) const;
    /// All support points sorted, with colors (1D convenience).
    std::vector<std::pair<Point, int>> support() const;
    /// Support coordinates in 1D, sorted.
    std::vector<double> support_values() const;
};

} // namespace ppspec

#endif
