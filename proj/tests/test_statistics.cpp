#include "ppspec/flc.hpp"
#include "ppspec/generators.hpp"
#include "ppspec/statistics.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>

using namespace ppspec;

namespace {

const double kDensity = (5.0 + std::sqrt(5.0)) / 10.0;  // tau^2 / (tau^2 + 1)

Cluster line(std::vector<double> xs)
{
    Cluster c(1, 1);
    for (double x : xs)
        c.insert(0, Point(x));
    return c;
}

VanHoveSpec single_n(double n)
{
    VanHoveSpec s;
    s.schedule = {n};
    return s;
}

const Point kOrigin = Point::zero(1);

std::span<const Point> origin_only() { return std::span<const Point>(&kOrigin, 1); }

} // namespace

TEST_SUITE("statistics") {

TEST_CASE("boundary layer ratios")
{
    CHECK(boundary_layer_ratio(1, 100.0, 1.0) == doctest::Approx(0.02));
    CHECK(boundary_layer_ratio(2, 10.0, 1.0) == doctest::Approx(0.4));
    const auto spec = VanHoveSpec::geometric(1);
    CHECK(spec.schedule == std::vector<double>{125, 250, 500, 1000, 2000});
    for (double n : spec.schedule) {
        const auto d = van_hove_region(spec, n);
        CHECK(d.difference_ratio == doctest::Approx(2.0));
        CHECK(d.satisfies_k);
    }
    CHECK_THROWS(van_hove_region(spec, 300.0));
}

TEST_CASE("count_cluster examples")
{
    auto z = lattice_source({{1.0}});
    const Region a = Region::interval(0.0, 10.0);
    CHECK(count_cluster(*z, line({0}), a) == 11);
    CHECK(count_cluster(*z, line({0, 1}), a) == 10);
    CHECK(count_cluster(*z, line({0, 0.5}), a) == 0);
}

TEST_CASE("lattice frequencies are exact")
{
    auto z = lattice_source({{1.0}});
    for (double n : {10.0, 1000.0}) {
        const auto e = estimate_frequency(*z, line({0}), single_n(n), origin_only());
        CHECK(e.value == doctest::Approx((2 * n + 1) / (2 * n)).epsilon(1e-14));
        CHECK(e.counts[0][0] == static_cast<std::int64_t>(2 * n + 1));
        const auto pair = estimate_frequency(*z, line({0, 1}), single_n(n), origin_only());
        CHECK(pair.value == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("fibonacci frequencies against tile statistics")
{
    auto fib = fibonacci_source();
    const double n = 1e4;
    const auto offsets = low_discrepancy_offsets(50, 10.0 * kTau);
    const auto e = estimate_frequency(*fib, line({0}), single_n(n), offsets);
    // bounded discrepancy of the model set: the error is O(1/n)
    CHECK(std::abs(e.value - kDensity) <= 4.0 / n);
    CHECK(e.uniformity_gap <= 4.0 / n);

    Cluster wide(1, 1);
    wide.insert(0, Point(QuadInt{0, 0}));
    wide.insert(0, Point(QuadInt{0, 1}));
    const auto fa = estimate_frequency(*fib, wide, single_n(n), origin_only());
    CHECK(std::abs(fa.value - 1.0 / std::sqrt(5.0)) <= 4.0 / n);
    const auto fb = estimate_frequency(*fib, line({0, 1}), single_n(n), origin_only());
    CHECK(std::abs(fb.value - kDensity / (kTau * kTau)) <= 4.0 / n);
}

TEST_CASE("frequencies converge along the schedule")
{
    auto fib = fibonacci_source();
    const auto e = estimate_frequency(*fib, line({0}), VanHoveSpec::geometric(1), origin_only());
    REQUIRE(e.cauchy_gaps.size() == 4);
    for (double g : e.cauchy_gaps)
        CHECK(g <= 4.0 / 125.0);
    CHECK(std::abs(e.mean_ratio.back() - kDensity) < std::abs(e.mean_ratio.front() - kDensity) + 1e-3);
}

TEST_CASE("translation covariance of L_P")
{
    auto fib = fibonacci_source();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-300.0, 300.0);
    const Cluster p = line({0, 1});
    for (int trial = 0; trial < 50; ++trial) {
        const double x = u(rng);
        const Region a = Region::interval(-20.0, 35.0);
        const auto moved = translate_source(fib, Point(x));
        CHECK(count_cluster(*fib, p, a.translated(Point(x))) == count_cluster(*moved, p, a));
    }
}

TEST_CASE("L_P is subadditive and additive on separated regions")
{
    auto fib = fibonacci_source();
    Cluster p(1, 1);
    p.insert(0, Point(QuadInt{0, 0}));
    p.insert(0, Point(QuadInt{0, 1}));
    const Region a = Region::interval(0.0, 50.0), b = Region::interval(30.0, 90.0), u = Region::interval(0.0, 90.0);
    CHECK(count_cluster(*fib, p, u) <= count_cluster(*fib, p, a) + count_cluster(*fib, p, b));
    const Region c = Region::interval(60.0, 90.0);
    const Region ac = Region::interval(0.0, 90.0);
    // occurrences in separated pieces are also occurrences in the hull of both
    CHECK(count_cluster(*fib, p, a) + count_cluster(*fib, p, c) <= count_cluster(*fib, p, ac));
}

TEST_CASE("periodic sources give periodic offset ratios")
{
    auto z = lattice_source({{1.0}});
    const std::vector<Point> offsets = {Point(0.3), Point(1.3), Point(0.0), Point(5.0)};
    const auto e = estimate_frequency(*z, line({0}), single_n(100.0), offsets);
    CHECK(e.ratios[0][0] == e.ratios[0][1]);
    CHECK(e.ratios[0][2] == e.ratios[0][3]);
}

TEST_CASE("low-discrepancy offsets")
{
    const auto o = low_discrepancy_offsets(50, 10.0);
    REQUIRE(o.size() == 50);
    CHECK(o[0][0] == 0.0);
    std::set<double> distinct;
    for (const auto& p : o) {
        CHECK(p[0] >= 0.0);
        CHECK(p[0] <= 10.0);
        distinct.insert(p[0]);
    }
    CHECK(distinct.size() == 50);
    CHECK(low_discrepancy_offsets(10, 3.0, 2)[3].dim == 2);
}

}

TEST_SUITE("flc") {

namespace {

// Translation classes of B_R(x) ∩ L by exhaustive scan, keyed by rounded
// offsets from the leftmost point.
std::set<std::string> brute_classes(const std::vector<double>& v, double lo, double hi, double radius)
{
    std::set<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < lo || v[i] > hi)
            continue;
        std::vector<double> ball;
        for (double y : v)
            if (std::abs(y - v[i]) <= radius + 1e-9)
                ball.push_back(y);
        std::string key;
        for (double y : ball) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f,", y - ball.front());
            key += buf;
        }
        out.insert(key);
    }
    return out;
}

} // namespace

TEST_CASE("lattice has one class")
{
    auto z = lattice_source({{1.0}});
    auto t = enumerate_cluster_classes(*z, 0.4, Region::interval(-100.0, 100.0));
    REQUIRE(t.size() == 1);
    CHECK(t.representatives[0] == line({0}));
    t = enumerate_cluster_classes(*z, 1.0, Region::interval(-100.0, 100.0));
    REQUIRE(t.size() == 1);
    CHECK(t.representatives[0] == line({0, 1, 2}));
    CHECK(t.classify(line({5, 6, 7})).has_value());
    CHECK_FALSE(t.classify(line({5, 7})).has_value());
}

TEST_CASE("fibonacci classes match an exhaustive scan")
{
    auto fib = fibonacci_source();
    const auto v = window(*fib, Region::interval(-5010.0, 5010.0)).support_values();
    const auto brute = brute_classes(v, -5000.0, 5000.0, 3.0);
    const auto small = brute_classes(v, -2500.0, 2500.0, 3.0);
    CHECK(brute == small);
    const auto t = enumerate_cluster_classes(*fib, 3.0, Region::interval(-5000.0, 5000.0));
    CHECK(t.size() == brute.size());
    std::size_t total = 0;
    for (auto c : t.counts)
        total += c;
    CHECK(total == window(*fib, Region::interval(-5000.0, 5000.0)).size());
}

TEST_CASE("class tables grow monotonically with the scan")
{
    auto tm = thue_morse_source();
    const auto small = enumerate_cluster_classes(*tm, 4.0, Region::interval(-30.0, 30.0));
    const auto large = enumerate_cluster_classes(*tm, 4.0, Region::interval(-600.0, 600.0));
    CHECK(small.size() <= large.size());
    for (const auto& c : small.representatives)
        CHECK(large.classify(c).has_value());
}

TEST_CASE("centered clusters")
{
    auto z = lattice_source({{1.0}});
    const auto patch = window(*z, Region::interval(-10.0, 10.0));
    const auto cs = centered_clusters(patch, Region::interval(-2.0, 2.0), 1.5);
    REQUIRE(cs.size() == 5);
    for (const auto& c : cs)
        CHECK(c == line({-1, 0, 1}));
}

}
