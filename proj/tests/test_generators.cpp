#include "ppspec/flc.hpp"
#include "ppspec/generators.hpp"

#include "doctest.h"

#include <bit>
#include <cmath>
#include <random>
#include <string>

using namespace ppspec;

namespace {

// Independent string rewriting for the Fibonacci word a -> ab, b -> a.
std::string fibonacci_word(int times)
{
    std::string w = "a";
    for (int i = 0; i < times; ++i) {
        std::string next;
        for (char c : w)
            next += c == 'a' ? "ab" : "a";
        w = next;
    }
    return w;
}

bool same_support(const MultiSetPatch& a, const MultiSetPatch& b)
{
    const auto sa = a.support();
    const auto sb = b.support();
    if (sa.size() != sb.size())
        return false;
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (!same_point(sa[i].first, sb[i].first) || sa[i].second != sb[i].second)
            return false;
    return true;
}

} // namespace

TEST_SUITE("generators") {

TEST_CASE("lattice examples")
{
    auto z = lattice_source({{1.0}});
    CHECK(window(*z, Region::interval(0.0, 5.0)).size() == 6);
    CHECK(window(*z, Region::interval(0.1, 0.9)).size() == 0);
    const auto two = window(*lattice_source({{2.0}}, 2), Region::interval(0.0, 10.0)).support();
    REQUIRE(two.size() == 6);
    for (std::size_t i = 0; i < two.size(); ++i)
        CHECK(two[i].second == static_cast<int>(i % 2));
    auto z2 = lattice_source({{1.0, 0.0}, {0.0, 1.0}});
    const double lo[] = {0.0, 0.0}, hi[] = {2.0, 2.0};
    CHECK(window(*z2, Region::box(lo, hi)).size() == 9);
}

TEST_CASE("fibonacci patch matches word expansion")
{
    auto fib = fibonacci_source();
    const std::string word = fibonacci_word(12);
    // brute-force point count on [0, 100] from cumulative tile lengths
    std::size_t expected = 0;
    double x = 0.0;
    for (char c : word) {
        if (x > 100.0)
            break;
        ++expected;
        x += c == 'a' ? kTau : 1.0;
    }
    CHECK(window(*fib, Region::interval(0.0, 100.0)).size() == expected);

    // tile sequence on [0, tau^6] is the five-fold expansion of a
    const std::string w5 = fibonacci_word(5);
    const auto pts = window(*fib, Region::interval(0.0, std::pow(kTau, 6))).support_values();
    REQUIRE(pts.size() == w5.size() + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double gap = pts[i + 1] - pts[i];
        CHECK(std::abs(gap - (w5[i] == 'a' ? kTau : 1.0)) < 1e-9);
    }
}

TEST_CASE("cut-and-project and substitution agree exactly")
{
    auto sub = fibonacci_source();
    auto cp = cut_project_source(CutProjectSpec::fibonacci());
    for (const auto& r : {Region::interval(0.0, 1000.0), Region::interval(-1000.0, 0.0), Region::interval(0.0, 20.0)}) {
        const auto a = window(*sub, r);
        const auto b = window(*cp, r);
        REQUIRE(a.size() == b.size());
        const auto sa = a.support(), sb = b.support();
        for (std::size_t i = 0; i < sa.size(); ++i) {
            REQUIRE(sa[i].first.x[0].is_exact());
            CHECK(sa[i].first.x[0].exact_value() == sb[i].first.x[0].exact_value());
        }
    }
}

TEST_CASE("cut-and-project window monotonicity and offset covariance")
{
    const Region r = Region::interval(0.0, 100.0);
    auto full = cut_project_source(CutProjectSpec::fibonacci());
    CutProjectSpec half = CutProjectSpec::fibonacci();
    // [-1, tau - 2) has length tau - 1 < tau
    half.window_hi = Coord(QuadInt{-2, 1});
    CHECK(window(*cut_project_source(half), r).size() < window(*full, r).size());

    CutProjectSpec shifted = CutProjectSpec::fibonacci();
    shifted.offset = QuadInt{1, 2};
    auto moved = cut_project_source(shifted);
    const auto base = window(*full, Region::interval(-50.0, 150.0)).support();
    const auto got = window(*moved, Region::interval(-50.0 + QuadInt{1, 2}.value(), 150.0 + QuadInt{1, 2}.value())).support();
    REQUIRE(base.size() == got.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(got[i].first.x[0].exact_value() == base[i].first.x[0].exact_value() + QuadInt{1, 2});
}

TEST_CASE("thue-morse letters follow the bit-count parity")
{
    auto tm = thue_morse_source();
    const auto s = window(*tm, Region::interval(-1000.0, 1000.0)).support();
    REQUIRE(s.size() == 2001);
    for (const auto& [p, color] : s) {
        const auto k = static_cast<long>(std::lround(p[0]));
        // the left half mirrors the right half: position -k carries letter k - 1
        const unsigned long idx = k >= 0 ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k - 1);
        CHECK(color == std::popcount(idx) % 2);
    }
    const auto at13 = window(*tm, Region::interval(13.0, 13.0)).support();
    REQUIRE(at13.size() == 1);
    CHECK(at13[0].second == 1);
}

TEST_CASE("period doubling has unit tiles")
{
    auto pd = substitution_source(SubstitutionRule::period_doubling(), 0);
    const auto v = window(*pd, Region::interval(0.0, 50.0)).support_values();
    REQUIRE(v.size() == 51);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(v[i] == doctest::Approx(static_cast<double>(i)));
}

TEST_CASE("tile lengths are a left eigenvector of the substitution")
{
    for (const auto& rule :
         {SubstitutionRule::fibonacci(), SubstitutionRule::thue_morse(), SubstitutionRule::period_doubling()}) {
        CHECK(is_primitive(rule));
        for (std::size_t l = 0; l < rule.letters(); ++l) {
            Coord sum(QuadInt{0, 0});
            for (int e : rule.expansion[l])
                sum = sum + rule.lengths[static_cast<std::size_t>(e)];
            const QuadInt lhs = rule.lengths[l].exact_value() * rule.inflation.exact_value();
            CHECK(lhs == sum.exact_value());
        }
    }
    const auto m = substitution_matrix(SubstitutionRule::fibonacci());
    CHECK(m == std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 0}});
}

TEST_CASE("delone constants of the bundled generators")
{
    const Region scan = Region::interval(0.0, 1e4);
    auto p = delone_params(*lattice_source({{1.0}}), scan);
    CHECK(p.eta == doctest::Approx(1.0));
    CHECK(p.b == doctest::Approx(1.0));
    p = delone_params(*lattice_source({{2.0}}), scan);
    CHECK(p.eta == doctest::Approx(2.0));
    CHECK(p.b == doctest::Approx(2.0));
    p = delone_params(*fibonacci_source(), scan);
    CHECK(p.eta == doctest::Approx(1.0));
    CHECK(p.b == doctest::Approx(kTau));
    for (const auto& s : {thue_morse_source(), substitution_source(SubstitutionRule::period_doubling(), 0, 0),
                          cut_project_source(CutProjectSpec::fibonacci())}) {
        const auto q = delone_params(*s, scan);
        CHECK(q.eta > 0.0);
        CHECK(std::isfinite(q.b));
    }
}

TEST_CASE("poisson source statistics")
{
    auto a = poisson_source(1.0, 42);
    auto b = poisson_source(1.0, 42);
    const Region r = Region::interval(0.0, 1e4);
    const auto pa = window(*a, r);
    CHECK(pa.size() == window(*b, r).size());
    const double n = static_cast<double>(pa.size());
    CHECK(std::abs(n - 1e4) <= 5.0 * 100.0);

    // counts in unit cells against Poisson(1): bins 0, 1, 2, 3, >= 4
    std::vector<int> cell(10000, 0);
    for (double x : pa.support_values())
        if (x < 1e4)
            ++cell[static_cast<std::size_t>(x)];
    std::vector<double> observed(5, 0.0);
    for (int c : cell)
        observed[static_cast<std::size_t>(std::min(c, 4))] += 1.0;
    const double e = std::exp(-1.0);
    const std::vector<double> p = {e, e, e / 2, e / 6, 1.0 - e - e - e / 2 - e / 6};
    double chi2 = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double expected = 1e4 * p[i];
        chi2 += (observed[i] - expected) * (observed[i] - expected) / expected;
    }
    // 4 degrees of freedom; 18.47 is the 0.1% quantile
    CHECK(chi2 < 18.47);
}

TEST_CASE("window consistency on nested regions")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-500.0, 500.0);
    std::uniform_real_distribution<double> len(0.0, 100.0);
    const std::vector<SourcePtr> sources = {lattice_source({{1.0}}), lattice_source({{0.7}}, 3), fibonacci_source(),
                                            thue_morse_source(), poisson_source(2.0, 9),
                                            cut_project_source(CutProjectSpec::fibonacci())};
    for (const auto& s : sources)
        for (int trial = 0; trial < 100; ++trial) {
            const double lo = u(rng), hi = lo + len(rng);
            const double pad_lo = len(rng), pad_hi = len(rng);
            const Region inner = Region::interval(lo, hi);
            const Region outer = Region::interval(lo - pad_lo, hi + pad_hi);
            CHECK(same_support(window(*s, outer).restricted(inner), window(*s, inner)));
        }
}

TEST_CASE("source specs")
{
    CHECK(source_from_json({{"type", "fibonacci"}})->exact());
    CHECK(source_from_json({{"type", "lattice"}, {"spacing", 2.0}})->period().value() == doctest::Approx(2.0));
    CHECK(source_from_json({{"type", "poisson"}, {"intensity", 0.5}, {"seed", 3}})->dim() == 1);
    CHECK_THROWS_AS(source_from_json({{"type", "penrose"}}), std::invalid_argument);
    CHECK_THROWS_AS(source_from_json({{"kind", "lattice"}}), std::invalid_argument);
    CHECK_THROWS_AS(source_from_json({{"type", "lattice"}, {"spacing", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(window(*fibonacci_source(), Region::centered_cube(2, 1.0)), std::invalid_argument);
}

}
