#include "ppspec/generators.hpp"
#include "ppspec/spectra.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace ppspec;

namespace {

const double kPi = 3.14159265358979323846;
const double kSqrt5 = std::sqrt(5.0);

VanHoveSpec single_n(double n)
{
    VanHoveSpec s;
    s.schedule = {n};
    return s;
}

// Fibonacci as a model set: lattice {(x, x')} of covolume sqrt 5, window
// length tau. At k = (l - m tau') / sqrt 5 the dual coordinate is
// k* = (m tau - l) / sqrt 5 and I(k) = (tau / sqrt 5)^2 sinc^2(pi k* tau).
double fibonacci_intensity(int l, int m, double* k_out)
{
    const double tau_c = 1.0 - kTau;
    const double k = (l - m * tau_c) / kSqrt5;
    const double ks = (m * kTau - l) / kSqrt5;
    const double z = kPi * ks * kTau;
    const double sinc = z == 0.0 ? 1.0 : std::sin(z) / z;
    *k_out = k;
    return (kTau / kSqrt5) * (kTau / kSqrt5) * sinc * sinc;
}

} // namespace

TEST_SUITE("spectra") {

TEST_CASE("autocorrelation of Z and of the alternating comb")
{
    auto z = lattice_source({{1.0}});
    const auto g = autocorr_from_frequencies(*z, WeightVector::ones(1), 5.0, single_n(1e4), 1e4);
    REQUIRE(g.entries.size() == 11);
    for (const auto& e : g.entries)
        CHECK(std::abs(e.c - cplx(1.0)) <= 1e-3);
    CHECK(g.at(0.5) == cplx(0.0));

    const auto d = autocorr_direct(*z, WeightVector::ones(1), 2.0, single_n(1e3), 1e3);
    CHECK(std::abs(d.at(1.0) - cplx(1.0)) <= 1e-3);

    // brute pair counting over F_n = [-1000, 1000] for the comb
    auto comb = lattice_source({{1.0}}, 2);
    const WeightVector w({1.0, -1.0});
    const auto c = autocorr_from_frequencies(*comb, w, 3.0, single_n(1e3), 1e3);
    for (int t = -3; t <= 3; ++t) {
        double sum = 0.0;
        for (int y = -1000; y <= 1000; ++y) {
            const int x = y + t;
            if (x < -1000 || x > 1000)
                continue;
            sum += ((x % 2 == 0) ? 1.0 : -1.0) * ((y % 2 == 0) ? 1.0 : -1.0);
        }
        CHECK(std::abs(c.at(t) - cplx(sum / 2000.0)) <= 1e-12);
        CHECK(std::abs(c.at(t) - cplx(t % 2 == 0 ? 1.0 : -1.0)) <= 2e-3);
    }
}

TEST_CASE("poisson autocorrelation at zero is the intensity")
{
    auto po = poisson_source(1.0, 17);
    const auto g = autocorr_direct(*po, WeightVector::ones(1), 0.5, single_n(1e4), 1e4);
    CHECK(std::abs(g.at(0.0) - cplx(1.0)) <= 0.05);
}

TEST_CASE("the two autocorrelation routes agree")
{
    auto fib = fibonacci_source();
    const auto a = autocorr_from_frequencies(*fib, WeightVector::ones(1), 10.0, single_n(1e4), 1e4);
    const auto b = autocorr_direct(*fib, WeightVector::ones(1), 10.0, single_n(1e4), 1e4);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].t == doctest::Approx(b.entries[i].t));
        CHECK(std::abs(a.entries[i].c - b.entries[i].c) <= 2e-3);
    }
    CHECK(a.entries[0].exact_t.has_value());
}

TEST_CASE("hermitian symmetry")
{
    auto tm = thue_morse_source();
    const WeightVector w({cplx(1.0, 0.0), cplx(0.3, -0.8)});
    for (const auto& g : {autocorr_from_frequencies(*tm, w, 6.0, single_n(2e3), 2e3),
                          autocorr_direct(*tm, w, 6.0, single_n(2e3), 2e3)}) {
        for (const auto& e : g.entries)
            CHECK(g.at(-e.t) == std::conj(e.c));
    }
    auto comb = lattice_source({{0.7}}, 3);
    const WeightVector w3({cplx(1.0, 1.0), cplx(-0.5, 0.2), cplx(0.0, 2.0)});
    const auto g = autocorr_direct(*comb, w3, 5.0, single_n(1e3), 1e3);
    for (const auto& e : g.entries)
        CHECK(std::abs(g.at(-e.t) - std::conj(e.c)) <= 1e-12);
}

TEST_CASE("autocorrelation is positive definite")
{
    auto fib = fibonacci_source();
    const auto g = autocorr_direct(*fib, WeightVector::ones(1), 30.0, single_n(5e3), 5e3);
    const auto pts = window(*fib, Region::interval(-15.0, 15.0)).support_values();
    std::mt19937_64 rng(21);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> t;
        std::vector<cplx> z;
        for (int i = 0; i < 8; ++i) {
            t.push_back(pts[pick(rng)]);
            z.emplace_back(gauss(rng), gauss(rng));
        }
        const cplx q = positive_definite_form(g, t, z);
        CHECK(q.real() >= -1e-9);
        CHECK(std::abs(q.imag()) <= 1e-9);
    }
}

TEST_CASE("weights enter bilinearly")
{
    auto tm = thue_morse_source();
    const WeightVector w({1.0, -1.0});
    const cplx alpha(0.6, -1.7);
    const auto g = autocorr_direct(*tm, w, 5.0, single_n(2e3), 2e3);
    const auto h = autocorr_direct(*tm, w.scaled(alpha), 5.0, single_n(2e3), 2e3);
    REQUIRE(g.entries.size() == h.entries.size());
    for (std::size_t i = 0; i < g.entries.size(); ++i)
        CHECK(std::abs(h.entries[i].c - std::norm(alpha) * g.entries[i].c) <= 1e-12);

    auto comb = lattice_source({{1.0}}, 2);
    const double ns[] = {500.0, 1000.0};
    const auto a = peak_scan(*comb, WeightVector({1.0, -1.0}), 0.0, 1.0, ns);
    const auto b = peak_scan(*comb, WeightVector({1.0, -1.0}).scaled(alpha), 0.0, 1.0, ns);
    REQUIRE(a.retained().size() == b.retained().size());
    for (std::size_t i = 0; i < a.retained().size(); ++i)
        CHECK(std::abs(a.retained()[i].k - b.retained()[i].k) <= 1e-9);
}

TEST_CASE("bragg amplitudes of lattices")
{
    auto z = lattice_source({{1.0}});
    const double n = 1e3;
    CHECK(std::abs(bragg_amplitude(*z, WeightVector::ones(1), 0.0, single_n(n), n) - cplx((2 * n + 1) / (2 * n))) <=
          1e-12);
    CHECK(std::abs(bragg_amplitude(*z, WeightVector::ones(1), 0.5, single_n(n), n)) <= 1.0 / (2 * n) + 1e-15);
    auto comb = lattice_source({{1.0}}, 2);
    const auto a1 = bragg_amplitude(*comb, WeightVector({1.0, -1.0}), 0.5, single_n(1e3), 1e3);
    const auto a2 = bragg_amplitude(*comb, WeightVector({1.0, -1.0}), 0.5, single_n(2e3), 2e3);
    CHECK(std::abs(std::abs(a1) - 1.0) <= 1e-3);
    CHECK(std::abs(a1 - a2) <= 1e-3);
}

TEST_CASE("fibonacci bragg intensities follow the model-set formula")
{
    auto fib = fibonacci_source();
    const double n = 1e4;
    for (auto [l, m] : {std::pair{1, 1}, std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 3}, std::pair{1, 0}}) {
        double k = 0.0;
        const double want = fibonacci_intensity(l, m, &k);
        const double got = std::norm(bragg_amplitude(*fib, WeightVector::ones(1), k, single_n(n), n));
        CHECK(std::abs(got - want) <= 1e-3);
    }
    double k = 0.0;
    CHECK(fibonacci_intensity(1, 1, &k) == doctest::Approx(0.2580).epsilon(1e-3));
}

TEST_CASE("peak scans")
{
    auto z = lattice_source({{1.0}});
    const double ns[] = {1000.0, 4000.0};
    const auto ez = peak_scan(*z, WeightVector::ones(1), -1.5, 1.5, ns);
    const auto rz = ez.retained();
    REQUIRE(rz.size() == 3);
    for (const auto& p : rz) {
        CHECK(std::abs(p.k - std::round(p.k)) <= 1e-9);
        CHECK(std::abs(p.intensity - 1.0) <= 2.0 / p.n);
    }

    auto comb = lattice_source({{1.0}}, 2);
    const auto rc = peak_scan(*comb, WeightVector({1.0, -1.0}), -1.0, 1.0, ns).retained();
    REQUIRE(rc.size() == 2);
    for (const auto& p : rc) {
        CHECK(std::abs(std::abs(p.k) - 0.5) <= 1e-9);
        CHECK(std::abs(p.intensity - 1.0) <= 5e-3);
        CHECK(std::abs(std::norm(bragg_amplitude(*comb, WeightVector({1.0, -1.0}), p.k, single_n(4e3), 4e3)) -
                       p.intensity) <= 1e-12);
    }

    auto po = poisson_source(1.0, 5);
    const auto ep = peak_scan(*po, WeightVector::ones(1), -1.0, 1.0, ns);
    const auto rp = ep.retained();
    REQUIRE(rp.size() == 1);
    CHECK(std::abs(rp[0].k) <= ep.resolution);
    CHECK(std::abs(rp[0].intensity - 1.0) <= 0.07);

    CHECK_THROWS_AS(peak_scan(*z, WeightVector::ones(1), -1.0, 1.0, std::span<const double>()),
                    std::invalid_argument);
}

TEST_CASE("fibonacci peak scan finds module points")
{
    auto fib = fibonacci_source();
    const double ns[] = {1000.0, 4000.0};
    const auto est = peak_scan(*fib, WeightVector::ones(1), 0.05, 1.0, ns);
    const auto kept = est.retained();
    REQUIRE(!kept.empty());
    const auto strongest = *std::max_element(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        return a.intensity < b.intensity;
    });
    double k = 0.0;
    const double want = fibonacci_intensity(1, 1, &k);
    // the finite-window maximum sits within a fraction of the scan step
    CHECK(std::abs(strongest.k - k) <= 1e-5);
    CHECK(std::abs(strongest.intensity - want) <= 2e-3);
    // every retained peak lies on (l - m tau') / sqrt 5 for small l, m
    for (const auto& p : kept) {
        bool on_module = false;
        for (int m = -30; m <= 30 && !on_module; ++m) {
            const double l = p.k * kSqrt5 + m * (1.0 - kTau);
            on_module = std::abs(l - std::round(l)) / kSqrt5 <= 0.25 * est.resolution;
        }
        CHECK(on_module);
    }
}

TEST_CASE("smoothed autocorrelation")
{
    auto z = lattice_source({{1.0}});
    const auto omega = SmoothingKernel::triangle(0.4);
    const auto g = autocorr_from_frequencies(*z, WeightVector::ones(1), 5.0, single_n(1e4), 1e4);
    const double xs[] = {1.0, 0.5, 2.0};
    const auto v = smoothed_autocorrelation(g, omega, xs);
    CHECK(std::abs(v[0] - g.at(1.0) * omega.l2_norm_sq()) <= 1e-12);
    // at x = 1/2 the atoms at 0 and 1 both reach
    CHECK(std::abs(v[1] - (g.at(0.0) + g.at(1.0)) * omega.self_correlation(0.5)) <= 1e-12);
    const double bad[] = {4.5};
    CHECK_THROWS(smoothed_autocorrelation(g, omega, bad));
    for (double k = -3.0; k <= 3.0; k += 0.01)
        CHECK(std::norm(omega.fourier(k)) >= 0.0);
}

TEST_CASE("transform of the smoothed autocorrelation matches |omega^|^2 I at peaks")
{
    const auto omega = SmoothingKernel::triangle(0.4);
    struct Case {
        SourcePtr source;
        double k;
        double intensity;
    };
    double kf = 0.0;
    const double i_fib = fibonacci_intensity(1, 1, &kf);
    const std::vector<Case> cases = {{lattice_source({{1.0}}), 1.0, 1.0}, {fibonacci_source(), kf, i_fib}};
    for (const auto& c : cases) {
        const double radius = 80.0;
        const double half = radius - 2.0 * omega.support_radius() - 1.0;
        const auto g = autocorr_direct(*c.source, WeightVector::ones(1), radius, single_n(2e4), 2e4);
        const double h = 0.01;
        std::vector<double> xs;
        for (double x = -half + h / 2; x < half; x += h)
            xs.push_back(x);
        const auto sm = smoothed_diffraction(g, omega, xs);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            acc += sm.gamma[i] * std::exp(cplx(0.0, -2.0 * kPi * c.k * xs[i])) * h;
        const double estimate = acc.real() / (2.0 * half);
        const double want = std::norm(omega.fourier(c.k)) * c.intensity;
        CHECK(std::abs(estimate - want) <= 0.05 * want);
    }
}

TEST_CASE("orbit integral against the smoothed autocorrelation")
{
    auto z = lattice_source({{1.0}});
    const auto omega = SmoothingKernel::triangle(0.4);
    const double xs[] = {0.0, 1.0};
    const auto rep = dworkin_correlation(*z, WeightVector::ones(1), omega, xs, single_n(1e3), 1e3);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].lhs.real() == doctest::Approx(omega.l2_norm_sq()).epsilon(0.01));
    CHECK(rep.rows[0].rel_diff <= 0.01);
    CHECK(rep.rows[1].lhs.real() == doctest::Approx(rep.rows[0].lhs.real()).epsilon(1e-6));

    auto fib = fibonacci_source();
    const double xf[] = {kTau};
    const auto rf = dworkin_correlation(*fib, WeightVector::ones(1), omega, xf, single_n(1e4), 1e4);
    CHECK(rf.rows[0].rel_diff <= 0.02);

    DworkinOptions coarse;
    coarse.step = 0.1;
    CHECK_THROWS_AS(dworkin_correlation(*z, WeightVector::ones(1), omega, xs, single_n(1e3), 1e3, coarse),
                    std::invalid_argument);
}

TEST_CASE("weight vectors are validated")
{
    CHECK_THROWS_AS(WeightVector(std::vector<cplx>{}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({0.0, 0.0}), std::invalid_argument);
    auto z = lattice_source({{1.0}});
    CHECK_THROWS_AS(autocorr_direct(*z, WeightVector({1.0, 1.0}), 3.0, single_n(100), 100), std::invalid_argument);
    auto z2 = lattice_source({{1.0, 0.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(autocorr_direct(*z2, WeightVector::ones(1), 3.0, single_n(100), 100), std::invalid_argument);
}

}
