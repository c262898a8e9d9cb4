#include "ppspec/generators.hpp"
#include "ppspec/kernels.hpp"
#include "ppspec/smoothing.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace ppspec;

namespace {

// Composite Simpson between consecutive breakpoints.
template <class F>
double integrate(F f, std::vector<double> cuts, int per_piece = 20000)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b <= a)
            continue;
        const double h = (b - a) / per_piece;
        double s = f(a) + f(b);
        for (int j = 1; j < per_piece; ++j)
            s += (j % 2 ? 4.0 : 2.0) * f(a + j * h);
        total += s * h / 3.0;
    }
    return total;
}

std::vector<double> random_points(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-500.0, 500.0);
    std::vector<double> x(n);
    for (auto& v : x)
        v = u(rng);
    std::sort(x.begin(), x.end());
    return x;
}

std::vector<cplx> random_weights(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> w(n);
    for (auto& v : w)
        v = cplx(g(rng), g(rng));
    return w;
}

const std::vector<SmoothingKernel>& kernels()
{
    static const std::vector<SmoothingKernel> k = {SmoothingKernel::triangle(0.4), SmoothingKernel::raised_cosine(0.3),
                                                   SmoothingKernel::plateau(Interval::half_open(0.2, 0.9), 0.1)};
    return k;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("pairwise summation is accurate")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(100003);
    long double ref = 0.0L;
    for (auto& x : v) {
        x = u(rng);
        ref += x;
    }
    CHECK(std::abs(pairwise_sum(v) - static_cast<double>(ref)) <= 1e-10);
    CHECK(pairwise_sum(std::span<const double>()) == 0.0);
}

TEST_CASE("exponential sums against a long double oracle")
{
    const auto x = random_points(2000, 4);
    const auto w = random_weights(2000, 5);
    const std::vector<double> k = {-2.3, -0.5, 0.0, 0.123, 1.0, 7.77};
    const auto got = exponential_sums(x, w, k, 0.5);
    for (std::size_t j = 0; j < k.size(); ++j) {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const long double ph = -2.0L * 3.14159265358979323846264338327950288L * k[j] * x[i];
            re += w[i].real() * std::cos(ph) - w[i].imag() * std::sin(ph);
            im += w[i].real() * std::sin(ph) + w[i].imag() * std::cos(ph);
        }
        CHECK(std::abs(got[j] - 0.5 * cplx(static_cast<double>(re), static_cast<double>(im))) <= 1e-9);
    }
}

TEST_CASE("parallel kernels match the serial references")
{
    const auto x = random_points(3000, 7);
    const auto w = random_weights(3000, 8);
    std::vector<double> k(257);
    for (std::size_t j = 0; j < k.size(); ++j)
        k[j] = -3.0 + 0.0234 * static_cast<double>(j);
    const auto a = exponential_sums(x, w, k, 1.0);
    const auto b = exponential_sums_serial(x, w, k, 1.0);
    for (std::size_t j = 0; j < k.size(); ++j)
        CHECK(std::abs(a[j] - b[j]) <= 1e-9 * (1.0 + std::abs(b[j])));

    CHECK(neighbor_pairs(x, 2.5) == neighbor_pairs_serial(x, 2.5));

    for (const auto& omega : kernels()) {
        const auto p = smoothed_density(x, w, omega, -510.0, 0.013, 5000);
        const auto q = smoothed_density_serial(x, w, omega, -510.0, 0.013, 5000);
        for (std::size_t j = 0; j < p.size(); ++j)
            CHECK(std::abs(p[j] - q[j]) <= 1e-12);
    }
}

TEST_CASE("results do not depend on the thread count")
{
    const auto x = random_points(5000, 9);
    const auto w = random_weights(5000, 10);
    std::vector<double> k(300);
    for (std::size_t j = 0; j < k.size(); ++j)
        k[j] = 0.01 * static_cast<double>(j);
    const int saved = max_threads();
    set_threads(1);
    const auto a = exponential_sums(x, w, k, 1.0);
    const auto pa = neighbor_pairs(x, 3.0);
    const auto da = smoothed_density(x, w, kernels()[0], -400.0, 0.05, 16000);
    set_threads(4);
    const auto b = exponential_sums(x, w, k, 1.0);
    const auto pb = neighbor_pairs(x, 3.0);
    const auto db = smoothed_density(x, w, kernels()[0], -400.0, 0.05, 16000);
    set_threads(saved);
    CHECK(a == b);
    CHECK(pa == pb);
    CHECK(da == db);
}

TEST_CASE("neighbor pairs on a lattice")
{
    std::vector<double> x;
    for (int i = 0; i < 100; ++i)
        x.push_back(i);
    // each interior point has 2r neighbours within radius r
    const auto p = neighbor_pairs(x, 3.0);
    std::size_t expected = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j)
            if (i != j && std::abs(i - j) <= 3)
                ++expected;
    CHECK(p.size() == expected);
    for (std::size_t i = 1; i < p.size(); ++i)
        CHECK(p[i - 1] < p[i]);
}

}

TEST_SUITE("smoothing") {

TEST_CASE("triangle transform at zero is the support half-width")
{
    const auto t = SmoothingKernel::triangle(0.4);
    CHECK(t.fourier(0.0).real() == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(t.l2_norm_sq() == doctest::Approx(2.0 * 0.4 / 3.0).epsilon(1e-12));
    CHECK(t.lipschitz() == doctest::Approx(1.0 / 0.4));
    CHECK(t.support_radius() == doctest::Approx(0.4));
    CHECK(t(0.0) == 1.0);
    CHECK(t(0.2) == doctest::Approx(0.5));
    CHECK(t(0.5) == 0.0);
}

TEST_CASE("closed-form transforms match quadrature")
{
    const double pi = 3.14159265358979323846;
    for (const auto& omega : kernels())
        for (double k : {0.0, 0.37, 1.0, 1.0 / (2.0 * 0.3), 2.5, -4.1}) {
            const auto bp = omega.breakpoints();
            const double re = integrate([&](double x) { return omega(x) * std::cos(2.0 * pi * k * x); }, bp);
            const double im = integrate([&](double x) { return -omega(x) * std::sin(2.0 * pi * k * x); }, bp);
            const cplx f = omega.fourier(k);
            CHECK(std::abs(f.real() - re) <= 1e-9);
            CHECK(std::abs(f.imag() - im) <= 1e-9);
        }
}

TEST_CASE("self-correlation matches quadrature")
{
    for (const auto& omega : kernels())
        for (double u : {0.0, 0.05, 0.2, -0.33, 0.61, 2.0}) {
            std::vector<double> cuts;
            for (double b : omega.breakpoints()) {
                cuts.push_back(b);
                cuts.push_back(b - u);
            }
            std::sort(cuts.begin(), cuts.end());
            const double want = integrate([&](double z) { return omega(z + u) * omega(z); }, cuts);
            CHECK(std::abs(omega.self_correlation(u) - want) <= 1e-10);
        }
}

TEST_CASE("plateau kernel shape")
{
    const auto p = SmoothingKernel::plateau(Interval::half_open(0.0, 1.0), 0.1);
    CHECK(p(0.5) == 1.0);
    CHECK(p(0.05) == doctest::Approx(0.5));
    CHECK(p(-0.01) == 0.0);
    CHECK(p(1.0) == 0.0);
    CHECK(p.fourier(0.0).real() == doctest::Approx(0.9));
    CHECK_THROWS(SmoothingKernel::plateau(Interval::half_open(0.0, 0.1), 0.1));
    CHECK_THROWS(SmoothingKernel::triangle(0.0));
}

}
