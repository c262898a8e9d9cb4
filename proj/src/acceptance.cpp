#include "ppspec/acceptance.hpp"

#include "ppspec/generators.hpp"
#include "ppspec/hull.hpp"
#include "ppspec/spectra.hpp"
#include "ppspec/statistics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

namespace ppspec {

namespace {

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Point pt(double v) { return Point(v); }

Cluster single_point(int colors = 1) { return Cluster::single(colors, 0, Point(0.0)); }

double max_coefficient_gap(const AutocorrelationMeasure& a, const AutocorrelationMeasure& b)
{
    double m = 0.0;
    for (const auto& e : a.entries)
        m = std::max(m, std::abs(e.c - b.at(e.t)));
    for (const auto& e : b.entries)
        m = std::max(m, std::abs(e.c - a.at(e.t)));
    return m;
}

bool near_integer(double k, double tol) { return std::abs(k - std::round(k)) <= tol; }

// 1. Lattice frequency and uniformity.
Outcome lattice_frequency(const AcceptanceOptions&)
{
    const double n = 1000.0;
    auto z = lattice_source({{1.0}});
    VanHoveSpec spec;
    spec.schedule = {n};
    const Point origin = Point::zero(1);
    const auto single = estimate_frequency(*z, single_point(), spec, std::span<const Point>(&origin, 1));
    const auto offsets = low_discrepancy_offsets(50, 10.0);
    const auto many = estimate_frequency(*z, single_point(), spec, offsets);
    const double expected = (2.0 * n + 1.0) / (2.0 * n);
    const bool exact = std::abs(single.value - expected) <= 1e-12;
    const bool close = std::abs(single.value - 1.0) <= 5e-4;
    const bool uniform = many.uniformity_gap <= 1e-3;
    return {exact && close && uniform,
            fmt("freq=%.9f (expected %.9f), |freq-1|=%.3g <= 5e-4, uniformity gap over 50 offsets %.3g <= 1e-3",
                single.value, expected, std::abs(single.value - 1.0), many.uniformity_gap)};
}

// 2. Frequency route and direct route to the autocorrelation agree.
Outcome autocorr_equivalence(const AcceptanceOptions&)
{
    struct Case {
        const char* name;
        SourcePtr source;
        WeightVector w;
    };
    const std::vector<Case> cases = {
        {"Z", lattice_source({{1.0}}), WeightVector::ones(1)},
        {"2Z", lattice_source({{2.0}}), WeightVector::ones(1)},
        {"fibonacci", fibonacci_source(), WeightVector::ones(1)},
        {"+-1 comb", lattice_source({{1.0}}, 2), WeightVector({1.0, -1.0})},
    };
    const double n = 1e4;
    VanHoveSpec spec;
    spec.schedule = {n};
    bool pass = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto a = autocorr_from_frequencies(*c.source, c.w, 10.0, spec, n);
        const auto b = autocorr_direct(*c.source, c.w, 10.0, spec, n);
        const double gap = max_coefficient_gap(a, b);
        pass = pass && gap <= 2e-3 && !a.entries.empty();
        detail += fmt("%s%s %zu atoms gap %.2g", detail.empty() ? "" : "; ", c.name, a.entries.size(), gap);
    }
    return {pass, detail + " (tol 2e-3, radius 10, n=1e4)"};
}

// 3. Poisson summation on Z.
Outcome poisson_summation(const AcceptanceOptions&)
{
    auto z = lattice_source({{1.0}});
    const double ns[] = {1000.0, 4000.0};
    const auto est = peak_scan(*z, WeightVector::ones(1), -3.0, 3.0, ns);
    std::vector<double> found;
    bool pass = true;
    double worst_k = 0.0, worst_i = 0.0;
    for (const auto& p : est.entries) {
        if (!p.retained)
            continue;
        found.push_back(std::round(p.k));
        worst_k = std::max(worst_k, std::abs(p.k - std::round(p.k)));
        worst_i = std::max(worst_i, std::abs(p.intensity - 1.0));
        pass = pass && near_integer(p.k, 1e-9) && std::abs(p.intensity - 1.0) <= 2.0 / p.n;
    }
    std::sort(found.begin(), found.end());
    const std::vector<double> want = {-3, -2, -1, 0, 1, 2, 3};
    pass = pass && found == want;
    return {pass, fmt("%zu retained of %zu candidates, max |k-round(k)| %.2g <= 1e-9, max |I-1| %.2g <= 2/n=%.1g",
                      found.size(), est.entries.size(), worst_k, worst_i, 2.0 / ns[1])};
}

// 4. Alternating comb on even/odd Z.
Outcome weighted_comb(const AcceptanceOptions&)
{
    auto comb = lattice_source({{1.0}}, 2);
    const WeightVector w({1.0, -1.0});
    VanHoveSpec spec;
    spec.schedule = {1e4};
    const auto g = autocorr_from_frequencies(*comb, w, 10.0, spec, 1e4);
    double c_gap = 0.0;
    for (int t = -10; t <= 10; ++t)
        c_gap = std::max(c_gap, std::abs(g.at(t) - cplx((t % 2 == 0) ? 1.0 : -1.0)));
    bool pass = c_gap <= 1e-3 && g.entries.size() == 21;

    const double ns[] = {1000.0, 4000.0};
    const auto est = peak_scan(*comb, w, -3.0, 3.0, ns);
    std::vector<double> found;
    double worst_k = 0.0, worst_i = 0.0;
    for (const auto& p : est.entries) {
        if (!p.retained)
            continue;
        found.push_back(std::round(p.k - 0.5) + 0.5);
        worst_k = std::max(worst_k, std::abs(p.k - found.back()));
        worst_i = std::max(worst_i, std::abs(p.intensity - 1.0));
        pass = pass && std::abs(p.k - found.back()) <= 1e-9 && std::abs(p.intensity - 1.0) <= 5e-3;
    }
    std::sort(found.begin(), found.end());
    const std::vector<double> want = {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5};
    pass = pass && found == want;
    return {pass, fmt("max |c(t)-(-1)^t| %.2g <= 1e-3; %zu retained peaks, max |k-half-integer| %.2g <= 1e-9, "
                      "max |I-1| %.2g <= 5e-3",
                      c_gap, found.size(), worst_k, worst_i)};
}

// 5. Cylinder measure equals Vol(V) times the frequency.
Outcome cylinder_measure(const AcceptanceOptions&)
{
    const double n = 1000.0;
    const Interval v = Interval::half_open(0.0, 0.3);
    auto z = lattice_source({{1.0}});
    const double mz = empirical_cylinder_measure(*z, {single_point(), v}, n);
    bool pass = std::abs(mz - 0.3) <= 1e-3;
    std::string detail = fmt("Z: %.6f vs 0.3 (tol 1e-3)", mz);

    auto fib = fibonacci_source();
    VanHoveSpec spec;
    spec.schedule = {n};
    const Point origin = Point::zero(1);
    const std::vector<Cluster> clusters = {
        single_point(),
        Cluster::from_parts({{Point(0.0), Point(QuadInt{0, 1})}}, 1),
    };
    for (const auto& p : clusters) {
        const double freq = estimate_frequency(*fib, p, spec, std::span<const Point>(&origin, 1)).value;
        const double m = empirical_cylinder_measure(*fib, {p, v}, n);
        pass = pass && std::abs(m - v.length() * freq) <= 2e-3;
        detail += fmt("; fibonacci |P|=%zu: %.6f vs 0.3*%.6f=%.6f (tol 2e-3)", p.size(), m, freq, v.length() * freq);
    }
    return {pass, detail};
}

// 6. The hull partition into cylinder sets.
Outcome hull_partition(const AcceptanceOptions& opts)
{
    auto fib = fibonacci_source();
    const double radius = 3.0;
    const auto part = build_partition_1d(*fib, radius, 0.2);
    const std::size_t samples = opts.fast ? 200 : 1000;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(-2000.0, 2000.0);
    std::vector<Point> offsets;
    for (std::size_t i = 0; i < samples; ++i)
        offsets.push_back(pt(u(rng)));
    const double reach = radius + 2.0 * part.b + part.delta + 2.0;
    const auto patches = sample_orbit(fib, offsets, Region::interval(-reach, reach));
    std::size_t bad = 0;
    for (const auto& g : patches)
        if (partition_cells_cylinder(part, g).size() != 1)
            ++bad;
    const auto m = partition_measure(part, *fib, 1e4);
    const bool pass = bad == 0 && std::abs(m.total - 1.0) <= 1e-3;
    return {pass, fmt("%zu cells over %zu R-patch classes; %zu of %zu orbit samples not in exactly one cell; "
                      "sum Vol*freq = %.6f (tol 1e-3)",
                      part.cells.size(), part.classes.size(), bad, samples, m.total)};
}

// 7. Smoothed autocorrelation against the orbit integral.
Outcome dworkin(const AcceptanceOptions& opts)
{
    const double n = 1e4;
    VanHoveSpec spec;
    spec.schedule = {n};
    const auto omega = SmoothingKernel::triangle(0.4);
    std::mt19937_64 rng(opts.seed + 7);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    bool pass = true;
    std::string detail;
    const std::pair<const char*, SourcePtr> cases[] = {{"Z", lattice_source({{1.0}})}, {"fibonacci", fibonacci_source()}};
    for (const auto& [name, source] : cases) {
        // x near atoms of the autocorrelation, where the smoothed value is not zero
        const auto g = autocorr_direct(*source, WeightVector::ones(1), 6.0, spec, 1e3);
        std::uniform_int_distribution<std::size_t> pick(0, g.entries.size() - 1);
        std::vector<double> xs;
        for (int i = 0; i < 10; ++i)
            xs.push_back(g.entries[pick(rng)].t + jitter(rng));
        const auto rep = dworkin_correlation(*source, WeightVector::ones(1), omega, xs, spec, n);
        pass = pass && rep.rows.size() == 10 && rep.max_rel_diff() <= 0.02;
        detail += fmt("%s%s max rel %.2g", detail.empty() ? "" : "; ", name, rep.max_rel_diff());
    }
    return {pass, detail + " over 10 x each (tol 2%, triangle s=0.4, n=1e4)"};
}

// 8. Cylinder indicator factorizes into single-point indicators.
Outcome product_identity(const AcceptanceOptions& opts)
{
    auto fib = fibonacci_source();
    const double eps = 0.25;
    const auto params = partition_params(*fib, eps, Region::interval(-500.0, 500.0));
    const Interval v = Interval::half_open(0.0, 0.9 * params.theta);
    const double r = 1.0 / eps;
    const Cluster p = window(*fib, Region::interval(-r, r)).cluster;
    const auto occ = cluster_occurrences(window(*fib, Region::interval(-3000.0, 3000.0)), p);

    const std::size_t samples = opts.fast ? 200 : 1000;
    std::mt19937_64 rng(opts.seed + 8);
    std::uniform_int_distribution<std::size_t> pick(0, occ.size() - 1);
    std::uniform_real_distribution<double> in_v(v.lo, v.hi);
    std::uniform_real_distribution<double> edge(-0.05, 0.05);
    std::uniform_real_distribution<double> anywhere(-2500.0, 2500.0);
    std::vector<Point> offsets;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = occ[pick(rng)][0];
        switch (i % 4) {
        case 0: offsets.push_back(pt(x + in_v(rng))); break;
        case 1: offsets.push_back(pt(x + v.lo + edge(rng))); break;
        case 2: offsets.push_back(pt(x + v.hi + edge(rng))); break;
        default: offsets.push_back(pt(anywhere(rng))); break;
        }
    }
    const auto check = product_identity_check(fib, params, v, offsets);
    const bool pass = check.violations == 0 && check.positives > 0 && check.positives < check.samples;
    return {pass, fmt("|P|=%zu, theta=%.4g, V=%s: %zu violations in %zu samples (%zu inside the cylinder)",
                      p.size(), params.theta, v.str().c_str(), check.violations, check.samples, check.positives)};
}

// 9. Hull metric: triangle inequality and a known distance.
Outcome metric(const AcceptanceOptions& opts)
{
    const double eps_grid = 1e-3;
    auto fib = fibonacci_source();
    const std::size_t triples = opts.fast ? 100 : 500;
    std::mt19937_64 rng(opts.seed + 9);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::vector<Point> h;
    for (std::size_t i = 0; i < 3 * triples; ++i)
        h.push_back(pt(u(rng)));
    const auto orbit = orbit_sources(fib, h);
    std::vector<char> ok(triples, 0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(triples); ++t) {
        const auto& a = *orbit[3 * static_cast<std::size_t>(t)];
        const auto& b = *orbit[3 * static_cast<std::size_t>(t) + 1];
        const auto& c = *orbit[3 * static_cast<std::size_t>(t) + 2];
        const auto ab = hull_metric(a, b, eps_grid);
        const auto bc = hull_metric(b, c, eps_grid);
        const auto ac = hull_metric(a, c, eps_grid);
        // certified: d(a,c) >= ac.lower and d(a,b) + d(b,c) <= ab.upper + bc.upper
        ok[static_cast<std::size_t>(t)] = ac.lower <= ab.upper + bc.upper;
    }
    const auto violations = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));

    auto z = lattice_source({{1.0}});
    const auto shifted = translate_source(z, pt(-0.1));
    const auto m = hull_metric(*z, *shifted, eps_grid);
    const bool bracket = m.lower <= 0.05 && 0.05 <= m.upper && m.upper - m.lower <= 0.01;
    return {violations == 0 && bracket,
            fmt("%zu triangle violations in %zu fibonacci orbit triples (slack: bracket width %.0e); "
                "d(Z, Z+0.1) in [%.5f, %.5f], width <= 0.01",
                violations, triples, eps_grid, m.lower, m.upper)};
}

// 10. Thue-Morse and Poisson have no nontrivial Bragg peak.
Outcome negative_control(const AcceptanceOptions& opts)
{
    const double ns[] = {1000.0, 4000.0};
    auto tm = thue_morse_source();
    const auto est = peak_scan(*tm, WeightVector({1.0, -1.0}), -3.0, 3.0, ns);
    std::size_t kept = 0;
    double worst = 0.0;
    for (const auto& p : est.entries)
        if (std::abs(p.k) > 1e-9 && p.intensity_n1 > 0.0) {
            const double ratio = p.intensity / p.intensity_n1;
            worst = std::max(worst, ratio);
            if (p.retained)
                ++kept;
        }
    auto po = poisson_source(1.0, opts.seed);
    const auto pest = peak_scan(*po, WeightVector::ones(1), -3.0, 3.0, ns);
    std::size_t pk = 0, p_nonzero = 0;
    for (const auto& p : pest.entries)
        if (p.retained) {
            ++pk;
            if (std::abs(p.k) > pest.resolution)
                ++p_nonzero;
        }
    const bool pass = kept == 0 && pk == 1 && p_nonzero == 0;
    return {pass, fmt("thue-morse: %zu of %zu candidates k!=0 keep I(4e3)/I(1e3) >= 0.8 (max ratio %.3g); "
                      "poisson: %zu retained, %zu away from k=0",
                      kept, est.entries.size(), worst, pk, p_nonzero)};
}

struct Criterion {
    int id;
    const char* title;
    double time_limit;
    std::function<Outcome(const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all = {
        {1, "lattice frequency", 5.0, lattice_frequency},
        {2, "autocorrelation routes agree", 60.0, autocorr_equivalence},
        {3, "Poisson summation on Z", 30.0, poisson_summation},
        {4, "weighted comb", 0.0, weighted_comb},
        {5, "cylinder measure", 0.0, cylinder_measure},
        {6, "hull partition", 0.0, hull_partition},
        {7, "smoothed autocorrelation vs orbit integral", 120.0, dworkin},
        {8, "product identity", 0.0, product_identity},
        {9, "hull metric", 0.0, metric},
        {10, "negative controls", 0.0, negative_control},
    };
    return all;
}

} // namespace

std::vector<int> suite_criteria(const std::string& suite)
{
    if (suite == "lattice")
        return {1, 3, 4, 9};
    if (suite == "fibonacci")
        return {2, 5, 6, 7, 8};
    if (suite == "controls")
        return {10};
    if (suite == "all")
        return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    throw std::invalid_argument("unknown suite '" + suite + "' (lattice, fibonacci, controls, all)");
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts)
{
    const auto& all = criteria();
    if (id < 1 || id > static_cast<int>(all.size()))
        throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
    const Criterion& c = all[static_cast<std::size_t>(id - 1)];
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.time_limit = c.time_limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = c.run(opts);
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0.0 && r.seconds > r.time_limit) {
        r.pass = false;
        r.detail += fmt("; over the %.0f s budget", r.time_limit);
    }
    return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite, const AcceptanceOptions& opts)
{
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite))
        out.push_back(run_criterion(id, opts));
    return out;
}

std::string format_result(const CriterionResult& r)
{
    std::string budget = r.time_limit > 0.0 ? fmt(" / %.0f s", r.time_limit) : "";
    return fmt("[%s] %2d %s (%.2f s%s): ", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
               budget.c_str()) +
           r.detail;
}

bool all_passed(const std::vector<CriterionResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

} // namespace ppspec
