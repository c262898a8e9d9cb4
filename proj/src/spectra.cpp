#include "ppspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace ppspec {

namespace {

void require_1d(const PointSource& source, const char* what)
{
    if (source.dim() != 1)
        throw std::invalid_argument(std::string(what) + ": only 1D sources are supported");
}

void require_weights(const PointSource& source, const WeightVector& w, const char* what)
{
    if (w.size() != source.colors())
        throw std::invalid_argument(std::string(what) + ": weight vector length differs from color count");
}

struct RawTerm {
    double t;
    QuadInt q;
    cplx v;
};

// Sorts terms by difference and sums each group with the pairwise rule.
// Stable sort keeps the enumeration order inside a group, which makes
// c(-t) = conj(c(t)) hold exactly for direct pair sums.
std::vector<AutocorrelationEntry> group_terms(std::vector<RawTerm> terms, bool exact, double scale)
{
    if (exact)
        std::stable_sort(terms.begin(), terms.end(), [](const RawTerm& a, const RawTerm& b) { return a.q < b.q; });
    else
        std::stable_sort(terms.begin(), terms.end(), [](const RawTerm& a, const RawTerm& b) { return a.t < b.t; });

    std::vector<AutocorrelationEntry> out;
    std::vector<cplx> buf;
    std::size_t i = 0;
    while (i < terms.size()) {
        std::size_t j = i + 1;
        if (exact)
            while (j < terms.size() && terms[j].q == terms[i].q)
                ++j;
        else
            while (j < terms.size() && terms[j].t - terms[i].t <= kTolEq)
                ++j;
        buf.clear();
        for (std::size_t k = i; k < j; ++k)
            buf.push_back(terms[k].v);
        AutocorrelationEntry e;
        e.t = exact ? terms[i].q.value() : terms[i].t;
        if (exact)
            e.exact_t = terms[i].q;
        e.c = scale * pairwise_sum(std::span<const cplx>(buf));
        out.push_back(e);
        i = j;
    }
    return out;
}

// The pair counts behind (i, j, -t) and (j, i, t) coincide, so c(-t) is
// conj c(t) term by term; copying it keeps the symmetry exact despite a
// different summation order. Entries are sorted by t and symmetric.
void mirror_negative_half(std::vector<AutocorrelationEntry>& e)
{
    const std::size_t m = e.size();
    for (std::size_t i = 0; i < m / 2; ++i) {
        const auto& p = e[m - 1 - i];
        const bool paired = p.exact_t ? (e[i].exact_t && *e[i].exact_t == -*p.exact_t)
                                      : std::abs(e[i].t + p.t) <= 2.0 * kTolEq;
        if (!paired)
            throw std::logic_error("autocorrelation support is not symmetric");
        e[i].c = std::conj(p.c);
    }
    if (m % 2 == 1)
        e[m / 2].c = e[m / 2].c.real();
}

cplx amplitude_at(const WeightedPoints& wp, double k, double scale, std::vector<cplx>& buf)
{
    buf.resize(wp.x.size());
    for (std::size_t i = 0; i < wp.x.size(); ++i) {
        double t = k * wp.x[i];
        t -= std::nearbyint(t);
        const double a = -2.0 * M_PI * t;
        buf[i] = wp.w[i] * cplx(std::cos(a), std::sin(a));
    }
    return scale * pairwise_sum(std::span<const cplx>(buf));
}

double intensity_at(const WeightedPoints& wp, double k, double scale, std::vector<cplx>& buf)
{
    return std::norm(amplitude_at(wp, k, scale, buf));
}

// Golden-section maximization of f on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double kernel_feature(const SmoothingKernel& omega)
{
    const auto bp = omega.breakpoints();
    double f = omega.support_radius();
    for (std::size_t i = 1; i < bp.size(); ++i)
        if (bp[i] - bp[i - 1] > 0.0)
            f = std::min(f, bp[i] - bp[i - 1]);
    return f;
}

} // namespace

WeightVector::WeightVector(std::vector<cplx> a) : a_(std::move(a))
{
    if (a_.empty())
        throw std::invalid_argument("WeightVector: empty");
    if (std::all_of(a_.begin(), a_.end(), [](const cplx& z) { return z == cplx{}; }))
        throw std::invalid_argument("WeightVector: all weights are zero");
}

WeightVector WeightVector::ones(int colors)
{
    return WeightVector(std::vector<cplx>(static_cast<std::size_t>(colors), cplx(1.0)));
}

WeightVector WeightVector::scaled(cplx alpha) const
{
    std::vector<cplx> b = a_;
    for (auto& z : b)
        z *= alpha;
    return WeightVector(std::move(b));
}

WeightedPoints weighted_points(const MultiSetPatch& patch, const WeightVector& w)
{
    if (patch.dim() != 1)
        throw std::invalid_argument("weighted_points: only 1D patches are supported");
    if (w.size() != patch.colors())
        throw std::invalid_argument("weighted_points: weight vector length differs from color count");
    WeightedPoints out;
    const auto sup = patch.support();
    bool exact = true;
    for (const auto& [p, c] : sup) {
        out.x.push_back(p[0]);
        out.w.push_back(w[c]);
        out.color.push_back(c);
        exact = exact && p.is_exact();
    }
    if (exact)
        for (const auto& [p, c] : sup)
            out.exact.push_back(p.x[0].exact_value());
    return out;
}

cplx AutocorrelationMeasure::at(double t, double tol) const
{
    auto it = std::lower_bound(entries.begin(), entries.end(), t - tol,
                               [](const AutocorrelationEntry& e, double v) { return e.t < v; });
    if (it != entries.end() && std::abs(it->t - t) <= tol)
        return it->c;
    return {};
}

std::string AutocorrelationMeasure::method_name() const
{
    return method == Method::Direct ? "direct" : "frequency";
}

AutocorrelationMeasure autocorr_direct(const PointSource& source, const WeightVector& w, double radius,
                                       const VanHoveSpec& spec, double n)
{
    require_1d(source, "autocorr_direct");
    require_weights(source, w, "autocorr_direct");
    if (!(radius > 0.0))
        throw std::invalid_argument("autocorr_direct: radius must be positive");
    const Region f = van_hove_set(spec.dim, n);
    const WeightedPoints wp = weighted_points(window(source, f), w);
    const bool exact = !wp.exact.empty() || wp.x.empty();

    // self pairs first so that the t = 0 group starts with them
    std::vector<RawTerm> terms;
    for (std::size_t i = 0; i < wp.x.size(); ++i)
        terms.push_back({0.0, QuadInt{}, wp.w[i] * std::conj(wp.w[i])});
    for (const auto& [i, j] : neighbor_pairs(wp.x, radius)) {
        const QuadInt q = exact ? wp.exact[i] - wp.exact[j] : QuadInt{};
        terms.push_back({wp.x[i] - wp.x[j], q, wp.w[i] * std::conj(wp.w[j])});
    }

    AutocorrelationMeasure g;
    g.radius = radius;
    g.method = AutocorrelationMeasure::Method::Direct;
    g.n = n;
    g.entries = group_terms(std::move(terms), exact, 1.0 / f.volume());
    return g;
}

AutocorrelationMeasure autocorr_from_frequencies(const PointSource& source, const WeightVector& w, double radius,
                                                 const VanHoveSpec& spec, double n,
                                                 std::span<const Point> offsets, const Region& scan)
{
    require_1d(source, "autocorr_from_frequencies");
    require_weights(source, w, "autocorr_from_frequencies");
    if (!(radius > 0.0))
        throw std::invalid_argument("autocorr_from_frequencies: radius must be positive");

    // candidate (i, j, t): a color-i point y in the scan and a color-j point z
    // with t = y - z, |t| <= radius
    const MultiSetPatch patch = window(source, scan.dilated(radius));
    const WeightedPoints wp = weighted_points(patch, WeightVector::ones(source.colors()));
    const bool exact = !wp.exact.empty();
    struct Candidate {
        int i;
        int j;
        double t;
        QuadInt q;
    };
    auto key_less = [exact](const Candidate& a, const Candidate& b) {
        if (a.i != b.i)
            return a.i < b.i;
        if (a.j != b.j)
            return a.j < b.j;
        if (exact)
            return a.q < b.q;
        return a.t < b.t - kTolEq;
    };
    std::vector<Candidate> cands;
    auto add = [&](std::size_t a, std::size_t b) {
        if (!scan.contains(Point(wp.x[a])))
            return;
        const QuadInt q = exact ? wp.exact[a] - wp.exact[b] : QuadInt{};
        cands.push_back({wp.color[a], wp.color[b], wp.x[a] - wp.x[b], q});
        cands.push_back({wp.color[b], wp.color[a], wp.x[b] - wp.x[a], -q});
    };
    for (std::size_t a = 0; a < wp.x.size(); ++a)
        add(a, a);
    for (const auto& [a, b] : neighbor_pairs(wp.x, radius))
        add(a, b);
    std::sort(cands.begin(), cands.end(), key_less);
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [&](const Candidate& a, const Candidate& b) { return !key_less(a, b) && !key_less(b, a); }),
                cands.end());

    VanHoveSpec one = spec;
    one.schedule = {n};
    std::vector<double> freq(cands.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(cands.size()); ++c) {
        const Candidate& k = cands[static_cast<std::size_t>(c)];
        const Point origin = exact ? Point(QuadInt{}) : Point(0.0);
        const Point other = exact ? Point(-k.q) : Point(-k.t);
        Cluster p(source.colors(), 1);
        p.insert(k.i, origin);
        const bool degenerate = k.i == k.j && same_point(origin, other);
        if (!degenerate)
            p.insert(k.j, other);
        freq[static_cast<std::size_t>(c)] = estimate_frequency(source, p, one, offsets).value;
    }

    std::vector<RawTerm> terms;
    for (std::size_t c = 0; c < cands.size(); ++c) {
        const Candidate& k = cands[c];
        terms.push_back({k.t, k.q, w[k.i] * std::conj(w[k.j]) * freq[c]});
    }
    AutocorrelationMeasure g;
    g.radius = radius;
    g.method = AutocorrelationMeasure::Method::Frequency;
    g.n = n;
    g.entries = group_terms(std::move(terms), exact, 1.0);
    mirror_negative_half(g.entries);
    return g;
}

AutocorrelationMeasure autocorr_from_frequencies(const PointSource& source, const WeightVector& w, double radius,
                                                 const VanHoveSpec& spec, double n)
{
    const Point zero[] = {Point::zero(1)};
    const double half = std::min(n, 50.0 * radius);
    return autocorr_from_frequencies(source, w, radius, spec, n, zero, Region::interval(-half, half));
}

std::vector<cplx> bragg_amplitudes(const PointSource& source, const WeightVector& w, std::span<const double> ks,
                                   const VanHoveSpec& spec, double n)
{
    require_1d(source, "bragg_amplitude");
    require_weights(source, w, "bragg_amplitude");
    const Region f = van_hove_set(spec.dim, n);
    const WeightedPoints wp = weighted_points(window(source, f), w);
    return exponential_sums(wp.x, wp.w, ks, 1.0 / f.volume());
}

cplx bragg_amplitude(const PointSource& source, const WeightVector& w, double k, const VanHoveSpec& spec, double n)
{
    const double ks[] = {k};
    return bragg_amplitudes(source, w, ks, spec, n).front();
}

std::vector<BraggPeak> DiffractionEstimate::retained() const
{
    std::vector<BraggPeak> out;
    for (const auto& e : entries)
        if (e.retained)
            out.push_back(e);
    return out;
}

DiffractionEstimate peak_scan(const PointSource& source, const WeightVector& w, double k_lo, double k_hi,
                              std::span<const double> n_schedule, const PeakScanOptions& opts)
{
    require_1d(source, "peak_scan");
    require_weights(source, w, "peak_scan");
    if (n_schedule.empty())
        throw std::invalid_argument("peak_scan: empty schedule");
    if (n_schedule.size() < 2)
        throw std::invalid_argument("peak_scan: schedule needs at least two entries");
    if (!(k_hi > k_lo))
        throw std::invalid_argument("peak_scan: empty k range");
    std::vector<double> ns(n_schedule.begin(), n_schedule.end());
    std::sort(ns.begin(), ns.end());

    DiffractionEstimate est;
    est.k_lo = k_lo;
    est.k_hi = k_hi;
    est.n1 = ns[ns.size() - 2];
    est.n2 = ns.back();
    est.drift_tol = opts.drift_tol;
    const Region f1 = van_hove_set(1, est.n1);
    const Region f2 = van_hove_set(1, est.n2);
    const double s1 = 1.0 / f1.volume();
    const double s2 = 1.0 / f2.volume();
    const WeightedPoints wp1 = weighted_points(window(source, f1), w);
    const WeightedPoints wp2 = weighted_points(window(source, f2), w);
    est.resolution = opts.resolution > 0.0 ? opts.resolution : 0.5 * s1;

    std::vector<double> grid;
    for (std::size_t j = 0;; ++j) {
        const double k = k_lo + static_cast<double>(j) * est.resolution;
        if (k > k_hi - 1e-12 * est.resolution)
            break;
        grid.push_back(k);
    }
    grid.push_back(k_hi);
    est.grid_size = grid.size();
    const auto amps = exponential_sums(wp1.x, wp1.w, grid, s1);
    std::vector<double> inten(amps.size());
    for (std::size_t j = 0; j < amps.size(); ++j)
        inten[j] = std::norm(amps[j]);

    std::vector<double> sorted = inten;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    // intensities at generic k are roughly exponential; median / ln 2 is the mean
    est.noise_floor = sorted[sorted.size() / 2] / std::log(2.0);
    est.threshold = est.noise_floor * (std::log(static_cast<double>(grid.size())) + 10.0) + 10.0 * s1 * s1;

    std::vector<double> seeds;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const bool left = j == 0 || inten[j] >= inten[j - 1];
        const bool right = j + 1 == grid.size() || inten[j] >= inten[j + 1];
        if (left && right && inten[j] > est.threshold)
            seeds.push_back(grid[j]);
    }
    if (opts.module_seeds && source.exact()) {
        const double r5 = std::sqrt(5.0);
        const double tau_c = 1.0 - kTau;
        const double kmax = std::max(std::abs(k_lo), std::abs(k_hi));
        const auto qmax = static_cast<std::int64_t>(std::ceil(kmax + 2.0));
        for (std::int64_t q = -qmax; q <= qmax; ++q) {
            const double qt = static_cast<double>(q) * kTau;
            const auto pl = static_cast<std::int64_t>(std::ceil(r5 * k_lo - qt));
            const auto ph = static_cast<std::int64_t>(std::floor(r5 * k_hi - qt));
            for (std::int64_t p = pl; p <= ph; ++p) {
                const double kp = (static_cast<double>(p) + static_cast<double>(q) * tau_c) / r5;
                const double k = (static_cast<double>(p) + qt) / r5;
                if (std::abs(kp) <= 2.0 && k >= k_lo && k <= k_hi)
                    seeds.push_back(k);
            }
        }
    }

    std::vector<BraggPeak> cands(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(seeds.size()); ++c) {
        std::vector<cplx> buf;
        const double k0 = seeds[static_cast<std::size_t>(c)];
        auto f = [&](double k) { return intensity_at(wp1, k, s1, buf); };
        const double a = std::max(k_lo, k0 - est.resolution);
        const double b = std::min(k_hi, k0 + est.resolution);
        double k = golden_max(f, a, b);
        // keep the seed if refinement did not improve on it
        if (f(k0) > f(k))
            k = k0;
        BraggPeak pk;
        pk.k = k;
        pk.intensity_n1 = f(k);
        cands[static_cast<std::size_t>(c)] = pk;
    }
    std::erase_if(cands, [&](const BraggPeak& p) { return !(p.intensity_n1 > est.threshold); });
    std::stable_sort(cands.begin(), cands.end(), [](const BraggPeak& a, const BraggPeak& b) {
        return std::tie(b.intensity_n1, a.k) < std::tie(a.intensity_n1, b.k);
    });
    std::vector<BraggPeak> kept;
    for (const auto& p : cands) {
        const bool dup = std::any_of(kept.begin(), kept.end(),
                                     [&](const BraggPeak& q) { return std::abs(q.k - p.k) < 0.5 * s1; });
        if (!dup)
            kept.push_back(p);
    }
    std::vector<cplx> buf;
    for (auto& p : kept) {
        p.amplitude = amplitude_at(wp2, p.k, s2, buf);
        p.intensity = std::norm(p.amplitude);
        p.n = est.n2;
        p.retained = p.intensity >= (1.0 - est.drift_tol) * p.intensity_n1;
    }
    std::sort(kept.begin(), kept.end(), [](const BraggPeak& a, const BraggPeak& b) { return a.k < b.k; });
    est.entries = std::move(kept);
    return est;
}

std::vector<cplx> smoothed_autocorrelation(const AutocorrelationMeasure& g, const SmoothingKernel& omega,
                                           std::span<const double> xs)
{
    const double width = omega.support_hi() - omega.support_lo();
    if (width > g.radius)
        throw std::invalid_argument("smoothed_autocorrelation: kernel support exceeds the autocorrelation radius");
    std::vector<cplx> out(xs.size());
    std::vector<cplx> buf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        if (std::abs(x) + width > g.radius + kTolEq)
            throw std::invalid_argument("smoothed_autocorrelation: x too far out for the autocorrelation radius");
        auto it = std::lower_bound(g.entries.begin(), g.entries.end(), x - width,
                                   [](const AutocorrelationEntry& e, double v) { return e.t < v; });
        buf.clear();
        for (; it != g.entries.end() && it->t <= x + width; ++it)
            buf.push_back(it->c * omega.self_correlation(x - it->t));
        out[i] = pairwise_sum(std::span<const cplx>(buf));
    }
    return out;
}

SmoothedDiffraction smoothed_diffraction(const AutocorrelationMeasure& g, const SmoothingKernel& omega,
                                         std::span<const double> xs, const DiffractionEstimate* estimate)
{
    SmoothedDiffraction out;
    out.xs.assign(xs.begin(), xs.end());
    out.gamma = smoothed_autocorrelation(g, omega, xs);
    if (estimate)
        for (const auto& p : estimate->entries)
            out.peaks.emplace_back(p.k, std::norm(omega.fourier(p.k)) * p.intensity);
    return out;
}

double SpectralCheckReport::max_rel_diff() const
{
    double m = 0.0;
    for (const auto& r : rows)
        m = std::max(m, r.rel_diff);
    return m;
}

SpectralCheckReport dworkin_correlation(const PointSource& source, const WeightVector& w,
                                        const SmoothingKernel& omega, std::span<const double> xs,
                                        const VanHoveSpec& spec, double n, const DworkinOptions& opts)
{
    require_1d(source, "dworkin_correlation");
    require_weights(source, w, "dworkin_correlation");
    const double max_step = kernel_feature(omega) / 20.0;
    if (opts.step > max_step * (1.0 + 1e-12))
        throw std::invalid_argument("dworkin_correlation: quadrature grid coarser than kernel features");
    const double step_req = opts.step > 0.0 ? opts.step : max_step;
    const auto count = static_cast<std::size_t>(std::ceil(2.0 * n / step_req));
    const double h = 2.0 * n / static_cast<double>(count);

    double xmax = 0.0;
    for (double x : xs)
        xmax = std::max(xmax, std::abs(x));
    const double reach = xmax + omega.support_radius() + 1.0;
    const WeightedPoints wp = weighted_points(window(source, Region::interval(-n - reach, n + reach)), w);

    const double y0 = -n + 0.5 * h;
    const auto base = smoothed_density(wp.x, wp.w, omega, y0, h, count);
    const double width = omega.support_hi() - omega.support_lo();
    const auto g = autocorr_direct(source, w, xmax + width + 1.0, spec, n);
    const auto rhs = smoothed_autocorrelation(g, omega, xs);

    SpectralCheckReport rep;
    rep.kernel_id = omega.id();
    rep.n = n;
    rep.step = h;
    std::vector<cplx> prod(count);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto shifted = smoothed_density(wp.x, wp.w, omega, y0 + xs[i], h, count);
        for (std::size_t j = 0; j < count; ++j)
            prod[j] = shifted[j] * std::conj(base[j]);
        SpectralCheckRow row;
        row.x = xs[i];
        row.lhs = pairwise_sum(std::span<const cplx>(prod)) * (h / (2.0 * n));
        row.rhs = rhs[i];
        row.abs_diff = std::abs(row.lhs - row.rhs);
        const double denom = std::abs(row.rhs);
        row.rel_diff = denom > 0.0 ? row.abs_diff / denom : (row.abs_diff > 0.0 ? INFINITY : 0.0);
        rep.rows.push_back(row);
    }
    return rep;
}

SpectralCheckRow dworkin_correlation(const PointSource& source, const WeightVector& w, const SmoothingKernel& omega,
                                     double x, const VanHoveSpec& spec, double n, const DworkinOptions& opts)
{
    const double xs[] = {x};
    return dworkin_correlation(source, w, omega, xs, spec, n, opts).rows.front();
}

cplx positive_definite_form(const AutocorrelationMeasure& g, std::span<const double> t, std::span<const cplx> z,
                            double tol)
{
    if (t.size() != z.size())
        throw std::invalid_argument("positive_definite_form: size mismatch");
    std::vector<cplx> terms;
    for (std::size_t p = 0; p < t.size(); ++p)
        for (std::size_t q = 0; q < t.size(); ++q)
            terms.push_back(z[p] * std::conj(z[q]) * g.at(t[p] - t[q], tol));
    return pairwise_sum(std::span<const cplx>(terms));
}

} // namespace ppspec
