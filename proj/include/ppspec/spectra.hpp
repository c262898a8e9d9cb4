#ifndef PPSPEC_SPECTRA_HPP
#define PPSPEC_SPECTRA_HPP

// Autocorrelation, Bragg amplitudes and the smoothed correlation identity.
// Everything here works on 1D sources; 2D sources are rejected.

#include "ppspec/kernels.hpp"
#include "ppspec/smoothing.hpp"
#include "ppspec/statistics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ppspec {

/// Color weights a_1..a_m of nu = sum_i a_i delta_{Lambda_i}.
class WeightVector {
public:
    explicit WeightVector(std::vector<cplx> a);
    static WeightVector ones(int colors);

    int size() const { return static_cast<int>(a_.size()); }
    const cplx& operator[](int i) const { return a_.at(static_cast<std::size_t>(i)); }
    const std::vector<cplx>& values() const { return a_; }
    WeightVector scaled(cplx alpha) const;

private:
    std::vector<cplx> a_;
};

/// Sorted coordinates of a 1D patch with their weights.
struct WeightedPoints {
    std::vector<double> x;
    std::vector<cplx> w;
    std::vector<int> color;
    /// Filled only when every point is exact.
    std::vector<QuadInt> exact;
};

WeightedPoints weighted_points(const MultiSetPatch& patch, const WeightVector& w);

struct AutocorrelationEntry {
    double t = 0.0;
    std::optional<QuadInt> exact_t;
    cplx c{};
};

/// Finite piece gamma(nu) restricted to |t| <= radius.
struct AutocorrelationMeasure {
    enum class Method { Frequency, Direct };

    double radius = 0.0;
    Method method = Method::Direct;
    double n = 0.0;
    /// Sorted by t; differences are merged exactly or within kTolEq.
    std::vector<AutocorrelationEntry> entries;

    /// c(t), zero when t is not in the support.
    cplx at(double t, double tol = 1e-6) const;
    std::string method_name() const;
};

/// c(t) = sum_{i,j} a_i conj(a_j) freq({i: 0, j: -t}). Candidate differences
/// come from the centered clusters over `scan`; frequencies are estimated on
/// F_n translated by each offset.
AutocorrelationMeasure autocorr_from_frequencies(const PointSource& source, const WeightVector& w, double radius,
                                                 const VanHoveSpec& spec, double n,
                                                 std::span<const Point> offsets, const Region& scan);
/// Same, with offsets {0} and scan [-min(n, 50 R), min(n, 50 R)].
AutocorrelationMeasure autocorr_from_frequencies(const PointSource& source, const WeightVector& w, double radius,
                                                 const VanHoveSpec& spec, double n);

/// c(t) = (1 / Vol F_n) sum_{x, y in F_n, x - y = t} w(x) conj(w(y)).
AutocorrelationMeasure autocorr_direct(const PointSource& source, const WeightVector& w, double radius,
                                       const VanHoveSpec& spec, double n);

/// A_n(k) = (1 / Vol F_n) sum_{x in F_n} w(color(x)) exp(-2 pi i k x).
cplx bragg_amplitude(const PointSource& source, const WeightVector& w, double k, const VanHoveSpec& spec,
                     double n);
std::vector<cplx> bragg_amplitudes(const PointSource& source, const WeightVector& w, std::span<const double> ks,
                                   const VanHoveSpec& spec, double n);

struct BraggPeak {
    double k = 0.0;
    /// Amplitude and intensity at the largest n.
    cplx amplitude{};
    double intensity = 0.0;
    double n = 0.0;
    bool retained = false;
    /// Intensity at the second largest n, where the peak was located.
    double intensity_n1 = 0.0;
};

struct DiffractionEstimate {
    std::vector<BraggPeak> entries;
    double k_lo = 0.0;
    double k_hi = 0.0;
    double resolution = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    double noise_floor = 0.0;
    double threshold = 0.0;
    double drift_tol = 0.2;
    std::size_t grid_size = 0;

    std::vector<BraggPeak> retained() const;
};

struct PeakScanOptions {
    /// Coarse grid step; 0 picks 1 / (2 Vol F_{n1}).
    double resolution = 0.0;
    double drift_tol = 0.2;
    /// Also try k = (p + q tau) / sqrt(5) for exact sources.
    bool module_seeds = true;
};

/// Locates Bragg peaks on [k_lo, k_hi]: coarse scan at the second largest n,
/// golden-section refinement, and a drift test against the largest n.
DiffractionEstimate peak_scan(const PointSource& source, const WeightVector& w, double k_lo, double k_hi,
                              std::span<const double> n_schedule, const PeakScanOptions& opts = {});

/// gamma_omega(x) = sum_t c(t) (omega * omega~)(x - t).
std::vector<cplx> smoothed_autocorrelation(const AutocorrelationMeasure& g, const SmoothingKernel& omega,
                                           std::span<const double> xs);

struct SmoothedDiffraction {
    std::vector<double> xs;
    std::vector<cplx> gamma;
    /// (k, |omega^(k)|^2 I) for each peak of the estimate.
    std::vector<std::pair<double, double>> peaks;
};

SmoothedDiffraction smoothed_diffraction(const AutocorrelationMeasure& g, const SmoothingKernel& omega,
                                         std::span<const double> xs, const DiffractionEstimate* estimate = nullptr);

struct SpectralCheckRow {
    double x = 0.0;
    cplx lhs{};
    cplx rhs{};
    double abs_diff = 0.0;
    double rel_diff = 0.0;
};

struct SpectralCheckReport {
    std::string kernel_id;
    double n = 0.0;
    double step = 0.0;
    std::vector<SpectralCheckRow> rows;

    double max_rel_diff() const;
};

struct DworkinOptions {
    /// Midpoint step; 0 picks 1/20 of the smallest kernel feature.
    double step = 0.0;
};

/// lhs = (1 / Vol F_n) ∫_{F_n} rho(x + y) conj(rho(y)) dy by the midpoint
/// rule, rho(y) = sum_p w_p omega(y - p); rhs = gamma_omega(x) from the
/// direct autocorrelation on F_n.
SpectralCheckReport dworkin_correlation(const PointSource& source, const WeightVector& w,
                                        const SmoothingKernel& omega, std::span<const double> xs,
                                        const VanHoveSpec& spec, double n, const DworkinOptions& opts = {});
SpectralCheckRow dworkin_correlation(const PointSource& source, const WeightVector& w, const SmoothingKernel& omega,
                                     double x, const VanHoveSpec& spec, double n, const DworkinOptions& opts = {});

/// sum_{p,q} z_p conj(z_q) c(t_p - t_q), which is >= 0 for a positive
/// definite c.
cplx positive_definite_form(const AutocorrelationMeasure& g, std::span<const double> t,
                            std::span<const cplx> z, double tol = 1e-6);

} // namespace ppspec

#endif
