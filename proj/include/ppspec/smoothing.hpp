#ifndef PPSPEC_SMOOTHING_HPP
#define PPSPEC_SMOOTHING_HPP

#include "ppspec/geometry.hpp"

#include <complex>
#include <string>
#include <vector>

namespace ppspec {

/// Continuous, compactly supported, real kernel omega on R with a closed-form
/// Fourier transform omega^(k) = ∫ omega(x) exp(-2 pi i k x) dx.
class SmoothingKernel {
public:
    enum class Shape { Triangle, RaisedCosine, Plateau };

    /// max(0, 1 - |x|/s).
    static SmoothingKernel triangle(double s);
    /// (1 + cos(pi x / s)) / 2 on [-s, s].
    static SmoothingKernel raised_cosine(double s);
    /// 1 on [lo + zeta, hi - zeta], 0 outside [lo, hi], linear in between.
    static SmoothingKernel plateau(const Interval& v, double zeta);

    Shape shape() const { return shape_; }
    double operator()(double x) const;
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    /// Smallest s with supp(omega) ⊂ [-s, s].
    double support_radius() const;
    double lipschitz() const;

    std::complex<double> fourier(double k) const;
    /// (omega * omega~)(u) = ∫ omega(z + u) omega(z) dz.
    double self_correlation(double u) const;
    double l2_norm_sq() const { return self_correlation(0.0); }

    /// Points where omega is not smooth, ascending.
    std::vector<double> breakpoints() const;
    std::string id() const;

private:
    Shape shape_ = Shape::Triangle;
    double lo_ = 0.0;
    double hi_ = 0.0;
    double zeta_ = 0.0;
};

} // namespace ppspec

#endif
