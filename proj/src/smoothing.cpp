#include "ppspec/smoothing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ppspec {

namespace {

double sinc(double u)
{
    return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
}

// 8-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 4> kGlNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                            0.9602898564975363};
constexpr std::array<double, 4> kGlWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                              0.1012285362903763};

template <typename F>
double gauss_legendre(F&& f, double a, double b)
{
    const double m = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i)
        s += kGlWeights[i] * (f(m - h * kGlNodes[i]) + f(m + h * kGlNodes[i]));
    return h * s;
}

} // namespace

SmoothingKernel SmoothingKernel::triangle(double s)
{
    if (!(s > 0.0))
        throw std::invalid_argument("triangle kernel: width must be positive");
    SmoothingKernel k;
    k.shape_ = Shape::Triangle;
    k.lo_ = -s;
    k.hi_ = s;
    return k;
}

SmoothingKernel SmoothingKernel::raised_cosine(double s)
{
    if (!(s > 0.0))
        throw std::invalid_argument("raised cosine kernel: width must be positive");
    SmoothingKernel k;
    k.shape_ = Shape::RaisedCosine;
    k.lo_ = -s;
    k.hi_ = s;
    return k;
}

SmoothingKernel SmoothingKernel::plateau(const Interval& v, double zeta)
{
    if (!(zeta > 0.0))
        throw std::invalid_argument("plateau kernel: taper must be positive");
    if (v.hi - v.lo < 2.0 * zeta)
        throw std::invalid_argument("plateau kernel: interval shorter than twice the taper");
    SmoothingKernel k;
    k.shape_ = Shape::Plateau;
    k.lo_ = v.lo;
    k.hi_ = v.hi;
    k.zeta_ = zeta;
    return k;
}

double SmoothingKernel::operator()(double x) const
{
    if (x <= lo_ || x >= hi_)
        return 0.0;
    switch (shape_) {
    case Shape::Triangle:
        return 1.0 - std::abs(x) / hi_;
    case Shape::RaisedCosine:
        return 0.5 * (1.0 + std::cos(M_PI * x / hi_));
    case Shape::Plateau:
        return std::min({1.0, (x - lo_) / zeta_, (hi_ - x) / zeta_});
    }
    return 0.0;
}

double SmoothingKernel::support_radius() const
{
    return std::max(std::abs(lo_), std::abs(hi_));
}

double SmoothingKernel::lipschitz() const
{
    switch (shape_) {
    case Shape::Triangle:
        return 1.0 / hi_;
    case Shape::RaisedCosine:
        return M_PI / (2.0 * hi_);
    case Shape::Plateau:
        return 1.0 / zeta_;
    }
    return 0.0;
}

std::complex<double> SmoothingKernel::fourier(double k) const
{
    switch (shape_) {
    case Shape::Triangle: {
        const double s = hi_;
        const double v = sinc(M_PI * k * s);
        return s * v * v;
    }
    case Shape::RaisedCosine: {
        const double s = hi_;
        const double u = 2.0 * k * s;
        if (std::abs(std::abs(u) - 1.0) < 1e-7)
            return s / 2.0;
        return s * sinc(M_PI * u) / (1.0 - u * u);
    }
    case Shape::Plateau: {
        // indicator of width L - zeta convolved with a unit-mass box of width zeta
        const double len = hi_ - lo_ - zeta_;
        const double c = 0.5 * (lo_ + hi_);
        const double mag = len * sinc(M_PI * k * len) * sinc(M_PI * k * zeta_);
        const double a = -2.0 * M_PI * k * c;
        return mag * std::complex<double>(std::cos(a), std::sin(a));
    }
    }
    return 0.0;
}

std::vector<double> SmoothingKernel::breakpoints() const
{
    switch (shape_) {
    case Shape::Triangle:
    case Shape::RaisedCosine:
        return {lo_, 0.0, hi_};
    case Shape::Plateau:
        return {lo_, lo_ + zeta_, hi_ - zeta_, hi_};
    }
    return {};
}

double SmoothingKernel::self_correlation(double u) const
{
    const double a = std::max(lo_, lo_ - u);
    const double b = std::min(hi_, hi_ - u);
    if (!(a < b))
        return 0.0;
    std::vector<double> cuts = {a, b};
    for (double p : breakpoints()) {
        for (double q : {p, p - u})
            if (q > a && q < b)
                cuts.push_back(q);
    }
    std::sort(cuts.begin(), cuts.end());
    auto f = [&](double z) { return (*this)(z + u) * (*this)(z); };
    double s = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (cuts[i] > cuts[i - 1])
            s += gauss_legendre(f, cuts[i - 1], cuts[i]);
    return s;
}

std::string SmoothingKernel::id() const
{
    std::ostringstream os;
    switch (shape_) {
    case Shape::Triangle:
        os << "triangle(s=" << hi_ << ")";
        break;
    case Shape::RaisedCosine:
        os << "raised_cosine(s=" << hi_ << ")";
        break;
    case Shape::Plateau:
        os << "plateau([" << lo_ << ", " << hi_ << "], zeta=" << zeta_ << ")";
        break;
    }
    return os.str();
}

} // namespace ppspec
