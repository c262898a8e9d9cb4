#ifndef PPSPEC_QUADRATIC_HPP
#define PPSPEC_QUADRATIC_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace ppspec {

/// Element a + b*tau of the ring Z[tau], tau = (1 + sqrt 5) / 2.
///
/// tau satisfies tau^2 = tau + 1 and its Galois conjugate is
/// tau' = 1 - tau = -1/tau. Comparison and sign are decided exactly with
/// integer arithmetic, so two coordinates built from the same tiles compare
/// equal without any tolerance.
struct QuadInt {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr QuadInt() = default;
    constexpr QuadInt(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}

    static constexpr QuadInt tau() { return {0, 1}; }

    double value() const;

    /// Galois conjugate, expressed again in the basis {1, tau}.
    constexpr QuadInt conj() const { return {a + b, -b}; }

    /// Exact sign of a + b*tau: -1, 0 or +1.
    int sign() const;

    constexpr QuadInt operator-() const { return {-a, -b}; }
    friend constexpr QuadInt operator+(QuadInt x, QuadInt y) { return {x.a + y.a, x.b + y.b}; }
    friend constexpr QuadInt operator-(QuadInt x, QuadInt y) { return {x.a - y.a, x.b - y.b}; }
    friend constexpr QuadInt operator*(QuadInt x, QuadInt y)
    {
        // (a + b t)(c + d t) = ac + (ad + bc) t + bd (t + 1)
        return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
    }
    friend constexpr bool operator==(QuadInt x, QuadInt y) = default;
    friend std::strong_ordering operator<=>(QuadInt x, QuadInt y)
    {
        int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
             : s > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string str() const;
};

inline constexpr double kTau = 1.6180339887498948482;

} // namespace ppspec

template <>
struct std::hash<ppspec::QuadInt> {
    std::size_t operator()(const ppspec::QuadInt& q) const noexcept
    {
        return std::hash<std::int64_t>{}(q.a) * 1000003u ^ std::hash<std::int64_t>{}(q.b);
    }
};

#endif
