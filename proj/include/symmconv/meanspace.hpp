#pragma once

// Weighted p-power means on positive intervals, the p-reflection that swaps
// the endpoints, and the symmetrizing / antisymmetrizing function transforms
// built from it.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace symmconv {

// Closed interval [a, b] with 0 < a < b, both finite.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("interval endpoints must be finite");
        if (!(0.0 < a && a < b))
            throw std::invalid_argument("interval requires 0 < a < b, got [" +
                                        std::to_string(a) + ", " + std::to_string(b) + "]");
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double length() const noexcept { return b_ - a_; }
    bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

private:
    double a_, b_;
};

// Nonzero real exponent; magnitudes below 1e-8 are rejected as numerically
// indistinguishable from the degenerate log-mean limit.
class PParam {
public:
    static constexpr double min_magnitude = 1e-8;

    explicit PParam(double p) : p_(p) {
        if (!std::isfinite(p) || std::fabs(p) < min_magnitude)
            throw std::invalid_argument("p must be finite with |p| >= 1e-8, got " +
                                        std::to_string(p));
    }

    double value() const noexcept { return p_; }

private:
    double p_;
};

namespace detail {

inline bool within_ulps(double v, double target, int ulps) {
    double lo = target, hi = target;
    for (int i = 0; i < ulps; ++i) {
        lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    return lo <= v && v <= hi;
}

} // namespace detail

// M_p(x, y; t) = (t*x^p + (1-t)*y^p)^(1/p) for x, y > 0 and t in [0, 1].
// A zero coordinate is admitted when p > 0 (0^p = 0 is unambiguous there);
// negative p needs strictly positive points.  The result is clamped into
// [min(x,y), max(x,y)], where it lies exactly in real arithmetic.
inline double power_mean(double x, double y, double t, const PParam& p) {
    double floor_excl = p.value() > 0.0 ? -1.0 : 0.0;
    if (!(x > floor_excl && x >= 0.0) || !(y > floor_excl && y >= 0.0) ||
        !std::isfinite(x) || !std::isfinite(y))
        throw std::domain_error("power_mean requires positive finite x and y"
                                " (zero allowed only for p > 0)");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("power_mean requires t in [0, 1], got " + std::to_string(t));
    double pv = p.value();
    double mixed = t * std::pow(x, pv) + (1.0 - t) * std::pow(y, pv);
    double m = std::pow(mixed, 1.0 / pv);
    double lo = std::fmin(x, y), hi = std::fmax(x, y);
    if (m < lo) return lo;
    if (m > hi) return hi;
    return m;
}

// Point that p-power-averages the endpoints with equal weight.
inline double p_midpoint(const Interval& I, const PParam& p) {
    return power_mean(I.a(), I.b(), 0.5, p);
}

// Involution of [a, b] mapping x to (a^p + b^p - x^p)^(1/p); endpoints map to
// each other exactly, and roundoff at most 4 ulps outside [a, b] is clamped.
inline double p_reflect(double x, const Interval& I, const PParam& p) {
    if (!I.contains(x))
        throw std::domain_error("p_reflect: x=" + std::to_string(x) + " outside [" +
                                std::to_string(I.a()) + ", " + std::to_string(I.b()) + "]");
    if (x == I.a()) return I.b();
    if (x == I.b()) return I.a();
    double pv = p.value();
    double s = std::pow(I.a(), pv) + std::pow(I.b(), pv) - std::pow(x, pv);
    double r = std::pow(s, 1.0 / pv);
    if (r < I.a()) {
        if (detail::within_ulps(r, I.a(), 4)) return I.a();
        throw std::domain_error("p_reflect: reflected point " + std::to_string(r) +
                                " escaped [" + std::to_string(I.a()) + ", " +
                                std::to_string(I.b()) + "]");
    }
    if (r > I.b()) {
        if (detail::within_ulps(r, I.b(), 4)) return I.b();
        throw std::domain_error("p_reflect: reflected point " + std::to_string(r) +
                                " escaped [" + std::to_string(I.a()) + ", " +
                                std::to_string(I.b()) + "]");
    }
    return r;
}

// Even part of f under p-reflection: x -> (f(x) + f(reflect(x))) / 2.  The
// result is invariant under the reflection up to roundoff.
template <class F>
auto p_sym_transform(F f, Interval I, PParam p) {
    return [f = std::move(f), I, p](double x) {
        return 0.5 * (f(x) + f(p_reflect(x, I, p)));
    };
}

// Odd part of f under p-reflection: x -> (f(x) - f(reflect(x))) / 2.  Adding
// the even part recovers f pointwise.
template <class F>
auto p_antisym_transform(F f, Interval I, PParam p) {
    return [f = std::move(f), I, p](double x) {
        return 0.5 * (f(x) - f(p_reflect(x, I, p)));
    };
}

} // namespace symmconv
