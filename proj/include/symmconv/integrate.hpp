#pragma once

// Numerical integration: globally adaptive Gauss-Kronrod 7-15 quadrature,
// power-weighted interval means, left/right fractional integrals with the
// endpoint singularity removed by substitution, the gamma function, and
// Gauss-Legendre rules for fixed-order tensor quadrature.

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "meanspace.hpp"

namespace symmconv {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("quadrature tolerances must be positive");
        if (max_subdivisions < 1)
            throw std::invalid_argument("max_subdivisions must be at least 1");
    }
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    long evaluations = 0;
    int subdivisions = 0;
};

// Fractional integration order, positive and finite.
class FracOrder {
public:
    explicit FracOrder(double alpha) : alpha_(alpha) {
        if (!std::isfinite(alpha) || !(alpha > 0.0))
            throw std::invalid_argument("fractional order must be positive and finite, got " +
                                        std::to_string(alpha));
    }

    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
};

// One Gauss-Kronrod 7-15 panel with the standard rescaled error estimate.
template <class F>
PanelResult gk15(F&& f, double lo, double hi) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    double center = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo);

    double fc = f(center);
    double resg = kGaussWeights[3] * fc;
    double resk = kKronrodWeights[7] * fc;
    double resabs = std::fabs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        double dx = half * kKronrodNodes[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        double fsum = fv1[j] + fv2[j];
        resk += kKronrodWeights[j] * fsum;
        resabs += kKronrodWeights[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * fsum;
    }

    double mean = 0.5 * resk;
    double resasc = kKronrodWeights[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kKronrodWeights[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));

    PanelResult out;
    out.value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    out.error = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && out.error != 0.0)
        out.error = resasc * std::fmin(1.0, std::pow(200.0 * out.error / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps))
        out.error = std::fmax(50.0 * eps * resabs, out.error);

    if (!std::isfinite(out.value))
        throw std::domain_error("integrand produced a non-finite value on [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return out;
}

struct Segment {
    double lo, hi;
    double value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

} // namespace detail

// Globally adaptive quadrature over [lo, hi]: repeatedly bisect the segment
// with the largest error estimate until the summed estimate meets
// max(abs_tol, rel_tol*|value|) or the subdivision budget runs out.  An
// inverted range integrates with a sign flip.
template <class F>
QuadResult integrate_adaptive(F&& f, double lo, double hi, const QuadConfig& cfg = {}) {
    cfg.validate();
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("integration bounds must be finite");

    QuadResult out;
    if (lo == hi) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::priority_queue<detail::Segment> queue;
    detail::PanelResult first = detail::gk15(f, lo, hi);
    queue.push({lo, hi, first.value, first.error});
    double total = first.value;
    double total_error = first.error;
    out.evaluations = 15;
    out.subdivisions = 1;

    for (;;) {
        double tol = std::fmax(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
        if (total_error <= tol) {
            out.converged = true;
            break;
        }
        if (out.subdivisions >= cfg.max_subdivisions) break;

        detail::Segment worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi) || worst.error == 0.0) {
            // Segment at machine resolution; no further refinement possible.
            queue.push(worst);
            break;
        }
        detail::PanelResult left = detail::gk15(f, worst.lo, mid);
        detail::PanelResult right = detail::gk15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push({worst.lo, mid, left.value, left.error});
        queue.push({mid, worst.hi, right.value, right.error});
        out.evaluations += 30;
        out.subdivisions += 1;
    }

    out.value = sign * total;
    out.error_estimate = total_error;
    return out;
}

// Power-weighted mean of f over [a, b]:
//   (p / (b^p - a^p)) * integral of f(x) * x^(p-1) over [a, b].
// Equals the average of f against the measure induced by x -> x^p.
template <class F>
QuadResult p_weighted_integral(F&& f, const Interval& I, const PParam& p,
                               const QuadConfig& cfg = {}) {
    double pv = p.value();
    auto g = [&f, pv](double x) { return f(x) * std::pow(x, pv - 1.0); };
    QuadResult r = integrate_adaptive(g, I.a(), I.b(), cfg);
    double scale = pv / (std::pow(I.b(), pv) - std::pow(I.a(), pv));
    r.value *= scale;
    r.error_estimate *= std::fabs(scale);
    return r;
}

// Gamma function for positive arguments, Lanczos approximation (g = 7, nine
// coefficients), relative error below 1e-13 on the evaluated range.
inline double gamma(double z) {
    if (!std::isfinite(z) || !(z > 0.0))
        throw std::domain_error("gamma requires a positive finite argument, got " +
                                std::to_string(z));
    constexpr double pi = 3.141592653589793238462643383279502884;
    constexpr double coeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (z < 0.5) {
        // Reflection keeps the series argument away from the small-z region.
        return pi / (std::sin(pi * z) * gamma(1.0 - z));
    }
    double x = z - 1.0;
    double acc = coeff[0];
    for (int i = 1; i < 9; ++i) acc += coeff[i] / (x + i);
    double t = x + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

namespace detail {

// Shared plumbing for the two fractional integrals.  `dir` is +1 when the
// evaluation point sits above the base point and -1 when below.  For orders
// below one the kernel singularity at the evaluation point is removed by the
// substitution u = |at - t|^alpha, which flattens the kernel to a constant.
template <class F>
QuadResult frac_integral_impl(F&& h, double base, double at, int dir,
                              const FracOrder& order, const QuadConfig& cfg) {
    double al = order.value();
    double span = dir > 0 ? at - base : base - at;
    QuadResult r;
    if (al < 1.0) {
        double upper = std::pow(span, al);
        double inv_al = 1.0 / al;
        auto g = [&h, at, dir, inv_al](double u) {
            return h(at - dir * std::pow(u, inv_al));
        };
        r = integrate_adaptive(g, 0.0, upper, cfg);
        double scale = 1.0 / (al * gamma(al));
        r.value *= scale;
        r.error_estimate *= scale;
    } else {
        auto g = [&h, at, dir, al](double t) {
            return std::pow(dir * (at - t), al - 1.0) * h(t);
        };
        double lo = dir > 0 ? base : at;
        double hi = dir > 0 ? at : base;
        r = integrate_adaptive(g, lo, hi, cfg);
        double scale = 1.0 / gamma(al);
        r.value *= scale;
        r.error_estimate *= scale;
    }
    return r;
}

} // namespace detail

// Left fractional integral of order alpha, based at `base`, evaluated at
// `at` > base:
//   (1 / Gamma(alpha)) * integral over [base, at] of (at - t)^(alpha-1) h(t).
template <class F>
QuadResult frac_integral_left(F&& h, double base, double at, const FracOrder& order,
                              const QuadConfig& cfg = {}) {
    if (!std::isfinite(base) || !std::isfinite(at) || !(base < at))
        throw std::invalid_argument("frac_integral_left requires base < at");
    return detail::frac_integral_impl(h, base, at, +1, order, cfg);
}

// Right fractional integral of order alpha, based at `base`, evaluated at
// `at` < base:
//   (1 / Gamma(alpha)) * integral over [at, base] of (t - at)^(alpha-1) h(t).
template <class F>
QuadResult frac_integral_right(F&& h, double base, double at, const FracOrder& order,
                               const QuadConfig& cfg = {}) {
    if (!std::isfinite(base) || !std::isfinite(at) || !(at < base))
        throw std::invalid_argument("frac_integral_right requires at < base");
    return detail::frac_integral_impl(h, base, at, -1, order, cfg);
}

struct GaussLegendreRule {
    std::vector<double> nodes;   // ascending on (-1, 1)
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration on
// the Legendre recurrence; accurate to machine precision.
inline GaussLegendreRule gauss_legendre_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_rule requires n >= 1");
    constexpr double pi = 3.141592653589793238462643383279502884;
    GaussLegendreRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double pcur = 1.0, pprev = 0.0;
            for (int j = 0; j < n; ++j) {
                double tmp = pprev;
                pprev = pcur;
                pcur = ((2.0 * j + 1.0) * z * pprev - j * tmp) / (j + 1.0);
            }
            deriv = n * (z * pcur - pprev) / (z * z - 1.0);
            double step = pcur / deriv;
            z -= step;
            if (std::fabs(step) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        double w = 2.0 / ((1.0 - z * z) * deriv * deriv);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace symmconv
