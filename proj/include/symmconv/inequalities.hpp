#pragma once

// Concrete evaluation of midpoint / weighted-mean / endpoint inequality
// chains for p-convex and symmetrized p-convex functions: every chain becomes
// an ordered list of terms with consecutive margins, so holding or failing is
// a matter of signed numbers rather than prose.
//
// Throughout, the weighted p-mean of f over [a, b] is
//   (p / (b^p - a^p)) * integral of f(x) x^(p-1) dx,
// the midpoint is m = ((a^p + b^p)/2)^(1/p), and P denotes the symmetrizing
// transform (f(x) + f(reflect(x))) / 2.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "detail/format.hpp"
#include "integrate.hpp"
#include "meanspace.hpp"

namespace symmconv {

inline constexpr double default_chain_tol = 1e-7;

struct TermValue {
    std::string label;
    double value = 0.0;
};

struct InequalityReport {
    std::string name;
    std::vector<TermValue> terms;   // left-to-right chain order
    std::vector<double> margins;    // terms[i+1] - terms[i]
    bool holds = false;             // every margin >= -tolerance_used
    double tolerance_used = default_chain_tol;
    std::vector<std::string> warnings;
    std::map<std::string, std::string> notes;
    long evaluations = 0;
};

namespace detail {

inline void finalize(InequalityReport& r) {
    r.margins.clear();
    r.holds = true;
    for (std::size_t i = 1; i < r.terms.size(); ++i) {
        double m = r.terms[i].value - r.terms[i - 1].value;
        r.margins.push_back(m);
        if (m < -r.tolerance_used) r.holds = false;
    }
}

inline void absorb(InequalityReport& r, const QuadResult& q, const char* what) {
    r.evaluations += q.evaluations;
    if (!q.converged)
        r.warnings.push_back(std::string("quadrature did not converge for ") + what);
}

// Interior scan rejecting weights that go negative.
template <class W>
void require_nonnegative_weight(W&& w, const Interval& I, int points = 201) {
    double h = I.length() / points;
    for (int i = 0; i < points; ++i) {
        double x = I.a() + (i + 0.5) * h;
        if (w(x) < 0.0)
            throw std::domain_error("weight is negative at x=" + format_shortest(x));
    }
}

// Tolerances for quadratures nested inside an outer quadrature or sum; the
// inner result feeds a quotient whose denominator can be small, so the inner
// pass runs well below the outer tolerance.
inline QuadConfig nested_config(const QuadConfig& outer) {
    QuadConfig inner;
    inner.abs_tol = std::fmin(outer.abs_tol, 1e-13);
    inner.rel_tol = std::fmin(outer.rel_tol, 1e-13);
    inner.max_subdivisions = std::min(outer.max_subdivisions, 60);
    return inner;
}

} // namespace detail

// Chain for a p-convex f:
//   f(m)  <=  weighted p-mean of f  <=  (f(a) + f(b)) / 2.
template <class F>
InequalityReport hh_p_convex(F&& f, const Interval& I, const PParam& p,
                             const QuadConfig& quad = {}, double chain_tol = default_chain_tol) {
    InequalityReport r;
    r.name = "hh_p_convex";
    r.tolerance_used = chain_tol;
    QuadResult mean = p_weighted_integral(f, I, p, quad);
    detail::absorb(r, mean, "weighted_mean");
    r.terms = {{"midpoint_value", f(p_midpoint(I, p))},
               {"weighted_mean", mean.value},
               {"endpoint_average", 0.5 * (f(I.a()) + f(I.b()))}};
    r.evaluations += 3;
    detail::finalize(r);
    return r;
}

// Same chain evaluated through the symmetrizing transform, which widens its
// validity to all symmetrized p-convex f.  P(m) = f(m) and P(a) = P(b) =
// (f(a)+f(b))/2, so the endpoint terms coincide with hh_p_convex up to
// rounding while the middle integrates P.
template <class F>
InequalityReport hh_symmetrized(F&& f, const Interval& I, const PParam& p,
                                const QuadConfig& quad = {},
                                double chain_tol = default_chain_tol) {
    InequalityReport r;
    r.name = "hh_symmetrized";
    r.tolerance_used = chain_tol;
    auto P = p_sym_transform([&f](double x) { return f(x); }, I, p);
    QuadResult mean = p_weighted_integral(P, I, p, quad);
    detail::absorb(r, mean, "weighted_mean");
    r.terms = {{"midpoint_value", P(p_midpoint(I, p))},
               {"weighted_mean", mean.value},
               {"endpoint_average", 0.5 * (P(I.a()) + P(I.b()))}};
    r.evaluations += 6;
    detail::finalize(r);
    return r;
}

// Pointwise bounds on the transform at a single x:
//   f(m)  <=  P(x)  <=  (f(a) + f(b)) / 2.
template <class F>
InequalityReport transform_bounds(F&& f, const Interval& I, const PParam& p, double x,
                                  double chain_tol = default_chain_tol) {
    if (!I.contains(x))
        throw std::domain_error("transform_bounds: x=" + detail::format_shortest(x) +
                                " outside the interval");
    InequalityReport r;
    r.name = "transform_bounds";
    r.tolerance_used = chain_tol;
    double Px = 0.5 * (f(x) + f(p_reflect(x, I, p)));
    r.terms = {{"midpoint_value", f(p_midpoint(I, p))},
               {"transform_value", Px},
               {"endpoint_average", 0.5 * (f(I.a()) + f(I.b()))}};
    r.evaluations += 6;
    r.notes["x"] = detail::format_shortest(x);
    detail::finalize(r);
    return r;
}

struct TransformExtrema {
    double inf = 0.0, sup = 0.0;
    double arg_inf = 0.0, arg_sup = 0.0;
    long samples_checked = 0;
};

// Grid infimum and supremum of the transform with local 5x refinement around
// each running extremum.  For symmetrized p-convex f these converge to f(m)
// and (f(a)+f(b))/2 respectively.
template <class F>
TransformExtrema transform_extrema(F&& f, const Interval& I, const PParam& p,
                                   const GridSpec& grid = {}) {
    grid.validate();
    auto P = p_sym_transform([&f](double x) { return f(x); }, I, p);

    TransformExtrema out;
    out.inf = std::numeric_limits<double>::infinity();
    out.sup = -std::numeric_limits<double>::infinity();
    out.arg_inf = out.arg_sup = I.a();

    detail::Box1 binf{I.a(), I.b()}, bsup{I.a(), I.b()};
    for (int round = 0; round <= grid.refine_rounds; ++round) {
        for (int i = 0; i < grid.xy_points; ++i) {
            double x = detail::grid_point(binf, i, grid.xy_points);
            double v = P(x);
            ++out.samples_checked;
            if (v < out.inf) {
                out.inf = v;
                out.arg_inf = x;
            }
        }
        for (int i = 0; i < grid.xy_points; ++i) {
            double x = detail::grid_point(bsup, i, grid.xy_points);
            double v = P(x);
            ++out.samples_checked;
            if (v > out.sup) {
                out.sup = v;
                out.arg_sup = x;
            }
        }
        binf = binf.zoom(out.arg_inf, I.a(), I.b());
        bsup = bsup.zoom(out.arg_sup, I.a(), I.b());
    }
    return out;
}

// Weighted chain with a nonnegative weight w.  All three members carry the
// common factor integral(w d(x^p)); the report divides it out, so the middle
// term is the w-weighted p-mean and the outer terms match hh_symmetrized.
// With a p-symmetric w the middle integrand is w*f, otherwise the transform
// form w*P is used (valid without the symmetry hypothesis).
template <class F, class W>
InequalityReport fejer_weighted(F&& f, W&& w, const Interval& I, const PParam& p,
                                const QuadConfig& quad = {},
                                double chain_tol = default_chain_tol) {
    InequalityReport r;
    r.name = "fejer_weighted";
    r.tolerance_used = chain_tol;

    detail::require_nonnegative_weight(w, I);
    r.evaluations += 201;
    WeightSymmetry ws = check_p_symmetric_weight(w, I, p);
    r.evaluations += 2 * ws.samples_checked;
    r.notes["weight_p_symmetric"] = ws.symmetric ? "true" : "false";

    double pv = p.value();
    auto weight_density = [&w, pv](double x) { return w(x) * std::pow(x, pv - 1.0); };
    QuadResult mass = integrate_adaptive(weight_density, I.a(), I.b(), quad);
    detail::absorb(r, mass, "weight mass");
    if (!(mass.value > 0.0))
        throw std::domain_error("weight has zero mass on the interval");
    r.notes["weight_mass"] = detail::format_shortest(mass.value);

    QuadResult middle;
    if (ws.symmetric) {
        auto g = [&f, &w, pv](double x) { return f(x) * w(x) * std::pow(x, pv - 1.0); };
        middle = integrate_adaptive(g, I.a(), I.b(), quad);
        r.notes["middle_integrand"] = "w*f";
    } else {
        auto P = p_sym_transform([&f](double x) { return f(x); }, I, p);
        auto g = [&P, &w, pv](double x) { return P(x) * w(x) * std::pow(x, pv - 1.0); };
        middle = integrate_adaptive(g, I.a(), I.b(), quad);
        r.notes["middle_integrand"] = "w*transform";
    }
    detail::absorb(r, middle, "weighted middle");

    r.terms = {{"midpoint_value", f(p_midpoint(I, p))},
               {"fejer_mean", middle.value / mass.value},
               {"endpoint_average", 0.5 * (f(I.a()) + f(I.b()))}};
    r.evaluations += 3;
    detail::finalize(r);
    return r;
}

// Chain over the subinterval from x to y and its reflection:
//   (f(M) + f(reflect(M))) / 2
//     <=  (p / (2 (y^p - x^p))) * [ int_x^y f d(t^p)  +  int over the
//          reflected span of f d(t^p) ]
//     <=  (f(x) + f(y) + f(reflect(x)) + f(reflect(y))) / 4,
// where M is the p-midpoint of x and y.  Orientation is signed, so x > y
// works the same way.
template <class F>
InequalityReport hh_subinterval_chain(F&& f, const Interval& I, const PParam& p, double x,
                                      double y, const QuadConfig& quad = {},
                                      double chain_tol = default_chain_tol) {
    if (!I.contains(x) || !I.contains(y))
        throw std::domain_error("hh_subinterval_chain: points must lie in the interval");
    double pv = p.value();
    double dp = std::pow(y, pv) - std::pow(x, pv);
    if (std::fabs(dp) < 1e-12)
        throw std::invalid_argument("hh_subinterval_chain: degenerate span, |y^p - x^p| < 1e-12");

    InequalityReport r;
    r.name = "hh_subinterval_chain";
    r.tolerance_used = chain_tol;
    r.notes["x"] = detail::format_shortest(x);
    r.notes["y"] = detail::format_shortest(y);

    double rx = p_reflect(x, I, p);
    double ry = p_reflect(y, I, p);
    double M = power_mean(x, y, 0.5, p);
    double Mr = p_reflect(M, I, p);

    auto density = [&f, pv](double t) { return f(t) * std::pow(t, pv - 1.0); };
    QuadResult direct = integrate_adaptive(density, x, y, quad);
    QuadResult reflected = integrate_adaptive(density, ry, rx, quad);
    detail::absorb(r, direct, "direct span");
    detail::absorb(r, reflected, "reflected span");

    r.terms = {{"midpoint_pair_average", 0.5 * (f(M) + f(Mr))},
               {"two_integral_mean", pv / (2.0 * dp) * (direct.value + reflected.value)},
               {"four_point_average", 0.25 * (f(x) + f(y) + f(rx) + f(ry))}};
    r.evaluations += 6;
    detail::finalize(r);
    return r;
}

// Refinement pinned at one x and its reflection:
//   f(m)  <=  (p / (a^p + b^p - 2 x^p)) * int_x^reflect(x) f d(t^p)  <=  P(x).
// x may not sit at the p-midpoint, where the middle member degenerates to
// its continuous-extension value f(m).
template <class F>
InequalityReport reflected_pair_bound(F&& f, const Interval& I, const PParam& p, double x,
                                      const QuadConfig& quad = {},
                                      double chain_tol = default_chain_tol) {
    if (!I.contains(x))
        throw std::domain_error("reflected_pair_bound: x outside the interval");
    double pv = p.value();
    double den = std::pow(I.a(), pv) + std::pow(I.b(), pv) - 2.0 * std::pow(x, pv);
    if (std::fabs(den) < 1e-8)
        throw std::domain_error("reflected_pair_bound: x within 1e-8 of the p-midpoint");

    InequalityReport r;
    r.name = "reflected_pair_bound";
    r.tolerance_used = chain_tol;
    r.notes["x"] = detail::format_shortest(x);

    double rx = p_reflect(x, I, p);
    auto density = [&f, pv](double t) { return f(t) * std::pow(t, pv - 1.0); };
    QuadResult span = integrate_adaptive(density, x, rx, quad);
    detail::absorb(r, span, "reflected span");

    r.terms = {{"midpoint_value", f(p_midpoint(I, p))},
               {"reflected_span_mean", pv / den * span.value},
               {"transform_value", 0.5 * (f(x) + f(rx))}};
    r.evaluations += 4;
    detail::finalize(r);
    return r;
}

// Averages the reflected_pair_bound middle member over the whole interval:
//   f(m)  <=  weighted p-mean of x -> (p/(a^p+b^p-2x^p)) int_x^reflect(x) f d(t^p)
//         <=  weighted p-mean of f.
// Near the p-midpoint (within 1e-4 in x^p coordinates) the inner member is
// replaced by its continuous extension f(m).
template <class F>
InequalityReport refinement_integral(F&& f, const Interval& I, const PParam& p,
                                     const QuadConfig& quad = {},
                                     double chain_tol = default_chain_tol) {
    InequalityReport r;
    r.name = "refinement_integral";
    r.tolerance_used = chain_tol;

    double pv = p.value();
    double S = std::pow(I.a(), pv) + std::pow(I.b(), pv);
    double m = p_midpoint(I, p);
    double fm = f(m);
    r.evaluations += 1;

    QuadConfig inner_cfg = detail::nested_config(quad);
    long inner_evals = 0;
    int inner_failures = 0;
    auto density = [&f, pv](double t) { return f(t) * std::pow(t, pv - 1.0); };
    auto inner_mean = [&](double x) {
        double den = S - 2.0 * std::pow(x, pv);
        if (std::fabs(den) < 1e-4) return fm;
        double rx = p_reflect(x, I, p);
        QuadResult span = integrate_adaptive(density, x, rx, inner_cfg);
        inner_evals += span.evaluations;
        if (!span.converged) ++inner_failures;
        return pv / den * span.value;
    };

    QuadResult middle = p_weighted_integral(inner_mean, I, p, quad);
    detail::absorb(r, middle, "averaged span mean");
    r.evaluations += inner_evals;
    if (inner_failures > 0)
        r.warnings.push_back("quadrature did not converge for " +
                             std::to_string(inner_failures) + " inner span integrals");

    QuadResult mean = p_weighted_integral(f, I, p, quad);
    detail::absorb(r, mean, "weighted_mean");

    r.terms = {{"midpoint_value", fm},
               {"averaged_span_mean", middle.value},
               {"weighted_mean", mean.value}};
    detail::finalize(r);
    return r;
}

// Four-term refinement for p-convex f, averaging the pointwise chain
//   f(m)  <=  (f(M) + f(reflect(M))) / 2
//         <=  (p / (2 (y^p - x^p))) * [ direct + reflected span integrals ]
//         <=  (f(x)+f(y)+f(reflect(x))+f(reflect(y))) / 4
// over (x, y) in [a,b]^2 against the product density (x y)^(p-1), using a
// fixed 64x64 Gauss-Legendre tensor rule.  The outer members average to f(m)
// and the weighted p-mean of f.  Pairs inside the band |y^p - x^p| < 1e-6
// (the tensor diagonal) use the continuous extension P(x) of the span mean.
template <class F>
InequalityReport pconvex_double_refinement(F&& f, const Interval& I, const PParam& p,
                                           const QuadConfig& quad = {},
                                           double chain_tol = default_chain_tol) {
    InequalityReport r;
    r.name = "pconvex_double_refinement";
    r.tolerance_used = chain_tol;

    static const GaussLegendreRule rule = gauss_legendre_rule(64);
    const int n = 64;

    double pv = p.value();
    double ap = std::pow(I.a(), pv), bp = std::pow(I.b(), pv);
    double delta = bp - ap;
    double mid = 0.5 * (I.a() + I.b());
    double half = 0.5 * I.length();

    std::vector<double> x(n), xp(n), wd(n);
    for (int i = 0; i < n; ++i) {
        x[i] = mid + half * rule.nodes[i];
        xp[i] = std::pow(x[i], pv);
        // weight times the p-mean density, so that sum(wd) approximates
        // integral of x^(p-1) = delta / p
        wd[i] = half * rule.weights[i] * std::pow(x[i], pv - 1.0);
    }
    double norm = (pv * pv) / (delta * delta);  // 1 / (sum wd)^2 in exact arithmetic

    auto P = p_sym_transform([&f](double x_) { return f(x_); }, I, p);
    auto Pdensity = [&P, pv](double t) { return P(t) * std::pow(t, pv - 1.0); };

    QuadConfig inner_cfg = detail::nested_config(quad);
    long inner_evals = 0;
    int inner_failures = 0;

    // Pointwise middle members at one node pair.
    auto paired_midpoint = [&](int i, int j) {
        double M = power_mean(x[i], x[j], 0.5, p);
        return 0.5 * (f(M) + f(p_reflect(M, I, p)));
    };
    auto span_mean = [&](int i, int j) {
        double dp = xp[j] - xp[i];
        if (std::fabs(dp) < 1e-6) return P(x[i]);
        QuadResult span = integrate_adaptive(Pdensity, x[i], x[j], inner_cfg);
        inner_evals += span.evaluations;
        if (!span.converged) ++inner_failures;
        return pv * span.value / dp;
    };

    double sum2 = 0.0, sum3 = 0.0;
    for (int i = 0; i < n; ++i) {
        sum2 += wd[i] * wd[i] * paired_midpoint(i, i);
        sum3 += wd[i] * wd[i] * span_mean(i, i);
        for (int j = i + 1; j < n; ++j) {
            double ww = 2.0 * wd[i] * wd[j];  // symmetric in (i, j)
            sum2 += ww * paired_midpoint(i, j);
            sum3 += ww * span_mean(i, j);
        }
    }
    r.evaluations += static_cast<long>(n) * (n + 1) + inner_evals;
    if (inner_failures > 0)
        r.warnings.push_back("quadrature did not converge for " +
                             std::to_string(inner_failures) + " inner span integrals");

    QuadResult mean = p_weighted_integral(f, I, p, quad);
    detail::absorb(r, mean, "weighted_mean");

    r.terms = {{"midpoint_value", f(p_midpoint(I, p))},
               {"paired_midpoint_mean", norm * sum2},
               {"averaged_span_mean", norm * sum3},
               {"weighted_mean", mean.value}};
    r.evaluations += 2;
    detail::finalize(r);
    return r;
}

// Fractional chain: with L = lower and H = upper of {a^p, b^p} and
// h(u) = w(u^(1/p)), the two-sided fractional mass
//   A  = J_left(h)(L -> H) + J_right(h)(H -> L)
// multiplies both outer members, and the middle member is the same pair of
// operators applied to (f*w)(u^(1/p)).  The report divides A out so the
// chain reads  f(m)  <=  A_fw / A_w  <=  (f(a)+f(b))/2.  For p > 0 the
// operator pair is based at a^p and b^p respectively ("case i"); for p < 0
// the bases swap roles ("case ii") because the power image reverses.
template <class F, class W>
InequalityReport fejer_fractional(F&& f, W&& w, const Interval& I, const PParam& p,
                                  const FracOrder& alpha, const QuadConfig& quad = {},
                                  double chain_tol = default_chain_tol) {
    InequalityReport r;
    r.name = "fejer_fractional";
    r.tolerance_used = chain_tol;

    detail::require_nonnegative_weight(w, I);
    r.evaluations += 201;
    WeightSymmetry ws = check_p_symmetric_weight(w, I, p);
    r.evaluations += 2 * ws.samples_checked;
    if (!ws.symmetric)
        throw std::domain_error("weight is not p-symmetric (worst asymmetry " +
                                detail::format_shortest(ws.worst_asymmetry) + ")");

    double pv = p.value();
    double ap = std::pow(I.a(), pv), bp = std::pow(I.b(), pv);
    double lo = std::fmin(ap, bp), hi = std::fmax(ap, bp);
    double inv_p = 1.0 / pv;

    auto hw = [&w, inv_p](double u) { return w(std::pow(u, inv_p)); };
    auto hfw = [&f, &w, inv_p](double u) {
        double t = std::pow(u, inv_p);
        return f(t) * w(t);
    };

    QuadResult left_w = frac_integral_left(hw, lo, hi, alpha, quad);
    QuadResult right_w = frac_integral_right(hw, hi, lo, alpha, quad);
    QuadResult left_fw = frac_integral_left(hfw, lo, hi, alpha, quad);
    QuadResult right_fw = frac_integral_right(hfw, hi, lo, alpha, quad);
    detail::absorb(r, left_w, "left weight operator");
    detail::absorb(r, right_w, "right weight operator");
    detail::absorb(r, left_fw, "left f*w operator");
    detail::absorb(r, right_fw, "right f*w operator");

    double mass = left_w.value + right_w.value;
    double mixed = left_fw.value + right_fw.value;
    if (!(mass > 0.0))
        throw std::domain_error("weight has zero fractional mass");

    r.notes["case"] = pv > 0.0 ? "i" : "ii";
    r.notes["alpha"] = detail::format_shortest(alpha.value());
    r.notes["operator_sum_w"] = detail::format_shortest(mass);
    r.notes["operator_sum_fw"] = detail::format_shortest(mixed);

    r.terms = {{"midpoint_value", f(p_midpoint(I, p))},
               {"fractional_mean", mixed / mass},
               {"endpoint_average", 0.5 * (f(I.a()) + f(I.b()))}};
    r.evaluations += 3;
    detail::finalize(r);
    return r;
}

} // namespace symmconv
