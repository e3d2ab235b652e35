#pragma once

// Numerical deciders: p-convexity and symmetrized p-convexity over a grid
// with local refinement, weight-symmetry checking, and the change-of-variable
// cross-check that reduces the symmetrized p case to the ordinary (p = 1)
// case on the power-image interval.
//
// Deciders are one-sided: a failure comes with a re-checkable witness, while
// a pass means no violation was found at the grid resolution.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "meanspace.hpp"

namespace symmconv {

inline constexpr double default_defect_tol = 1e-9;
inline constexpr double default_symmetry_tol = 1e-9;

struct GridSpec {
    int xy_points = 41;
    int t_points = 21;
    int refine_rounds = 3;

    void validate() const {
        if (xy_points < 3 || t_points < 3)
            throw std::invalid_argument("grid needs at least 3 points per axis");
        if (refine_rounds < 0)
            throw std::invalid_argument("refine_rounds must be nonnegative");
        double total = static_cast<double>(xy_points) * xy_points * t_points *
                       (static_cast<double>(refine_rounds) + 1.0);
        if (total > 1e7)
            throw std::invalid_argument("grid would exceed the 1e7 sample budget");
    }
};

struct Witness {
    double x = 0.0, y = 0.0, t = 0.0;
};

struct ConvexityVerdict {
    bool holds = true;
    double worst_defect = 0.0;
    std::optional<Witness> witness;  // present exactly when holds is false
    long samples_checked = 0;
};

// Signed violation of the p-chord condition at one triple:
//   f(M_p(x, y; t)) - t*f(x) - (1-t)*f(y).
// Positive values witness non-p-convexity.
template <class F>
double defect(F&& f, double x, double y, double t, const PParam& p) {
    double chord = t * f(x) + (1.0 - t) * f(y);
    return f(power_mean(x, y, t, p)) - chord;
}

namespace detail {

struct Box1 {
    double lo, hi;

    // New window of one fifth the width centered on c, shifted to stay
    // inside [outer_lo, outer_hi].
    Box1 zoom(double c, double outer_lo, double outer_hi) const {
        double w = (hi - lo) / 5.0;
        double nlo = c - 0.5 * w;
        double nhi = c + 0.5 * w;
        if (nlo < outer_lo) {
            nhi += outer_lo - nlo;
            nlo = outer_lo;
        }
        if (nhi > outer_hi) {
            nlo -= nhi - outer_hi;
            nhi = outer_hi;
        }
        nlo = std::fmax(nlo, outer_lo);
        return {nlo, std::fmin(nhi, outer_hi)};
    }
};

inline double grid_point(const Box1& b, int i, int n) {
    if (n == 1) return 0.5 * (b.lo + b.hi);
    return b.lo + (b.hi - b.lo) * (static_cast<double>(i) / (n - 1));
}

} // namespace detail

// Scans the defect over an (x, y, t) grid on [a,b]^2 x [0,1], then refines
// around the running maximum with a 5x zoom for refine_rounds passes.  The
// argmax is deterministic: ties keep the lexicographically first (x, y, t)
// in scan order.
template <class F>
ConvexityVerdict check_p_convex(F&& f, const Interval& I, const PParam& p,
                                const GridSpec& grid = {}, double tol = default_defect_tol) {
    grid.validate();

    ConvexityVerdict verdict;
    double best = -std::numeric_limits<double>::infinity();
    Witness arg{I.a(), I.a(), 0.0};

    detail::Box1 bx{I.a(), I.b()}, by{I.a(), I.b()}, bt{0.0, 1.0};
    for (int round = 0; round <= grid.refine_rounds; ++round) {
        for (int i = 0; i < grid.xy_points; ++i) {
            double x = detail::grid_point(bx, i, grid.xy_points);
            for (int j = 0; j < grid.xy_points; ++j) {
                double y = detail::grid_point(by, j, grid.xy_points);
                for (int k = 0; k < grid.t_points; ++k) {
                    double t = detail::grid_point(bt, k, grid.t_points);
                    double d = defect(f, x, y, t, p);
                    ++verdict.samples_checked;
                    if (d > best) {
                        best = d;
                        arg = {x, y, t};
                    }
                }
            }
        }
        bx = bx.zoom(arg.x, I.a(), I.b());
        by = by.zoom(arg.y, I.a(), I.b());
        bt = bt.zoom(arg.t, 0.0, 1.0);
    }

    verdict.worst_defect = best;
    verdict.holds = best <= tol;
    if (!verdict.holds) {
        // A witness must reproduce on demand; this recomputation runs the
        // exact defect path the scan used.
        double again = defect(f, arg.x, arg.y, arg.t, p);
        if (std::fabs(again - best) > 1e-12)
            throw std::logic_error("witness defect failed to reproduce");
        verdict.witness = arg;
    }
    return verdict;
}

// p-convexity of the symmetrizing transform of f; functions passing the
// plain check always pass this one, but not conversely.
template <class F>
ConvexityVerdict check_symmetrized_p_convex(F&& f, const Interval& I, const PParam& p,
                                            const GridSpec& grid = {},
                                            double tol = default_defect_tol) {
    auto P = p_sym_transform(std::forward<F>(f), I, p);
    return check_p_convex(P, I, p, grid, tol);
}

struct WeightSymmetry {
    bool symmetric = false;
    double worst_asymmetry = 0.0;  // normalized by max(1, sup |w|) on the grid
    long samples_checked = 0;
};

// Compares w against its reflection pullback on an interior grid (endpoints
// excluded so that weights singular at a or b remain checkable).
template <class F>
WeightSymmetry check_p_symmetric_weight(F&& w, const Interval& I, const PParam& p,
                                        int points = 201, double tol = default_symmetry_tol) {
    if (points < 3) throw std::invalid_argument("symmetry scan needs at least 3 points");
    double h = I.length() / points;
    double worst = 0.0;
    double sup = 0.0;
    WeightSymmetry out;
    for (int i = 0; i < points; ++i) {
        double x = I.a() + (i + 0.5) * h;
        double wx = w(x);
        double wr = w(p_reflect(x, I, p));
        worst = std::fmax(worst, std::fabs(wx - wr));
        sup = std::fmax(sup, std::fmax(std::fabs(wx), std::fabs(wr)));
        ++out.samples_checked;
    }
    out.worst_asymmetry = worst / std::fmax(1.0, sup);
    out.symmetric = out.worst_asymmetry <= tol;
    return out;
}

struct SubstitutionCrosscheck {
    ConvexityVerdict direct;       // symmetrized p-convexity of f on [a,b]
    ConvexityVerdict substituted;  // symmetrized convexity of f(u^(1/p)) on the power image
    bool agree = false;
};

// Equivalence check: f is symmetrized p-convex on [a,b] exactly when
// u -> f(u^(1/p)) is symmetrized convex (p = 1) on the interval spanned by
// a^p and b^p (re-ordered ascending when p < 0).
template <class F>
SubstitutionCrosscheck crosscheck_substitution(F&& f, const Interval& I, const PParam& p,
                                               const GridSpec& grid = {},
                                               double tol = default_defect_tol) {
    SubstitutionCrosscheck out;
    out.direct = check_symmetrized_p_convex(f, I, p, grid, tol);

    double pv = p.value();
    double ap = std::pow(I.a(), pv), bp = std::pow(I.b(), pv);
    Interval image(std::fmin(ap, bp), std::fmax(ap, bp));
    double inv_p = 1.0 / pv;
    auto g = [&f, inv_p](double u) { return f(std::pow(u, inv_p)); };
    out.substituted = check_symmetrized_p_convex(g, image, PParam(1.0), grid, tol);

    out.agree = out.direct.holds == out.substituted.holds;
    return out;
}

} // namespace symmconv
