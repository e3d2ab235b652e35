#include <catch2/catch_amalgamated.hpp>

#include <symmconv/analysis.hpp>
#include <symmconv/expr.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

using Catch::Approx;
using namespace symmconv;

namespace {

double quad_fn(double x) { return x * x; }
double neg_log(double x) { return -std::log(x); }

}  // namespace

TEST_CASE("defect closed forms") {
    // affine functions have zero defect for p = 1, at every triple
    auto affine = [](double x) { return 3.0 * x - 7.0; };
    PParam one(1.0);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        CHECK(std::fabs(defect(affine, 1.0, 4.0, t, one)) < 1e-12);
    }

    // x^2 at (0, 2, 1/2): f(1) - (0 + 4)/2 = -1, exactly representable
    CHECK(defect(quad_fn, 0.0, 2.0, 0.5, one) == -1.0);

    // -ln x at (1, 2, 1/2) with p = -1: -ln(4/3) + ln(2)/2 > 0
    double d = defect(neg_log, 1.0, 2.0, 0.5, PParam(-1.0));
    CHECK(d == Approx(-std::log(4.0 / 3.0) + std::log(2.0) / 2.0).epsilon(1e-12));
    CHECK(d > 0.05);
}

TEST_CASE("defect swap symmetry is bitwise at complement-exact t") {
    PParam p2(2.0);
    // these t values satisfy 1-(1-t) == t exactly in binary
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        double a = defect(neg_log, 1.3, 2.6, t, p2);
        double b = defect(neg_log, 2.6, 1.3, 1.0 - t, p2);
        CHECK(a == b);
    }
}

TEST_CASE("defect vanishes on the diagonal") {
    for (double p : {-2.0, -1.0, 0.5, 1.0, 3.0}) {
        for (double x : {0.7, 1.0, 2.5}) {
            double d = defect(quad_fn, x, x, 0.3, PParam(p));
            CHECK(std::fabs(d) <= 1e-12 * std::max(1.0, x * x));
        }
    }
}

TEST_CASE("grid settings validation") {
    CHECK_NOTHROW(GridSpec{}.validate());
    GridSpec tiny;
    tiny.xy_points = 2;
    CHECK_THROWS_AS(tiny.validate(), std::invalid_argument);
    GridSpec small_t;
    small_t.t_points = 2;
    CHECK_THROWS_AS(small_t.validate(), std::invalid_argument);
    GridSpec huge;  // xy^2 * t * (rounds + 1) above the evaluation budget
    huge.xy_points = 1000;
    huge.t_points = 100;
    huge.refine_rounds = 0;
    CHECK_THROWS_AS(huge.validate(), std::invalid_argument);
}

TEST_CASE("convex functions are certified across p") {
    Interval I(1.0, 3.0);
    for (double p : {-2.0, -1.0, 0.5, 1.0, 2.0}) {
        auto v = check_p_convex(quad_fn, I, PParam(p));
        INFO("p = " << p);
        CHECK(v.holds);
        CHECK(v.worst_defect <= default_defect_tol);
        CHECK_FALSE(v.witness.has_value());
        CHECK(v.samples_checked > 0);
    }
    // convexity survives positive rescaling
    auto scaled = [](double x) { return 7.5 * x * x; };
    CHECK(check_p_convex(scaled, I, PParam(1.0)).holds);
}

TEST_CASE("constant function has vanishing worst defect") {
    // t*c + (1-t)*c can land one ulp away from c, so vanishing means a few
    // ulps here rather than a bitwise zero
    auto c = [](double) { return 4.25; };
    auto v = check_p_convex(c, Interval(1.0, 2.0), PParam(2.0));
    CHECK(v.holds);
    CHECK(std::fabs(v.worst_defect) <= 1e-14);
}

TEST_CASE("power kernel family is p-convex") {
    // (x^p - a^p)^(alpha - 1) on [1, 2] for integer alpha >= 2
    for (double p : {1.0, 2.0, 3.0}) {
        for (double alpha : {2.0, 3.0, 4.0}) {
            auto f = [p, alpha](double x) {
                return std::pow(std::pow(x, p) - 1.0, alpha - 1.0);
            };
            auto v = check_p_convex(f, Interval(1.0, 2.0), PParam(p));
            INFO("p = " << p << " alpha = " << alpha);
            CHECK(v.holds);
        }
    }
}

TEST_CASE("violations come with a re-checkable witness") {
    Interval I(1.0, 2.0);
    PParam ph(-1.0);
    auto v = check_p_convex(neg_log, I, ph);
    CHECK_FALSE(v.holds);
    CHECK(v.worst_defect >= 0.05);
    REQUIRE(v.witness.has_value());
    const Witness& w = *v.witness;
    CHECK(I.contains(w.x));
    CHECK(I.contains(w.y));
    CHECK(w.t >= 0.0);
    CHECK(w.t <= 1.0);
    // the witness reproduces the reported defect through the public evaluator
    double again = defect(neg_log, w.x, w.y, w.t, ph);
    CHECK(std::fabs(again - v.worst_defect) <= 1e-12);
}

TEST_CASE("oscillatory function fails in both plain and symmetrized form") {
    auto wig = [](double x) { return std::sin(10.0 * x); };
    Interval I(1.0, 3.0);
    PParam one(1.0);
    auto plain = check_p_convex(wig, I, one);
    CHECK_FALSE(plain.holds);
    CHECK(plain.witness.has_value());
    auto sym = check_symmetrized_p_convex(wig, I, one);
    CHECK_FALSE(sym.holds);
    CHECK(sym.witness.has_value());
    // the symmetrized witness certifies a violation of the averaged transform
    auto P = p_sym_transform(wig, I, one);
    double again = defect(P, sym.witness->x, sym.witness->y, sym.witness->t, one);
    CHECK(std::fabs(again - sym.worst_defect) <= 1e-12);
}

TEST_CASE("symmetrized decider inherits convexity certificates") {
    // if f is p-convex then its even part under p-reflection is too
    Interval I(1.0, 3.0);
    for (double p : {-1.0, 1.0, 2.0}) {
        auto v = check_symmetrized_p_convex(quad_fn, I, PParam(p));
        INFO("p = " << p);
        CHECK(v.holds);
    }
    auto ev = check_symmetrized_p_convex([](double x) { return std::exp(x); },
                                         I, PParam(1.0));
    CHECK(ev.holds);
}

TEST_CASE("harmonic average of -ln x is midpoint-concave, not convex") {
    // The averaged transform of -ln x under the p = -1 reflection of [1, 2]
    // is h(u) = -(1/2) ln(2 u^2 / (3 u - 2)); composed with u -> 1/v this is
    // (1/2) ln(v (3/2 - v)), strictly concave.  So the symmetrized decider
    // must refuse, with the largest violation at the harmonic midpoint pair
    // (1, 2, 1/2): defect = -ln(4/3) + ln(2)/2.
    Interval I(1.0, 2.0);
    PParam ph(-1.0);
    auto v = check_symmetrized_p_convex(neg_log, I, ph);
    CHECK_FALSE(v.holds);
    double expected = -std::log(4.0 / 3.0) + std::log(2.0) / 2.0;
    CHECK(v.worst_defect == Approx(expected).epsilon(1e-6));
    REQUIRE(v.witness.has_value());
    auto P = p_sym_transform(neg_log, I, ph);
    double again = defect(P, v.witness->x, v.witness->y, v.witness->t, ph);
    CHECK(std::fabs(again - v.worst_defect) <= 1e-12);

    // spot check the concavity claim itself, independent of the decider
    double mid = p_midpoint(I, ph);             // 4/3
    double chord = 0.5 * (P(1.0) + P(2.0));     // -(ln 2)/2
    CHECK(P(mid) == Approx(-std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK(P(mid) > chord);
}

TEST_CASE("worst defect scales linearly with the function") {
    Interval I(1.0, 2.0);
    PParam ph(-1.0);
    auto base = check_p_convex(neg_log, I, ph);
    auto scaled_f = [](double x) { return -4.0 * std::log(x); };
    auto scaled = check_p_convex(scaled_f, I, ph);
    CHECK_FALSE(scaled.holds);
    CHECK(scaled.worst_defect == Approx(4.0 * base.worst_defect).epsilon(1e-9));
}

TEST_CASE("weight symmetry detection") {
    Interval I(1.0, 3.0);
    PParam one(1.0);

    auto flat = check_p_symmetric_weight([](double) { return 1.0; }, I, one);
    CHECK(flat.symmetric);
    CHECK(flat.worst_asymmetry <= default_symmetry_tol);
    CHECK(flat.samples_checked > 0);

    // w(x) = x is not invariant under x -> 4 - x
    auto skew = check_p_symmetric_weight([](double x) { return x; }, I, one);
    CHECK_FALSE(skew.symmetric);
    CHECK(skew.worst_asymmetry > 0.1);

    // (x-1)^2 + (3-x)^2 is invariant under x -> 4 - x
    auto bowl = check_p_symmetric_weight(
        [](double x) { return (x - 1.0) * (x - 1.0) + (3.0 - x) * (3.0 - x); },
        I, one);
    CHECK(bowl.symmetric);

    // the paired power kernel is invariant under the p-reflection
    PParam two(2.0);
    Interval J(1.0, 2.0);
    auto paired = check_p_symmetric_weight(
        [](double x) {
            double u = x * x;
            return (u - 1.0) * (u - 1.0) + (4.0 - u) * (4.0 - u);
        },
        J, two);
    CHECK(paired.symmetric);

    // normalization keeps the score scale-free
    auto skew_big = check_p_symmetric_weight(
        [](double x) { return 1e6 * x; }, I, one);
    CHECK(skew_big.worst_asymmetry == Approx(skew.worst_asymmetry).epsilon(1e-9));
}

TEST_CASE("substitution cross-check agrees in both directions") {
    // deciding p-convexity of f directly must agree with deciding ordinary
    // convexity of u -> f(u^(1/p)) on the transplanted interval
    struct Case {
        double (*f)(double);
        double p;
        double a, b;
        bool expect_hold;
    };
    std::vector<Case> cases = {
        {quad_fn, 2.0, 1.0, 2.0, true},
        {quad_fn, -1.0, 1.0, 3.0, true},
        {quad_fn, 1.0, 1.0, 3.0, true},
        {neg_log, -1.0, 1.0, 2.0, false},
    };
    for (const auto& c : cases) {
        auto r = crosscheck_substitution(c.f, Interval(c.a, c.b), PParam(c.p));
        INFO("p = " << c.p);
        CHECK(r.agree);
        CHECK(r.direct.holds == c.expect_hold);
        CHECK(r.substituted.holds == c.expect_hold);
    }

    auto wig = [](double x) { return std::sin(10.0 * x); };
    auto r = crosscheck_substitution(wig, Interval(1.0, 3.0), PParam(2.0));
    CHECK(r.agree);
    CHECK_FALSE(r.direct.holds);
}

TEST_CASE("deciders accept parsed expressions") {
    auto fe = FuncExpr::parse("(x^p - a^p)^(alpha - 1)");
    ParamBindings binds;
    binds.set("p", 2.0);
    binds.set("a", 1.0);
    binds.set("alpha", 3.0);
    BoundExpr f(fe, binds);
    auto v = check_p_convex(f, Interval(1.0, 2.0), PParam(2.0));
    CHECK(v.holds);
}

TEST_CASE("verdict witness is present exactly when the check fails") {
    Interval I(1.0, 2.0);
    struct Probe {
        double (*f)(double);
        double p;
    };
    for (const Probe& pr : {Probe{quad_fn, 1.0}, Probe{quad_fn, -2.0},
                            Probe{neg_log, -1.0}}) {
        auto v = check_p_convex(pr.f, I, PParam(pr.p));
        CHECK(v.witness.has_value() == !v.holds);
        auto s = check_symmetrized_p_convex(pr.f, I, PParam(pr.p));
        CHECK(s.witness.has_value() == !s.holds);
    }
}
