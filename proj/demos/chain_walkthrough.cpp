// Walks one function through every inequality chain the library knows and
// prints the terms with their margins.  Good starting point for the API.

#include <symmconv/symmconv.hpp>

#include <cstdio>

using namespace symmconv;

static void print_report(const InequalityReport& r) {
    std::printf("%s\n", r.name.c_str());
    for (const auto& t : r.terms)
        std::printf("  %-22s %.12f\n", t.label.c_str(), t.value);
    std::printf("  margins:");
    for (double m : r.margins) std::printf(" %.3e", m);
    std::printf("\n  holds: %s\n\n", r.holds ? "yes" : "no");
}

int main() {
    auto f = [](double x) { return x * x; };
    Interval I(1.0, 3.0);
    PParam p(1.0);

    print_report(hh_p_convex(f, I, p));
    print_report(hh_symmetrized(f, I, p));
    print_report(hh_subinterval_chain(f, I, p, 1.5, 2.0));
    print_report(reflected_pair_bound(f, I, p, 1.5));
    print_report(refinement_integral(f, I, p));
    print_report(pconvex_double_refinement(f, I, p));

    auto w = [](double x) { return (x - 2.0) * (x - 2.0); };
    print_report(fejer_weighted(f, w, I, p));
    print_report(fejer_fractional(f, [](double) { return 1.0; }, I, p,
                                  FracOrder(0.5)));

    // the same machinery at a negative power parameter
    Interval J(1.0, 2.0);
    print_report(hh_symmetrized(f, J, PParam(-1.0)));
    return 0;
}
