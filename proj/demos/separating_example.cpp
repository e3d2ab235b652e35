// Shows the point of the symmetrized check: a function that the plain
// decider rejects while the even part under the reflection is convex, so
// the averaged chain still holds.
//
// f(x) = x^2 + 5 (x - 2)^3 on [1, 3] with p = 1.  The cubic part is odd
// under x -> 4 - x, so it cancels from the even part, which is just
// (x - 2)^2 + 4.

#include <symmconv/symmconv.hpp>

#include <cstdio>

using namespace symmconv;

int main() {
    auto f = [](double x) {
        double d = x - 2.0;
        return x * x + 5.0 * d * d * d;
    };
    Interval I(1.0, 3.0);
    PParam p(1.0);

    auto plain = check_p_convex(f, I, p);
    std::printf("plain decider: holds = %s, worst defect = %.6f\n",
                plain.holds ? "yes" : "no", plain.worst_defect);
    if (plain.witness)
        std::printf("  witness: x = %.6f, y = %.6f, t = %.6f\n",
                    plain.witness->x, plain.witness->y, plain.witness->t);

    auto sym = check_symmetrized_p_convex(f, I, p);
    std::printf("symmetrized decider: holds = %s, worst defect = %.3e\n",
                sym.holds ? "yes" : "no", sym.worst_defect);

    auto chain = hh_symmetrized(f, I, p);
    std::printf("averaged chain: %.6f <= %.6f <= %.6f  (holds = %s)\n",
                chain.terms[0].value, chain.terms[1].value,
                chain.terms[2].value, chain.holds ? "yes" : "no");
    return 0;
}
