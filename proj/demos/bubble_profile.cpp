// Compares rescaled radial profiles of concentrating extremals: the peak of
// w̄(r) = r·ū(r) moves like the inverse of the concentration parameter.

#include <cstdio>

#include "heis/analytic.hpp"
#include "heis/blowup.hpp"

int main() {
    for (double lam : {1.0, 5.0, 25.0}) {
        const heis::ScalarField u = heis::bubble_field(1.0, lam, heis::HeisPoint());
        const heis::RadialProfile prof = heis::radial_profile(u);
        const auto crits = heis::critical_points(prof);
        const std::size_t peak = heis::argmax_index(prof.wbar);
        std::printf("lambda %-5g argmax r %.5f  lambda*r %.5f  critical points %zu\n", lam,
                    prof.radii[peak], lam * prof.radii[peak], crits.size());
    }
    return 0;
}
