// Traces the scaled boundary term of the balance identity for fields with a
// prescribed singular expansion and extrapolates the shrinking-sphere limit.

#include <cstdio>

#include "heis/identities.hpp"

int main() {
    const heis::FluxReport flux = heis::fundamental_flux_report();
    std::printf("mass constant %.12f\n\n", flux.cn);
    for (double A : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const heis::ScalarField u = heis::singular_expansion_field(A, true);
        const heis::BoundaryLimitSeries s = heis::boundary_term_limit(u);
        std::printf("A = %5.1f\n", A);
        for (std::size_t i = 0; i < s.sigmas.size(); ++i)
            std::printf("  sigma %-6g scaled boundary term %.10f\n", s.sigmas[i],
                        s.values[i]);
        std::printf("  extrapolated %.10f  expected %.10f  gap %.3e\n\n", s.limit,
                    -flux.cn * A, std::abs(s.limit + flux.cn * A));
    }
    return 0;
}
