// Computes the flux of the fundamental solution across gauge spheres and the
// mass constant it determines.

#include <cstdio>

#include "heis/identities.hpp"

int main() {
    const heis::FluxReport rep = heis::fundamental_flux_report({0.25, 0.5, 1.0, 2.0, 4.0});
    std::printf("%-8s %s\n", "radius", "horizontal flux");
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        std::printf("%-8g %.15f\n", rep.radii[i], rep.fluxes[i]);
    std::printf("\nkappa               %.15f\n", rep.kappa);
    std::printf("mass constant       %.15f\n", rep.cn);
    std::printf("relative spread     %.3e\n", rep.max_rel_spread);
    std::printf("relation residual   %.3e\n",
                std::abs(rep.cn + 0.5 * (heis::homogeneous_q() - 2.0) * rep.kappa));
    return 0;
}
