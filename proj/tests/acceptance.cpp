// Acceptance gate: one line per criterion, nonzero exit on any failure.
// argv[1] is the path of the command-line tool, used for the determinism
// criterion; without it that criterion fails explicitly.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "heis/identities.hpp"
#include "heis/suites.hpp"

using namespace heis;

namespace {

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int criteria_run = 0, criteria_passed = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail) {
    ++criteria_run;
    criteria_passed += pass ? 1 : 0;
    std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

const CheckRecord* find(const std::vector<CheckRecord>& checks, const std::string& name) {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool all_pass(const std::vector<CheckRecord>& checks, const std::vector<std::string>& names,
              std::string& why) {
    for (const auto& n : names) {
        const CheckRecord* c = find(checks, n);
        if (!c) {
            why = "missing check " + n;
            return false;
        }
        if (!c->pass) {
            why = n + " residual " + format_double(c->residual) + " tolerance " +
                  format_double(c->tolerance);
            return false;
        }
    }
    return true;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";
    SuiteOptions opts;

    std::map<std::string, std::vector<CheckRecord>> suite;
    std::map<std::string, double> elapsed;
    for (const auto& name : suite_names()) {
        Clock clock;
        suite[name] = run_suite(name, opts);
        elapsed[name] = clock.seconds();
    }

    {
        std::string why;
        const bool checks_ok =
            all_pass(suite["core"],
                     {"associativity", "inverse_identity", "dilation_homomorphism",
                      "gauge_dilation_homogeneity", "left_invariant_distance"},
                     why);
        const bool time_ok = elapsed["core"] < 1.0;
        report(1, "group and gauge axioms, 10^4 randomized checks at 1e-12",
               checks_ok && time_ok,
               checks_ok ? "max residual within 1e-12, " + format_double(elapsed["core"]) + "s"
                         : why);
    }
    {
        std::string why;
        const bool checks_ok =
            all_pass(suite["calculus"],
                     {"xi_divergence", "xi_commutator_x", "xi_commutator_y",
                      "euler_homogeneity"},
                     why);
        const bool time_ok = elapsed["calculus"] < 10.0;
        report(2, "generator identities: divergence 4, commutators, euler property",
               checks_ok && time_ok,
               checks_ok ? format_double(elapsed["calculus"]) + "s" : why);
    }
    {
        std::string why;
        const bool checks_ok = all_pass(
            suite["identities"],
            {"fundamental_solution_harmonic", "fundamental_flux_constant", "flux_sign"}, why);
        const bool time_ok = elapsed["identities"] < 30.0;
        report(3, "fundamental solution annihilated, flux constant, negative mass",
               checks_ok && time_ok,
               checks_ok ? format_double(elapsed["identities"]) + "s for the suite" : why);
    }
    {
        std::string why;
        bool checks_ok =
            all_pass(suite["identities"], {"bubble_normalization", "bubble_equation"}, why);
        const BubbleCalibration a = calibrate_bubble_constant(64, 1);
        const BubbleCalibration b = calibrate_bubble_constant(64, 2);
        const double drift = std::abs(a.c1 - b.c1);
        if (checks_ok && drift > 1e-10) {
            checks_ok = false;
            why = "calibration drift " + format_double(drift);
        }
        report(4, "extremal equation at 1e-6 over 10^4 points, calibration stable to 1e-10",
               checks_ok, checks_ok ? "calibration drift " + format_double(drift) : why);
    }
    {
        std::string why;
        const bool checks_ok =
            all_pass(suite["identities"],
                     {"pohozaev_manufactured", "pohozaev_resolution_order",
                      "pohozaev_critical_boundary"},
                     why);
        const bool time_ok = elapsed["identities"] < 120.0;
        const CheckRecord* order = find(suite["identities"], "pohozaev_resolution_order");
        std::string detail = why;
        if (checks_ok && order)
            for (const auto& [k, v] : order->values)
                if (k == "order") detail = "convergence order " + format_double(v);
        report(5, "balance identity: manufactured 1e-4, order 2, critical boundary vanishes",
               checks_ok && time_ok, detail);
    }
    {
        std::string why;
        const bool checks_ok =
            all_pass(suite["identities"],
                     {"mass_constant_stability", "mass_constant_relation",
                      "boundary_limit_a-2", "boundary_limit_a0", "boundary_limit_a1",
                      "boundary_limit_linearity", "boundary_limit_slope"},
                     why);
        const bool time_ok = elapsed["identities"] < 120.0;
        report(6, "boundary-term limit: stability, algebraic relation, linear law in A",
               checks_ok && time_ok,
               checks_ok ? format_double(elapsed["identities"]) + "s for the suite" : why);
    }
    {
        std::string why;
        const bool checks_ok =
            all_pass(suite["blowup"],
                     {"dilation_semigroup", "operator_dilation_covariance",
                      "equation_form_preservation"},
                     why);
        report(7, "rescaling covariance at 1e-6 for 10 random frames, semigroup at 1e-12",
               checks_ok, checks_ok ? format_double(elapsed["blowup"]) + "s" : why);
    }
    {
        std::string why;
        const bool checks_ok = all_pass(
            suite["blowup"], {"profile_single_peak", "argmax_inverse_scaling"}, why);
        std::string detail = why;
        if (checks_ok) {
            const CheckRecord* c = find(suite["blowup"], "argmax_inverse_scaling");
            for (const auto& [k, v] : c->values)
                if (k == "r_lambda1") detail = "argmax at lambda 1 is " + format_double(v);
        }
        report(8, "single profile peak, argmax tracks the inverse scale", checks_ok, detail);
    }
    {
        std::string why;
        const bool checks_ok =
            all_pass(suite["solver"],
                     {"operator_consistency_order", "critical_power_dirichlet",
                      "critical_power_refinement", "concentration_sweep_monotone"},
                     why);
        const bool time_ok = elapsed["solver"] < 600.0;
        report(9, "dirichlet recovery at 5e-2 improving under refinement, monotone sweep",
               checks_ok && time_ok,
               checks_ok ? format_double(elapsed["solver"]) + "s for both solves and sweep"
                         : why);
    }
    {
        std::string why;
        const bool checks_ok =
            all_pass(suite["ordercalc"],
                     {"forward_first_order_table", "inverse_first_order_table",
                      "neumann_square_table", "second_order_table", "covariant_bound_table",
                      "sublaplacian_table", "sublaplacian_bound_table"},
                     why);
        const bool time_ok = elapsed["ordercalc"] < 1.0;
        report(10, "order tables entry-exact, leftovers confined to documented open entries",
               checks_ok && time_ok,
               checks_ok ? format_double(elapsed["ordercalc"]) + "s" : why);
    }
    {
        bool pass = false;
        std::string detail;
        if (cli_path.empty()) {
            detail = "tool path not supplied";
        } else {
            namespace fs = std::filesystem;
            const fs::path dir = fs::temp_directory_path() / "heis_acceptance";
            std::error_code ec;
            fs::remove_all(dir, ec);
            fs::create_directories(dir);
            const std::string base = "\"" + cli_path + "\" verify --suite all --seed 7 --out \"" +
                                     dir.string() + "\" --format json > /dev/null";
            const int rc1 = std::system(base.c_str());
            const std::string first = slurp((dir / "verify.json").string());
            const int rc2 = std::system(base.c_str());
            const std::string second = slurp((dir / "verify.json").string());
            if (rc1 != 0 || rc2 != 0)
                detail = "tool exited nonzero";
            else if (first.empty())
                detail = "no report produced";
            else if (first != second)
                detail = "reports differ";
            else {
                pass = true;
                detail = "two runs byte-identical, " + std::to_string(first.size()) +
                         " bytes";
            }
            fs::remove_all(dir, ec);
        }
        report(11, "two seeded verify runs emit byte-identical json", pass, detail);
    }

    std::printf("%d/%d criteria passed\n", criteria_passed, criteria_run);
    return criteria_passed == criteria_run ? 0 : 1;
}
