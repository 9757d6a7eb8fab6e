#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heis/blowup.hpp"
#include "heis/identities.hpp"
#include "heis/ordercalc.hpp"
#include "heis/report.hpp"
#include "heis/solver.hpp"
#include "heis/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCrash = 3;
constexpr int kExitIo = 4;

struct RunConfig {
    std::vector<std::string> suites = {"all"};
    std::string out_dir;
    std::string format = "json";
    std::uint64_t seed = 7;
    double resolution_scale = 1.0;
    std::map<std::string, double> tolerances;

    std::vector<std::pair<std::string, std::string>> echo() const {
        std::vector<std::pair<std::string, std::string>> kv;
        std::string joined;
        for (const auto& s : suites) joined += (joined.empty() ? "" : ",") + s;
        kv.emplace_back("suite", joined);
        kv.emplace_back("seed", std::to_string(seed));
        kv.emplace_back("resolution_scale", heis::format_double(resolution_scale));
        kv.emplace_back("format", format);
        if (!out_dir.empty()) kv.emplace_back("out", out_dir);
        for (const auto& [k, v] : tolerances)
            kv.emplace_back("tol." + k, heis::format_double(v));
        return kv;
    }
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

bool parse_double(const std::string& text, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(text, &used);
        return used == text.size();
    } catch (const std::exception&) {
        return false;
    }
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto& names = heis::suite_names();
    if (key == "suite") {
        cfg.suites.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item != "all" && std::find(names.begin(), names.end(), item) == names.end())
                throw ConfigError("unknown suite '" + item + "' for key 'suite'");
            cfg.suites.push_back(item);
        }
        if (cfg.suites.empty()) throw ConfigError("empty value for key 'suite'");
        return;
    }
    if (key == "seed") {
        try {
            cfg.seed = std::stoull(value);
        } catch (const std::exception&) {
            throw ConfigError("key 'seed' needs an unsigned integer, got '" + value + "'");
        }
        return;
    }
    if (key == "resolution_scale") {
        double v = 0.0;
        if (!parse_double(value, v) || v <= 0.0)
            throw ConfigError("key 'resolution_scale' needs a positive number, got '" + value +
                              "'");
        cfg.resolution_scale = v;
        return;
    }
    if (key == "format") {
        if (value != "json" && value != "csv" && value != "both")
            throw ConfigError("key 'format' must be json, csv, or both, got '" + value + "'");
        cfg.format = value;
        return;
    }
    if (key == "out") {
        cfg.out_dir = value;
        return;
    }
    if (key.rfind("tol.", 0) == 0) {
        const std::string check = key.substr(4);
        double v = 0.0;
        if (check.empty() || !parse_double(value, v) || v < 0.0)
            throw ConfigError("key '" + key + "' needs a nonnegative number, got '" + value +
                              "'");
        cfg.tolerances[check] = v;
        return;
    }
    throw ConfigError("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& sets) {
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set needs key=value, got '" + kv + "'");
        apply_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
}

std::vector<std::string> resolve_suites(const RunConfig& cfg) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& s : cfg.suites) {
        if (s == "all") {
            for (const auto& n : heis::suite_names())
                if (seen.insert(n).second) names.push_back(n);
        } else if (seen.insert(s).second) {
            names.push_back(s);
        }
    }
    return names;
}

int write_report(const heis::Report& report, const RunConfig& cfg, const std::string& stem) {
    try {
        if (cfg.out_dir.empty()) return kExitPass;
        if (cfg.format == "json" || cfg.format == "both")
            heis::write_text_atomic(cfg.out_dir + "/" + stem + ".json",
                                    heis::json_string(report));
        if (cfg.format == "csv" || cfg.format == "both")
            heis::write_text_atomic(cfg.out_dir + "/" + stem + ".csv",
                                    heis::csv_string(report));
        return kExitPass;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}

void print_summary(const heis::Report& report) {
    for (const auto& s : report.summaries())
        std::printf("%-10s %3d/%-3d\n", s.name.c_str(), s.passed, s.total);
    int total = 0, passed = 0;
    for (const auto& c : report.checks) {
        ++total;
        passed += c.pass ? 1 : 0;
    }
    std::printf("%-10s %3d/%-3d %s\n", "total", passed, total,
                report.all_pass() ? "PASS" : "FAIL");
    for (const auto& c : report.checks)
        if (!c.pass)
            std::printf("  FAIL %s/%s residual %s tolerance %s%s%s\n", c.suite.c_str(),
                        c.name.c_str(), heis::format_double(c.residual).c_str(),
                        heis::format_double(c.tolerance).c_str(),
                        c.note.empty() ? "" : " note ", c.note.c_str());
}

int run_verify(const RunConfig& cfg) {
    heis::SuiteOptions opts;
    opts.seed = cfg.seed;
    opts.resolution_scale = cfg.resolution_scale;
    opts.tolerances = cfg.tolerances;

    heis::Report report;
    report.config = cfg.echo();
    bool crashed = false;
    for (const auto& name : resolve_suites(cfg)) {
        try {
            auto checks = heis::run_suite(name, opts);
            for (auto& c : checks) report.checks.push_back(std::move(c));
        } catch (const std::exception& e) {
            crashed = true;
            heis::CheckRecord c;
            c.suite = name;
            c.name = "suite_crashed";
            c.ref = "plumbing";
            c.pass = false;
            c.note = e.what();
            report.checks.push_back(std::move(c));
        }
    }
    const int io = write_report(report, cfg, "verify");
    print_summary(report);
    if (io != kExitPass) return io;
    if (crashed) return kExitCrash;
    return report.all_pass() ? kExitPass : kExitFail;
}

int run_cn(const RunConfig& cfg, std::vector<double> radii, std::size_t n_theta,
           std::size_t n_phi) {
    const heis::FluxReport rep = heis::fundamental_flux_report(radii, n_theta, n_phi);
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        std::printf("flux r=%-6s %s\n", heis::format_double(rep.radii[i]).c_str(),
                    heis::format_double(rep.fluxes[i]).c_str());
    std::printf("kappa      %s\n", heis::format_double(rep.kappa).c_str());
    std::printf("cn         %s\n", heis::format_double(rep.cn).c_str());
    std::printf("rel spread %s\n", heis::format_double(rep.max_rel_spread).c_str());

    heis::Report report;
    report.config = cfg.echo();
    heis::CheckRecord c;
    c.suite = "cn";
    c.name = "flux_constancy";
    c.ref = "mass-constant-limit";
    c.values = {{"kappa", rep.kappa}, {"cn", rep.cn}};
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        c.values.emplace_back("flux_r" + heis::format_double(rep.radii[i]), rep.fluxes[i]);
    c.residual = rep.max_rel_spread;
    c.tolerance = 1e-5;
    c.pass = c.residual <= c.tolerance;
    report.checks.push_back(std::move(c));
    const int io = write_report(report, cfg, "cn");
    return io != kExitPass ? io : (report.all_pass() ? kExitPass : kExitFail);
}

int run_bubble(const RunConfig& cfg, double lambda, std::vector<double> center) {
    const heis::BubbleCalibration cal = heis::calibrate_bubble_constant(64, cfg.seed);
    const heis::HeisPoint x0(center[0], center[1], center[2]);
    const heis::ScalarField u = heis::bubble_field(cal.c1, lambda, x0);
    heis::PointSampler s(cfg.seed);
    double rel = 0.0;
    for (std::size_t i = 0; i < 2000; ++i) {
        const heis::HeisPoint p = s.next();
        const double cube = std::pow(u(p), 3);
        rel = std::max(rel, std::abs(-heis::sublaplacian(u, p) - cube) / std::abs(cube));
    }
    std::printf("c1              %s\n", heis::format_double(cal.c1).c_str());
    std::printf("c1 spread       %s\n", heis::format_double(cal.max_spread).c_str());
    std::printf("equation rel    %s\n", heis::format_double(rel).c_str());

    heis::Report report;
    report.config = cfg.echo();
    heis::CheckRecord c;
    c.suite = "bubble";
    c.name = "extremal_equation";
    c.ref = "bubble-equation";
    c.values = {{"c1", cal.c1},
                {"c1_spread", cal.max_spread},
                {"lambda", lambda},
                {"x0_x", center[0]},
                {"x0_y", center[1]},
                {"x0_t", center[2]}};
    c.residual = rel;
    c.tolerance = 1e-6;
    c.pass = c.residual <= c.tolerance;
    report.checks.push_back(std::move(c));
    const int io = write_report(report, cfg, "bubble");
    return io != kExitPass ? io : (report.all_pass() ? kExitPass : kExitFail);
}

int run_pohozaev(const RunConfig& cfg, double radius, std::size_t base_res) {
    const heis::PohozaevResolution res{base_res, std::max<std::size_t>(8, base_res + 4),
                                       2 * base_res};
    const heis::PohozaevData data =
        heis::make_manufactured_pohozaev(heis::manufactured_positive_field());
    const heis::PohozaevReport rep = heis::pohozaev_check(data, radius, res);
    std::printf("volume side    %s\n", heis::format_double(rep.volume_side).c_str());
    std::printf("boundary side  %s\n", heis::format_double(rep.boundary_side).c_str());
    std::printf("rel residual   %s\n", heis::format_double(rep.rel_residual).c_str());
    std::printf("pde residual   %s\n", heis::format_double(rep.pde_residual).c_str());

    heis::Report report;
    report.config = cfg.echo();
    heis::CheckRecord c;
    c.suite = "pohozaev";
    c.name = "manufactured_balance";
    c.ref = "pohozaev-balance";
    c.values = {{"volume_side", rep.volume_side},
                {"boundary_side", rep.boundary_side},
                {"pde_residual", rep.pde_residual},
                {"radius", radius}};
    c.residual = rep.rel_residual;
    c.tolerance = 1e-4;
    c.pass = c.residual <= c.tolerance;
    report.checks.push_back(std::move(c));
    const int io = write_report(report, cfg, "pohozaev");
    return io != kExitPass ? io : (report.all_pass() ? kExitPass : kExitFail);
}

int run_profile(const RunConfig& cfg, double lambda, double p) {
    const heis::ScalarField u =
        heis::bubble_field(1.0, lambda, heis::HeisPoint(0.0, 0.0, 0.0));
    const heis::RadialProfile prof = heis::radial_profile(u, p);
    const auto crits = heis::critical_points(prof);
    const std::size_t peak = heis::argmax_index(prof.wbar);
    std::printf("argmax r       %s\n", heis::format_double(prof.radii[peak]).c_str());
    std::printf("argmax w       %s\n", heis::format_double(prof.wbar[peak]).c_str());
    std::printf("critical count %zu\n", crits.size());
    if (!cfg.out_dir.empty()) {
        std::string csv = "r,ubar,wbar\n";
        for (std::size_t i = 0; i < prof.radii.size(); ++i)
            csv += heis::format_double(prof.radii[i]) + "," +
                   heis::format_double(prof.ubar[i]) + "," +
                   heis::format_double(prof.wbar[i]) + "\n";
        try {
            heis::write_text_atomic(cfg.out_dir + "/profile.csv", csv);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kExitIo;
        }
    }
    return kExitPass;
}

int run_solve(const RunConfig& cfg, std::size_t n) {
    const heis::Grid g(heis::GridBox{}, n);
    const heis::ScalarField oracle = heis::scale_values(heis::bubble_kernel(), 2.0);
    auto oracle_fn = [&oracle](const heis::HeisPoint& p) { return oracle(p); };
    heis::NewtonReport nrep;
    const heis::DiscreteField u = heis::solve_critical_power(g, oracle_fn, nrep);
    const double rel = u.interior_sup_rel_error(oracle_fn);
    std::printf("n              %zu\n", n);
    std::printf("converged      %d\n", nrep.converged ? 1 : 0);
    std::printf("iterations     %d\n", nrep.iterations);
    std::printf("newton res     %s\n", heis::format_double(nrep.final_residual).c_str());
    std::printf("rel sup error  %s\n", heis::format_double(rel).c_str());

    heis::Report report;
    report.config = cfg.echo();
    heis::CheckRecord c;
    c.suite = "solve";
    c.name = "dirichlet_recovery";
    c.ref = "bubble-equation";
    c.values = {{"n", double(n)},
                {"iterations", double(nrep.iterations)},
                {"newton_residual", nrep.final_residual}};
    c.residual = rel;
    c.tolerance = 5e-2;
    c.pass = nrep.converged && c.residual <= c.tolerance;
    report.checks.push_back(std::move(c));
    const int io = write_report(report, cfg, "solve");
    return io != kExitPass ? io : (report.all_pass() ? kExitPass : kExitFail);
}

int run_sweep(const RunConfig& cfg, std::vector<double> exponents, std::size_t n,
              std::size_t iterations) {
    const heis::Grid g(heis::GridBox{}, n);
    const auto rows = heis::concentration_sweep(g, exponents, iterations);
    std::printf("%-6s %-22s %-22s %-22s\n", "p", "energy", "max", "rhalf");
    for (const auto& row : rows)
        std::printf("%-6s %-22s %-22s %-22s\n", heis::format_double(row.p).c_str(),
                    heis::format_double(row.energy).c_str(),
                    heis::format_double(row.max_value).c_str(),
                    heis::format_double(row.half_height_radius).c_str());
    if (!cfg.out_dir.empty()) {
        std::string csv = "p,energy,max,rhalf,iterations\n";
        for (const auto& row : rows)
            csv += heis::format_double(row.p) + "," + heis::format_double(row.energy) + "," +
                   heis::format_double(row.max_value) + "," +
                   heis::format_double(row.half_height_radius) + "," +
                   std::to_string(row.iterations) + "\n";
        try {
            heis::write_text_atomic(cfg.out_dir + "/sweep.csv", csv);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kExitIo;
        }
    }
    return kExitPass;
}

int run_orders(const RunConfig& cfg, const std::string& rule_name) {
    const heis::DerivativeRule rule = rule_name == "strict"
                                          ? heis::strict_homogeneous_rule()
                                          : heis::anisotropic_rule();
    const auto rows = heis::derive_forward_first_order();
    const char* row_names[3] = {"Z1", "Z1b", "T"};
    std::printf("frame expansion (rows act on [Z1 Z1b T]):\n");
    for (std::size_t r = 0; r < 3; ++r)
        std::printf("  %-4s [%s, %s, %s]\n", row_names[r],
                    heis::to_string(rows[r][0]).c_str(), heis::to_string(rows[r][1]).c_str(),
                    heis::to_string(rows[r][2]).c_str());
    const auto comparisons = heis::compare_order_tables(rule);
    int equal = 0;
    std::printf("table comparison (%s rule):\n", rule_name.c_str());
    for (const auto& c : comparisons) {
        if (c.kind == heis::MatchKind::equal) {
            ++equal;
            continue;
        }
        std::printf("  %-22s %-8s %-6s claimed %-8s derived %-8s %s%s\n", c.table.c_str(),
                    c.row.c_str(), c.slot.c_str(), heis::to_string(c.claimed).c_str(),
                    heis::to_string(c.derived).c_str(), heis::to_string(c.kind),
                    heis::is_known_open_mismatch(c) ? " (known open)" : "");
    }
    std::printf("  %d/%zu slots equal\n", equal, comparisons.size());

    heis::Report report;
    report.config = cfg.echo();
    int unexplained = 0;
    for (const auto& c : comparisons)
        if (c.kind != heis::MatchKind::equal && !heis::is_known_open_mismatch(c))
            ++unexplained;
    heis::CheckRecord c;
    c.suite = "orders";
    c.name = "table_comparison";
    c.ref = "frame-expansion";
    c.values = {{"slots", double(comparisons.size())},
                {"equal", double(equal)},
                {"unexplained", double(unexplained)}};
    c.residual = double(unexplained);
    c.tolerance = 0.0;
    c.pass = unexplained == 0;
    report.checks.push_back(std::move(c));
    const int io = write_report(report, cfg, "orders");
    return io != kExitPass ? io : (report.all_pass() ? kExitPass : kExitFail);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks for sub-Riemannian identities on the first Heisenberg group"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> set_overrides;
    RunConfig cfg;

    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--set", set_overrides, "override a config key, key=value");
    app.add_option("--out", cfg.out_dir, "directory for report files");
    app.add_option("--format", cfg.format, "report format: json, csv, both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--resolution-scale", cfg.resolution_scale, "grid resolution multiplier")
        ->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suite_args;
    verify->add_option("--suite", suite_args, "suite name or all, repeatable");

    auto* cn = app.add_subcommand("cn", "flux of the fundamental solution and mass constant");
    std::vector<double> cn_radii = {0.5, 1.0, 2.0};
    std::size_t cn_theta = 48, cn_phi = 96;
    cn->add_option("--radius", cn_radii, "sphere radii");
    cn->add_option("--ntheta", cn_theta, "latitudinal quadrature points");
    cn->add_option("--nphi", cn_phi, "longitudinal quadrature points");

    auto* bubble = app.add_subcommand("bubble", "extremal calibration and equation residual");
    double bubble_lambda = 1.0;
    std::vector<double> bubble_center = {0.0, 0.0, 0.0};
    bubble->add_option("--lambda", bubble_lambda, "dilation parameter")
        ->check(CLI::PositiveNumber);
    bubble->add_option("--center", bubble_center, "translation center x y t")->expected(3);

    auto* pohozaev = app.add_subcommand("pohozaev", "balance identity on a gauge ball");
    double pohozaev_radius = 1.0;
    std::size_t pohozaev_res = 12;
    pohozaev->add_option("--radius", pohozaev_radius, "ball radius")
        ->check(CLI::PositiveNumber);
    pohozaev->add_option("--resolution", pohozaev_res, "radial quadrature points");

    auto* profile = app.add_subcommand("profile", "rescaled radial profile of the extremal");
    double profile_lambda = 1.0, profile_p = 3.0;
    profile->add_option("--lambda", profile_lambda, "dilation parameter")
        ->check(CLI::PositiveNumber);
    profile->add_option("--exponent", profile_p, "nonlinearity exponent")
        ->check(CLI::PositiveNumber);

    auto* solve = app.add_subcommand("solve", "Dirichlet solve of the critical equation");
    std::size_t solve_n = 32;
    solve->add_option("--n", solve_n, "grid points per axis")->check(CLI::Range(8, 96));

    auto* sweep = app.add_subcommand("sweep", "concentration sweep over subcritical exponents");
    std::vector<double> sweep_ps = {2.2, 2.5, 2.8};
    std::size_t sweep_n = 24, sweep_iters = 200;
    sweep->add_option("--exponent", sweep_ps, "exponent list");
    sweep->add_option("--n", sweep_n, "grid points per axis")->check(CLI::Range(8, 64));
    sweep->add_option("--iterations", sweep_iters, "minimizer iterations");

    auto* orders = app.add_subcommand("orders", "normal-coordinate order tables");
    std::string orders_rule = "floor";
    orders->add_option("--rule", orders_rule, "derivative rule: floor or strict")
        ->check(CLI::IsMember({"floor", "strict"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (!config_path.empty()) load_config_file(cfg, config_path);
        apply_overrides(cfg, set_overrides);
        if (!suite_args.empty()) {
            std::string joined;
            for (const auto& s : suite_args) joined += (joined.empty() ? "" : ",") + s;
            apply_key(cfg, "suite", joined);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }

    try {
        if (*verify) return run_verify(cfg);
        if (*cn) return run_cn(cfg, cn_radii, cn_theta, cn_phi);
        if (*bubble) return run_bubble(cfg, bubble_lambda, bubble_center);
        if (*pohozaev) return run_pohozaev(cfg, pohozaev_radius, pohozaev_res);
        if (*profile) return run_profile(cfg, profile_lambda, profile_p);
        if (*solve) return run_solve(cfg, solve_n);
        if (*sweep) return run_sweep(cfg, sweep_ps, sweep_n, sweep_iters);
        if (*orders) return run_orders(cfg, orders_rule);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitCrash;
    }
    return kExitPass;
}
