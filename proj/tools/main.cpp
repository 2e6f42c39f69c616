// Command-line surface for the torus eigenvalue-bound toolkit: single-point
// bound evaluations, flat spectra, region scans with CSV/SVG emission,
// threshold solving, weighted Galerkin certificates, the orthogonal-cap
// search, and the property-check suites.
//
// Exit codes: 0 success, 2 invalid parameters, 3 I/O failure, 4 numeric
// failure (no bracket / no convergence).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusbound/bounds.hpp"
#include "torusbound/core.hpp"
#include "torusbound/flat_spectrum.hpp"
#include "torusbound/galerkin.hpp"
#include "torusbound/moduli.hpp"
#include "torusbound/scan.hpp"
#include "torusbound/svg.hpp"
#include "torusbound/trial.hpp"
#include "torusbound/verify.hpp"
#include "torusbound/weight_expr.hpp"

namespace tb = torusbound;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

json breakdown_to_json(const tb::BoundBreakdown& bd) {
    return json{{"a", bd.a},
                {"b", bd.b},
                {"s", bd.s},
                {"S", bd.big_s},
                {"r0", bd.r0},
                {"low_branch", bd.low_branch},
                {"F_at_r0", bd.f_at_r0},
                {"U", bd.u}};
}

json checks_to_json(const std::string& suite, const std::vector<tb::CheckResult>& checks) {
    json arr = json::array();
    for (const auto& c : checks) {
        json item{{"name", c.name},
                  {"status", std::isnan(c.tolerance) ? "info" : (c.pass ? "pass" : "fail")},
                  {"measured", c.measured},
                  {"tolerance", c.tolerance}};
        if (!c.note.empty()) item["note"] = c.note;
        arr.push_back(item);
    }
    return json{{"suite", suite}, {"checks", arr}};
}

/// Optional JSON config mirroring the scan/heatmap flags; flags override.
void apply_scan_config(const std::string& path, tb::ScanConfig& cfg, CLI::App* cmd) {
    std::ifstream f(path);
    if (!f) throw tb::io_error("cannot read config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config parse error: " + std::string(e.what()));
    }
    auto maybe = [&](const char* key, auto& target) {
        auto it = j.find(key);
        if (it == j.end()) return;
        if (cmd->count(std::string("--") + key) > 0) return;  // flag wins
        target = it->get<std::decay_t<decltype(target)>>();
    };
    maybe("a_min", cfg.a_min);
    maybe("a_max", cfg.a_max);
    maybe("a_steps", cfg.a_steps);
    maybe("b_min", cfg.b_min);
    maybe("b_max", cfg.b_max);
    maybe("b_steps", cfg.b_steps);
    maybe("column", cfg.column);
    maybe("output", cfg.output);
    maybe("format", cfg.format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torus second-eigenvalue bound toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 12345;
    app.add_option("--seed", seed, "seed for optimizer starts and sampled checks")
        ->capture_default_str();

    // ---- bound ----
    double arg_a = 0.0, arg_b = 1.0;
    CLI::App* cmd_bound = app.add_subcommand("bound", "evaluate the closed-form bound at (a, b)");
    cmd_bound->add_option("--a", arg_a, "torus parameter a")->required();
    cmd_bound->add_option("--b", arg_b, "torus parameter b")->required();

    // ---- spectrum ----
    int arg_k = 10;
    CLI::App* cmd_spectrum =
        app.add_subcommand("spectrum", "enumerate the flat-torus spectrum up to index k");
    cmd_spectrum->add_option("--a", arg_a)->required();
    cmd_spectrum->add_option("--b", arg_b)->required();
    cmd_spectrum->add_option("--k", arg_k, "largest eigenvalue index")->capture_default_str();

    // ---- scan / heatmap ----
    tb::ScanConfig scan_cfg;
    std::string config_path;
    CLI::App* cmd_scan = app.add_subcommand("scan", "CSV scan of the bound over an (a, b) grid");
    CLI::App* cmd_heatmap = app.add_subcommand("heatmap", "SVG heatmap of one scan column");
    for (CLI::App* c : {cmd_scan, cmd_heatmap}) {
        c->add_option("--a_min", scan_cfg.a_min)->capture_default_str();
        c->add_option("--a_max", scan_cfg.a_max)->capture_default_str();
        c->add_option("--a_steps", scan_cfg.a_steps)->capture_default_str();
        c->add_option("--b_min", scan_cfg.b_min)->capture_default_str();
        c->add_option("--b_max", scan_cfg.b_max)->capture_default_str();
        c->add_option("--b_steps", scan_cfg.b_steps)->capture_default_str();
        c->add_option("--column", scan_cfg.column, "column for the heatmap ramp")
            ->capture_default_str();
        c->add_option("--output", scan_cfg.output, "output path")->required();
        c->add_option("--config", config_path, "JSON config mirroring the flags");
    }

    // ---- threshold ----
    double arg_target = tb::conjecture_target();
    CLI::App* cmd_threshold =
        app.add_subcommand("threshold", "solve U(a, b) = target for b by bisection");
    cmd_threshold->add_option("--a", arg_a)->required();
    cmd_threshold->add_option("--target", arg_target, "target value of the bound")
        ->capture_default_str();

    // ---- verify ----
    std::string suite = "all";
    CLI::App* cmd_verify = app.add_subcommand("verify", "run a property-check suite");
    cmd_verify->add_option("suite", suite, "bounds|energy|conformal|trial|galerkin|all")
        ->capture_default_str();

    // ---- galerkin ----
    std::string weight_expr = "1";
    double cutoff_multiple = 12.0;
    CLI::App* cmd_galerkin = app.add_subcommand(
        "galerkin", "weighted Rayleigh-Ritz certificate for one conformal metric");
    cmd_galerkin->add_option("--a", arg_a)->required();
    cmd_galerkin->add_option("--b", arg_b)->required();
    cmd_galerkin->add_option("--weight", weight_expr,
                             "weight expression over x, y, u, v (see README)")
        ->capture_default_str();
    cmd_galerkin->add_option("--cutoff-multiple", cutoff_multiple,
                             "basis cutoff as a multiple of 4 pi^2")
        ->capture_default_str();

    // ---- trial-search ----
    double arg_r = 0.55;
    int arg_grid = 64, arg_density = 16;
    CLI::App* cmd_trial = app.add_subcommand(
        "trial-search", "search for a cap making the folded map orthogonal to f1");
    cmd_trial->add_option("--a", arg_a)->required();
    cmd_trial->add_option("--b", arg_b)->required();
    cmd_trial->add_option("--r", arg_r, "radius split of the embedding")->capture_default_str();
    cmd_trial->add_option("--grid", arg_grid, "quadrature grid per direction")
        ->capture_default_str();
    cmd_trial->add_option("--density", arg_density, "coarse search density")
        ->capture_default_str();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (cmd_bound->parsed()) {
            const tb::BoundBreakdown bd = tb::bound_breakdown({arg_a, arg_b});
            if (!tb::is_in_fundamental_region({arg_a, arg_b}))
                std::cerr << "note: (a, b) lies outside the fundamental region; "
                             "the formula is evaluated anyway\n";
            std::cout << breakdown_to_json(bd).dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_spectrum->parsed()) {
            const tb::TorusParams p{arg_a, arg_b};
            const tb::SpectrumList spec = tb::enumerate_spectrum(p, arg_k);
            json entries = json::array();
            for (const auto& e : spec.entries) {
                json modes = json::array();
                for (const auto& m : e.modes) modes.push_back(json{{"p", m.p}, {"q", m.q}});
                entries.push_back(json{{"eigenvalue", e.eigenvalue},
                                       {"normalized", e.eigenvalue * tb::flat_area(p)},
                                       {"multiplicity", e.multiplicity},
                                       {"modes", modes}});
            }
            std::cout << json{{"a", arg_a}, {"b", arg_b}, {"entries", entries}}.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_scan->parsed() || cmd_heatmap->parsed()) {
            CLI::App* active = cmd_scan->parsed() ? cmd_scan : cmd_heatmap;
            if (!config_path.empty()) apply_scan_config(config_path, scan_cfg, active);
            const std::vector<tb::ScanRow> rows = tb::compute_scan(scan_cfg);
            if (cmd_scan->parsed()) {
                tb::write_text_file(scan_cfg.output, tb::scan_to_csv(rows));
            } else {
                tb::write_text_file(scan_cfg.output, tb::heatmap_svg(scan_cfg, rows));
            }
            std::cout << json{{"rows", rows.size()}, {"output", scan_cfg.output}}.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_threshold->parsed()) {
            const double root = tb::threshold_b(arg_a, arg_target);
            std::cout << json{{"a", arg_a},
                              {"target", arg_target},
                              {"root", root},
                              {"bracket_lo", std::sqrt(1.0 - arg_a * arg_a)},
                              {"bracket_hi", 100.0}}
                             .dump(2)
                      << "\n";
            return kExitOk;
        }

        if (cmd_verify->parsed()) {
            const std::vector<tb::CheckResult> checks = tb::run_suite(suite, seed);
            std::cout << checks_to_json(suite, checks).dump(2) << "\n";
            for (const auto& c : checks)
                if (!c.pass) return 1;
            return kExitOk;
        }

        if (cmd_galerkin->parsed()) {
            const tb::TorusParams p{arg_a, arg_b};
            const tb::WeightFn w{tb::parse_weight_expression(weight_expr, p)};
            const double cutoff = 4.0 * tb::kPi * tb::kPi * cutoff_multiple;
            const tb::BoundCertificate cert = tb::bound_certificate(p, w, cutoff);
            std::cout << json{{"a", arg_a},
                              {"b", arg_b},
                              {"weight", weight_expr},
                              {"lambda1_bar", cert.lambda1_bar},
                              {"lambda2_bar", cert.lambda2_bar},
                              {"U", cert.upper_bound},
                              {"margin", cert.margin},
                              {"certified", cert.certified},
                              {"lambda1_within_topological_bound",
                               cert.lambda1_within_topological_bound},
                              {"lambda2_below_uniform_bound", cert.lambda2_below_uniform_bound}}
                             .dump(2)
                      << "\n";
            return kExitOk;
        }

        if (cmd_trial->parsed()) {
            const tb::TrialContext ctx = tb::build_context({arg_a, arg_b}, arg_r, arg_grid);
            const tb::CapSearchResult res = tb::search_orthogonal_cap(ctx, arg_density, seed);
            std::cout << json{{"a", arg_a},
                              {"b", arg_b},
                              {"r", arg_r},
                              {"trivial", res.trivial},
                              {"converged", res.converged},
                              {"residual", res.residual},
                              {"coarse_residual", res.coarse_residual},
                              {"threshold", res.threshold},
                              {"cap",
                               {{"p",
                                 {res.cap.center.x[0], res.cap.center.x[1], res.cap.center.x[2],
                                  res.cap.center.x[3]}},
                                {"t", res.cap.t}}}}
                             .dump(2)
                      << "\n";
            return res.converged ? kExitOk : kExitNumeric;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const tb::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const tb::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
