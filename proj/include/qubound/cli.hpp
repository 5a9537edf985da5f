#pragma once

// Command-line front end: `bounds` (one state, all bounds), `sweep` (family
// parameter sweep to CSV), `figure` (regenerate the comparison bar charts),
// and `verify` (randomized property suite).  All heavy lifting lives in the
// library headers; this file parses arguments, formats output, and maps
// failures to exit codes (0 ok, 1 verification failure, 2 usage, 3 I/O).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qubound/bounds.hpp"
#include "qubound/states.hpp"
#include "qubound/svg_chart.hpp"
#include "qubound/verify.hpp"

namespace qubound::cli {

constexpr int exit_ok = 0;
constexpr int exit_verify_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed six decimal places; glibc printf rounds the exact binary value to
// nearest, ties to even.  Negative zero is normalized so identical values
// always serialize identically.
inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

// State labels carry commas (mm(cx=..,cy=..)); inside CSV cells they become
// semicolons so the delimiter stays unambiguous.
inline std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',') c = ';';
    return s;
}

// Accepts the axis tokens x/y/z or "theta,phi" in degrees.
inline Observable parse_observable(const std::string& token) {
    if (token == "x") return Observable::x();
    if (token == "y") return Observable::y();
    if (token == "z") return Observable::z();
    const auto comma = token.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= token.size())
        throw std::invalid_argument("observable '" + token +
                                    "': expected x, y, z, or theta,phi in degrees");
    double theta_deg = 0.0, phi_deg = 0.0;
    try {
        std::size_t used = 0;
        theta_deg = std::stod(token.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("");
        const std::string rest = token.substr(comma + 1);
        phi_deg = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("observable '" + token + "': angles must be numeric degrees");
    }
    constexpr double d2r = std::numbers::pi / 180.0;
    return Observable(theta_deg * d2r, phi_deg * d2r);
}

namespace detail {

struct FamilyArgs {
    std::string family;
    double p = 0.0, alpha = 0.0, cx = 0.0, cy = 0.0, cz = 0.0;
    bool has_p = false, has_alpha = false, has_cx = false, has_cy = false, has_cz = false;

    void require(bool present, const char* flag) const {
        if (!present)
            throw std::invalid_argument(std::string(flag) + " is required for family '" +
                                        family + "'");
    }

    DensityMatrix<4> build() const {
        if (family == "werner") {
            require(has_p, "--p");
            return werner(p);
        }
        if (family == "pe") {
            require(has_alpha, "--alpha");
            return pure_entangled(alpha);
        }
        if (family == "bd") {
            require(has_p, "--p");
            return bell_diagonal(p);
        }
        if (family == "mm") {
            require(has_cx, "--cx");
            require(has_cy, "--cy");
            require(has_cz, "--cz");
            return mixed_marginal(cx, cy, cz);
        }
        if (family == "classical") {
            require(has_p, "--p");
            return classical_state(p);
        }
        throw std::invalid_argument("unknown family '" + family + "'");
    }

    // The canonical argument fragment describing this state.
    std::string describe() const {
        using qubound::detail::fmt_num;
        if (family == "pe") return "--state pe --alpha " + fmt_num(alpha);
        if (family == "mm")
            return "--state mm --cx " + fmt_num(cx) + " --cy " + fmt_num(cy) + " --cz " +
                   fmt_num(cz);
        return "--state " + family + " --p " + fmt_num(p);
    }
};

inline void set_family_param(FamilyArgs& fa, const std::string& param, double value) {
    if (param == "p" && (fa.family == "werner" || fa.family == "bd" || fa.family == "classical")) {
        fa.p = value;
        fa.has_p = true;
    } else if (param == "alpha" && fa.family == "pe") {
        fa.alpha = value;
        fa.has_alpha = true;
    } else if (param == "cx" && fa.family == "mm") {
        fa.cx = value;
        fa.has_cx = true;
    } else if (param == "cy" && fa.family == "mm") {
        fa.cy = value;
        fa.has_cy = true;
    } else if (param == "cz" && fa.family == "mm") {
        fa.cz = value;
        fa.has_cz = true;
    } else {
        throw std::invalid_argument("parameter '" + param + "' does not belong to family '" +
                                    fa.family + "'");
    }
}

inline void write_csv(std::ostream& os, const std::string& args_line,
                      const std::vector<std::pair<std::string, BoundReport>>& rows) {
    os << "# args: " << args_line << "\n";
    os << "param,L0,L1,L2,L3,L4,LHS_ent,LHS_fano\n";
    for (const auto& [param, r] : rows)
        os << param << ',' << fixed6(r.l0) << ',' << fixed6(r.l1) << ',' << fixed6(r.l2) << ','
           << fixed6(r.l3) << ',' << fixed6(r.l4) << ',' << fixed6(r.lhs_entropic) << ','
           << fixed6(r.lhs_fano) << "\n";
}

inline void render_report(std::ostream& out, const DensityMatrix<4>& state,
                          const BoundReport& rep, const std::string& format,
                          const std::string& args_line) {
    if (format == "csv") {
        write_csv(out, args_line, {{csv_safe(state.label), rep}});
        return;
    }
    if (format == "json-lines") {
        nlohmann::json j;
        j["state"] = state.label;
        j["side"] = party_name(rep.side);
        j["obs_r"] = rep.obs_r.describe();
        j["obs_s"] = rep.obs_s.describe();
        j["L0"] = rep.l0;
        j["L1"] = rep.l1;
        j["L2"] = rep.l2;
        j["L3"] = rep.l3;
        j["L4"] = rep.l4;
        j["LHS_ent"] = rep.lhs_entropic;
        j["LHS_fano"] = rep.lhs_fano;
        j["C_M"] = rep.classical_info;
        j["discord"] = rep.discord;
        j["converged"] = rep.optimizer_converged;
        out << j.dump() << "\n";
        return;
    }
    const auto row = [&](const char* k, const std::string& v) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%-10s", k);
        out << buf << v << "\n";
    };
    row("state", state.label);
    row("side", party_name(rep.side));
    row("obs_r", rep.obs_r.describe());
    row("obs_s", rep.obs_s.describe());
    row("C^M", fixed6(rep.classical_info));
    row("discord", fixed6(rep.discord));
    row("converged", rep.optimizer_converged ? "yes" : "no");
    row("L0", fixed6(rep.l0));
    row("L1", fixed6(rep.l1));
    row("L2", fixed6(rep.l2));
    row("L3", fixed6(rep.l3));
    row("L4", fixed6(rep.l4));
    row("LHS_ent", fixed6(rep.lhs_entropic));
    row("LHS_fano", fixed6(rep.lhs_fano));
}

}  // namespace detail

// The bar groups behind `figure --id N`: the three mixed-state comparisons
// at their published parameters, and the classical-correlations example.
// The Bell-diagonal group is evaluated at (z, y) settings, where its
// closed-form bounds coincide at H(p); the others use (z, x).
struct FigureGroup {
    DensityMatrix<4> state;
    Observable obs_r;
    Observable obs_s;
};

inline std::vector<FigureGroup> figure_groups(int id) {
    const Observable z = Observable::z();
    const Observable x = Observable::x();
    const Observable y = Observable::y();
    if (id == 1)
        return {{werner(0.723), z, x},
                {mixed_marginal(0.5, -0.2, -0.3), z, x},
                {bell_diagonal(0.5), z, y}};
    if (id == 2) return {{classical_state(0.5), z, x}};
    throw std::invalid_argument("figure id " + std::to_string(id) + " not in {1, 2}");
}

namespace detail {

inline int cmd_bounds(const FamilyArgs& fa, const std::string& obs_r_tok,
                      const std::string& obs_s_tok, Party side, const std::string& format,
                      std::ostream& out) {
    const DensityMatrix<4> state = fa.build();
    const Observable obs_r = parse_observable(obs_r_tok);
    const Observable obs_s = parse_observable(obs_s_tok);
    const std::string args_line = "bounds " + fa.describe() + " --obs-r " + obs_r.describe() +
                                  " --obs-s " + obs_s.describe() + " --side " + party_name(side);
    render_report(out, state, full_report(state.mat, obs_r, obs_s, side), format, args_line);
    return exit_ok;
}

inline int cmd_sweep(FamilyArgs fa, const std::string& param, double from, double to, int steps,
                     const std::string& settings, Party side, const std::string& out_path,
                     std::ostream& out) {
    // Domain check at both endpoints; every family parameter enters the
    // state affinely, so endpoint validity covers the whole segment.
    set_family_param(fa, param, from);
    (void)fa.build();
    set_family_param(fa, param, to);
    (void)fa.build();

    const bool optimize = settings == "optimize";
    Observable obs_r = Observable::z();
    Observable obs_s = Observable::x();
    if (!optimize) {
        const auto colon = settings.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--settings must be 'R:S' (e.g. z:x, 45,0:135,0) or "
                                        "'optimize'");
        obs_r = parse_observable(settings.substr(0, colon));
        obs_s = parse_observable(settings.substr(colon + 1));
    }

    std::vector<std::pair<std::string, BoundReport>> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double v = from + (to - from) * static_cast<double>(i) /
                                    static_cast<double>(steps - 1);
        set_family_param(fa, param, v);
        const DensityMatrix<4> state = fa.build();
        Observable r = obs_r, s = obs_s;
        if (optimize) {
            const SettingsResult best = optimize_settings(state.mat);
            r = best.obs_r;
            s = best.obs_s;
        }
        rows.emplace_back(fixed6(v), full_report(state.mat, r, s, side));
    }

    using qubound::detail::fmt_num;
    std::string args_line = "sweep --family " + fa.family + " --param " + param + " --from " +
                            fmt_num(from) + " --to " + fmt_num(to) + " --steps " +
                            std::to_string(steps) + " --settings " +
                            (optimize ? std::string("optimize")
                                      : obs_r.describe() + ":" + obs_s.describe()) +
                            " --side " + party_name(side);
    if (fa.family == "mm") {
        // fixed components of the correlation triple (the swept one is the column)
        if (param != "cx") args_line += " --cx " + fmt_num(fa.cx);
        if (param != "cy") args_line += " --cy " + fmt_num(fa.cy);
        if (param != "cz") args_line += " --cz " + fmt_num(fa.cz);
    }

    if (out_path.empty()) {
        write_csv(out, args_line, rows);
    } else {
        std::ofstream ofs(out_path, std::ios::binary);
        if (!ofs) throw IoError("cannot open '" + out_path + "' for writing");
        write_csv(ofs, args_line, rows);
        if (!ofs.good()) throw IoError("write failed on '" + out_path + "'");
        out << "wrote " << out_path << "\n";
    }
    return exit_ok;
}

inline int cmd_figure(int id, const std::string& csv_path, const std::string& svg_path,
                      Party side, std::ostream& out) {
    const auto groups = figure_groups(id);
    std::vector<std::pair<std::string, BoundReport>> rows;
    std::vector<svg::BarGroup> bars;
    for (const auto& g : groups) {
        const BoundReport rep = full_report(g.state.mat, g.obs_r, g.obs_s, side);
        rows.emplace_back(csv_safe(g.state.label), rep);
        svg::BarGroup bg;
        bg.label = g.state.label;
        if (id == 2) bg.bars.emplace_back("L0", rep.l0);
        bg.bars.emplace_back("L1", rep.l1);
        bg.bars.emplace_back("L2", rep.l2);
        bg.bars.emplace_back("L3", rep.l3);
        bg.bars.emplace_back("L4", rep.l4);
        bars.push_back(std::move(bg));
    }

    const std::string args_line =
        "figure --id " + std::to_string(id) + " --side " + party_name(side);
    std::ofstream ofs(csv_path, std::ios::binary);
    if (!ofs) throw IoError("cannot open '" + csv_path + "' for writing");
    write_csv(ofs, args_line, rows);
    if (!ofs.good()) throw IoError("write failed on '" + csv_path + "'");
    out << "wrote " << csv_path << "\n";

    if (!svg_path.empty()) {
        std::ofstream svg_out(svg_path, std::ios::binary);
        if (!svg_out) throw IoError("cannot open '" + svg_path + "' for writing");
        svg_out << svg::render_bar_chart(
            bars, "Lower bounds on measurement uncertainty", "bits");
        if (!svg_out.good()) throw IoError("write failed on '" + svg_path + "'");
        out << "wrote " << svg_path << "\n";
    }
    return exit_ok;
}

inline int cmd_verify(int samples, std::uint64_t seed, double tol, std::ostream& out) {
    using qubound::detail::fmt_num;
    out << "# samples=" << samples << " seed=" << seed << " tol=" << fmt_num(tol) << "\n";
    const auto results = verify::run_all(samples, seed, tol);
    int total_checks = 0;
    int failed_properties = 0;
    char line[512];
    std::snprintf(line, sizeof line, "%-46s %8s %6s %13s  %s", "property", "checks", "fail",
                  "worst margin", "status");
    out << line << "\n";
    for (const auto& r : results) {
        const bool informational = !std::isfinite(r.tolerance);
        const char* status = informational ? "info" : (r.passed() ? "ok" : "FAIL");
        std::snprintf(line, sizeof line, "%-46s %8d %6d %+13.3e  %s", r.name.c_str(), r.checks,
                      r.failures, r.worst_margin, status);
        out << line << "\n";
        if (!r.passed() && !informational) {
            ++failed_properties;
            out << "    worst case: " << r.worst_case << " (tolerance " << fmt_num(r.tolerance)
                << ")\n";
        }
        total_checks += r.checks;
    }
    out << (failed_properties == 0 ? "PASS" : "FAIL") << ": "
        << results.size() << " properties, " << total_checks << " checks, "
        << failed_properties << " failing properties\n";
    return failed_properties == 0 ? exit_ok : exit_verify_failure;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropic-uncertainty lower bounds for two-qubit states"};
    app.require_subcommand(1);

    std::string side_str = "B";
    std::string format = "table";
    app.add_option("--side", side_str, "side whose discord/classical correlation enters L0/L2")
        ->check(CLI::IsMember({"A", "B"}));
    app.add_option("--format", format, "bounds output format")
        ->check(CLI::IsMember({"table", "csv", "json-lines"}));

    detail::FamilyArgs b_fa;
    std::string b_obs_r = "z", b_obs_s = "x";
    auto* cb = app.add_subcommand("bounds", "compute L0-L4 and both LHS values for one state");
    cb->fallthrough();
    cb->add_option("--state", b_fa.family, "state family: werner, pe, bd, mm, classical")
        ->required()
        ->check(CLI::IsMember({"werner", "pe", "bd", "mm", "classical"}));
    cb->add_option("--p", b_fa.p, "mixing parameter (werner/bd/classical)")
        ->each([&](const std::string&) { b_fa.has_p = true; });
    cb->add_option("--alpha", b_fa.alpha, "pure-state weight (pe)")
        ->each([&](const std::string&) { b_fa.has_alpha = true; });
    cb->add_option("--cx", b_fa.cx, "correlation c_x (mm)")
        ->each([&](const std::string&) { b_fa.has_cx = true; });
    cb->add_option("--cy", b_fa.cy, "correlation c_y (mm)")
        ->each([&](const std::string&) { b_fa.has_cy = true; });
    cb->add_option("--cz", b_fa.cz, "correlation c_z (mm)")
        ->each([&](const std::string&) { b_fa.has_cz = true; });
    cb->add_option("--obs-r", b_obs_r, "first observable: x, y, z, or theta,phi degrees");
    cb->add_option("--obs-s", b_obs_s, "second observable: x, y, z, or theta,phi degrees");

    detail::FamilyArgs s_fa;
    std::string s_param, s_settings = "z:x", s_out;
    double s_from = 0.0, s_to = 1.0;
    int s_steps = 101;
    auto* cs = app.add_subcommand("sweep", "sweep one family parameter and write a CSV");
    cs->fallthrough();
    cs->add_option("--family", s_fa.family, "state family: werner, pe, bd, mm, classical")
        ->required()
        ->check(CLI::IsMember({"werner", "pe", "bd", "mm", "classical"}));
    cs->add_option("--param", s_param, "swept parameter: p, alpha, cx, cy, or cz")->required();
    cs->add_option("--from", s_from, "range start")->required();
    cs->add_option("--to", s_to, "range end")->required();
    cs->add_option("--steps", s_steps, "number of rows (>= 2)")->check(CLI::Range(2, 1000000));
    cs->add_option("--settings", s_settings, "'R:S' observable pair or 'optimize'");
    cs->add_option("--cx", s_fa.cx, "fixed c_x (mm)")
        ->each([&](const std::string&) { s_fa.has_cx = true; });
    cs->add_option("--cy", s_fa.cy, "fixed c_y (mm)")
        ->each([&](const std::string&) { s_fa.has_cy = true; });
    cs->add_option("--cz", s_fa.cz, "fixed c_z (mm)")
        ->each([&](const std::string&) { s_fa.has_cz = true; });
    cs->add_option("--out", s_out, "output CSV path (stdout when omitted)");

    int f_id = 0;
    std::string f_csv, f_svg;
    auto* cf = app.add_subcommand("figure", "regenerate a comparison figure's data");
    cf->fallthrough();
    cf->add_option("--id", f_id, "figure number (1 or 2)")->required()->check(CLI::Range(1, 2));
    cf->add_option("--out-csv", f_csv, "output CSV path")->required();
    cf->add_option("--out-svg", f_svg, "optional SVG bar-chart path");

    int v_samples = 200;
    std::uint64_t v_seed = 42;
    double v_tol = 1e-7;
    auto* cv = app.add_subcommand("verify", "run the randomized property suite");
    cv->fallthrough();
    cv->add_option("--samples", v_samples, "random states per property (>= 1)")
        ->check(CLI::Range(1, 1000000000));
    cv->add_option("--seed", v_seed, "base RNG seed");
    cv->add_option("--tol", v_tol, "slack for the bound inequalities");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("qubound");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    const Party side = side_str == "A" ? Party::A : Party::B;
    try {
        if (cb->parsed()) return detail::cmd_bounds(b_fa, b_obs_r, b_obs_s, side, format, out);
        if (cs->parsed())
            return detail::cmd_sweep(s_fa, s_param, s_from, s_to, s_steps, s_settings, side,
                                     s_out, out);
        if (cf->parsed()) return detail::cmd_figure(f_id, f_csv, f_svg, side, out);
        if (cv->parsed()) return detail::cmd_verify(v_samples, v_seed, v_tol, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    err << "error: no subcommand given\n";
    return exit_usage;
}

}  // namespace qubound::cli
