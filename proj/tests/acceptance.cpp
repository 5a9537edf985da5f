// Acceptance gate: six end-to-end checks with pinned tolerances and runtime
// budgets, one [PASS]/[FAIL] line each.  Exit status 0 only when all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qubound/bounds.hpp"
#include "qubound/cli.hpp"
#include "qubound/verify.hpp"

using namespace qubound;

namespace {

struct Criterion {
    std::string name;
    std::vector<std::string> failures;
    double seconds = 0.0;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }

    void check_close(const char* what, double got, double expect, double tol) {
        if (!(std::abs(got - expect) <= tol)) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s = %.9f, expected %.9f within %g", what, got,
                          expect, tol);
            failures.push_back(buf);
        }
    }

    void enforce_budget(double limit_s) {
        if (seconds > limit_s) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "runtime %.1f s exceeds %.0f s budget", seconds,
                          limit_s);
            failures.push_back(buf);
        }
    }

    bool passed() const { return failures.empty(); }
};

template <typename F>
void timed(Criterion& c, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_properties(Criterion& c, const std::vector<verify::PropertyResult>& results,
                        const std::vector<std::string>& names) {
    for (const auto& want : names) {
        bool found = false;
        for (const auto& r : results) {
            if (r.name != want) continue;
            found = true;
            if (!r.passed()) {
                char buf[256];
                std::snprintf(buf, sizeof buf, "%s: %d/%d checks failed, worst %.3e (%s)",
                              r.name.c_str(), r.failures, r.checks, r.worst_margin,
                              r.worst_case.c_str());
                c.failures.push_back(buf);
            }
        }
        if (!found) c.failures.push_back("property '" + want + "' missing from suite");
    }
}

// ---- criterion 1: the correlation-triple worked example --------------------

Criterion criterion_example() {
    Criterion c{"correlation-triple example (cx,cy,cz)=(0.5,-0.2,-0.3), side B, z/x"};
    timed(c, [&] {
        const Matrix4 rho = mixed_marginal(0.5, -0.2, -0.3).mat;
        const Observable z = Observable::z(), x = Observable::x();
        const BoundReport rep = full_report(rho, z, x, Party::B);
        c.check(rep.optimizer_converged, "C^M optimizer did not converge");
        c.check_close("C^M", rep.classical_info, 0.1887, 1e-3);
        c.check_close("discord", rep.discord, 0.2524, 1e-3);
        c.check_close("C^{zz}", extractable_classical_information(rho, z), 0.0659, 1e-3);
        c.check_close("C^{xx}", extractable_classical_information(rho, x), 0.1887, 1e-3);
        c.check_close("L1", rep.l1, 1.5589, 1e-3);
        c.check_close("L2", rep.l2, 1.6226, 1e-3);
        c.check_close("L3", rep.l3, 1.745, 1e-3);
        c.check_close("L4", rep.l4, 1.745, 1e-3);
    });
    c.enforce_budget(5.0);
    return c;
}

// ---- criterion 2: closed-form family oracles on 101-point grids ------------

Criterion criterion_families() {
    Criterion c{"closed-form family oracles on 101-point grids"};
    constexpr double arith = 1e-9;   // pure arithmetic paths
    constexpr double optim = 1e-6;   // anything through the C^M optimizer
    timed(c, [&] {
        const Observable z = Observable::z(), x = Observable::x(), y = Observable::y();
        char tag[64];
        for (int i = 0; i <= 100; ++i) {
            const double p = static_cast<double>(i) / 100.0;

            {
                const BoundReport r = full_report(werner(p).mat, z, x, Party::B);
                const double s_ab = shannon(std::vector<double>{
                    (1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0});
                const double twoh = 2.0 * binary_entropy((1.0 - p) / 2.0);
                std::snprintf(tag, sizeof tag, "werner p=%.2f", p);
                const std::string at = tag;
                c.check_close((at + " C^M").c_str(), r.classical_info,
                              1.0 - binary_entropy((1.0 - p) / 2.0), optim);
                c.check_close((at + " L0").c_str(), r.l0, 2.0, arith);
                c.check_close((at + " L1").c_str(), r.l1, s_ab, arith);  // 2 - I
                c.check_close((at + " L2").c_str(), r.l2, twoh, optim);
                c.check_close((at + " L3").c_str(), r.l3, twoh, arith);
                c.check_close((at + " L4").c_str(), r.l4, twoh, arith);
            }

            {
                const BoundReport r = full_report(pure_entangled(p).mat, z, x, Party::B);
                const double h = binary_entropy(p);
                const double hfine = binary_entropy(0.5 - std::sqrt(p * (1.0 - p)));
                std::snprintf(tag, sizeof tag, "pe alpha=%.2f", p);
                const std::string at = tag;
                c.check_close((at + " C^M").c_str(), r.classical_info, h, optim);
                c.check_close((at + " L0").c_str(), r.l0, 1.0 + h, arith);
                c.check_close((at + " L1").c_str(), r.l1, 1.0 - h, arith);
                c.check_close((at + " L2").c_str(), r.l2, 1.0 - h, optim);
                c.check_close((at + " L3").c_str(), r.l3, hfine, arith);
                c.check_close((at + " L4").c_str(), r.l4, hfine, arith);
            }

            {
                const BoundReport r = full_report(bell_diagonal(p).mat, z, y, Party::B);
                const double h = binary_entropy(p);
                std::snprintf(tag, sizeof tag, "bd p=%.2f", p);
                const std::string at = tag;
                c.check_close((at + " C^M").c_str(), r.classical_info, 1.0, optim);
                c.check_close((at + " D").c_str(), r.discord, 1.0 - h, optim);
                c.check_close((at + " L1").c_str(), r.l1, h, arith);
                c.check_close((at + " L2").c_str(), r.l2, h, optim);
                c.check_close((at + " L3").c_str(), r.l3, h, arith);
                c.check_close((at + " L4").c_str(), r.l4, h, arith);
            }

            {
                const BoundReport r = full_report(classical_state(p).mat, z, x, Party::B);
                const double h = binary_entropy(p);
                std::snprintf(tag, sizeof tag, "classical p=%.2f", p);
                const std::string at = tag;
                c.check_close((at + " D").c_str(), r.discord, 0.0, optim);
                c.check_close((at + " C^M").c_str(), r.classical_info, h, optim);
                c.check_close((at + " L0").c_str(), r.l0, 1.0 + h, arith);
                c.check_close((at + " L1").c_str(), r.l1, 1.0, arith);
                c.check_close((at + " L2").c_str(), r.l2, 1.0, optim);
                c.check_close((at + " L3").c_str(), r.l3, 1.0, arith);
                c.check_close((at + " L4").c_str(), r.l4, 1.0, arith);
            }
        }
    });
    c.enforce_budget(60.0);
    return c;
}

// ---- criterion 3: inequality suite, 500 states x 20 setting pairs ----------

Criterion criterion_inequalities() {
    Criterion c{"bound inequalities, 500 random states x 20 unbiased pairs"};
    timed(c, [&] {
        const auto results = verify::bound_inequalities(500, 20, 42, 1e-7);
        require_properties(c, results,
                           {"lhs_fano >= L1", "lhs_fano >= L2", "lhs_fano >= L4",
                            "lhs_entropic >= L1"});
    });
    c.enforce_budget(120.0);
    return c;
}

// ---- criterion 4: measurement identities, 200 random pairs -----------------

Criterion criterion_identities() {
    Criterion c{"measurement identities, 200 random (state, observable) pairs"};
    timed(c, [&] {
        const auto results = verify::measurement_identities(200, 42);
        require_properties(c, results,
                           {"conditional ensemble vs classical_gain",
                            "dephasing channel vs ensemble entropy",
                            "anticorrelation game = p_different"});
    });
    return c;
}

// ---- criterion 5: figure regeneration through the CLI ----------------------

struct CsvRow {
    std::string param;
    double v[7] = {0};  // L0..L4, LHS_ent, LHS_fano
};

std::vector<CsvRow> read_rows(const std::string& path, Criterion& c) {
    std::vector<CsvRow> rows;
    std::ifstream in(path);
    if (!in) {
        c.failures.push_back("cannot read " + path);
        return rows;
    }
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != "param,L0,L1,L2,L3,L4,LHS_ent,LHS_fano")
                c.failures.push_back("unexpected header: " + line);
            saw_header = true;
            continue;
        }
        CsvRow row;
        std::stringstream ss(line);
        std::getline(ss, row.param, ',');
        std::string cell;
        for (double& slot : row.v) {
            if (!std::getline(ss, cell, ',')) {
                c.failures.push_back("short row: " + line);
                break;
            }
            slot = std::stod(cell);
        }
        rows.push_back(row);
    }
    return rows;
}

Criterion criterion_figures() {
    Criterion c{"figure regeneration matches references and orderings"};
    timed(c, [&] {
        namespace fs = std::filesystem;
        const std::string csv1 = (fs::temp_directory_path() / "qubound_acc_fig1.csv").string();
        const std::string csv2 = (fs::temp_directory_path() / "qubound_acc_fig2.csv").string();
        std::ostringstream out, err;
        c.check(cli::run({"figure", "--id", "1", "--out-csv", csv1}, out, err) == 0,
                "figure --id 1 failed: " + err.str());
        c.check(cli::run({"figure", "--id", "2", "--out-csv", csv2}, out, err) == 0,
                "figure --id 2 failed: " + err.str());

        const auto fig1 = read_rows(csv1, c);
        const auto fig2 = read_rows(csv2, c);
        c.check(fig1.size() == 3, "figure 1 should have 3 rows");
        c.check(fig2.size() == 1, "figure 2 should have 1 row");
        if (fig1.size() == 3) {
            const double tol = 2e-6;  // oracle tolerance plus 6-decimal rounding
            // werner p = 0.723
            const double s_ab = shannon(std::vector<double>{
                (1.0 + 3.0 * 0.723) / 4.0, 0.277 / 4.0, 0.277 / 4.0, 0.277 / 4.0});
            const double twoh = 2.0 * binary_entropy((1.0 - 0.723) / 2.0);
            c.check_close("werner L0", fig1[0].v[0], 2.0, tol);
            c.check_close("werner L1", fig1[0].v[1], s_ab, tol);
            c.check_close("werner L2", fig1[0].v[2], twoh, tol);
            c.check_close("werner L3", fig1[0].v[3], twoh, tol);
            c.check_close("werner L4", fig1[0].v[4], twoh, tol);
            // the correlation-triple example, reference tolerance 1e-3
            c.check_close("mm L1", fig1[1].v[1], 1.5589, 1e-3);
            c.check_close("mm L2", fig1[1].v[2], 1.6226, 1e-3);
            c.check_close("mm L3", fig1[1].v[3], 1.745, 1e-3);
            c.check_close("mm L4", fig1[1].v[4], 1.745, 1e-3);
            // bell-diagonal p = 0.5: everything but L0 equals H(1/2) = 1
            for (int k = 1; k <= 4; ++k)
                c.check_close("bd L1-L4", fig1[2].v[k], 1.0, tol);
            // orderings L1 <= L2 <= L3 = L4 on every figure-1 row
            for (const auto& row : fig1) {
                c.check(row.v[1] <= row.v[2] + 1e-6, row.param + ": L1 > L2");
                c.check(row.v[2] <= row.v[3] + 1e-6, row.param + ": L2 > L3");
                c.check(std::abs(row.v[3] - row.v[4]) <= 1e-5, row.param + ": L3 != L4");
            }
        }
        if (fig2.size() == 1) {
            c.check_close("classical L0", fig2[0].v[0], 2.0, 2e-6);
            for (int k = 1; k <= 4; ++k)
                c.check_close("classical L1-L4", fig2[0].v[k], 1.0, 2e-6);
            c.check(fig2[0].v[0] > fig2[0].v[1] + 0.5, "L0 should clearly exceed L1");
        }
        fs::remove(csv1);
        fs::remove(csv2);
    });
    return c;
}

// ---- criterion 6: optimizer agreement with the closed form -----------------

Criterion criterion_luo() {
    Criterion c{"C^M optimizer matches closed form on 100 random triples"};
    timed(c, [&] {
        const auto r = verify::luo_agreement(100, 42, 1e-6);
        if (!r.passed()) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%d/%d disagreements, worst %.3e (%s)", r.failures,
                          r.checks, r.worst_margin, r.worst_case.c_str());
            c.failures.push_back(buf);
        }
        c.check(r.checks == 100, "expected 100 triples");
    });
    c.enforce_budget(60.0);
    return c;
}

}  // namespace

int main() {
    const Criterion all[] = {
        criterion_example(),   criterion_families(), criterion_inequalities(),
        criterion_identities(), criterion_figures(),  criterion_luo(),
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : all) {
        ++index;
        std::printf("[%s] %d: %s (%.2f s)\n", c.passed() ? "PASS" : "FAIL", index,
                    c.name.c_str(), c.seconds);
        for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
        if (!c.passed()) ++failed;
    }
    std::printf("acceptance: %d/6 criteria passed\n", 6 - failed);
    return failed == 0 ? 0 : 1;
}
