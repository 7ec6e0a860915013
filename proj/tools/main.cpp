// Benchmark harness for the chi-expectation quadrature library.
//
//   chiquad table <1|2|3|4>    error tables for the four methods on the
//                              t-interval coverage scenario
//   chiquad figure <1|3|4|5>   CSV samples behind the diagnostic figures
//   chiquad integrate          run one method on a registered integrand
//
// Exit codes: 0 success, 1 computation failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chiquad/baselines.hpp"
#include "chiquad/scenario.hpp"
#include "chiquad/trapz.hpp"

using namespace chiquad;

namespace {

constexpr double kFloor = 1.11e-16;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---------------------------------------------------------------------------
// integrand registry

struct RegisteredIntegrand {
    Integrand a;
    std::optional<double> exact;  // known value of the integral, when any
    std::string label;
};

double parse_param(const std::string& param, const char* what) {
    try {
        size_t used = 0;
        const double v = std::stod(param, &used);
        if (used != param.size()) throw std::invalid_argument(param);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string("bad ") + what + " parameter '" + param + "'");
    }
}

RegisteredIntegrand make_integrand(const std::string& spec_str, DegreesOfFreedom nu) {
    const auto colon = spec_str.find(':');
    const std::string name = spec_str.substr(0, colon);
    const std::string param =
        colon == std::string::npos ? std::string() : spec_str.substr(colon + 1);

    if (name == "t-interval") {
        const double alpha = param.empty() ? 0.05 : parse_param(param, "t-interval");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw CLI::ValidationError("t-interval alpha must lie in (0, 1)");
        auto spec = ScenarioSpec::make(nu, alpha);
        return {t_interval_integrand(spec), exact_value(spec), "t-interval(" + fmt("%g", alpha) + ")"};
    }
    if (name == "constant") {
        return {Integrand{[](double) { return 1.0; }, 1.0}, 1.0, "constant"};
    }
    if (name == "exp-decay") {
        const double rate = param.empty() ? 1.0 : parse_param(param, "exp-decay");
        if (!(rate > 0.0)) throw CLI::ValidationError("exp-decay rate must be positive");
        return {Integrand{[rate](double x) { return std::exp(-rate * x); }, 1.0}, std::nullopt,
                "exp-decay(" + fmt("%g", rate) + ")"};
    }
    throw CLI::ValidationError("unknown integrand '" + spec_str +
                               "' (expected t-interval[:alpha], constant, exp-decay[:rate])");
}

// ---------------------------------------------------------------------------
// table jobs

struct TableCell {
    double alpha;
    int nu;
    int budget;
    double value = 0.0;
    long long evaluations = 0;
    std::string error_text;  // set when the cell failed
};

struct TableJob {
    int table_id;
    std::vector<double> alphas{0.10, 0.05, 0.02};
    std::vector<int> nus;
    double epsilon = 1e-17;
    std::optional<int> budget_override;
    bool serial = false;
};

const char* table_method(int id) {
    switch (id) {
        case 1: return "mori-trapezoid";
        case 2: return "gauss-laguerre";
        case 3: return "inverse-cdf";
        default: return "truncated-legendre";
    }
}

std::vector<int> default_nus(int table_id) {
    switch (table_id) {
        case 2: return {1, 2, 3, 4, 5, 6, 10, 100, 300};
        case 3: return {1, 2, 3, 4, 5, 6, 10, 100, 1000};
        default: return {1, 2, 3, 4, 5, 10, 100, 1000};
    }
}

TableCell run_cell(const TableJob& job, double alpha, int nu) {
    TableCell cell;
    cell.alpha = alpha;
    cell.nu = nu;
    cell.budget = job.budget_override.value_or(nu == 1 ? 65 : 33);
    try {
        const DegreesOfFreedom dof(nu);
        const Integrand a = t_interval_integrand(ScenarioSpec::make(dof, alpha));
        switch (job.table_id) {
            case 1: {
                const auto r = simple_procedure(dof, a, job.epsilon, cell.budget,
                                                StoppingMode::full_budget);
                cell.value = r.value;
                cell.evaluations = r.evaluations;
                break;
            }
            case 2: {
                const auto r = gen_gauss_laguerre(dof, a, cell.budget);
                cell.value = r.value;
                cell.evaluations = r.evaluations;
                break;
            }
            case 3: {
                const auto r = inverse_cdf_legendre(dof, a, cell.budget);
                cell.value = r.value;
                cell.evaluations = r.evaluations;
                break;
            }
            default: {
                const auto w = solve_window(dof, 1e-3 * job.epsilon);
                const auto r = truncated_legendre(dof, a, w, cell.budget);
                cell.value = r.value;
                cell.evaluations = r.evaluations;
                break;
            }
        }
    } catch (const std::exception& e) {
        cell.error_text = e.what();
    }
    return cell;
}

std::vector<TableCell> run_table(const TableJob& job) {
    std::vector<std::pair<double, int>> keys;
    for (double alpha : job.alphas)
        for (int nu : job.nus) keys.emplace_back(alpha, nu);

    std::vector<TableCell> cells(keys.size());
    if (job.serial) {
        for (size_t i = 0; i < keys.size(); ++i)
            cells[i] = run_cell(job, keys[i].first, keys[i].second);
    } else {
        std::vector<std::future<TableCell>> futures;
        futures.reserve(keys.size());
        for (const auto& [alpha, nu] : keys)
            futures.push_back(std::async(std::launch::async,
                                         [&job, alpha = alpha, nu = nu] { return run_cell(job, alpha, nu); }));
        for (size_t i = 0; i < futures.size(); ++i) cells[i] = futures[i].get();
    }
    return cells;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

void write_table_csv(std::ostream& os, const TableJob& job, const std::vector<TableCell>& cells) {
    os << "method,epsilon,alpha,nu,budget,value,exact,error,evaluations,at_floor,failure\n";
    for (const auto& c : cells) {
        const double exact = 1.0 - c.alpha;
        os << table_method(job.table_id) << ',' << fmt("%.3g", job.epsilon) << ','
           << fmt("%.17g", c.alpha) << ',' << c.nu << ',' << c.budget << ',';
        if (!c.error_text.empty()) {
            os << ",,,,," << csv_quote(c.error_text) << '\n';
            continue;
        }
        const double err = c.value - exact;
        os << fmt("%.17g", c.value) << ',' << fmt("%.17g", exact) << ',' << fmt("%.17g", err)
           << ',' << c.evaluations << ',' << (std::abs(err) < kFloor ? "true" : "false") << ",\n";
    }
}

void write_table_md(std::ostream& os, const TableJob& job, const std::vector<TableCell>& cells) {
    os << "Method: " << table_method(job.table_id) << ", epsilon = " << fmt("%.3g", job.epsilon)
       << ", budget = evaluations per cell (65 for nu=1, 33 otherwise unless overridden)\n\n";
    os << "| alpha \\ nu |";
    for (int nu : job.nus) os << ' ' << nu << " |";
    os << "\n|---|";
    for (size_t i = 0; i < job.nus.size(); ++i) os << "---|";
    os << '\n';
    size_t idx = 0;
    for (double alpha : job.alphas) {
        os << "| " << fmt("%.2f", alpha) << " |";
        for (size_t j = 0; j < job.nus.size(); ++j, ++idx) {
            const auto& c = cells[idx];
            if (!c.error_text.empty()) {
                os << " error |";
                continue;
            }
            const double err = c.value - (1.0 - c.alpha);
            os << ' ' << fmt("%.2e", err) << (std::abs(err) < kFloor ? "*" : "") << " |";
        }
        os << '\n';
    }
    os << "\n`*` at floor: |error| < 1.11e-16\n";
}

void write_table_json(std::ostream& os, const TableJob& job,
                      const std::vector<TableCell>& cells) {
    nlohmann::json out;
    out["method"] = table_method(job.table_id);
    out["epsilon"] = job.epsilon;
    out["cells"] = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json jc;
        jc["alpha"] = c.alpha;
        jc["nu"] = c.nu;
        jc["budget"] = c.budget;
        if (c.error_text.empty()) {
            jc["value"] = c.value;
            jc["exact"] = 1.0 - c.alpha;
            jc["error"] = c.value - (1.0 - c.alpha);
            jc["evaluations"] = c.evaluations;
            jc["at_floor"] = std::abs(c.value - (1.0 - c.alpha)) < kFloor;
        } else {
            jc["failure"] = c.error_text;
        }
        out["cells"].push_back(jc);
    }
    os << out.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// figure data

void figure1(std::ostream& os, double alpha, int samples, double xmax) {
    os << "nu,x,a\n";
    struct Curve {
        std::string label;
        ScenarioSpec spec;
    };
    std::vector<Curve> curves;
    curves.push_back({"1", ScenarioSpec::make(DegreesOfFreedom(1), alpha)});
    curves.push_back({"2", ScenarioSpec::make(DegreesOfFreedom(2), alpha)});
    curves.push_back({"inf", ScenarioSpec::make_normal_limit(alpha)});
    for (const auto& curve : curves) {
        const auto a = t_interval_integrand(curve.spec);
        for (int i = 0; i < samples; ++i) {
            const double x = xmax * i / (samples - 1);
            os << curve.label << ',' << fmt("%.17g", x) << ',' << fmt("%.17g", a.eval(x)) << '\n';
        }
    }
}

void figure3(std::ostream& os, int samples) {
    os << "nu,alpha,y,d\n";
    for (int nu : {1, 2, 3, 10}) {
        for (double alpha : {0.10, 0.05, 0.02}) {
            const auto a = t_interval_integrand(ScenarioSpec::make(DegreesOfFreedom(nu), alpha));
            const double ymax = 4.5 * nu;  // x = sqrt(2y/nu) reaches 3
            for (int i = 0; i < samples; ++i) {
                const double y = ymax * i / (samples - 1);
                const double d = a.eval(std::sqrt(2.0 * y / nu));
                os << nu << ',' << fmt("%.17g", alpha) << ',' << fmt("%.17g", y) << ','
                   << fmt("%.17g", d) << '\n';
            }
        }
    }
}

void figure4(std::ostream& os) {
    os << "nu,m,y,w\n";
    struct Pair {
        int nu, m;
    };
    for (const auto& p : {Pair{1, 65}, Pair{2, 33}}) {
        const auto rule = generalized_laguerre_rule(0.5 * p.nu - 1.0, p.m);
        for (int j = 0; j < p.m; ++j) {
            if (rule.nodes[j] > 50.0) continue;  // display window, as published
            os << p.nu << ',' << p.m << ',' << fmt("%.17g", rule.nodes[j]) << ','
               << fmt("%.17g", rule.weights[j]) << '\n';
        }
    }
}

void figure5(std::ostream& os, int samples) {
    os << "nu,alpha,z,b\n";
    for (int nu : {1, 3, 10, 100}) {
        for (double alpha : {0.10, 0.05, 0.02}) {
            const auto a = t_interval_integrand(ScenarioSpec::make(DegreesOfFreedom(nu), alpha));
            for (int i = 0; i < samples; ++i) {
                const double z = -1.0 + 2.0 * i / (samples - 1);
                const double p = 0.5 * (z + 1.0);
                double b;
                if (p <= 0.0)
                    b = 0.0;
                else if (p >= 1.0)
                    b = 0.5;  // a -> 1 as x -> inf
                else
                    b = 0.5 * a.eval(chi_scaled_quantile(DegreesOfFreedom(nu), p));
                os << nu << ',' << fmt("%.17g", alpha) << ',' << fmt("%.17g", z) << ','
                   << fmt("%.17g", b) << '\n';
            }
        }
    }
}

// ---------------------------------------------------------------------------

int with_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return 0;
    }
    std::ofstream ofs(path, std::ios::binary);  // LF line endings everywhere
    if (!ofs) {
        std::cerr << "cannot open output file: " << path << '\n';
        return 1;
    }
    writer(ofs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadrature benchmark for expectations of functions of scaled chi variables"};
    app.require_subcommand(1);

    // --- table ---
    TableJob job;
    std::string table_out, table_format = "csv";
    auto* table_cmd = app.add_subcommand("table", "Reproduce one of the four error tables");
    table_cmd->add_option("id", job.table_id, "Table number")->required()->check(CLI::Range(1, 4));
    table_cmd->add_option("--alpha", job.alphas, "Nominal non-coverage levels (default 0.10 0.05 0.02)");
    table_cmd->add_option("--nu", job.nus,
                          "Degrees-of-freedom list. Defaults follow each table's published grid: "
                          "tables 1 and 4 use {1,2,3,4,5,10,100,1000}; table 2 ends at nu=300 "
                          "where table 3 ends at nu=1000");
    table_cmd->add_option("--epsilon", job.epsilon, "Accuracy target fixing the window")
        ->check(CLI::Range(1e-300, 0.5));
    int budget_flag = 0;
    table_cmd->add_option("--budget", budget_flag, "Override the per-nu evaluation budget");
    table_cmd->add_option("--out", table_out, "Output path (default stdout)");
    table_cmd->add_option("--format", table_format, "csv|md|json")
        ->check(CLI::IsMember({"csv", "md", "json"}));
    table_cmd->add_flag("--serial", job.serial, "Compute cells sequentially");

    // --- figure ---
    int figure_id = 1;
    double fig_alpha = 0.05;
    int fig_samples = 201;
    double fig_xmax = 3.0;
    std::string fig_out;
    auto* figure_cmd = app.add_subcommand("figure", "Emit figure data as CSV");
    figure_cmd->add_option("id", figure_id, "Figure number (1, 3, 4 or 5)")
        ->required()
        ->check(CLI::IsMember({1, 3, 4, 5}));
    figure_cmd->add_option("--alpha", fig_alpha, "Level for figure 1");
    figure_cmd->add_option("--samples", fig_samples, "Samples per curve")
        ->check(CLI::Range(2, 100000));
    figure_cmd->add_option("--xmax", fig_xmax, "Right edge of the x grid (figure 1)");
    figure_cmd->add_option("--out", fig_out, "Output path (default stdout)");

    // --- integrate ---
    std::string method, integrand_spec = "t-interval:0.05", int_out;
    int int_nu = 2, int_budget = 0, int_n0 = 4;
    double int_epsilon = 1e-17, int_target = 1e-6;
    bool as_json = false;
    auto* int_cmd = app.add_subcommand("integrate", "Integrate a registered integrand");
    int_cmd->add_option("--method", method,
                        "mori-trapezoid | mori-exponential | gauss-laguerre | inverse-cdf | "
                        "truncated-legendre")
        ->required();
    int_cmd->add_option("--nu", int_nu, "Degrees of freedom")->check(CLI::PositiveNumber);
    int_cmd->add_option("--integrand", integrand_spec,
                        "t-interval[:alpha] | constant | exp-decay[:rate]");
    int_cmd->add_option("--epsilon", int_epsilon, "Accuracy target (mori methods)");
    int_cmd->add_option("--budget", int_budget,
                        "Node budget: max n (trapezoid), m (Gauss rules), k_max (exponential)");
    int_cmd->add_option("--n0", int_n0, "Initial node count for mori-exponential");
    int_cmd->add_option("--target", int_target, "Initial window target for mori-exponential");
    int_cmd->add_flag("--json", as_json, "Machine-readable output");
    int_cmd->add_option("--out", int_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit with 2
    }

    try {
        if (table_cmd->parsed()) {
            if (job.nus.empty()) job.nus = default_nus(job.table_id);
            if (budget_flag > 0) job.budget_override = budget_flag;
            const auto cells = run_table(job);
            const int rc = with_output(table_out, [&](std::ostream& os) {
                if (table_format == "csv") write_table_csv(os, job, cells);
                else if (table_format == "md") write_table_md(os, job, cells);
                else write_table_json(os, job, cells);
            });
            if (rc) return rc;
            for (const auto& c : cells)
                if (!c.error_text.empty()) {
                    std::cerr << "cell alpha=" << c.alpha << " nu=" << c.nu
                              << " failed: " << c.error_text << '\n';
                    return 1;
                }
            return 0;
        }

        if (figure_cmd->parsed()) {
            return with_output(fig_out, [&](std::ostream& os) {
                switch (figure_id) {
                    case 1: figure1(os, fig_alpha, fig_samples, fig_xmax); break;
                    case 3: figure3(os, fig_samples); break;
                    case 4: figure4(os); break;
                    default: figure5(os, fig_samples); break;
                }
            });
        }

        // integrate
        const DegreesOfFreedom dof(int_nu);
        const auto reg = make_integrand(integrand_spec, dof);

        QuadratureResult qr;
        BaselineResult br{};
        bool have_history = false;
        if (method == "mori-trapezoid") {
            qr = simple_procedure(dof, reg.a, int_epsilon, int_budget > 0 ? int_budget : 65537);
            have_history = true;
        } else if (method == "mori-exponential") {
            qr = exponential_procedure(dof, reg.a, int_n0, int_target,
                                       int_budget > 0 ? int_budget : 6);
            have_history = true;
        } else if (method == "gauss-laguerre") {
            br = gen_gauss_laguerre(dof, reg.a, int_budget > 0 ? int_budget : 33);
        } else if (method == "inverse-cdf") {
            br = inverse_cdf_legendre(dof, reg.a, int_budget > 0 ? int_budget : 33);
        } else if (method == "truncated-legendre") {
            const auto w = solve_window(dof, 1e-3 * int_epsilon);
            br = truncated_legendre(dof, reg.a, w, int_budget > 0 ? int_budget : 33);
        } else {
            std::cerr << "unknown method '" << method << "'\n";
            return 2;
        }

        const double value = have_history ? qr.value : br.value;
        const long long evals = have_history ? qr.evaluations : br.evaluations;

        return with_output(int_out, [&](std::ostream& os) {
            if (as_json) {
                nlohmann::json out;
                out["method"] = method;
                out["nu"] = int_nu;
                out["integrand"] = reg.label;
                out["value"] = value;
                out["evaluations"] = evals;
                if (have_history) {
                    out["est_discretization_error"] = qr.est_discretization_error;
                    out["trimming_bound"] = qr.trimming_bound;
                    out["converged"] = qr.converged;
                    out["history"] = nlohmann::json::array();
                    for (const auto& it : qr.history)
                        out["history"].push_back({{"n", it.n}, {"h", it.h}, {"value", it.value}});
                }
                if (reg.exact) {
                    out["exact"] = *reg.exact;
                    out["error"] = value - *reg.exact;
                }
                os << out.dump(2) << '\n';
                return;
            }
            os << "method:      " << method << "\nnu:          " << int_nu
               << "\nintegrand:   " << reg.label << "\nvalue:       " << fmt("%.17g", value)
               << "\nevaluations: " << evals << '\n';
            if (have_history) {
                os << "est. discretization error: " << fmt("%.3e", qr.est_discretization_error)
                   << "\ntrimming bound:            " << fmt("%.3e", qr.trimming_bound)
                   << "\nconverged:                 " << (qr.converged ? "yes" : "no") << '\n';
                os << "history (n, h, value):\n";
                for (const auto& it : qr.history)
                    os << "  " << it.n << "  " << fmt("%.6e", it.h) << "  "
                       << fmt("%.17g", it.value) << '\n';
            }
            if (reg.exact) {
                const double err = value - *reg.exact;
                os << "exact:       " << fmt("%.17g", *reg.exact)
                   << "\nerror:       " << fmt("%.3e", err)
                   << (std::abs(err) < kFloor ? "  (at floor)" : "") << '\n';
            }
        });
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return 1;
    }
}
