// Batch front-end: operator evaluations, residual checks, direct-method
// solves and weak-convergence sweeps, with CSV/JSON artifacts on disk.
//
// Exit codes: 0 success, 2 config/usage errors, 3 numeric-domain
// violations, 4 non-convergence (artifacts still written).  Failures
// print a machine-readable error JSON to stdout.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <fracvar/fracvar.hpp>
#include <fracvar/serialization.hpp>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw CLI::ValidationError("empty integer list");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(std::stod(tok));
    return out;
}

// phi tokens, ';'-separated: 1 | t | t^k | exp(t) | exp(-t) | poly:c0,c1,...
std::vector<fracvar::TestFunction> parse_phis(const std::string& s) {
    std::vector<fracvar::TestFunction> out;
    for (const auto& tok : split(s, ';')) {
        if (tok == "1") out.push_back(fracvar::TestFunction::monomial(0));
        else if (tok == "t") out.push_back(fracvar::TestFunction::monomial(1));
        else if (tok.rfind("t^", 0) == 0)
            out.push_back(fracvar::TestFunction::monomial(std::stoi(tok.substr(2))));
        else if (tok == "exp(t)") out.push_back(fracvar::TestFunction::exponential(1.0));
        else if (tok == "exp(-t)") out.push_back(fracvar::TestFunction::exponential(-1.0));
        else if (tok.rfind("poly:", 0) == 0)
            out.push_back(fracvar::TestFunction::shifted_polynomial(
                parse_double_list(tok.substr(5))));
        else throw CLI::ValidationError("unknown test function '" + tok + "'");
    }
    if (out.empty()) throw CLI::ValidationError("empty test-function list");
    return out;
}

fracvar::MemoryWindow parse_window(const std::string& s) {
    auto v = parse_double_list(s);
    if (v.size() != 4) throw CLI::ValidationError("--window expects a,A,B,b");
    return {v[0], v[1], v[2], v[3]};
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open " + p.string());
    os << text;
}

struct CommonArgs {
    std::string out_dir = ".";
    double alpha = 0.5;
    std::size_t n = 2048;
};

int fail_json(int status, const std::string& what) {
    ordered_json j;
    j["error"] = what;
    j["status"] = status;
    std::cout << j.dump() << "\n";
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracvar: fractional variational calculus toolkit"};
    app.require_subcommand(1);

    // --config FILE expands to the stored command + flags before parsing
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.size() >= 2 && args[0] == "--config") {
        try {
            std::ifstream is(args[1]);
            if (!is) throw std::runtime_error("cannot open config " + args[1]);
            auto j = nlohmann::json::parse(is);
            std::vector<std::string> expanded{j.at("command").get<std::string>()};
            for (auto& [key, value] : j.at("args").items()) {
                expanded.push_back("--" + key);
                if (value.is_string()) expanded.push_back(value.get<std::string>());
                else expanded.push_back(nlohmann::json(value).dump());
            }
            for (std::size_t i = 2; i < args.size(); ++i) expanded.push_back(args[i]);
            args = std::move(expanded);
        } catch (const std::exception& e) {
            return fail_json(2, std::string("config: ") + e.what());
        }
    }

    CommonArgs common;
    const char* env_out = std::getenv("FRACVAR_OUTPUT_DIR");
    if (env_out) common.out_dir = env_out;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", common.out_dir, "output directory");
        cmd->add_option("--alpha", common.alpha, "fractional order in [0,1)");
        cmd->add_option("--n", common.n, "grid intervals");
    };

    // deriv
    std::string deriv_input, deriv_side = "left", deriv_kind = "rl";
    auto* deriv = app.add_subcommand("deriv", "evaluate a fractional operator on a CSV grid");
    add_common(deriv);
    deriv->add_option("--input", deriv_input, "input grid CSV (t,u)")->required();
    deriv->add_option("--side", deriv_side, "left|right");
    deriv->add_option("--kind", deriv_kind, "rl|caputo|riesz|integral|gap");

    // residual
    std::string res_input, res_lagrangian = "example1", res_formulation = "corrected",
                res_kind, res_window;
    auto* residual = app.add_subcommand("residual", "Euler-Lagrange residuals of a candidate");
    add_common(residual);
    residual->add_option("--input", res_input, "candidate grid CSV")->required();
    residual->add_option("--lagrangian", res_lagrangian, "registry id");
    residual->add_option("--formulation", res_formulation, "rl|corrected|generalized");
    residual->add_option("--kind", res_kind, "derivative kind for the p slot");
    residual->add_option("--window", res_window, "a,A,B,b (generalized only)");

    // solve
    std::string solve_lagrangian = "caputo-eigen", solve_window, solve_kind;
    double solve_left = 1.0, solve_gtol = 0.0;
    std::optional<double> solve_right;
    int solve_maxit = 2000;
    auto* solve = app.add_subcommand("solve", "direct-method minimization");
    add_common(solve);
    solve->add_option("--lagrangian", solve_lagrangian, "registry id");
    solve->add_option("--left", solve_left, "pinned left boundary value")->required();
    solve->add_option("--right", solve_right, "pinned right boundary value (omit: free)");
    solve->add_option("--window", solve_window, "a,A,B,b (defaults to a=A=0, B=b=1)");
    solve->add_option("--kind", solve_kind, "override the registry derivative kind");
    solve->add_option("--gtol", solve_gtol, "absolute gradient tolerance (0: 1e-8(1+|J0|))");
    solve->add_option("--max-iter", solve_maxit, "iteration cap");

    // prop-check
    std::string prop_poly = "1,-4,6,-4,1", prop_N = "2,8", prop_phis = "1;t;t^2";
    auto* prop = app.add_subcommand("prop-check", "weak series identity for the right derivative");
    add_common(prop);
    prop->add_option("--poly", prop_poly, "F as ascending polynomial coefficients");
    prop->add_option("--N", prop_N, "comma-separated truncation orders");
    prop->add_option("--phis", prop_phis, "';'-separated test functions");

    // theorem-check
    std::string thm_lagrangian = "example1-smoothed", thm_N = "0,2,4,8",
                thm_phis = "poly:0,1,-1;exp(t)", thm_upoly = "1";
    auto* thm = app.add_subcommand("theorem-check", "weak convergence of approximated EL equations");
    add_common(thm);
    thm->add_option("--lagrangian", thm_lagrangian, "registry id");
    thm->add_option("--N", thm_N, "comma-separated truncation orders");
    thm->add_option("--phis", thm_phis, "';'-separated test functions");
    thm->add_option("--u-poly", thm_upoly, "candidate u as polynomial coefficients");

    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::stringstream ss;
        ss << e.what();
        app.exit(e, ss, ss);
        return fail_json(2, ss.str());
    }

    try {
        fs::create_directories(common.out_dir);
        const fs::path out(common.out_dir);
        using namespace fracvar;

        if (*deriv) {
            GridFunction u = read_csv(deriv_input);
            FractionalOrder order(common.alpha);
            const Side side = deriv_side == "right" ? Side::right : Side::left;
            GridFunction result =
                deriv_kind == "integral" ? frac_integral(u, order, side)
                : deriv_kind == "caputo" ? caputo_derivative(u, order, side)
                : deriv_kind == "riesz"  ? riesz_caputo_derivative(u, order)
                : deriv_kind == "gap"    ? rl_caputo_gap(u, order, side)
                                         : rl_derivative(u, order, side);
            write_csv(result, (out / "deriv.csv").string());
            std::cout << "wrote " << (out / "deriv.csv").string() << "\n";
            return 0;
        }

        if (*residual) {
            GridFunction u = read_csv(res_input);
            FractionalOrder order(common.alpha);
            auto entry = lagrangian_registry(res_lagrangian, common.alpha, u.a, u.b);
            const DerivativeKind kind =
                res_kind.empty() ? entry.kind : derivative_kind_from_string(res_kind);
            ordered_json j;
            if (res_formulation == "generalized") {
                MemoryWindow w = res_window.empty() ? MemoryWindow::whole(u.a, u.b)
                                                    : parse_window(res_window);
                auto rep = residual_generalized(entry.lagrangian, u, order, w, kind);
                write_csv(rep.action.residual, (out / "residual_action.csv").string());
                j["action"] = to_json(rep.action);
                j["action"]["residual_csv"] = "residual_action.csv";
                if (rep.memory) {
                    write_csv(rep.memory->residual, (out / "residual_memory.csv").string());
                    j["memory"] = to_json(*rep.memory);
                    j["memory"]["residual_csv"] = "residual_memory.csv";
                }
            } else {
                auto rep = res_formulation == "rl" ? residual_rl(entry.lagrangian, u, order, kind)
                                                   : residual_corrected(entry.lagrangian, u, order, kind);
                write_csv(rep.residual, (out / "residual.csv").string());
                j = to_json(rep);
                j["residual_csv"] = "residual.csv";
            }
            write_text(out / "residual.json", j.dump(2) + "\n");
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*solve) {
            auto window = solve_window.empty() ? MemoryWindow::whole(0.0, 1.0)
                                               : parse_window(solve_window);
            auto entry = lagrangian_registry(solve_lagrangian, common.alpha, window.a, window.b);
            ProblemSpec spec{entry.lagrangian, window, FractionalOrder(common.alpha),
                             solve_kind.empty() ? entry.kind
                                                : derivative_kind_from_string(solve_kind),
                             solve_left, solve_right, common.n};
            SolveOptions opts;
            opts.gtol = solve_gtol;
            opts.max_iterations = solve_maxit;
            SolveResult result = solve_direct(spec, default_initial_guess(spec), opts);
            write_csv(result.u, (out / "solution.csv").string());
            ordered_json j = to_json(result);
            j["u_csv"] = "solution.csv";
            write_text(out / "result.json", j.dump(2) + "\n");
            std::cout << j.dump(2) << "\n";
            if (!result.converged) return 4;
            return 0;
        }

        if (*prop) {
            auto F = SmoothFunctionModel::polynomial(parse_double_list(prop_poly));
            auto records = proposition_check(F, FractionalOrder(common.alpha),
                                             parse_phis(prop_phis), parse_int_list(prop_N),
                                             0.0, 1.0, common.n);
            write_records_csv(records, (out / "prop_check.csv").string());
            std::cout << "wrote " << (out / "prop_check.csv").string() << "\n";
            return 0;
        }

        if (*thm) {
            auto entry = lagrangian_registry(thm_lagrangian, common.alpha);
            auto u = SmoothFunctionModel::polynomial(parse_double_list(thm_upoly));
            auto records = theorem_check(entry.lagrangian, u, FractionalOrder(common.alpha),
                                         parse_phis(thm_phis), parse_int_list(thm_N),
                                         0.0, 1.0, common.n);
            write_records_csv(records, (out / "theorem_check.csv").string());
            std::cout << "wrote " << (out / "theorem_check.csv").string() << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        return fail_json(3, e.what());
    } catch (const std::domain_error& e) {
        return fail_json(3, e.what());
    } catch (const std::exception& e) {
        return fail_json(3, e.what());
    }
    return fail_json(2, "no subcommand executed");
}
