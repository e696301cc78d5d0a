// Command-line surface for reproducible experiments with the Dunkl-Hermite
// operators: evaluation, moment verification, identity checks, bound
// reports, convergence sweeps, and the acceptance self-test.
//
// Exit statuses: 0 ok, 2 invalid flags, 3 numerical failure, 4 selftest
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dunkl/acceptance.hpp"
#include "dunkl/dunkl.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using cell = std::variant<double, long, bool, std::string>;

struct table {
    std::vector<std::string> columns;
    std::vector<std::vector<cell>> rows;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string cell_to_string(const cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "1" : "0";
    return std::get<std::string>(c);
}

nlohmann::json cell_to_json(const cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long>(c)) return std::get<long>(c);
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c);
    return std::get<std::string>(c);
}

struct cli_options {
    double mu = 0.0;
    double alpha = 0.0;
    std::string n_list = "10";
    std::string x_list;  // empty: use the grid
    std::string fn = "one";
    double a = 0.0;
    double b = 2.0;
    long points = 201;
    long grid_points = 201;
    double xi = 1.0;
    double t = 0.25;
    int order = 0;
    long terms = 60;
    double eps_term = 1e-14;
    double eps_cancel = 1e-8;
    double mconst = 1.0;
    long seed = 12345;
    std::string output = "csv";
    std::string out_path;

    [[nodiscard]] dunkl::dunkl_param param() const { return {mu, eps_term, eps_cancel}; }
    [[nodiscard]] dunkl::domain_grid grid() const { return {a, b, points}; }
};

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const long v = std::stol(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

long single_n(const cli_options& opt) {
    const auto ns = parse_long_list(opt.n_list);
    if (ns.size() != 1)
        throw std::invalid_argument("this command expects a single --n value");
    return ns.front();
}

std::vector<double> eval_points(const cli_options& opt) {
    if (!opt.x_list.empty()) return parse_double_list(opt.x_list);
    return opt.grid().all();
}

nlohmann::json meta_json(const cli_options& opt, const std::string& command) {
    nlohmann::json flags{
        {"mu", opt.mu},           {"alpha", opt.alpha},       {"n", opt.n_list},
        {"x", opt.x_list},        {"fn", opt.fn},             {"xi", opt.xi},
        {"t", opt.t},             {"order", opt.order},       {"terms", opt.terms},
        {"eps_term", opt.eps_term}, {"eps_cancel", opt.eps_cancel},
        {"mconst", opt.mconst},   {"seed", opt.seed},         {"output", opt.output}};
    return nlohmann::json{
        {"version", kVersion},
        {"command", command},
        {"flags", flags},
        {"grid", {{"a", opt.a}, {"b", opt.b}, {"points", opt.points}}}};
}

void emit(const table& tbl, const cli_options& opt, const std::string& command) {
    std::ostringstream os;
    if (opt.output == "csv") {
        for (std::size_t i = 0; i < tbl.columns.size(); ++i)
            os << (i ? "," : "") << tbl.columns[i];
        os << "\n";
        for (const auto& row : tbl.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << cell_to_string(row[i]);
            os << "\n";
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : tbl.rows) {
            nlohmann::json obj;
            for (std::size_t i = 0; i < row.size(); ++i)
                obj[tbl.columns[i]] = cell_to_json(row[i]);
            rows.push_back(obj);
        }
        const nlohmann::json doc{{"meta", meta_json(opt, command)}, {"rows", rows}};
        os << doc.dump(2) << "\n";
    }
    if (opt.out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + opt.out_path);
        f << os.str();
    }
}

// ---------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------

int cmd_eval(const cli_options& opt) {
    const auto& entry = dunkl::corpus_lookup(opt.fn);
    dunkl::operator_evaluator op({single_n(opt), opt.alpha, opt.param()});
    table tbl;
    tbl.columns = {"x", "Tn", "g", "error", "terms_used", "tail_bound"};
    for (double x : eval_points(opt)) {
        const auto r = op.apply(entry.fn, x);
        const double g = entry.fn(x);
        tbl.rows.push_back({x, r.value, g, r.value - g, r.terms_used, r.tail_bound});
    }
    emit(tbl, opt, "eval");
    return 0;
}

int cmd_moments(const cli_options& opt) {
    dunkl::operator_evaluator op({single_n(opt), opt.alpha, opt.param()});
    table tbl;
    tbl.columns = {"x",    "m0",  "m1",  "m2",     "m0_s",   "m1_s",
                   "m2_s", "delta1", "delta2", "max_rel_gap"};
    for (double x : eval_points(opt)) {
        const auto r = op.moments(x);
        tbl.rows.push_back({r.x, r.m0, r.m1, r.m2, r.m0_s, r.m1_s, r.m2_s, r.delta1, r.delta2,
                            r.max_rel_gap});
    }
    emit(tbl, opt, "moments");
    return 0;
}

int cmd_hermite(const cli_options& opt) {
    const long n = single_n(opt);
    table tbl;
    tbl.columns = {"k", "h", "H"};
    for (long k = 0; k <= n; ++k) {
        const dunkl::hermite_query q{k, opt.xi, opt.alpha, opt.param()};
        tbl.rows.push_back({k, dunkl::hermite_h(q), dunkl::hermite_H(q)});
    }
    emit(tbl, opt, "hermite");
    return 0;
}

int cmd_gfcheck(const cli_options& opt) {
    table tbl;
    tbl.columns = {"order", "t", "lhs", "rhs", "abs_gap", "terms", "tail_env"};
    const auto run = [&](int order) -> dunkl::gf_check_report {
        switch (order) {
            case 0: return dunkl::gf_check_order0(opt.param(), opt.xi, opt.alpha, opt.t, opt.terms);
            case 1: return dunkl::gf_check_order1(opt.param(), opt.xi, opt.alpha, opt.t, opt.terms);
            case 2: return dunkl::gf_check_order2(opt.param(), opt.xi, opt.alpha, opt.t, opt.terms);
            default: throw std::invalid_argument("order must be 0, 1 or 2");
        }
    };
    const auto r = run(opt.order);
    tbl.rows.push_back(
        {static_cast<long>(opt.order), r.t, r.lhs, r.rhs, r.abs_gap, r.terms, r.tail_env});
    emit(tbl, opt, "gfcheck");
    return 0;
}

int cmd_bounds(const cli_options& opt) {
    const auto& entry = dunkl::corpus_lookup(opt.fn);
    const dunkl::operator_config cfg{single_n(opt), opt.alpha, opt.param()};
    const auto grid = opt.grid();
    grid.validate();
    dunkl::bound_checker checker(cfg, entry.fn, grid, opt.mconst);
    table tbl;
    tbl.columns = {"theorem", "x",      "actual", "bound",  "slack",  "holds",
                   "informational", "delta1", "delta2", "chi", "omega", "omega2"};
    const auto comp = [](const dunkl::bound_report& r, const std::string& name) -> cell {
        for (const auto& [k, v] : r.components)
            if (k == name) return v;
        return std::string{};
    };
    const auto add = [&](const dunkl::bound_report& r) {
        tbl.rows.push_back({std::string(dunkl::bound_kind_id(r.kind)), r.x, r.actual, r.bound,
                            r.slack, r.holds, r.informational, comp(r, "delta1"),
                            comp(r, "delta2"), comp(r, "chi"), comp(r, "omega"),
                            comp(r, "omega2")});
    };
    for (double x : eval_points(opt)) {
        if (entry.fn.known_lipschitz) add(checker.lipschitz(x));
        add(checker.omega_rate(x));
        if (entry.fn.sup_norm) add(checker.peetre(x));
        add(checker.mixed(x));
    }
    emit(tbl, opt, "bounds");
    return 0;
}

int cmd_sweep(const cli_options& opt) {
    const auto& entry = dunkl::corpus_lookup(opt.fn);
    const auto ns = parse_long_list(opt.n_list);
    const auto rows = dunkl::convergence_sweep(opt.param(), opt.alpha, ns, entry.fn, opt.grid());
    table tbl;
    tbl.columns = {"n",      "sup_error", "delta2_max", "t7_bound_max",
                   "e0_sup", "e1_sup",    "e2_sup"};
    for (const auto& row : rows)
        tbl.rows.push_back({row.n, row.sup_error, row.delta2_max, row.t7_bound_max,
                            row.korovkin_sup[0], row.korovkin_sup[1], row.korovkin_sup[2]});
    emit(tbl, opt, "sweep");
    return 0;
}

int cmd_selftest(const cli_options& opt) {
    dunkl::acceptance::options a;
    a.grid_points = opt.grid_points;
    a.eps_term = opt.eps_term;
    a.eps_cancel = opt.eps_cancel;
    const auto results = dunkl::acceptance::run_all(a);
    dunkl::acceptance::print_results(results, stdout);
    return dunkl::acceptance::all_passed(results) ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dunkl-Hermite positive operators: evaluation and error-bound experiments"};
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    cli_options opt;
    app.add_option("--mu", opt.mu, "Dunkl parameter mu >= 0");
    app.add_option("--alpha", opt.alpha, "Hermite second argument alpha >= 0");
    app.add_option("--n", opt.n_list, "operator index n (comma list for sweep)");
    app.add_option("--x", opt.x_list, "evaluation points (comma list; default: grid)");
    app.add_option("--fn", opt.fn, "target function label (see README)");
    app.add_option("--a", opt.a, "grid left endpoint");
    app.add_option("--b", opt.b, "grid right endpoint");
    app.add_option("--points", opt.points, "grid point count");
    app.add_option("--grid-points", opt.grid_points, "grid points for selftest moduli");
    app.add_option("--xi", opt.xi, "Hermite first argument xi");
    app.add_option("--t", opt.t, "generating-function variable t (|t| <= 0.5)");
    app.add_option("--order", opt.order, "generating-function identity order (0, 1, 2)");
    app.add_option("--terms", opt.terms, "partial-sum length for gfcheck");
    app.add_option("--eps-term", opt.eps_term, "series truncation tolerance");
    app.add_option("--eps-cancel", opt.eps_cancel, "max relative cancellation error");
    app.add_option("--mconst", opt.mconst, "constant M for the K-functional bounds");
    app.add_option("--seed", opt.seed, "seed for metadata spot checks");
    app.add_option("--output", opt.output, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out_path, "write output to this path instead of stdout");
    app.set_config("--config", "", "plain key=value config file; flags take precedence");

    auto* eval = app.add_subcommand("eval", "evaluate T_n(g; x) over the grid");
    auto* moments = app.add_subcommand("moments", "closed-form vs series moments");
    auto* hermite = app.add_subcommand("hermite", "h_k and H_k values for k = 0..n");
    auto* gfcheck = app.add_subcommand("gfcheck", "generating-function identity check");
    auto* bounds = app.add_subcommand("bounds", "error-bound reports at each x");
    auto* sweep = app.add_subcommand("sweep", "convergence sweep over an n list");
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        // validate shared numeric flags before dispatch, whatever the command
        opt.param().validate();
        if (!(opt.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
        for (long n : parse_long_list(opt.n_list))
            if (n < 1) throw std::invalid_argument("n must be >= 1");
        opt.grid().validate();
        if (opt.grid_points < 2) throw std::invalid_argument("grid-points must be >= 2");
        if (!(opt.mconst > 0.0)) throw std::invalid_argument("mconst must be > 0");

        // metadata spot checks with the caller's seed
        for (const auto& e : dunkl::corpus())
            dunkl::spot_check(e, static_cast<std::uint64_t>(opt.seed), 1000);

        if (eval->parsed()) return cmd_eval(opt);
        if (moments->parsed()) return cmd_moments(opt);
        if (hermite->parsed()) return cmd_hermite(opt);
        if (gfcheck->parsed()) return cmd_gfcheck(opt);
        if (bounds->parsed()) return cmd_bounds(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (selftest->parsed()) return cmd_selftest(opt);
        std::cerr << "error: no command given\n";
        return 2;
    } catch (const dunkl::precision_exhausted& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::overflow_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
