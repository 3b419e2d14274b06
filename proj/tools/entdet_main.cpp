// Command-line front end: analyze a serialized state, sweep the example
// family over a parameter grid, or track criterion values against the tail
// truncation level. Exit codes: 0 success, 2 input/parse error, 3 numerical
// failure.

#include "entdet/statefile.hpp"
#include "entdet/sweep.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace entdet;

void print_report(const CriterionReport& r) {
    std::printf("ccnr_trace_norm  %.17g  (separable bound 1)  %s\n", r.ccnr_trace_norm,
                to_string(r.ccnr_verdict));
    std::printf("ppt_min_eig      %.17g  (separable bound 0)  %s\n", r.ppt_min_eig,
                to_string(r.ppt_verdict));
    std::printf("eq6              lhs %.17g  rhs %.17g  %s\n", r.eq6_lhs, r.eq6_rhs,
                to_string(r.eq6_verdict));
    std::printf("eq7              lhs %.17g  rhs %.17g  %s\n", r.eq7_lhs, r.eq7_rhs,
                to_string(r.eq7_verdict));
    std::printf("purity_a         %.17g\n", r.purity_a);
    std::printf("purity_b         %.17g\n", r.purity_b);
    std::printf("overall          %s\n", to_string(r.overall));
}

int cmd_analyze(const std::string& path, bool as_json) {
    const DensityMatrix rho = load_statefile(path);
    const CriterionReport rep = evaluate(rho);
    if (as_json)
        std::cout << report_json(rep).dump(1) << "\n";
    else
        print_report(rep);
    return 0;
}

void print_witness_summary(const std::vector<SweepRow>& rows) {
    size_t count = 0;
    double a_lo = 0, a_hi = 0, e_lo = 0, e_hi = 0, c_lo = 0, c_hi = 0;
    for (const SweepRow& row : rows) {
        if (!is_witness(row.rep)) continue;
        if (count == 0) {
            a_lo = a_hi = row.a;
            e_lo = e_hi = row.epsilon;
            c_lo = c_hi = row.c;
        } else {
            a_lo = std::min(a_lo, row.a);
            a_hi = std::max(a_hi, row.a);
            e_lo = std::min(e_lo, row.epsilon);
            e_hi = std::max(e_hi, row.epsilon);
            c_lo = std::min(c_lo, row.c);
            c_hi = std::max(c_hi, row.c);
        }
        ++count;
    }
    if (count == 0) {
        std::printf("witness region: empty (%zu grid points)\n", rows.size());
        return;
    }
    std::printf("witness region (eq6 fires, ccnr <= 1, ppt holds): %zu of %zu grid points; "
                "a in [%.17g, %.17g], epsilon in [%.17g, %.17g], c in [%.17g, %.17g]\n",
                count, rows.size(), a_lo, a_hi, e_lo, e_hi, c_lo, c_hi);
}

// Scan each (a, c) line of the grid for the first epsilon where the
// realignment norm crosses 1, then refine by bisection.
void print_ccnr_thresholds(const SweepGrid& grid, const std::vector<SweepRow>& rows) {
    if (grid.epsilon.size() < 2) return;
    const size_t n_eps = grid.epsilon.size();
    const size_t n_c = grid.c.size();
    for (size_t ia = 0; ia < grid.a.size(); ++ia) {
        for (size_t ic = 0; ic < n_c; ++ic) {
            for (size_t ie = 1; ie < n_eps; ++ie) {
                const SweepRow& prev = rows[(ia * n_eps + ie - 1) * n_c + ic];
                const SweepRow& cur = rows[(ia * n_eps + ie) * n_c + ic];
                if (prev.rep.ccnr_trace_norm <= 1.0 && cur.rep.ccnr_trace_norm > 1.0) {
                    const double a = prev.a, c = prev.c;
                    const auto crossed = [&](double epsilon) {
                        return ccnr_value(example_state(a, epsilon, c, grid.n_tail,
                                                        grid.tail_ratio)) > 1.0;
                    };
                    const double eps_star =
                        bisect_threshold(crossed, prev.epsilon, cur.epsilon, 1e-6);
                    std::printf("ccnr threshold: a=%.17g c=%.17g smallest epsilon with "
                                "ccnr > 1 is %.17g (bisection to 1e-6)\n",
                                a, c, eps_star);
                    break;
                }
            }
        }
    }
}

int cmd_sweep(const std::string& a_range, const std::string& eps_range,
              const std::string& c_range, index_t n_tail, double tail_ratio,
              const std::string& out_path, int jobs) {
    SweepGrid grid;
    grid.a = parse_range(a_range);
    grid.epsilon = parse_range(eps_range);
    grid.c = parse_range(c_range);
    grid.n_tail = n_tail;
    grid.tail_ratio = tail_ratio;
    const std::vector<SweepRow> rows = run_sweep(grid, jobs);
    std::ofstream out(out_path);
    if (!out)
        throw std::invalid_argument("sweep: cannot open output file: " + out_path);
    write_csv(out, rows);
    out.flush();
    if (!out)
        throw std::invalid_argument("sweep: write failed: " + out_path);
    print_witness_summary(rows);
    print_ccnr_thresholds(grid, rows);
    return 0;
}

int cmd_converge(double a, double epsilon, double c, const std::string& levels_text,
                 double tail_ratio, const std::string& out_path) {
    const std::vector<index_t> levels = parse_index_list(levels_text);
    const ConvergeResult res = run_converge(a, epsilon, c, levels, tail_ratio);
    std::ofstream out(out_path);
    if (!out)
        throw std::invalid_argument("converge: cannot open output file: " + out_path);
    write_csv(out, res.rows);
    out.flush();
    if (!out)
        throw std::invalid_argument("converge: write failed: " + out_path);
    for (size_t i = 0; i < res.rows.size(); ++i)
        std::printf("n_tail %lld: ccnr additivity residual |ccnr - (c*ccnr_3x3 + 1-c)| = %.3e\n",
                    static_cast<long long>(res.rows[i].n_tail), res.additivity_residual[i]);
    for (size_t i = 0; i < res.max_step.size(); ++i)
        std::printf("n_tail %lld -> %lld: max |change| = %.3e (%s)\n",
                    static_cast<long long>(res.rows[i].n_tail),
                    static_cast<long long>(res.rows[i + 1].n_tail), res.max_step[i],
                    res.max_step_field[i].c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement detection for bipartite density matrices: realignment "
                 "(CCNR), partial transpose, and the covariance-type bounds on "
                 "rho - rho_A (x) rho_B"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "evaluate all criteria on a JSON state file");
    std::string path;
    bool as_json = false;
    analyze->add_option("file", path, "state file: {\"dims\": [d_a, d_b], \"matrix\": [[[re, im], ...], ...]}")
        ->required();
    analyze->add_flag("--json", as_json, "emit the report as JSON");

    auto* sweep = app.add_subcommand("sweep", "evaluate the example family on a grid, write CSV");
    std::string a_range = "0.232";
    std::string eps_range = "0.9939";
    std::string c_range = "1";
    index_t n_tail = 0;
    double tail_ratio = 0.5;
    std::string out_path;
    int jobs = 1;
    sweep->add_option("--a", a_range, "a value or lo:hi:step")->capture_default_str();
    sweep->add_option("--eps", eps_range, "epsilon value or lo:hi:step")->capture_default_str();
    sweep->add_option("--c", c_range, "c value or lo:hi:step")->capture_default_str();
    sweep->add_option("--n-tail", n_tail, "tail truncation level (0 = plain 3x3 state)")
        ->capture_default_str();
    sweep->add_option("--tail-ratio", tail_ratio, "geometric decay of tail weights")
        ->capture_default_str();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_option("--jobs", jobs, "worker threads for grid evaluation")
        ->capture_default_str();

    auto* converge = app.add_subcommand(
        "converge", "criterion values against the tail truncation level, write CSV");
    double cv_a = 0.0, cv_eps = 0.0, cv_c = 0.0;
    std::string cv_levels;
    double cv_ratio = 0.5;
    std::string cv_out;
    converge->add_option("--a", cv_a, "a value")->required();
    converge->add_option("--eps", cv_eps, "epsilon value")->required();
    converge->add_option("--c", cv_c, "c value")->required();
    converge->add_option("--n-tail", cv_levels, "ascending truncation levels, e.g. 1,2,4,8")
        ->required();
    converge->add_option("--tail-ratio", cv_ratio, "geometric decay of tail weights")
        ->capture_default_str();
    converge->add_option("--out", cv_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return cmd_analyze(path, as_json);
        if (*sweep)
            return cmd_sweep(a_range, eps_range, c_range, n_tail, tail_ratio, out_path, jobs);
        return cmd_converge(cv_a, cv_eps, cv_c, cv_levels, cv_ratio, cv_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
