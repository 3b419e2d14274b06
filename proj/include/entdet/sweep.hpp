#pragma once

// Parameter sweeps over the example family: range parsing, deterministic CSV
// serialization, witness-region bookkeeping, threshold bisection, and the
// truncation-convergence driver.

#include "criteria.hpp"

#include <atomic>
#include <mutex>
#include <ostream>
#include <thread>

namespace entdet {

inline double parse_real(const std::string& s) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("range: not a number: '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("range: trailing characters in: '" + s + "'");
    if (!std::isfinite(v))
        throw std::invalid_argument("range: value not finite: '" + s + "'");
    return v;
}

// "lo:hi:step" expands to lo, lo+step, ... up to hi (hi kept when it lands on
// the grid, within a small slop for rounding); a bare "v" is a single value.
inline std::vector<double> parse_range(const std::string& text) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 1) return {parse_real(parts[0])};
    if (parts.size() != 3)
        throw std::invalid_argument("range: expected 'v' or 'lo:hi:step', got '" + text + "'");
    const double lo = parse_real(parts[0]);
    const double hi = parse_real(parts[1]);
    const double step = parse_real(parts[2]);
    if (!(step > 0.0))
        throw std::invalid_argument("range: step must be positive in '" + text + "'");
    if (hi < lo)
        throw std::invalid_argument("range: hi must be >= lo in '" + text + "'");
    std::vector<double> values;
    for (index_t i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + 1e-6 * step) break;
        values.push_back(std::min(v, hi));
    }
    return values;
}

inline std::vector<index_t> parse_index_list(const std::string& text) {
    std::vector<index_t> values;
    size_t start = 0;
    while (true) {
        const size_t comma = text.find(',', start);
        const std::string part = text.substr(start, comma - start);
        size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("list: not an integer: '" + part + "'");
        }
        if (pos != part.size() || v < 0)
            throw std::invalid_argument("list: expected a count, got: '" + part + "'");
        values.push_back(static_cast<index_t>(v));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

struct SweepRow {
    double a = 0.0;
    double epsilon = 0.0;
    double c = 1.0;
    index_t n_tail = 0;
    CriterionReport rep;
};

// n_tail = 0 means the plain 3x3 state (which forces c = 1); otherwise the
// tail-extended family member.
inline DensityMatrix example_state(double a, double epsilon, double c, index_t n_tail,
                                   double tail_ratio) {
    if (n_tail == 0) {
        if (c != 1.0)
            throw std::invalid_argument("example state: n_tail = 0 requires c = 1");
        return rho_eps(a, epsilon);
    }
    return rho_eps_c({a, epsilon, c, n_tail, tail_ratio});
}

struct SweepGrid {
    std::vector<double> a;
    std::vector<double> epsilon;
    std::vector<double> c;
    index_t n_tail = 0;
    double tail_ratio = 0.5;
};

// Evaluates every grid point, in lexicographic (a, epsilon, c) order. Points
// are independent; with jobs > 1 they are evaluated concurrently and the rows
// still come back in grid order.
inline std::vector<SweepRow> run_sweep(const SweepGrid& grid, int jobs = 1) {
    if (grid.a.empty() || grid.epsilon.empty() || grid.c.empty())
        throw std::invalid_argument("sweep: empty parameter range");
    std::vector<SweepRow> rows;
    rows.reserve(grid.a.size() * grid.epsilon.size() * grid.c.size());
    for (double a : grid.a)
        for (double epsilon : grid.epsilon)
            for (double c : grid.c)
                rows.push_back({a, epsilon, c, grid.n_tail, CriterionReport{}});
    const auto eval_row = [&grid](SweepRow& row) {
        row.rep = evaluate(example_state(row.a, row.epsilon, row.c, row.n_tail,
                                         grid.tail_ratio));
    };
    if (jobs <= 1 || rows.size() <= 1) {
        for (SweepRow& row : rows) eval_row(row);
        return rows;
    }
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    const auto worker = [&]() {
        while (true) {
            const size_t k = next.fetch_add(1);
            if (k >= rows.size()) return;
            try {
                eval_row(rows[k]);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const size_t n_workers = std::min<size_t>(static_cast<size_t>(jobs), rows.size());
    pool.reserve(n_workers);
    for (size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_header() {
    return "a,epsilon,c,n_tail,ccnr_trace_norm,ppt_min_eig,eq6_lhs,eq6_rhs,"
           "eq7_lhs,eq7_rhs,purity_a,purity_b,verdict";
}

inline std::string csv_row(const SweepRow& row) {
    std::string line = format_real(row.a) + "," + format_real(row.epsilon) + "," +
                       format_real(row.c) + "," + std::to_string(row.n_tail);
    for (const auto& [name, value] : report_fields(row.rep)) {
        (void)name;
        line += ",";
        line += format_real(value);
    }
    line += ",";
    line += to_string(row.rep.overall);
    return line;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << csv_header() << "\n";
    for (const SweepRow& row : rows) out << csv_row(row) << "\n";
}

// The region of interest: the covariance inequality fires while both the
// realignment and partial-transpose tests stay quiet.
inline bool is_witness(const CriterionReport& r) {
    return r.eq6_verdict == Verdict::entangled_detected &&
           r.ccnr_trace_norm <= 1.0 + tol_detect && r.ppt_min_eig >= -tol_psd;
}

// Smallest x in (lo, hi] with pred(x), to absolute tolerance xtol. Expects
// pred false at lo, true at hi, and monotone in between.
template <typename Pred>
double bisect_threshold(Pred pred, double lo, double hi, double xtol = 1e-6) {
    if (!(hi > lo) || !(xtol > 0.0))
        throw std::invalid_argument("bisect_threshold: bad bracket");
    while (hi - lo > xtol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

struct ConvergeResult {
    std::vector<SweepRow> rows;                // one per truncation level
    std::vector<double> max_step;              // max field change, level i -> i+1
    std::vector<std::string> max_step_field;   // which field moved most
    std::vector<double> additivity_residual;   // |ccnr - (c*ccnr_3x3 + 1 - c)| per level
};

// Evaluates the family at increasing truncation levels and tracks how the
// criterion values move, plus the exact realignment additivity identity
// against the untruncated 3x3 core.
inline ConvergeResult run_converge(double a, double epsilon, double c,
                                   const std::vector<index_t>& levels, double tail_ratio) {
    if (levels.empty())
        throw std::invalid_argument("converge: n_tail list must be nonempty");
    for (size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1)
            throw std::invalid_argument("converge: truncation levels must be >= 1");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw std::invalid_argument("converge: n_tail list must be strictly ascending");
    }
    ConvergeResult out;
    const double ccnr3 = ccnr_value(rho_eps(a, epsilon));
    for (index_t n : levels) {
        SweepRow row{a, epsilon, c, n, evaluate(rho_eps_c({a, epsilon, c, n, tail_ratio}))};
        out.additivity_residual.push_back(
            std::abs(row.rep.ccnr_trace_norm - (c * ccnr3 + 1.0 - c)));
        out.rows.push_back(std::move(row));
    }
    for (size_t i = 0; i + 1 < out.rows.size(); ++i) {
        const auto prev = report_fields(out.rows[i].rep);
        const auto next_fields = report_fields(out.rows[i + 1].rep);
        double worst = -1.0;
        const char* worst_name = "";
        for (size_t f = 0; f < prev.size(); ++f) {
            const double change = std::abs(next_fields[f].second - prev[f].second);
            if (change > worst) {
                worst = change;
                worst_name = prev[f].first;
            }
        }
        out.max_step.push_back(worst);
        out.max_step_field.push_back(worst_name);
    }
    return out;
}

}  // namespace entdet
