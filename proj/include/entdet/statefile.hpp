#pragma once

// State file I/O: a density matrix as JSON with explicit dims and [re, im]
// entry pairs, plus the JSON form of a CriterionReport. Loading validates and
// rejects with the first violated invariant named.

#include "criteria.hpp"

#include "json.hpp"

#include <fstream>
#include <string>

namespace entdet {

inline nlohmann::json statefile_json(const DensityMatrix& rho) {
    nlohmann::json j;
    j["dims"] = {rho.dims.d_a, rho.dims.d_b};
    nlohmann::json rows = nlohmann::json::array();
    for (index_t i = 0; i < rho.mat.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (index_t k = 0; k < rho.mat.cols(); ++k)
            row.push_back({rho.mat(i, k).real(), rho.mat(i, k).imag()});
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

inline void save_statefile(const std::string& path, const DensityMatrix& rho) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("state file: cannot open for writing: " + path);
    out << statefile_json(rho).dump(1) << "\n";
    if (!out)
        throw std::invalid_argument("state file: write failed: " + path);
}

inline DensityMatrix parse_statefile(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
        throw std::invalid_argument("state file: expected an object with dims and matrix");
    const nlohmann::json& dims_j = j["dims"];
    if (!dims_j.is_array() || dims_j.size() != 2 || !dims_j[0].is_number_integer() ||
        !dims_j[1].is_number_integer())
        throw std::invalid_argument("state file: dims must be two integers");
    const BipartiteDims dims{dims_j[0].get<index_t>(), dims_j[1].get<index_t>()};
    if (dims.d_a < 2 || dims.d_b < 2)
        throw std::invalid_argument("state file: both local dimensions must be >= 2");
    const nlohmann::json& rows = j["matrix"];
    const index_t n = dims.total();
    if (!rows.is_array() || static_cast<index_t>(rows.size()) != n)
        throw std::invalid_argument("state file: matrix must have d_a*d_b rows");
    cmat mat(n, n);
    for (index_t i = 0; i < n; ++i) {
        const nlohmann::json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<index_t>(row.size()) != n)
            throw std::invalid_argument("state file: matrix rows must have d_a*d_b entries");
        for (index_t k = 0; k < n; ++k) {
            const nlohmann::json& e = row[static_cast<size_t>(k)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw std::invalid_argument("state file: entries must be [re, im] pairs");
            mat(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return make_density(std::move(mat), dims);
}

inline DensityMatrix load_statefile(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("state file: cannot open: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("state file: parse error: ") + e.what());
    }
    return parse_statefile(j);
}

inline nlohmann::json report_json(const CriterionReport& r) {
    nlohmann::json j;
    for (const auto& [name, value] : report_fields(r)) j[name] = value;
    j["verdicts"] = {{"ccnr", to_string(r.ccnr_verdict)},
                     {"ppt", to_string(r.ppt_verdict)},
                     {"eq6", to_string(r.eq6_verdict)},
                     {"eq7", to_string(r.eq7_verdict)},
                     {"overall", to_string(r.overall)}};
    return j;
}

}  // namespace entdet
