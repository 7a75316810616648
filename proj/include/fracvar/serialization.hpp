#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "euler_lagrange.hpp"
#include "smooth_model.hpp"
#include "solver.hpp"
#include "weak_convergence.hpp"

namespace fracvar {

// All floats in artifacts are printed with 17 significant digits so a
// write -> read -> write cycle is byte-identical.

inline nlohmann::ordered_json to_json(const ResidualReport& r) {
    nlohmann::ordered_json j;
    j["formulation"] = r.formulation;
    j["interior_sup"] = detail::format_double(r.interior_sup);
    j["masked_fraction"] = detail::format_double(r.masked_fraction);
    return j;
}

inline nlohmann::ordered_json to_json(const SolveResult& r) {
    nlohmann::ordered_json j;
    j["objective"] = detail::format_double(r.objective);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["el_check"] = to_json(r.el_check);
    return j;
}

inline std::string polynomial_to_json(const SmoothFunctionModel& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (double c : m.polynomial_coefficients()) j.push_back(detail::format_double(c));
    return j.dump();
}

inline SmoothFunctionModel polynomial_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("polynomial_from_json: expected an array");
    std::vector<double> coeffs;
    for (const auto& v : j)
        coeffs.push_back(v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>());
    return SmoothFunctionModel::polynomial(std::move(coeffs));
}

inline void write_records_csv(const std::vector<ConvergenceRecord>& records, std::ostream& os) {
    os << "N,phi_id,weak_error,strong_l1_error,conforming\n";
    for (const auto& r : records) {
        os << r.N << ',' << r.phi_id << ',' << detail::format_double(r.weak_error) << ',';
        if (r.strong_l1_error) os << detail::format_double(*r.strong_l1_error);
        os << ',' << (r.conforming ? 1 : 0) << '\n';
    }
}

inline void write_records_csv(const std::vector<ConvergenceRecord>& records,
                              const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_records_csv: cannot open " + path);
    write_records_csv(records, os);
}

} // namespace fracvar
