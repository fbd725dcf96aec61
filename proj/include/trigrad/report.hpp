#pragma once

#include "trigrad/homology.hpp"
#include "trigrad/laurent.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

namespace trigrad {

/// A finished homology computation as written by the CLI.
struct HomologyReport {
    std::string braid;
    bool reduced = false;
    TriGradedDims dims;

    bool operator==(const HomologyReport& o) const {
        return braid == o.braid && reduced == o.reduced && dims == o.dims;
    }
};

inline nlohmann::json rational_json(const Rational& r) {
    if (is_integer(r)) {
        if (r.get_num().fits_slong_p()) return r.get_num().get_si();
        return r.get_str();
    }
    return r.get_str();
}

inline Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a rational string");
}

inline nlohmann::json to_json(const HomologyReport& r) {
    nlohmann::json out;
    out["braid"] = r.braid;
    out["reduced"] = r.reduced;
    out["qmax"] = r.dims.qmax;
    nlohmann::json dims = nlohmann::json::array();
    for (const auto& [t, v] : r.dims.dims) {
        auto [j, k, l] = t;
        dims.push_back({j, k, l, v});
    }
    out["dims"] = dims;
    nlohmann::json euler = nlohmann::json::array();
    QSeries chi = euler_characteristic(r.dims);
    for (const auto& [l, poly] : chi.coefficients()) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [texp, c] : poly) terms.push_back({texp, rational_json(c)});
        euler.push_back({l, terms});
    }
    out["euler"] = euler;
    return out;
}

inline HomologyReport report_from_json(const nlohmann::json& j) {
    HomologyReport r;
    r.braid = j.at("braid").get<std::string>();
    r.reduced = j.at("reduced").get<bool>();
    r.dims.qmax = j.at("qmax").get<int>();
    for (const auto& e : j.at("dims")) r.dims.add(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<long>());
    return r;
}

/// Sum of dim * t^k q^l s^j, ordered by l, then k, then j.
inline std::string poincare_polynomial(const TriGradedDims& h) {
    std::vector<std::pair<std::tuple<int, int, int>, long>> terms;
    for (const auto& [t, v] : h.dims) {
        auto [j, k, l] = t;
        terms.push_back({{l, k, j}, v});
    }
    std::sort(terms.begin(), terms.end());
    if (terms.empty()) return "0";
    auto power = [](const char* var, int e) -> std::string {
        if (e == 0) return "";
        if (e == 1) return var;
        return std::string(var) + "^" + std::to_string(e);
    };
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, v] : terms) {
        auto [l, k, j] = key;
        std::vector<std::string> factors;
        for (auto s : {power("t", k), power("q", l), power("s", j)})
            if (!s.empty()) factors.push_back(s);
        if (!first) os << " + ";
        first = false;
        if (v != 1 || factors.empty()) {
            os << v;
            if (!factors.empty()) os << '*';
        }
        for (size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

/// Fixed-width table, one line per nonzero tridegree.
inline std::string dims_table(const TriGradedDims& h) {
    std::ostringstream os;
    os << "   j    k    l  dim\n";
    for (const auto& [t, v] : h.dims) {
        auto [j, k, l] = t;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%4d %4d %4d %4ld\n", j, k, l, v);
        os << buf;
    }
    return os.str();
}

}  // namespace trigrad
