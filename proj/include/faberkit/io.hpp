#ifndef FABERKIT_IO_HPP
#define FABERKIT_IO_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <faberkit/analysis.hpp>
#include <faberkit/domaincfg.hpp>
#include <faberkit/error.hpp>
#include <faberkit/faber.hpp>
#include <faberkit/grunsky.hpp>
#include <faberkit/types.hpp>

namespace faberkit
{

using json = nlohmann::ordered_json;

inline constexpr const char *schema_version = "faberkit.v1";

namespace detail
{

inline cplx complex_from_json(const json &j, const std::string &what)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw parse_error(what + ": expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline double positive_from_json(const json &j, const std::string &what)
{
    if (!j.is_number() || !(j.get<double>() > 0.0) || !std::isfinite(j.get<double>())) {
        throw parse_error(what + ": expected a positive number");
    }
    return j.get<double>();
}

} // namespace detail

inline json complex_to_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

// {"maps": [{"center": [re, im], "coeffs": [[re, im], ...]}, ...], "ext_margin": x, "separation": y}
inline MultiDomainConfig config_from_json(const json &doc)
{
    if (!doc.is_object()) {
        throw parse_error("config: top level must be an object");
    }
    if (!doc.contains("maps") || !doc["maps"].is_array() || doc["maps"].empty()) {
        throw parse_error("config: `maps` must be a non-empty list");
    }
    MultiDomainConfig cfg;
    std::size_t idx = 0;
    for (const auto &m : doc["maps"]) {
        const std::string where = "config: maps[" + std::to_string(idx++) + "]";
        if (!m.is_object() || !m.contains("center") || !m.contains("coeffs") || !m["coeffs"].is_array()) {
            throw parse_error(where + ": needs `center` and a `coeffs` list");
        }
        const cplx p = detail::complex_from_json(m["center"], where + ".center");
        cvec a;
        for (const auto &c : m["coeffs"]) {
            a.push_back(detail::complex_from_json(c, where + ".coeffs"));
        }
        try {
            cfg.maps.emplace_back(p, a);
        } catch (const std::invalid_argument &e) {
            throw parse_error(where + ": " + e.what());
        }
    }
    if (doc.contains("ext_margin")) {
        cfg.ext_margin = detail::positive_from_json(doc["ext_margin"], "config: ext_margin");
    }
    if (doc.contains("separation")) {
        cfg.separation = detail::positive_from_json(doc["separation"], "config: separation");
    }
    return cfg;
}

inline MultiDomainConfig parse_config(const std::string &text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw parse_error(std::string("config: ") + e.what());
    }
    return config_from_json(doc);
}

inline MultiDomainConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw parse_error("config: cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

inline json config_to_json(const MultiDomainConfig &cfg)
{
    json maps = json::array();
    for (const auto &m : cfg.maps) {
        json coeffs = json::array();
        for (const auto &c : m.coeffs()) {
            coeffs.push_back(complex_to_json(c));
        }
        maps.push_back({{"center", complex_to_json(m.center())}, {"coeffs", coeffs}});
    }
    return {{"maps", maps}, {"ext_margin", cfg.ext_margin}, {"separation", cfg.separation}};
}

// POLESPEC: terms `re,im,order,cre,cim` separated by ';', each c / (z - (re + i im))^order.
inline RationalFn parse_polespec(const std::string &text)
{
    RationalFn h;
    std::stringstream terms(text);
    std::string term;
    while (std::getline(terms, term, ';')) {
        if (term.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream fs(term);
        std::string f;
        while (std::getline(fs, f, ',')) {
            fields.push_back(f);
        }
        if (fields.size() != 5) {
            throw parse_error("function: term `" + term + "` needs 5 fields re,im,order,cre,cim");
        }
        double v[5];
        for (std::size_t k = 0; k < 5; ++k) {
            std::size_t used = 0;
            try {
                v[k] = std::stod(fields[k], &used);
            } catch (const std::exception &) {
                throw parse_error("function: bad number `" + fields[k] + "`");
            }
            if (fields[k].find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v[k])) {
                throw parse_error("function: bad number `" + fields[k] + "`");
            }
        }
        if (v[2] < 1.0 || v[2] != std::floor(v[2]) || v[2] > 64.0) {
            throw parse_error("function: pole order must be an integer in 1..64");
        }
        h.add({v[0], v[1]}, static_cast<std::size_t>(v[2]), {v[3], v[4]});
    }
    return h;
}

inline json rational_to_json(const RationalFn &h)
{
    json terms = json::array();
    for (const auto &t : h.terms()) {
        for (std::size_t j = 0; j < t.coeffs.size(); ++j) {
            if (t.coeffs[j] != cplx{}) {
                terms.push_back({{"pole", complex_to_json(t.pole)}, {"order", j + 1}, {"coeff", complex_to_json(t.coeffs[j])}});
            }
        }
    }
    return terms;
}

// Sequence as {"neg": [[re, im], ...], "pos": [...]}; neg[k] is frequency -(k+1).
inline json coeffseq_to_json(const CoeffSeq &s)
{
    json neg = json::array(), pos = json::array();
    for (const auto &c : s.neg) {
        neg.push_back(complex_to_json(c));
    }
    for (const auto &c : s.pos) {
        pos.push_back(complex_to_json(c));
    }
    return {{"neg", neg}, {"pos", pos}};
}

// Row-major flat [re, im, re, im, ...].
inline json matrix_to_json(const Eigen::MatrixXcd &m)
{
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back(m(r, c).real());
            out.push_back(m(r, c).imag());
        }
    }
    return out;
}

inline json validation_to_json(const ValidationReport &rep)
{
    json maps = json::array();
    for (const auto &m : rep.maps) {
        maps.push_back({{"critical_points", m.critical_points},
                        {"min_abs_derivative", m.min_abs_derivative},
                        {"boundary_simple", m.boundary_simple},
                        {"extended_boundary_simple", m.extended_boundary_simple},
                        {"ok", m.ok}});
    }
    return {{"schema", schema_version},
            {"pass", rep.pass},
            {"maps", maps},
            {"curve_distance", rep.curve_distance},
            {"extended_distance", rep.extended_distance},
            {"containment", rep.containment},
            {"failures", rep.failures}};
}

struct NormHistoryEntry {
    std::size_t M;
    double sigma;
};

inline json grunsky_to_json(const GrunskyMatrix &g, const std::vector<NormHistoryEntry> &history)
{
    json blocks = json::array();
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i < g.n; ++i) {
            json b = {{"row", j + 1}, {"col", i + 1}, {"method", g.method[j][i]}};
            if (g.cross_method_delta[j][i] >= 0.0) {
                b["cross_method_delta"] = g.cross_method_delta[j][i];
                b["calibration"] = complex_to_json(g.calibration[j][i]);
            }
            b["orthonormal"] = matrix_to_json(g.orthonormal[j][i]);
            b["monomial"] = matrix_to_json(g.monomial[j][i]);
            blocks.push_back(b);
        }
    }
    json hist = json::array();
    for (const auto &h : history) {
        hist.push_back({{"M", h.M}, {"sigma_max", h.sigma}});
    }
    return {{"schema", schema_version}, {"n", g.n}, {"M", g.M},
            {"identity_defect", g.identity_defect}, {"alias_warning", g.alias_warning},
            {"symmetry_defect", symmetry_defect(g)}, {"sigma_history", hist}, {"blocks", blocks}};
}

} // namespace faberkit

#endif
