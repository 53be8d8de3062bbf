#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sclforge/bounds.hpp"
#include "sclforge/chains.hpp"
#include "sclforge/coarse.hpp"
#include "sclforge/core.hpp"
#include "sclforge/lp.hpp"
#include "sclforge/marking.hpp"
#include "sclforge/qm.hpp"
#include "sclforge/search.hpp"

namespace sclforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "scl-forge/v1";

inline Json marking_to_json(const Marking& m) {
    Json j;
    j["schema"] = kSchemaTag;
    j["rank"] = m.rank();
    Json gens = Json::array();
    for (char c : m.labels()) gens.push_back(std::string(1, c));
    j["generators"] = gens;
    Json rows = Json::array();
    for (const auto& row : m.quotient_matrix()) {
        Json r = Json::array();
        for (long long v : row) r.push_back(v);
        rows.push_back(r);
    }
    j["quotient_matrix"] = rows;
    return j;
}

inline Marking marking_from_json(const Json& j) {
    if (!j.contains("rank") || !j["rank"].is_number_integer())
        throw ParseError("marking JSON needs an integer rank");
    int rank = j["rank"].get<int>();
    std::vector<char> labels;
    if (j.contains("generators")) {
        for (const auto& g : j["generators"]) {
            std::string s = g.get<std::string>();
            if (s.size() != 1) throw ParseError("generator labels must be single letters");
            labels.push_back(s[0]);
        }
    }
    std::vector<std::vector<long long>> rows;
    if (j.contains("quotient_matrix"))
        for (const auto& r : j["quotient_matrix"]) {
            std::vector<long long> row;
            for (const auto& v : r) {
                if (!v.is_number_integer())
                    throw ParseError("quotient matrix entries must be integers (torsion quotients are not supported)");
                row.push_back(v.get<long long>());
            }
            rows.push_back(std::move(row));
        }
    return Marking(rank, std::move(rows), std::move(labels));
}

inline Json chain1_to_json(const Marking& m, const Chain1& c) {
    Json terms = Json::array();
    for (const auto& [w, coeff] : c.terms())
        terms.push_back(Json{{"word", m.format(w)}, {"coeff", rational_str(coeff)}});
    return Json{{"terms", terms}};
}

inline Chain1 chain1_from_json(const Marking& m, const Json& j) {
    Chain1 c;
    if (!j.contains("terms")) throw ParseError("chain JSON needs a terms array");
    for (const auto& t : j["terms"])
        c.add(m.parse(t.at("word").get<std::string>()),
              parse_rational(t.at("coeff").get<std::string>()));
    return c;
}

inline Json chain2_to_json(const Marking& m, const Chain2& c) {
    Json terms = Json::array();
    for (const auto& [k, coeff] : c.terms())
        terms.push_back(Json{{"pair", Json::array({m.format(k.first), m.format(k.second)})},
                             {"coeff", rational_str(coeff)}});
    return Json{{"terms", terms}};
}

inline Chain2 chain2_from_json(const Marking& m, const Json& j) {
    Chain2 c;
    if (!j.contains("terms")) throw ParseError("chain JSON needs a terms array");
    for (const auto& t : j["terms"]) {
        const auto& pair = t.at("pair");
        c.add(m.parse(pair.at(0).get<std::string>()), m.parse(pair.at(1).get<std::string>()),
              parse_rational(t.at("coeff").get<std::string>()));
    }
    return c;
}

inline Json brooks_to_json(const Marking& m, const BrooksCombination& q) {
    Json atoms = Json::array();
    for (const auto& [w, wt] : q.atoms)
        atoms.push_back(Json{{"word", m.format(w)}, {"weight", rational_str(wt)}});
    return Json{{"atoms", atoms}, {"defect_bound", rational_str(q.defect_bound)}, {"window", q.window}};
}

inline BrooksCombination brooks_from_json(const Marking& m, const Json& j) {
    std::map<Word, Rational> atoms;
    for (const auto& a : j.at("atoms"))
        atoms[m.parse(a.at("word").get<std::string>())] =
            parse_rational(a.at("weight").get<std::string>());
    int window = j.contains("window") ? j["window"].get<int>() : 6;
    std::string name = j.contains("name") ? j["name"].get<std::string>() : std::string{};
    return BrooksCombination(std::move(atoms), parse_rational(j.at("defect_bound").get<std::string>()),
                             window, name);
}

inline Json cl_certificate_to_json(const Marking& m, const ClCertificate& cert) {
    Json pairs = Json::array();
    for (const auto& [g, x] : cert.pairs)
        pairs.push_back(Json::array({m.format(g), m.format(x)}));
    return Json{{"mode", mode_name(cert.mode)},
                {"target", m.format(cert.target)},
                {"terms", cert.pairs.size()},
                {"pairs", pairs}};
}

inline Json filling_certificate_to_json(const Marking& m, const FillingCertificate& cert) {
    Json h = Json::array();
    for (const auto& t : cert.h_terms)
        h.push_back(Json{{"root", m.format(t.root)}, {"power", t.k}, {"coeff", rational_str(t.coeff)}});
    return Json{{"value", rational_str(cert.value)},
                {"value_approx", rational_decimal(cert.value)},
                {"target", chain1_to_json(m, cert.target)},
                {"filling", chain2_to_json(m, cert.filling)},
                {"h_terms", h}};
}

inline Json ext_to_json(const ExtRational& e) {
    return e.infinite ? Json("inf") : Json(rational_str(e.value));
}

inline Json interval_to_json(const Marking& m, const BoundInterval& iv) {
    Json j;
    j["mode"] = mode_name(iv.mode);
    j["lower"] = rational_str(iv.lower);
    j["upper"] = ext_to_json(iv.upper);
    j["lower_approx"] = rational_decimal(iv.lower);
    if (!iv.upper.infinite) j["upper_approx"] = rational_decimal(iv.upper.value);
    if (iv.lower_cert) {
        j["lower_cert"] = Json{{"certificate", brooks_to_json(m, iv.lower_cert->certificate)},
                               {"name", iv.lower_cert->certificate.name},
                               {"evaluated", rational_str(iv.lower_cert->evaluated)}};
    }
    if (const auto* sw = std::get_if<StabilizationWitness>(&iv.upper_cert)) {
        j["upper_cert"] = Json{{"type", "stabilization"},
                               {"k", sw->k},
                               {"certificate", cl_certificate_to_json(m, sw->cert)}};
    } else if (const auto* fc = std::get_if<FillingCertificate>(&iv.upper_cert)) {
        j["upper_cert"] = Json{{"type", "filling"}, {"certificate", filling_certificate_to_json(m, *fc)}};
    }
    Json stab = Json::array();
    for (const auto& e : iv.stabilization)
        stab.push_back(Json{{"k", e.k}, {"value", e.value ? Json(rational_str(*e.value)) : Json(nullptr)}});
    j["stabilization"] = stab;
    if (iv.filling_upper) j["filling_upper"] = rational_str(*iv.filling_upper);
    return j;
}

inline Json metric_sample_to_json(const MetricSample& s) {
    Json labels = Json::array();
    for (const auto& l : s.labels()) labels.push_back(l);
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < s.size(); ++j) row.push_back(ext_to_json(s.dist(i, j)));
        rows.push_back(row);
    }
    return Json{{"schema", kSchemaTag}, {"points", labels}, {"dist", rows}};
}

inline ExtRational ext_from_json(const Json& j) {
    std::string s = j.get<std::string>();
    if (s == "inf") return ExtRational::inf();
    return ExtRational(parse_rational(s));
}

inline MetricSample metric_sample_from_json(const Json& j) {
    std::vector<std::string> labels;
    for (const auto& l : j.at("points")) labels.push_back(l.get<std::string>());
    std::vector<std::vector<ExtRational>> dist;
    for (const auto& row : j.at("dist")) {
        std::vector<ExtRational> r;
        for (const auto& v : row) r.push_back(ext_from_json(v));
        dist.push_back(std::move(r));
    }
    return MetricSample(std::move(labels), std::move(dist));
}

}  // namespace sclforge
