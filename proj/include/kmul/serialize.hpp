#pragma once

#include <string>

#include <json.hpp>

#include "kmul/blue_lemma.hpp"
#include "kmul/decompose.hpp"
#include "kmul/rational.hpp"

namespace kmul {

// JSON certificate formats. Rationals travel as canonical "p/q" strings so
// files replay exactly.

inline nlohmann::json to_json(const DecompositionCertificate& cert, const IfsParams& p,
                              const Rational& u) {
    nlohmann::json j;
    j["lambda"] = rat_str(p.lambda);
    j["c"] = rat_str(p.c);
    j["u"] = rat_str(u);
    j["word_x"] = cert.word_x;
    j["word_y"] = cert.word_y;
    j["x"] = rat_str(cert.x);
    j["y"] = rat_str(cert.y);
    j["scaling_power"] = cert.scaling_power;
    j["error_bound"] = rat_str(cert.error_bound);
    j["rect_x"] = {rat_str(cert.rect_x.lo), rat_str(cert.rect_x.hi)};
    j["rect_y"] = {rat_str(cert.rect_y.lo), rat_str(cert.rect_y.hi)};
    return j;
}

struct ParsedDecomposition {
    IfsParams params;
    Rational u;
    DecompositionCertificate cert;
};

inline ParsedDecomposition decomposition_from_json(const nlohmann::json& j) {
    ParsedDecomposition out;
    out.params = validate_params(parse_rational(j.at("lambda").get<std::string>()),
                                 parse_rational(j.at("c").get<std::string>()));
    out.u = parse_rational(j.at("u").get<std::string>());
    out.cert.word_x = j.at("word_x").get<std::string>();
    out.cert.word_y = j.at("word_y").get<std::string>();
    out.cert.x = parse_rational(j.at("x").get<std::string>());
    out.cert.y = parse_rational(j.at("y").get<std::string>());
    out.cert.scaling_power = j.at("scaling_power").get<int>();
    out.cert.error_bound = parse_rational(j.at("error_bound").get<std::string>());
    out.cert.rect_x = Interval(parse_rational(j.at("rect_x")[0].get<std::string>()),
                               parse_rational(j.at("rect_x")[1].get<std::string>()));
    out.cert.rect_y = Interval(parse_rational(j.at("rect_y")[0].get<std::string>()),
                               parse_rational(j.at("rect_y")[1].get<std::string>()));
    return out;
}

inline nlohmann::json to_json(const ParamBox& box) {
    return {rat_str(box.l_lo), rat_str(box.l_hi), rat_str(box.c_lo), rat_str(box.c_hi)};
}

inline ParamBox box_from_json(const nlohmann::json& j) {
    return ParamBox{parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()),
                    parse_rational(j[2].get<std::string>()), parse_rational(j[3].get<std::string>())};
}

inline nlohmann::json to_json(const BlueCertificate& cert) {
    nlohmann::json j;
    j["root"] = to_json(cert.root);
    j["depth"] = cert.depth;
    j["tangency"] = {rat_str(cert.tangency.lo), rat_str(cert.tangency.hi)};
    j["leaves"] = nlohmann::json::array();
    for (const auto& leaf : cert.leaves)
        j["leaves"].push_back({{"box", to_json(leaf.box)}, {"rule", to_string(leaf.rule)}});
    j["undecided"] = nlohmann::json::array();
    for (const auto& box : cert.undecided) j["undecided"].push_back(to_json(box));
    return j;
}

inline BlueCertificate blue_certificate_from_json(const nlohmann::json& j) {
    BlueCertificate cert;
    cert.root = box_from_json(j.at("root"));
    cert.depth = j.at("depth").get<int>();
    cert.tangency = Interval(parse_rational(j.at("tangency")[0].get<std::string>()),
                             parse_rational(j.at("tangency")[1].get<std::string>()));
    for (const auto& leaf : j.at("leaves")) {
        auto rule = parse_box_rule(leaf.at("rule").get<std::string>());
        if (!rule) throw parse_error("unknown box rule: " + leaf.at("rule").get<std::string>());
        cert.leaves.push_back({box_from_json(leaf.at("box")), *rule});
    }
    for (const auto& box : j.at("undecided")) cert.undecided.push_back(box_from_json(box));
    return cert;
}

}  // namespace kmul
