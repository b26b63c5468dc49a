#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "riesz/cond_exp.hpp"
#include "riesz/element.hpp"
#include "riesz/fls.hpp"
#include "riesz/periodic_seq.hpp"

namespace riesz::io {

using Json = nlohmann::ordered_json;

namespace detail {
inline std::size_t index_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ParseError(std::string(what) + " must be an integer");
    if (j.is_number_integer() && j.get<long long>() < 0)
        throw ParseError(std::string(what) + " must be nonnegative");
    return j.get<std::size_t>();
}
}  // namespace detail

// Element <-> array of strings, each "p/q", "n" or "inf": ["1/2","inf","3"].
inline Json to_json(const Element& x) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < x.dim(); ++i) arr.push_back(x[i].str());
    return arr;
}

inline Element element_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("element must be a nonempty array");
    std::vector<ExtValue> coords;
    coords.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_string()) throw ParseError("element coordinates must be strings");
        coords.push_back(parse_ext_value(item.get<std::string>()));
    }
    return Element(std::move(coords));
}

// Band <-> sorted array of atom indices: [0,2].
inline Json to_json(const BandProjection& B) {
    Json arr = Json::array();
    for (auto a : B.atoms()) arr.push_back(a);
    return arr;
}

inline BandProjection band_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array()) throw ParseError("band must be an array of atom indices");
    BandProjection B(dim);
    for (const auto& item : j) {
        std::size_t atom = detail::index_from_json(item, "band atom");
        if (atom >= dim) throw ParseError("band atom " + std::to_string(atom) + " out of range");
        B.insert(atom);
    }
    return B;
}

inline Json to_json(const PeriodicSeq<Element>& s) {
    Json prefix = Json::array(), cycle = Json::array();
    for (const auto& t : s.prefix()) prefix.push_back(to_json(t));
    for (const auto& t : s.cycle()) cycle.push_back(to_json(t));
    return Json{{"prefix", prefix}, {"cycle", cycle}};
}

inline Json to_json(const PeriodicSeq<BandProjection>& s) {
    Json prefix = Json::array(), cycle = Json::array();
    for (const auto& t : s.prefix()) prefix.push_back(to_json(t));
    for (const auto& t : s.cycle()) cycle.push_back(to_json(t));
    return Json{{"prefix", prefix}, {"cycle", cycle}};
}

inline PeriodicSeq<Element> element_seq_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("cycle"))
        throw ParseError("sequence must be an object with 'prefix' and 'cycle'");
    std::vector<Element> prefix, cycle;
    if (j.contains("prefix"))
        for (const auto& item : j.at("prefix")) prefix.push_back(element_from_json(item));
    for (const auto& item : j.at("cycle")) cycle.push_back(element_from_json(item));
    if (cycle.empty()) throw ParseError("sequence cycle must be nonempty");
    return PeriodicSeq<Element>(std::move(prefix), std::move(cycle));
}

inline PeriodicSeq<BandProjection> band_seq_from_json(const Json& j, std::size_t dim) {
    if (!j.is_object() || !j.contains("cycle"))
        throw ParseError("sequence must be an object with 'prefix' and 'cycle'");
    std::vector<BandProjection> prefix, cycle;
    if (j.contains("prefix"))
        for (const auto& item : j.at("prefix")) prefix.push_back(band_from_json(item, dim));
    for (const auto& item : j.at("cycle")) cycle.push_back(band_from_json(item, dim));
    if (cycle.empty()) throw ParseError("sequence cycle must be nonempty");
    return PeriodicSeq<BandProjection>(std::move(prefix), std::move(cycle));
}

inline std::vector<Rational> weights_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("weights must be a nonempty array");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_string()) throw ParseError("weights must be rational strings");
        out.push_back(parse_rational(item.get<std::string>()));
    }
    return out;
}

inline std::vector<std::vector<std::size_t>> partition_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("partition must be a nonempty array");
    std::vector<std::vector<std::size_t>> out;
    for (const auto& block : j) {
        if (!block.is_array()) throw ParseError("partition blocks must be arrays");
        std::vector<std::size_t> atoms;
        for (const auto& a : block) atoms.push_back(detail::index_from_json(a, "partition atom"));
        out.push_back(std::move(atoms));
    }
    return out;
}

// {"weights": ["1/4", ...], "partition": [[0,1],[2,3]]}
inline CondExp cond_exp_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("partition"))
        throw ParseError("conditional expectation needs 'weights' and 'partition'");
    ProbSpace space(weights_from_json(j.at("weights")));
    return CondExp(std::move(space), partition_from_json(j.at("partition")));
}

inline Json to_json(const CondExp& T) {
    Json weights = Json::array();
    for (const auto& w : T.space().weights()) weights.push_back(format_rational(w));
    Json partition = Json::array();
    for (const auto& block : T.partition()) {
        Json b = Json::array();
        for (auto a : block) b.push_back(a);
        partition.push_back(b);
    }
    return Json{{"weights", weights}, {"partition", partition}};
}

// Input document for the bound subcommand:
// {"space": [weights], "partition": [[..],..], "weights_seq": seq,
//  "events_seq": seq-of-bands, "checkpoints": [n..]}
struct BoundDocument {
    CondExp T;
    std::optional<PeriodicSeq<Element>> weights_seq;  // absent in corollary mode
    PeriodicSeq<BandProjection> events_seq;
    std::vector<std::size_t> checkpoints;
};

inline BoundDocument bound_document_from_json(const Json& j, bool require_weights = true) {
    if (!j.is_object()) throw ParseError("bound input must be an object");
    for (const char* key : {"space", "partition", "events_seq", "checkpoints"})
        if (!j.contains(key)) throw ParseError(std::string("bound input missing '") + key + "'");
    ProbSpace space(weights_from_json(j.at("space")));
    std::size_t dim = space.dim();
    CondExp T(std::move(space), partition_from_json(j.at("partition")));

    std::optional<PeriodicSeq<Element>> vs;
    if (j.contains("weights_seq"))
        vs = element_seq_from_json(j.at("weights_seq"));
    else if (require_weights)
        throw ParseError("bound input missing 'weights_seq'");

    auto qs = band_seq_from_json(j.at("events_seq"), dim);
    std::vector<std::size_t> cks;
    for (const auto& n : j.at("checkpoints")) {
        std::size_t value = detail::index_from_json(n, "checkpoint");
        if (value < 1) throw ParseError("checkpoints must be positive integers");
        cks.push_back(value);
    }
    return BoundDocument{std::move(T), std::move(vs), std::move(qs), std::move(cks)};
}

inline Json to_json(const BoundReport& r) {
    Json out;
    out["dimension"] = r.dimension;
    out["band"] = to_json(r.band);
    out["finite_part_zero"] = r.finite_part_zero;
    out["lhs"] = to_json(r.lhs);
    Json samples = Json::array();
    for (const auto& [n, value] : r.rhs_samples)
        samples.push_back(Json{{"n", n}, {"value", to_json(value)}});
    out["rhs_samples"] = samples;
    Json certs = Json::array();
    for (const auto& c : r.certificates)
        certs.push_back(Json{{"q", c.q},
                             {"n", c.n},
                             {"lhs", to_json(c.lhs)},
                             {"rhs", to_json(c.rhs)},
                             {"holds", c.holds}});
    out["certificates"] = certs;
    out["display_form_agrees"] = r.display_form_agrees;
    out["verdict"] = r.verdict;
    return out;
}

inline Json to_json(const BCReport& r) {
    Json out;
    out["depth"] = r.depth;
    Json ps = Json::array();
    for (const auto& p : r.ps) ps.push_back(format_rational(p));
    out["p"] = ps;
    out["union_value"] = format_rational(r.union_value);
    out["fls_ratio"] = format_rational(r.fls_ratio);
    out["certificate_holds"] = r.certificate_holds;
    out["k2_leq_s"] = r.k2_leq_s;
    out["gap_to_one"] = format_rational(r.gap_to_one);
    out["pairwise_independent"] = r.pairwise_independent;
    Json levels = Json::array();
    for (const auto& l : r.levels)
        levels.push_back(Json{{"depth", l.depth},
                              {"union_value", format_rational(l.union_value)},
                              {"fls_ratio", format_rational(l.fls_ratio)}});
    out["levels"] = levels;
    return out;
}

}  // namespace riesz::io
