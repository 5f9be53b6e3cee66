#include "kr/json_io.hpp"

#include <algorithm>

#include <json.hpp>

namespace kr {

namespace {

using njson = nlohmann::ordered_json;

std::string dump(const njson &doc) { return doc.dump(2) + "\n"; }

njson weight_array(const Weight &w) {
    njson a = njson::array();
    for (int v : w) a.push_back(v);
    return a;
}

njson monomial_exps(const YMonomial &m) {
    njson a = njson::array();
    for (const YFactor &f : m.factors) a.push_back(njson::array({f.node, f.c, f.exp}));
    return a;
}

}  // namespace

std::string character_json(const ClassicalCharacter &c) {
    njson doc;
    doc["algebra"] = c.algebra.name();
    njson terms = njson::array();
    for (const auto &[w, mult] : c.terms) {
        njson t;
        t["weight"] = weight_array(w);
        t["mult"] = mult;
        terms.push_back(std::move(t));
    }
    doc["terms"] = std::move(terms);
    return dump(doc);
}

ClassicalCharacter parse_character_json(const std::string &text) {
    njson doc;
    try {
        doc = njson::parse(text);
    } catch (const njson::exception &e) {
        raise(errc::precondition, std::string("character file is not valid JSON: ") + e.what());
    }
    try {
        ClassicalCharacter c;
        c.algebra = cartan_data(doc.at("algebra").get<std::string>());
        for (const auto &entry : doc.at("terms")) {
            Weight w;
            for (const auto &v : entry.at("weight")) w.push_back(v.get<int>());
            if (static_cast<int>(w.size()) != c.algebra.rank)
                raise(errc::precondition, "character term has wrong rank");
            const std::int64_t mult = entry.at("mult").get<std::int64_t>();
            if (mult == 0) continue;
            c.terms[w] += mult;
        }
        return c;
    } catch (const njson::exception &e) {
        raise(errc::precondition, std::string("character file is structurally invalid: ") + e.what());
    }
}

std::string qchar_json(const QCharacter &qc, int node, int level) {
    njson doc;
    doc["algebra"] = qc.algebra.name();
    doc["node"] = node;
    doc["level"] = level;
    std::map<YMonomial, std::int64_t> sorted(qc.terms.begin(), qc.terms.end());
    njson monomials = njson::array();
    for (const auto &[m, mult] : sorted) {
        njson t;
        t["exps"] = monomial_exps(m);
        t["mult"] = mult;
        monomials.push_back(std::move(t));
    }
    doc["monomials"] = std::move(monomials);
    return dump(doc);
}

QCharacter parse_qchar_json(const std::string &text, const CartanData &cd, int node, int level) {
    njson doc;
    try {
        doc = njson::parse(text);
    } catch (const njson::exception &e) {
        raise(errc::bad_cache, std::string("cache file is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("algebra").get<std::string>() != cd.name() ||
            doc.at("node").get<int>() != node || doc.at("level").get<int>() != level)
            raise(errc::bad_cache, "cache file does not match the requested q-character");
        QCharacter qc;
        qc.algebra = cd;
        qc.highest = kr_highest_monomial(cd, node, level, 0);
        for (const auto &entry : doc.at("monomials")) {
            std::vector<YFactor> factors;
            for (const auto &e : entry.at("exps")) {
                if (!e.is_array() || e.size() != 3)
                    raise(errc::bad_cache, "cache monomial entry is malformed");
                YFactor f{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
                if (f.node < 1 || f.node > cd.rank || f.exp == 0)
                    raise(errc::bad_cache, "cache monomial entry is malformed");
                factors.push_back(f);
            }
            const std::int64_t mult = entry.at("mult").get<std::int64_t>();
            if (mult <= 0) raise(errc::bad_cache, "cache multiplicity must be positive");
            YMonomial m = y_monomial(std::move(factors));
            if (!qc.terms.emplace(std::move(m), mult).second)
                raise(errc::bad_cache, "duplicate monomial in cache file");
        }
        if (qc.terms.empty()) raise(errc::bad_cache, "cache file holds no monomials");
        return qc;
    } catch (const njson::exception &e) {
        raise(errc::bad_cache, std::string("cache file is structurally invalid: ") + e.what());
    }
}

std::string decomposition_json(const CartanData &cd, const std::map<Weight, std::int64_t> &mult) {
    njson doc;
    doc["algebra"] = cd.name();
    njson comps = njson::array();
    for (const auto &[w, c] : mult) {
        njson t;
        t["weight"] = weight_array(w);
        t["mult"] = c;
        comps.push_back(std::move(t));
    }
    doc["components"] = std::move(comps);
    return dump(doc);
}

std::string tensor_json(const CartanData &cd, int node, const Partition &p,
                        const MultiplicityVector &mult) {
    njson doc;
    doc["algebra"] = cd.name();
    doc["node"] = node;
    doc["partition"] = to_string(p);
    njson comps = njson::array();
    for (const auto &[w, c] : mult) {
        njson t;
        t["weight"] = weight_array(w);
        t["mult"] = c;
        comps.push_back(std::move(t));
    }
    doc["multiplicities"] = std::move(comps);
    return dump(doc);
}

std::string poset_json(int m) {
    njson doc;
    doc["m"] = m;
    njson nodes = njson::array();
    for (const Partition &p : partitions_of(m)) nodes.push_back(to_string(p));
    doc["nodes"] = std::move(nodes);
    njson edges = njson::array();
    for (const auto &[lower, upper] : cover_edges(m))
        edges.push_back(njson::array({to_string(lower), to_string(upper)}));
    doc["covers"] = std::move(edges);
    return dump(doc);
}

std::string positivity_report_json(const PositivityReport &r) {
    njson doc;
    doc["algebra"] = r.algebra.name();
    doc["node"] = r.node;
    doc["m"] = r.m;
    doc["mode"] = r.all_pairs ? "all-pairs" : "covers";
    doc["pairs"] = r.pairs_checked;
    njson violations = njson::array();
    for (const MultViolation &v : r.violations) {
        njson t;
        t["lower"] = to_string(v.lower);
        t["upper"] = to_string(v.upper);
        t["tau"] = weight_array(v.tau);
        t["lower_mult"] = v.lower_mult;
        t["upper_mult"] = v.upper_mult;
        violations.push_back(std::move(t));
    }
    doc["violations"] = std::move(violations);
    return dump(doc);
}

}  // namespace kr
