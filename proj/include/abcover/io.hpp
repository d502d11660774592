// io.hpp -- JSON (de)serialization for groups, arrangements, cover specs,
// solutions and run reports. Serialization is deterministic: fixed key
// order, sorted collections, and no timestamps, so equal inputs produce
// byte-identical output.
#pragma once

#include "abcover/cover.hpp"
#include "abcover/solver.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace abcover {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars

inline json rat_to_json(const Rat& r) {
    if (is_integer(r)) {
        Int n = boost::multiprecision::numerator(r);
        if (n >= std::numeric_limits<std::int64_t>::min() &&
            n <= std::numeric_limits<std::int64_t>::max())
            return static_cast<std::int64_t>(n);
    }
    return rational_to_string(r);
}

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw usage_error("expected an integer or a rational string");
}

inline std::string element_key(const GroupElement& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(g[i]);
    }
    return s;
}

inline GroupElement element_from_key(const std::string& key) {
    GroupElement g;
    std::istringstream in(key);
    std::string tok;
    while (std::getline(in, tok, ',')) g.push_back(std::stoi(tok));
    return g;
}

// ---------------------------------------------------------------------------
// Groups and elements

inline json group_to_json(const GroupType& G) {
    return json{{"factors", G.factors}};
}

inline GroupType group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array())
        throw usage_error("group must be {\"factors\": [n1, ...]}");
    std::vector<int> factors;
    for (const auto& f : j["factors"]) {
        if (!f.is_number_integer()) throw usage_error("group factors must be integers");
        factors.push_back(f.get<int>());
    }
    return GroupType(std::move(factors));
}

inline json element_to_json(const GroupElement& g) {
    return json(g);
}

inline GroupElement element_from_json(const json& j) {
    if (!j.is_array()) throw usage_error("group element must be an array of residues");
    GroupElement g;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw usage_error("element residues must be integers");
        g.push_back(v.get<int>());
    }
    return g;
}

// ---------------------------------------------------------------------------
// Geometry

inline json divisor_class_to_json(const DivisorClass& d) {
    json e = json::array();
    for (const auto& m : d.e) e.push_back(rat_to_json(m));
    return json{{"h", rat_to_json(d.h)}, {"e", std::move(e)}};
}

inline DivisorClass divisor_class_from_json(const json& j) {
    if (!j.is_object() || !j.contains("h"))
        throw usage_error("divisor class must be {\"h\": ..., \"e\": [...]}");
    DivisorClass d(rat_from_json(j["h"]));
    if (j.contains("e"))
        for (const auto& m : j["e"]) d.e.push_back(rat_from_json(m));
    return d;
}

inline json point_to_json(const ProjPoint& p) {
    return json::array({rat_to_json(p[0]), rat_to_json(p[1]), rat_to_json(p[2])});
}

inline json arrangement_to_json(const LineArrangement& arr) {
    json lines = json::array();
    for (const auto& l : arr.lines)
        lines.push_back(json::array({rat_to_json(l[0]), rat_to_json(l[1]), rat_to_json(l[2])}));
    return json{{"lines", std::move(lines)}};
}

inline LineArrangement arrangement_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lines") || !j["lines"].is_array())
        throw usage_error("arrangement must be {\"lines\": [[a,b,c], ...]}");
    LineArrangement arr;
    for (const auto& l : j["lines"]) {
        if (!l.is_array() || l.size() != 3)
            throw usage_error("each line needs exactly three coefficients");
        arr.lines.push_back({rat_from_json(l[0]), rat_from_json(l[1]), rat_from_json(l[2])});
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Cover specifications
//
// {"group": {...},
//  "components": [{"degree": d | "class": {...}, "alpha": [...]}, ...],
//  "arrangement": {"lines": [...], "alphas": [[...], ...]}}
//
// With an arrangement present the lines are the branch components and the
// spec is realized over the blow-up of all points of multiplicity >= 3;
// abstract components are then not allowed.

inline CoverSpec cover_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("group"))
        throw usage_error("cover spec needs a \"group\"");
    GroupType G = group_from_json(j["group"]);
    std::optional<int> claim;
    if (j.contains("canonical_degree_claim")) {
        if (!j["canonical_degree_claim"].is_number_integer())
            throw usage_error("canonical_degree_claim must be an integer");
        claim = j["canonical_degree_claim"].get<int>();
    }

    if (j.contains("arrangement")) {
        if (j.contains("components") && !j["components"].empty())
            throw usage_error("give either components or an arrangement, not both");
        const json& aj = j["arrangement"];
        LineArrangement arr = arrangement_from_json(aj);
        if (!aj.contains("alphas") || !aj["alphas"].is_array())
            throw usage_error("an arranged cover needs one \"alphas\" entry per line");
        std::vector<GroupElement> alphas;
        for (const auto& a : aj["alphas"]) alphas.push_back(element_from_json(a));
        CoverSpec spec = realized_cover(G, arr, alphas);
        spec.canonical_degree_claim = claim;
        return spec;
    }

    if (!j.contains("components") || !j["components"].is_array())
        throw usage_error("cover spec needs \"components\" or an \"arrangement\"");
    std::vector<BranchComponent> comps;
    int blowups = 0;
    for (const auto& cj : j["components"]) {
        BranchComponent c;
        if (cj.contains("degree"))
            c.cls = DivisorClass(rat_from_json(cj["degree"]));
        else if (cj.contains("class"))
            c.cls = divisor_class_from_json(cj["class"]);
        else
            throw usage_error("component needs a \"degree\" or a \"class\"");
        if (!cj.contains("alpha")) throw usage_error("component needs an \"alpha\"");
        c.alpha = element_from_json(cj["alpha"]);
        blowups = std::max(blowups, c.cls.blowups());
        comps.push_back(std::move(c));
    }
    for (auto& c : comps) c.cls.e.resize(blowups, Rat(0));
    CoverSpec spec;
    spec.group = std::move(G);
    spec.blowups = blowups;
    spec.components = std::move(comps);
    spec.canonical_degree_claim = claim;
    validate_spec(spec);
    return spec;
}

inline json cover_spec_to_json(const CoverSpec& spec,
                               const std::vector<GroupElement>* line_alphas = nullptr) {
    json j;
    j["group"] = group_to_json(spec.group);
    if (spec.canonical_degree_claim) j["canonical_degree_claim"] = *spec.canonical_degree_claim;
    if (spec.arrangement && line_alphas) {
        json aj = arrangement_to_json(*spec.arrangement);
        json alphas = json::array();
        for (const auto& a : *line_alphas) alphas.push_back(element_to_json(a));
        aj["alphas"] = std::move(alphas);
        j["arrangement"] = std::move(aj);
        return j;
    }
    json comps = json::array();
    for (const auto& c : spec.components) {
        json cj;
        if (spec.blowups == 0)
            cj["degree"] = rat_to_json(c.cls.h);
        else
            cj["class"] = divisor_class_to_json(c.cls);
        cj["alpha"] = element_to_json(c.alpha);
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    return j;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw usage_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

// ---------------------------------------------------------------------------
// Solutions and classification reports

inline json branch_data_to_json(const BranchData& x) {
    json j = json::object();
    for (const auto& [alpha, v] : x) j[element_key(alpha)] = v;  // map order = canonical
    return j;
}

inline json record_to_json(const SolutionRecord& rec) {
    json j;
    j["group"] = group_to_json(rec.group);
    j["gprime"] = element_to_json(rec.gprime);
    j["x"] = branch_data_to_json(rec.x);
    j["orbit"] = rec.orbit_id ? json(*rec.orbit_id) : json(nullptr);
    j["generates"] = rec.support_generates;
    return j;
}

inline json group_classification_to_json(const GroupClassification& gc) {
    json j;
    j["group"] = group_to_json(gc.group);
    j["raw_count"] = gc.raw_count;
    j["generating_count"] = gc.generating_count;
    j["dedup_supported"] = gc.dedup_supported;
    j["orbit_count"] = gc.dedup_supported ? json(gc.orbit_count) : json(nullptr);
    json recs = json::array();
    for (const auto& r : gc.records) recs.push_back(record_to_json(r));
    j["solutions"] = std::move(recs);
    return j;
}

inline json sweep_to_json(const SweepReport& rep) {
    json j;
    j["from"] = rep.from;
    j["to"] = rep.to;
    j["solvable_orders"] = rep.solvable_orders;
    json orders = json::array();
    for (const auto& os : rep.orders) {
        json oj;
        oj["order"] = os.order;
        oj["solvable"] = os.solvable;
        oj["raw_count"] = os.raw_count;
        oj["generating_count"] = os.generating_count;
        json groups = json::array();
        for (const auto& gc : os.groups) groups.push_back(group_classification_to_json(gc));
        oj["groups"] = std::move(groups);
        orders.push_back(std::move(oj));
    }
    j["orders"] = std::move(orders);
    return j;
}

// ---------------------------------------------------------------------------
// Invariants and verdicts

inline json canonical_verdict_to_json(const CanonicalVerdict& v) {
    json j;
    j["is_canonical_pattern"] = v.is_canonical_pattern;
    j["pushforward_ok"] = v.pushforward_ok;
    j["pullback_degree_one"] = v.pullback_degree_one;
    j["pullback_degree"] = rat_to_json(v.pullback_degree);
    j["pushforward"] = v.pushforward;
    j["base_point_freeness_checked"] = v.base_point_freeness_checked;
    j["minimality_checked"] = v.minimality_checked;
    j["diagnostics"] = v.diagnostics;
    return j;
}

inline json invariants_to_json(const Invariants& inv) {
    json j;
    j["chi"] = rat_to_json(Rat(inv.chi));
    j["p_g"] = inv.p_g;
    j["q"] = inv.q;
    j["k_class"] = divisor_class_to_json(inv.k_class);
    j["k2"] = rat_to_json(inv.k_selfint);
    j["k2_integral"] = inv.k_selfint_integral;
    if (inv.p_m_computed) {
        json pm = json::object();
        for (const auto& [m, v] : inv.p_m) pm[std::to_string(m)] = v;
        j["p_m"] = std::move(pm);
    } else {
        j["p_m"] = nullptr;
    }
    j["support_generates"] = inv.support_generates;
    return j;
}

// ---------------------------------------------------------------------------
// Run reports: the one machine-readable envelope every command emits. The
// result body carries no timestamps; equal inputs give identical bytes.

struct RunReport {
    std::string command;
    int status = 0;
    json result;
};

inline json run_report_to_json(const RunReport& rep) {
    json j;
    j["command"] = rep.command;
    j["version"] = kVersion;
    j["status"] = rep.status;
    j["result"] = rep.result;
    return j;
}

inline std::string to_pretty_string(const json& j) { return j.dump(2) + "\n"; }

}  // namespace abcover
