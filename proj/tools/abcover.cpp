// abcover -- classify abelian covers of the plane that realize the canonical
// map, and compute the invariants of the covering surfaces.
//
// Subcommands: groups, solve, sweep, invariants, arrangement, verify-paper.
// Every command prints a human summary by default and a deterministic JSON
// report with --json. Exit codes: 0 success, 1 domain failure, 2 usage error.
#include "abcover/instances.hpp"
#include "abcover/io.hpp"
#include "abcover/verification.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace abcover;

namespace {

// The echoed command excludes --jobs: parallelism is an execution detail and
// reports must be byte-identical across parallelism levels.
std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--jobs=", 0) == 0) continue;
        if (arg == "--jobs") {
            ++i;
            continue;
        }
        if (!s.empty()) s += ' ';
        s += arg;
    }
    return s;
}

void emit(const RunReport& rep, bool as_json) {
    if (as_json) std::cout << to_pretty_string(run_report_to_json(rep));
}

std::string group_label(const GroupType& G) {
    std::string s = "[";
    for (std::size_t i = 0; i < G.factors.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(G.factors[i]);
    }
    return s + "]";
}

GroupType parse_group_flag(const std::string& text) {
    std::vector<int> factors;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            factors.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw usage_error("malformed group: " + text);
        }
    }
    if (factors.empty()) throw usage_error("malformed group: " + text);
    return GroupType(std::move(factors));  // validates the divisibility chain
}

void print_records_human(const GroupClassification& gc) {
    std::cout << "  group " << group_label(gc.group) << ": " << gc.raw_count << " solution(s)";
    if (gc.dedup_supported) std::cout << ", " << gc.orbit_count << " orbit(s)";
    std::cout << "\n";
    for (const auto& r : gc.records) {
        std::cout << "    g' = (" << element_key(r.gprime) << ")  x:";
        for (const auto& [a, v] : r.x) std::cout << " (" << element_key(a) << ")=" << v;
        if (r.orbit_id) std::cout << "  [orbit " << *r.orbit_id << "]";
        if (!r.support_generates) std::cout << "  [support does not generate]";
        std::cout << "\n";
    }
}

int cmd_groups(long long order, bool as_json, RunReport& rep) {
    auto groups = enumerate_groups(order);
    json list = json::array();
    for (const auto& g : groups) list.push_back(group_to_json(g));
    rep.result = json{{"order", order}, {"count", groups.size()}, {"groups", std::move(list)}};
    if (!as_json) {
        std::cout << "order " << order << ": " << groups.size() << " abelian group(s)\n";
        for (const auto& g : groups) std::cout << "  " << group_label(g) << "\n";
    }
    return 0;
}

int cmd_solve(long long order, const std::string& group_flag, bool dedup_flag,
              bool require_generating, int jobs, bool as_json, RunReport& rep) {
    ClassifyOptions opts;
    opts.apply_dedup = dedup_flag;
    opts.require_generating = require_generating;
    opts.jobs = jobs;
    auto results = classify_order(order, opts);
    if (!group_flag.empty()) {
        GroupType G = parse_group_flag(group_flag);
        if (G.order() != order)
            throw usage_error("group " + group_label(G) + " does not have order " +
                              std::to_string(order));
        std::erase_if(results, [&](const GroupClassification& gc) { return gc.group != G; });
        if (results.empty()) throw usage_error("no such group of this order");
    }
    long long total = 0;
    json groups = json::array();
    for (const auto& gc : results) {
        total += static_cast<long long>(gc.records.size());
        groups.push_back(group_classification_to_json(gc));
    }
    rep.result = json{{"order", order},
                      {"solvable", total > 0},
                      {"groups", std::move(groups)}};
    if (!as_json) {
        if (total == 0) {
            std::cout << "order " << order << ": INFEASIBLE for every group\n";
        } else {
            std::cout << "order " << order << ": " << total << " solution(s)\n";
            for (const auto& gc : results) print_records_human(gc);
        }
    }
    return 0;
}

int cmd_sweep(long long from, long long to, int jobs, bool as_json, RunReport& rep) {
    ClassifyOptions opts;
    opts.apply_dedup = true;
    opts.jobs = jobs;
    auto report = sweep(from, to, opts);
    rep.result = sweep_to_json(report);
    if (!as_json) {
        std::cout << "order  groups  solutions  orbits  solvable  search-ms\n";
        for (const auto& os : report.orders) {
            long long orbits = 0;
            bool orbits_known = true;
            for (const auto& gc : os.groups) {
                if (gc.dedup_supported) orbits += gc.orbit_count;
                else if (gc.raw_count > 0) orbits_known = false;
            }
            std::cout << std::setw(5) << os.order << std::setw(8) << os.groups.size()
                      << std::setw(11) << os.raw_count << std::setw(8)
                      << (orbits_known ? std::to_string(orbits) : "n/a") << std::setw(10)
                      << (os.solvable ? "yes" : "-") << std::setw(11) << std::fixed
                      << std::setprecision(1) << os.search_seconds * 1000.0 << "\n";
        }
        std::cout << "solvable orders:";
        for (long long o : report.solvable_orders) std::cout << " " << o;
        std::cout << "\n";
    }
    return 0;
}

int cmd_invariants(const std::string& path, bool as_json, RunReport& rep) {
    CoverSpec spec = cover_spec_from_json(load_json_file(path));
    LTable table = l_table(spec);
    auto inv = invariants(spec);

    json lj = json::array();
    for (std::size_t i = 0; i < table.elems.size(); ++i)
        lj.push_back(json{{"g", element_to_json(table.elems[i])},
                          {"class", divisor_class_to_json(table.cls[i])}});
    json result;
    result["group"] = group_to_json(spec.group);
    result["blowups"] = spec.blowups;
    result["l"] = std::move(lj);
    if (spec.blowups == 0) {
        result["pushforward"] = pushforward_degrees(spec);
        result["canonical"] = canonical_verdict_to_json(canonical_test(spec));
    } else {
        result["pushforward"] = nullptr;
        result["canonical"] = nullptr;  // pattern test applies to plane bases only
    }
    result["invariants"] = invariants_to_json(inv);
    rep.result = std::move(result);

    if (!as_json) {
        std::cout << "group " << group_label(spec.group) << ", base: ";
        if (spec.blowups == 0) std::cout << "plane\n";
        else std::cout << "plane blown up at " << spec.blowups << " point(s)\n";
        std::cout << "summand degrees l_g:";
        for (const auto& g : table.elems) std::cout << " " << table.degree(g);
        std::cout << "\n";
        if (spec.blowups == 0) {
            std::cout << "pushforward of O_X: degrees";
            for (long long deg : pushforward_degrees(spec)) std::cout << " " << deg;
            std::cout << "\n";
        }
        if (spec.canonical_degree_claim)
            std::cout << "claimed canonical degree: " << *spec.canonical_degree_claim
                      << " (cover degree |G| = " << spec.group.order() << ")\n";
        std::cout << "chi = " << inv.chi << ", p_g = " << inv.p_g << ", q = " << inv.q
                  << ", K^2 = " << rational_to_string(inv.k_selfint);
        if (!inv.k_selfint_integral) std::cout << " (non-integral!)";
        std::cout << "\n";
        if (inv.p_m_computed) {
            std::cout << "plurigenera:";
            for (const auto& [m, v] : inv.p_m) std::cout << " p_" << m << " = " << v << ",";
            std::cout << "\n";
        } else {
            std::cout << "plurigenera: not computed (canonical class is not an integral "
                         "pullback)\n";
        }
        if (spec.blowups == 0) {
            auto verdict = canonical_test(spec);
            std::cout << "canonical pattern: " << (verdict.is_canonical_pattern ? "yes" : "no")
                      << " (" << verdict.diagnostics << ")\n";
        }
        if (!inv.support_generates)
            std::cout << "warning: branch characters do not generate the group; the cover "
                         "may be disconnected\n";
    }
    return 0;
}

int cmd_arrangement(const std::string& path, bool as_json, RunReport& rep) {
    json j = load_json_file(path);
    LineArrangement arr = arrangement_from_json(j.contains("arrangement") ? j["arrangement"] : j);
    auto mps = multiple_points(arr);
    int maxmult = 1;
    for (const auto& mp : mps) maxmult = std::max(maxmult, mp.multiplicity);

    json points = json::array();
    for (const auto& mp : mps)
        points.push_back(json{{"point", point_to_json(mp.point)},
                              {"multiplicity", mp.multiplicity},
                              {"incident", mp.incident}});
    json result;
    result["lines"] = arr.lines.size();
    result["points"] = std::move(points);
    result["max_multiplicity"] = maxmult;
    result["admissible_degree16"] = (maxmult <= 3);

    // With characters assigned the blown-up cover is analyzed too.
    const json* src = j.contains("arrangement") ? &j["arrangement"] : &j;
    bool has_chars = j.contains("group") && src->contains("alphas");
    if (has_chars) {
        GroupType G = group_from_json(j["group"]);
        std::vector<GroupElement> alphas;
        for (const auto& a : (*src)["alphas"]) alphas.push_back(element_from_json(a));
        CoverSpec spec = realized_cover(G, arr, alphas);
        auto inv = invariants(spec);
        json exc = json::array();
        for (const auto& mp : mps) {
            if (mp.multiplicity < 3) continue;
            GroupElement gamma = exceptional_characters(G, alphas, mp);
            exc.push_back(json{{"point", point_to_json(mp.point)},
                               {"alpha", element_to_json(gamma)},
                               {"branched", !is_identity(gamma)}});
        }
        result["exceptional"] = std::move(exc);
        result["k_class"] = divisor_class_to_json(inv.k_class);
        result["k2"] = rat_to_json(inv.k_selfint);
    }
    rep.result = std::move(result);

    if (!as_json) {
        std::cout << arr.lines.size() << " lines, " << mps.size()
                  << " multiple points, max multiplicity " << maxmult << "\n";
        for (const auto& mp : mps) {
            std::cout << "  (" << rational_to_string(mp.point[0]) << " : "
                      << rational_to_string(mp.point[1]) << " : "
                      << rational_to_string(mp.point[2]) << ")  mult " << mp.multiplicity
                      << "  lines";
            for (int idx : mp.incident) std::cout << " " << idx;
            std::cout << "\n";
        }
        std::cout << "degree-16 admissible (at most triple points): "
                  << (maxmult <= 3 ? "yes" : "no") << "\n";
        if (has_chars) {
            std::cout << "blown-up cover: K_class = {h: "
                      << rational_to_string(rat_from_json(rep.result["k_class"]["h"]))
                      << "}, K^2 = " << rep.result["k2"].dump() << "\n";
        }
    }
    return 0;
}

int cmd_verify(const std::vector<std::string>& only, int jobs, bool as_json, RunReport& rep) {
    Verification verification(jobs);
    auto results = verification.run(only);
    if (results.empty()) throw usage_error("no matching claims");
    bool all_pass = true;
    json claims = json::array();
    for (const auto& r : results) {
        all_pass &= r.pass;
        claims.push_back(json{{"id", r.id}, {"title", r.title}, {"pass", r.pass},
                              {"detail", r.detail}});
        if (!as_json)
            std::printf("[%s] %-45s %s\n", r.pass ? "PASS" : "FAIL", r.title.c_str(),
                        r.detail.c_str());
    }
    rep.result = json{{"claims", std::move(claims)}, {"all_pass", all_pass}};
    if (!as_json)
        std::cout << (all_pass ? "all claims pass" : "FAILURES present") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification and invariants of abelian covers of the plane whose "
                 "covering map is the canonical map"};
    app.require_subcommand(1);

    long long order = 0, from = 0, to = 0;
    int jobs = 1;
    bool as_json = false, dedup_flag = false, require_generating = false;
    std::string group_flag, file_path;
    std::vector<std::string> only;

    auto* groups_cmd = app.add_subcommand("groups", "enumerate abelian groups of an order");
    groups_cmd->add_option("order", order, "group order")->required();
    groups_cmd->add_flag("--json", as_json, "emit the JSON report");

    auto* solve_cmd = app.add_subcommand("solve", "classify one canonical degree");
    solve_cmd->add_option("order", order, "cover degree")->required();
    solve_cmd->add_option("--group", group_flag, "restrict to one group, e.g. 2,2,4");
    solve_cmd->add_flag("--dedup", dedup_flag, "identify solutions under automorphisms");
    solve_cmd->add_flag("--require-generating", require_generating,
                        "drop solutions whose branch characters do not generate the group");
    solve_cmd->add_option("--jobs", jobs, "parallel search cells");
    solve_cmd->add_flag("--json", as_json, "emit the JSON report");

    auto* sweep_cmd = app.add_subcommand("sweep", "classify a range of degrees");
    sweep_cmd->add_option("from", from, "first degree")->required();
    sweep_cmd->add_option("to", to, "last degree")->required();
    sweep_cmd->add_option("--jobs", jobs, "parallel search cells");
    sweep_cmd->add_flag("--json", as_json, "emit the JSON report");

    auto* inv_cmd = app.add_subcommand("invariants", "invariants of a cover spec file");
    inv_cmd->add_option("file", file_path, "cover spec JSON")->required();
    inv_cmd->add_flag("--json", as_json, "emit the JSON report");

    auto* arr_cmd = app.add_subcommand("arrangement", "analyze a line arrangement file");
    arr_cmd->add_option("file", file_path, "arrangement JSON")->required();
    arr_cmd->add_flag("--json", as_json, "emit the JSON report");

    auto* verify_cmd =
        app.add_subcommand("verify-paper", "re-derive every published claim in scope");
    verify_cmd->add_option("--only", only, "run only the named claims");
    verify_cmd->add_option("--jobs", jobs, "parallel search cells");
    verify_cmd->add_flag("--json", as_json, "emit the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunReport rep;
    rep.command = join_args(argc, argv);
    auto started = std::chrono::steady_clock::now();
    int status = 0;
    try {
        if (groups_cmd->parsed()) {
            if (order < 1) throw usage_error("order must be >= 1");
            status = cmd_groups(order, as_json, rep);
        } else if (solve_cmd->parsed()) {
            status = cmd_solve(order, group_flag, dedup_flag, require_generating, jobs,
                               as_json, rep);
        } else if (sweep_cmd->parsed()) {
            status = cmd_sweep(from, to, jobs, as_json, rep);
        } else if (inv_cmd->parsed()) {
            status = cmd_invariants(file_path, as_json, rep);
        } else if (arr_cmd->parsed()) {
            status = cmd_arrangement(file_path, as_json, rep);
        } else if (verify_cmd->parsed()) {
            status = cmd_verify(only, jobs, as_json, rep);
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const search_cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    rep.status = status;
    emit(rep, as_json);
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    std::cerr << "elapsed: " << elapsed.count() << " s\n";
    return status;
}
