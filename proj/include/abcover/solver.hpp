// solver.hpp -- builds the integer feasibility system for a target summand
// pattern (one summand of degree 4, all others degree 2), enumerates ALL of
// its nonnegative integer solutions by depth-first search with residual
// pruning, classifies whole orders, and deduplicates solutions under group
// automorphisms.
#pragma once

#include "abcover/cover.hpp"
#include "abcover/groups.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

namespace abcover {

// The target pattern: l_identity = 0, l_{g'} = 4, l_g = 2 otherwise.
struct TargetPattern {
    GroupElement gprime;
};

struct FeasibilitySystem {
    GroupType group;
    GroupElement gprime;
    std::vector<GroupElement> vars;           // nonzero elements, canonical order
    std::vector<std::vector<long long>> rows; // nonnegative coefficients
    std::vector<long long> rhs;               // nonnegative right-hand sides
    // Rows 0..|G|-2 are the degree equations for the nonzero g in vars order
    // (the rows for g = e_i are trivially 0 = 0 and retained); the last k
    // rows are the divisibility equations n_i l_{e_i} = sum alpha_i x_alpha.
};

// Degrees l_{e_i} and l_g prescribed by the pattern.
inline long long pattern_degree(const TargetPattern& p, const GroupElement& g) {
    return g == p.gprime ? 4 : 2;
}

// Returns nothing when some right-hand side is negative: a nonnegative
// combination cannot reach it, so the cell is infeasible outright.
inline std::optional<FeasibilitySystem> build_system(const GroupType& G,
                                                     const TargetPattern& pattern) {
    check_element(G, pattern.gprime);
    if (is_identity(pattern.gprime)) throw usage_error("distinguished element must be nonzero");
    int k = G.rank();

    FeasibilitySystem sys;
    sys.group = G;
    sys.gprime = pattern.gprime;
    for (const auto& g : elements(G))
        if (!is_identity(g)) sys.vars.push_back(g);

    std::vector<long long> l_basis(k);
    for (int i = 0; i < k; ++i) {
        GroupElement ei(k, 0);
        ei[i] = 1;
        l_basis[i] = pattern_degree(pattern, ei);
    }

    for (const auto& g : sys.vars) {
        std::vector<long long> row;
        row.reserve(sys.vars.size());
        for (const auto& a : sys.vars) row.push_back(c_coeff(G, g, a));
        long long b = -pattern_degree(pattern, g);
        for (int i = 0; i < k; ++i) b += static_cast<long long>(g[i]) * l_basis[i];
        if (b < 0) return std::nullopt;
        sys.rows.push_back(std::move(row));
        sys.rhs.push_back(b);
    }
    for (int i = 0; i < k; ++i) {
        std::vector<long long> row;
        row.reserve(sys.vars.size());
        for (const auto& a : sys.vars) row.push_back(a[i]);
        sys.rows.push_back(std::move(row));
        sys.rhs.push_back(G.factors[i] * l_basis[i]);
    }
    return sys;
}

struct SearchOptions {
    long long node_cap = 1'000'000'000;  // hard error when exceeded
    bool prune = true;                   // test hook; disabling keeps only box bounds
};

struct SearchStats {
    long long nodes = 0;
};

namespace detail {

struct DfsState {
    const FeasibilitySystem* sys;
    SearchOptions opts;
    SearchStats* stats;
    std::vector<int> order;                     // variable assignment order
    std::vector<std::vector<std::pair<int, long long>>> cols;  // per var: (row, coeff > 0)
    std::vector<long long> residual;
    std::vector<int> support;                   // unassigned vars with positive coeff per row
    std::vector<long long> box;                 // static per-variable bounds
    std::vector<long long> value;
    std::vector<std::vector<long long>>* out;
};

inline void dfs(DfsState& st, std::size_t pos) {
    if (pos == st.order.size()) {
        for (long long r : st.residual)
            if (r != 0) return;
        st.out->push_back(st.value);
        return;
    }
    int v = st.order[pos];
    long long ub;
    if (st.opts.prune) {
        ub = st.box[v];
        for (const auto& [r, c] : st.cols[v]) ub = std::min(ub, st.residual[r] / c);
    } else {
        ub = st.box[v];
    }
    for (long long x = 0; x <= ub; ++x) {
        if (++st.stats->nodes > st.opts.node_cap)
            throw search_cap_error("search node cap exceeded; enumeration incomplete");
        bool dead = false;
        st.value[v] = x;
        for (const auto& [r, c] : st.cols[v]) {
            st.residual[r] -= c * x;
            --st.support[r];
            if (st.opts.prune && st.support[r] == 0 && st.residual[r] != 0) dead = true;
            if (!st.opts.prune && st.residual[r] < 0) dead = true;
        }
        if (!dead) dfs(st, pos + 1);
        for (const auto& [r, c] : st.cols[v]) {
            st.residual[r] += c * x;
            ++st.support[r];
        }
    }
    st.value[v] = 0;
}

}  // namespace detail

// Every nonnegative integer solution, in lexicographic order of the value
// vector over the canonical variable order. Variables are assigned most
// constrained first (descending count of rows with a positive coefficient,
// ties by canonical order); each row keeps a running residual, a variable is
// bounded by the least residual/coefficient over its rows, and a row whose
// support is exhausted with a nonzero residual prunes the branch.
inline std::vector<BranchData> enumerate_solutions(const FeasibilitySystem& sys,
                                                   const SearchOptions& opts = {},
                                                   SearchStats* stats = nullptr) {
    std::size_t nvars = sys.vars.size();
    SearchStats local;
    detail::DfsState st;
    st.sys = &sys;
    st.opts = opts;
    st.stats = stats ? stats : &local;
    st.cols.resize(nvars);
    st.residual = sys.rhs;
    st.support.assign(sys.rows.size(), 0);
    st.box.assign(nvars, 0);
    st.value.assign(nvars, 0);

    std::vector<int> row_count(nvars, 0);
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        for (std::size_t v = 0; v < nvars; ++v)
            if (sys.rows[r][v] > 0) {
                st.cols[v].push_back({static_cast<int>(r), sys.rows[r][v]});
                ++st.support[r];
                ++row_count[v];
            }
    for (std::size_t v = 0; v < nvars; ++v) {
        // Every variable has a positive coefficient in at least one
        // divisibility row, so the box bound is always finite.
        long long b = std::numeric_limits<long long>::max();
        for (const auto& [r, c] : st.cols[v]) b = std::min(b, sys.rhs[r] / c);
        st.box[v] = b;
    }
    st.order.resize(nvars);
    for (std::size_t v = 0; v < nvars; ++v) st.order[v] = static_cast<int>(v);
    std::stable_sort(st.order.begin(), st.order.end(),
                     [&](int a, int b) { return row_count[a] > row_count[b]; });

    std::vector<std::vector<long long>> raw;
    st.out = &raw;
    detail::dfs(st, 0);
    std::sort(raw.begin(), raw.end());

    std::vector<BranchData> out;
    out.reserve(raw.size());
    for (const auto& vals : raw) {
        BranchData x;
        for (std::size_t v = 0; v < nvars; ++v)
            if (vals[v] != 0) x[sys.vars[v]] = vals[v];
        out.push_back(std::move(x));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classification of one order: every group, every nonzero distinguished
// element, every solution, each re-verified through the summand table and
// the canonical pattern test before inclusion.

struct SolutionRecord {
    GroupType group;
    GroupElement gprime;
    BranchData x;
    std::optional<int> orbit_id;
    bool support_generates = true;
};

inline bool record_less(const SolutionRecord& a, const SolutionRecord& b) {
    if (a.group != b.group) return a.group < b.group;
    if (a.gprime != b.gprime) return a.gprime < b.gprime;
    return a.x < b.x;
}

inline void verify_record(const SolutionRecord& rec) {
    CoverSpec spec = plane_cover(rec.group, rec.x);
    LTable table = l_table(spec);
    TargetPattern pattern{rec.gprime};
    for (const auto& g : elements(rec.group)) {
        long long expect = is_identity(g) ? 0 : pattern_degree(pattern, g);
        if (table.degree(g) != expect)
            throw validation_error("solver emitted a solution that fails the summand table");
    }
    if (!canonical_test(spec).is_canonical_pattern)
        throw validation_error("solver emitted a solution that fails the canonical test");
}

struct DedupResult {
    bool supported = false;
    int orbit_count = 0;
};

// Orbit partition under the automorphism group: A sends branch indices by
// alpha |-> A(alpha) and the distinguished element by the dual action, so
// every automorphism maps solutions to solutions. Representatives are the
// lexicographic minima; orbit ids follow the sorted representatives.
// Only elementary abelian groups are supported; otherwise records are
// returned untouched and flagged.
inline DedupResult dedup(const GroupType& G, std::vector<SolutionRecord>& records) {
    DedupResult res;
    if (!is_elementary_abelian(G)) {
        for (auto& r : records) r.orbit_id.reset();
        res.supported = false;
        res.orbit_count = 0;
        return res;
    }
    res.supported = true;
    if (records.empty()) return res;

    std::sort(records.begin(), records.end(), record_less);
    std::map<std::pair<GroupElement, BranchData>, int> index;
    for (std::size_t i = 0; i < records.size(); ++i)
        index[{records[i].gprime, records[i].x}] = static_cast<int>(i);

    std::vector<int> parent(records.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };

    for (const auto& A : automorphisms(G)) {
        GroupAutomorphism Ad = dual(G, A);
        for (std::size_t i = 0; i < records.size(); ++i) {
            BranchData y;
            for (const auto& [alpha, v] : records[i].x) y[apply(G, A, alpha)] = v;
            auto it = index.find({apply(G, Ad, records[i].gprime), y});
            if (it == index.end()) continue;  // image outside the given subset
            int a = find(static_cast<int>(i)), b = find(it->second);
            if (a != b) parent[a] = b;
        }
    }

    std::map<int, int> root_to_orbit;  // roots in record order = sorted reps
    for (std::size_t i = 0; i < records.size(); ++i) {
        int root = find(static_cast<int>(i));
        auto [it, fresh] = root_to_orbit.try_emplace(root, -1);
        if (fresh) it->second = res.orbit_count++;
        records[i].orbit_id = it->second;
    }
    return res;
}

struct ClassifyOptions {
    SearchOptions search;
    bool apply_dedup = false;
    bool require_generating = false;  // drop solutions whose support does not generate
    int jobs = 1;
};

struct GroupClassification {
    GroupType group;
    std::vector<SolutionRecord> records;  // sorted by (gprime, x)
    bool dedup_supported = false;
    int orbit_count = 0;       // meaningful only when dedup was applied and supported
    long long raw_count = 0;   // before the generating-set filter
    long long generating_count = 0;
    long long nodes = 0;       // search nodes over all cells of this group
};

namespace detail {

struct Cell {
    GroupType group;
    GroupElement gprime;
};

struct CellResult {
    std::vector<SolutionRecord> records;
    long long nodes = 0;
    double seconds = 0;
};

inline CellResult run_cell(const Cell& cell, const SearchOptions& opts) {
    CellResult res;
    auto started = std::chrono::steady_clock::now();
    auto sys = build_system(cell.group, TargetPattern{cell.gprime});
    if (!sys) return res;
    SearchStats stats;
    for (auto& x : enumerate_solutions(*sys, opts, &stats)) {
        SolutionRecord rec;
        rec.group = cell.group;
        rec.gprime = cell.gprime;
        rec.x = std::move(x);
        std::vector<GroupElement> support;
        for (const auto& [a, v] : rec.x) support.push_back(a);
        rec.support_generates = generates(cell.group, support);
        verify_record(rec);
        res.records.push_back(std::move(rec));
    }
    res.nodes = stats.nodes;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return res;
}

// Cells are independent pure searches; results land in per-cell slots and are
// merged in cell order, so the outcome does not depend on scheduling.
inline std::vector<CellResult> run_cells(const std::vector<Cell>& cells,
                                         const SearchOptions& opts, int jobs) {
    std::vector<CellResult> results(cells.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) results[i] = run_cell(cells[i], opts);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                results[i] = run_cell(cells[i], opts);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(jobs, static_cast<int>(cells.size()));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace detail

inline std::vector<GroupClassification> classify_order(long long order,
                                                       const ClassifyOptions& opts = {}) {
    if (order < 2) throw usage_error("classification needs order >= 2");
    std::vector<GroupClassification> out;
    std::vector<detail::Cell> cells;
    std::vector<std::size_t> group_of_cell;
    auto groups = enumerate_groups(order);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        out.push_back({groups[gi], {}, false, 0, 0, 0, 0});
        for (const auto& g : elements(groups[gi]))
            if (!is_identity(g)) {
                cells.push_back({groups[gi], g});
                group_of_cell.push_back(gi);
            }
    }
    auto results = detail::run_cells(cells, opts.search, opts.jobs);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& gc = out[group_of_cell[i]];
        gc.nodes += results[i].nodes;
        for (auto& rec : results[i].records) gc.records.push_back(std::move(rec));
    }
    for (auto& gc : out) {
        std::sort(gc.records.begin(), gc.records.end(), record_less);
        gc.raw_count = static_cast<long long>(gc.records.size());
        gc.generating_count = static_cast<long long>(
            std::count_if(gc.records.begin(), gc.records.end(),
                          [](const SolutionRecord& r) { return r.support_generates; }));
        if (opts.require_generating) {
            std::erase_if(gc.records,
                          [](const SolutionRecord& r) { return !r.support_generates; });
        }
        if (opts.apply_dedup) {
            DedupResult d = dedup(gc.group, gc.records);
            gc.dedup_supported = d.supported;
            gc.orbit_count = d.orbit_count;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classification sweep over a range of orders.

struct OrderSummary {
    long long order = 0;
    bool solvable = false;
    long long raw_count = 0;
    long long generating_count = 0;
    long long nodes = 0;
    double search_seconds = 0;  // summed over the order's cells; not serialized
    std::vector<GroupClassification> groups;
};

struct SweepReport {
    long long from = 0, to = 0;
    std::vector<OrderSummary> orders;
    std::vector<long long> solvable_orders;
};

inline SweepReport sweep(long long from, long long to, const ClassifyOptions& opts = {}) {
    if (from < 2 || from > to) throw usage_error("sweep range must satisfy 2 <= from <= to");
    SweepReport report;
    report.from = from;
    report.to = to;

    // Flatten every (order, group, g') cell of the range into one task list so
    // a single worker pool covers the whole sweep.
    std::vector<detail::Cell> cells;
    std::vector<std::pair<std::size_t, std::size_t>> slot;  // (order idx, group idx)
    for (long long d = from; d <= to; ++d) {
        OrderSummary os;
        os.order = d;
        auto groups = enumerate_groups(d);
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            os.groups.push_back({groups[gi], {}, false, 0, 0, 0, 0});
            for (const auto& g : elements(groups[gi]))
                if (!is_identity(g)) {
                    cells.push_back({groups[gi], g});
                    slot.push_back({report.orders.size(), gi});
                }
        }
        report.orders.push_back(std::move(os));
    }
    auto results = detail::run_cells(cells, opts.search, opts.jobs);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& gc = report.orders[slot[i].first].groups[slot[i].second];
        gc.nodes += results[i].nodes;
        report.orders[slot[i].first].search_seconds += results[i].seconds;
        for (auto& rec : results[i].records) gc.records.push_back(std::move(rec));
    }
    for (auto& os : report.orders) {
        for (auto& gc : os.groups) {
            std::sort(gc.records.begin(), gc.records.end(), record_less);
            gc.raw_count = static_cast<long long>(gc.records.size());
            gc.generating_count = static_cast<long long>(
                std::count_if(gc.records.begin(), gc.records.end(),
                              [](const SolutionRecord& r) { return r.support_generates; }));
            if (opts.require_generating)
                std::erase_if(gc.records,
                              [](const SolutionRecord& r) { return !r.support_generates; });
            if (opts.apply_dedup) {
                DedupResult d = dedup(gc.group, gc.records);
                gc.dedup_supported = d.supported;
                gc.orbit_count = d.orbit_count;
            }
            os.raw_count += gc.raw_count;
            os.generating_count += gc.generating_count;
            os.nodes += gc.nodes;
            if (!gc.records.empty()) os.solvable = true;
        }
        if (os.solvable) report.solvable_orders.push_back(os.order);
    }
    return report;
}

}  // namespace abcover
