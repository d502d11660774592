// groups.hpp -- finite abelian groups in invariant-factor form, element
// arithmetic, enumeration of all abelian groups of a given order, and the
// automorphism group of an elementary abelian group.
#pragma once

#include "abcover/base.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace abcover {

// Invariant factors n_1 | n_2 | ... | n_k, each >= 2. The empty list is the
// trivial group. This form is canonical: equal factor lists <=> isomorphic.
struct GroupType {
    std::vector<int> factors;

    GroupType() = default;
    explicit GroupType(std::vector<int> f) : factors(std::move(f)) { validate(); }

    void validate() const {
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i] < 2) throw usage_error("invariant factor must be >= 2");
            if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0)
                throw usage_error("invariant factors must form a divisibility chain");
        }
    }

    int rank() const { return static_cast<int>(factors.size()); }

    long long order() const {
        long long n = 1;
        for (int f : factors) n *= f;
        return n;
    }

    bool operator==(const GroupType& o) const { return factors == o.factors; }
    bool operator!=(const GroupType& o) const { return factors != o.factors; }
    bool operator<(const GroupType& o) const {
        if (factors.size() != o.factors.size()) return factors.size() < o.factors.size();
        return factors < o.factors;
    }
};

// Residue vector (g_1,...,g_k), 0 <= g_i < n_i.
using GroupElement = std::vector<int>;

inline void check_element(const GroupType& G, const GroupElement& g) {
    if (static_cast<int>(g.size()) != G.rank())
        throw usage_error("element does not belong to this group (rank mismatch)");
    for (int i = 0; i < G.rank(); ++i)
        if (g[i] < 0 || g[i] >= G.factors[i])
            throw usage_error("element residue out of range");
}

inline GroupElement identity(const GroupType& G) {
    return GroupElement(G.rank(), 0);
}

inline bool is_identity(const GroupElement& g) {
    return std::all_of(g.begin(), g.end(), [](int v) { return v == 0; });
}

inline GroupElement add(const GroupType& G, const GroupElement& a, const GroupElement& b) {
    check_element(G, a);
    check_element(G, b);
    GroupElement r(G.rank());
    for (int i = 0; i < G.rank(); ++i) r[i] = (a[i] + b[i]) % G.factors[i];
    return r;
}

inline GroupElement neg(const GroupType& G, const GroupElement& a) {
    check_element(G, a);
    GroupElement r(G.rank());
    for (int i = 0; i < G.rank(); ++i) r[i] = (G.factors[i] - a[i]) % G.factors[i];
    return r;
}

inline GroupElement scalar_mul(const GroupType& G, long long c, const GroupElement& a) {
    check_element(G, a);
    GroupElement r(G.rank());
    for (int i = 0; i < G.rank(); ++i) {
        long long v = (c % G.factors[i]) * a[i] % G.factors[i];
        if (v < 0) v += G.factors[i];
        r[i] = static_cast<int>(v);
    }
    return r;
}

// All |G| elements in lexicographic order of residue vectors; identity first.
inline std::vector<GroupElement> elements(const GroupType& G) {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(G.order()));
    GroupElement cur(G.rank(), 0);
    while (true) {
        out.push_back(cur);
        int i = G.rank() - 1;
        while (i >= 0) {
            if (++cur[i] < G.factors[i]) break;
            cur[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

// Mixed-radix index of g in the elements(G) order.
inline long long element_index(const GroupType& G, const GroupElement& g) {
    check_element(G, g);
    long long idx = 0;
    for (int i = 0; i < G.rank(); ++i) idx = idx * G.factors[i] + g[i];
    return idx;
}

namespace detail {
inline void chains_from_top(long long m, long long cap, std::vector<int>& acc,
                            std::vector<std::vector<int>>& out) {
    if (m == 1) {
        std::vector<int> chain(acc.rbegin(), acc.rend());
        out.push_back(std::move(chain));
        return;
    }
    for (long long e = 2; e <= m; ++e) {
        if (m % e != 0 || cap % e != 0) continue;
        acc.push_back(static_cast<int>(e));
        chains_from_top(m / e, e, acc, out);
        acc.pop_back();
    }
}
}  // namespace detail

// Every isomorphism class of abelian group of the given order, exactly once,
// sorted by factor-list length then lexicographically.
inline std::vector<GroupType> enumerate_groups(long long order) {
    if (order < 1) throw usage_error("order must be >= 1");
    std::vector<std::vector<int>> lists;
    if (order == 1) {
        lists.push_back({});
    } else {
        std::vector<int> acc;
        detail::chains_from_top(order, order, acc, lists);
    }
    std::sort(lists.begin(), lists.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<GroupType> out;
    out.reserve(lists.size());
    for (auto& l : lists) out.push_back(GroupType(std::move(l)));
    return out;
}

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Elementary abelian = all invariant factors equal to one prime p.
inline bool is_elementary_abelian(const GroupType& G) {
    if (G.rank() == 0) return false;
    int p = G.factors[0];
    if (!is_prime(p)) return false;
    return std::all_of(G.factors.begin(), G.factors.end(), [p](int f) { return f == p; });
}

// Invertible k x k matrix over Z/p acting on residue vectors.
struct GroupAutomorphism {
    std::vector<std::vector<int>> m;  // m[i][j], row i = image coordinates

    bool operator==(const GroupAutomorphism& o) const { return m == o.m; }
    bool operator<(const GroupAutomorphism& o) const { return m < o.m; }
};

inline GroupElement apply(const GroupType& G, const GroupAutomorphism& A, const GroupElement& v) {
    check_element(G, v);
    int k = G.rank();
    GroupElement r(k, 0);
    for (int i = 0; i < k; ++i) {
        long long s = 0;
        for (int j = 0; j < k; ++j) s += static_cast<long long>(A.m[i][j]) * v[j];
        r[i] = static_cast<int>(s % G.factors[i]);
    }
    return r;
}

inline GroupAutomorphism compose(const GroupType& G, const GroupAutomorphism& A,
                                 const GroupAutomorphism& B) {
    int k = G.rank();
    int p = G.factors.empty() ? 2 : G.factors[0];
    GroupAutomorphism C;
    C.m.assign(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            long long s = 0;
            for (int l = 0; l < k; ++l) s += static_cast<long long>(A.m[i][l]) * B.m[l][j];
            C.m[i][j] = static_cast<int>(s % p);
        }
    return C;
}

namespace detail {

inline int inv_mod(int a, int p) {
    a %= p;
    if (a < 0) a += p;
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw usage_error("element not invertible mod p");
}

// Gauss-Jordan inverse over Z/p; throws if singular.
inline std::vector<std::vector<int>> mat_inverse_modp(std::vector<std::vector<int>> a, int p) {
    int k = static_cast<int>(a.size());
    std::vector<std::vector<int>> inv(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i) inv[i][i] = 1;
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int r = col; r < k; ++r)
            if (a[r][col] % p != 0) { piv = r; break; }
        if (piv < 0) throw usage_error("matrix not invertible mod p");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        int f = inv_mod(a[col][col], p);
        for (int j = 0; j < k; ++j) {
            a[col][j] = a[col][j] * f % p;
            inv[col][j] = inv[col][j] * f % p;
        }
        for (int r = 0; r < k; ++r) {
            if (r == col || a[r][col] % p == 0) continue;
            int g = a[r][col] % p;
            for (int j = 0; j < k; ++j) {
                a[r][j] = ((a[r][j] - g * a[col][j]) % p + p) % p;
                inv[r][j] = ((inv[r][j] - g * inv[col][j]) % p + p) % p;
            }
        }
    }
    return inv;
}

inline void gl_rows(int k, int p, std::vector<std::vector<int>>& rows,
                    std::vector<GroupElement>& span, std::vector<GroupAutomorphism>& out) {
    if (static_cast<int>(rows.size()) == k) {
        out.push_back(GroupAutomorphism{rows});
        return;
    }
    std::set<GroupElement> span_set(span.begin(), span.end());
    GroupElement cand(k, 0);
    while (true) {
        if (!span_set.count(cand)) {
            rows.push_back(cand);
            std::vector<GroupElement> next_span = span;
            for (const auto& s : span)
                for (int c = 1; c < p; ++c) {
                    GroupElement t(k);
                    for (int j = 0; j < k; ++j) t[j] = (s[j] + c * cand[j]) % p;
                    next_span.push_back(t);
                }
            std::swap(span, next_span);
            gl_rows(k, p, rows, span, out);
            std::swap(span, next_span);
            rows.pop_back();
        }
        int i = k - 1;
        while (i >= 0) {
            if (++cand[i] < p) break;
            cand[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
}

}  // namespace detail

// Full automorphism group of an elementary abelian group, i.e. GL(k, F_p),
// generated row by row (each row outside the span of the previous ones).
// Count is prod_{i<k} (p^k - p^i). Non-elementary groups are unsupported.
inline std::vector<GroupAutomorphism> automorphisms(const GroupType& G) {
    if (!is_elementary_abelian(G))
        throw usage_error("unsupported group for automorphism enumeration "
                          "(only elementary abelian groups)");
    int k = G.rank();
    int p = G.factors[0];
    std::vector<GroupAutomorphism> out;
    std::vector<std::vector<int>> rows;
    std::vector<GroupElement> span{GroupElement(k, 0)};
    detail::gl_rows(k, p, rows, span, out);
    return out;
}

inline GroupAutomorphism inverse(const GroupType& G, const GroupAutomorphism& A) {
    return GroupAutomorphism{detail::mat_inverse_modp(A.m, G.factors[0])};
}

// (A^T)^{-1}: the action on the distinguished element dual to alpha |-> A(alpha),
// chosen so that sums g_i alpha_i / n_i are preserved.
inline GroupAutomorphism dual(const GroupType& G, const GroupAutomorphism& A) {
    int k = G.rank();
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) t[i][j] = A.m[j][i];
    return GroupAutomorphism{detail::mat_inverse_modp(std::move(t), G.factors[0])};
}

// Subgroup generated by a set of elements (closure under addition).
inline std::set<GroupElement> subgroup_generated(const GroupType& G,
                                                 const std::vector<GroupElement>& gens) {
    std::set<GroupElement> sub{identity(G)};
    std::vector<GroupElement> frontier{identity(G)};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& s : frontier)
            for (const auto& g : gens) {
                GroupElement t = add(G, s, g);
                if (sub.insert(t).second) next.push_back(t);
            }
        frontier = std::move(next);
    }
    return sub;
}

inline bool generates(const GroupType& G, const std::vector<GroupElement>& gens) {
    return static_cast<long long>(subgroup_generated(G, gens).size()) == G.order();
}

}  // namespace abcover
