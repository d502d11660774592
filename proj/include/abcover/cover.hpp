// cover.hpp -- the abelian-cover calculus: branch data, the degree/class
// table of the pushforward summands, ramification indices, cohomology of
// pulled-back bundles, surface invariants, and the canonical-map pattern
// test. Covers live over the plane or over a blow-up of the plane along the
// multiple points of an explicit line arrangement.
#pragma once

#include "abcover/base.hpp"
#include "abcover/geometry.hpp"
#include "abcover/groups.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace abcover {

// Degree x_alpha of the reduced branch curve carrying character alpha.
// Absent keys mean zero; the identity never appears as a key.
using BranchData = std::map<GroupElement, long long>;

struct BranchComponent {
    DivisorClass cls;
    GroupElement alpha;
};

struct CoverSpec {
    GroupType group;
    int blowups = 0;                        // number of exceptional classes (0 = plane)
    std::vector<BranchComponent> components;
    std::vector<ProjPoint> points;          // blown-up points when geometrically realized
    std::optional<LineArrangement> arrangement;
    std::optional<int> canonical_degree_claim;  // informational, checked against |G|

    bool realized() const {
        return blowups == 0 || static_cast<int>(points.size()) == blowups;
    }
};

inline void validate_spec(const CoverSpec& spec) {
    spec.group.validate();
    for (const auto& c : spec.components) {
        check_element(spec.group, c.alpha);
        if (is_identity(c.alpha))
            throw validation_error("branch component with trivial character");
        if (c.cls.blowups() != spec.blowups)
            throw usage_error("component class has the wrong number of exceptional entries");
        if (!is_integer(c.cls.h) || c.cls.h < 0)
            throw validation_error("component degree must be a nonnegative integer");
    }
}

inline CoverSpec plane_cover(const GroupType& group, std::vector<BranchComponent> components) {
    CoverSpec spec;
    spec.group = group;
    spec.components = std::move(components);
    validate_spec(spec);
    return spec;
}

inline CoverSpec plane_cover(const GroupType& group, const BranchData& x) {
    std::vector<BranchComponent> components;
    for (const auto& [alpha, deg] : x) {
        if (deg < 0) throw validation_error("branch degree must be nonnegative");
        if (deg == 0) continue;
        components.push_back({DivisorClass(Rat(deg)), alpha});
    }
    return plane_cover(group, std::move(components));
}

// Total branch degree per character.
inline BranchData branch_data(const CoverSpec& spec) {
    BranchData x;
    for (const auto& c : spec.components) {
        Int d = boost::multiprecision::numerator(c.cls.h);
        if (d != 0) x[c.alpha] += static_cast<long long>(d);
    }
    return x;
}

// ---------------------------------------------------------------------------
// The floor coefficient [ sum_i g_i alpha_i / n_i ], taken of the whole sum.

inline long long c_coeff(const GroupType& G, const GroupElement& g, const GroupElement& alpha) {
    check_element(G, g);
    check_element(G, alpha);
    long long lcm = 1;
    for (int n : G.factors) lcm = std::lcm(lcm, static_cast<long long>(n));
    long long num = 0;
    for (int i = 0; i < G.rank(); ++i)
        num += static_cast<long long>(g[i]) * alpha[i] * (lcm / G.factors[i]);
    return num / lcm;  // all terms nonnegative
}

// ---------------------------------------------------------------------------
// The table of classes L_g indexed by group elements: the pushforward of the
// structure sheaf is the direct sum of O(-L_g).

struct LTable {
    GroupType group;
    std::vector<GroupElement> elems;   // canonical element order
    std::vector<DivisorClass> cls;

    const DivisorClass& at(const GroupElement& g) const {
        return cls[static_cast<std::size_t>(element_index(group, g))];
    }

    // Degree on the base, as an exact integer.
    long long degree(const GroupElement& g) const {
        const Rat& h = at(g).h;
        if (!is_integer(h)) throw validation_error("non-integral summand degree");
        return static_cast<long long>(boost::multiprecision::numerator(h));
    }
};

inline LTable l_table(const CoverSpec& spec) {
    validate_spec(spec);
    const GroupType& G = spec.group;
    int k = G.rank();
    int t = spec.blowups;

    // L_{e_i} = (sum_alpha alpha_i * cls(alpha)) / n_i, which must be integral.
    std::vector<DivisorClass> basis;
    for (int i = 0; i < k; ++i) {
        DivisorClass di(Rat(0), std::vector<Rat>(t, Rat(0)));
        for (const auto& c : spec.components) di = di + Rat(c.alpha[i]) * c.cls;
        DivisorClass li = Rat(1, G.factors[i]) * di;
        if (!li.is_integral()) {
            std::ostringstream msg;
            msg << "branch divisor for factor " << (i + 1) << " is not divisible by "
                << G.factors[i] << " (";
            if (!is_integer(li.h)) {
                msg << "degree " << rational_to_string(di.h);
            } else {
                for (int s = 0; s < t; ++s)
                    if (!is_integer(li.e[s])) { msg << "multiplicity at point " << s; break; }
            }
            msg << ")";
            throw validation_error(msg.str());
        }
        basis.push_back(std::move(li));
    }

    LTable table;
    table.group = G;
    table.elems = elements(G);
    table.cls.reserve(table.elems.size());
    for (const auto& g : table.elems) {
        DivisorClass lg(Rat(0), std::vector<Rat>(t, Rat(0)));
        for (int i = 0; i < k; ++i) lg = lg + Rat(g[i]) * basis[i];
        for (const auto& c : spec.components)
            lg = lg - Rat(c_coeff(G, g, c.alpha)) * c.cls;
        table.cls.push_back(std::move(lg));
    }
    return table;
}

// Multiset { -l_g : g in G } on the plane, sorted ascending.
inline std::vector<long long> pushforward_degrees(const CoverSpec& spec) {
    if (spec.blowups != 0)
        throw usage_error("pushforward degrees are scalar only on the plane; use l_table directly");
    LTable table = l_table(spec);
    std::vector<long long> out;
    out.reserve(table.elems.size());
    for (const auto& g : table.elems) out.push_back(-table.degree(g));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Ramification index along a branch component with character alpha:
// e = |G| / gcd(|G|, |G| alpha_1/n_1, ..., |G| alpha_k/n_k).

inline long long ramification(const GroupType& G, const GroupElement& alpha) {
    check_element(G, alpha);
    if (is_identity(alpha)) throw usage_error("identity is not a branch character");
    long long order = G.order();
    long long d = order;
    for (int i = 0; i < G.rank(); ++i)
        d = std::gcd(d, order / G.factors[i] * alpha[i]);
    return order / d;
}

// ---------------------------------------------------------------------------
// Cohomology of pulled-back bundles: h^i(X, phi^* O(D)) = sum_g h^i(D - L_g).

inline long long hi_cover(const CoverSpec& spec, const DivisorClass& d, int i) {
    if (i < 0 || i > 2) throw usage_error("cohomology degree must be 0, 1 or 2");
    if (d.blowups() != spec.blowups)
        throw usage_error("divisor class lives on the wrong base");
    LTable table = l_table(spec);
    long long total = 0;
    if (spec.blowups == 0) {
        if (!is_integer(d.h)) throw usage_error("non-integral divisor class");
        long long deg = static_cast<long long>(boost::multiprecision::numerator(d.h));
        for (const auto& g : table.elems) {
            long long s = deg - table.degree(g);
            total += (i == 0) ? h0_plane(s) : (i == 1) ? 0 : h2_plane(s);
        }
        return total;
    }
    if (!spec.realized())
        throw usage_error("geometric realization required for cohomology on a blow-up");
    for (std::size_t j = 0; j < table.elems.size(); ++j) {
        DivisorClass c = d - table.cls[j];
        long long v;
        if (i == 0) {
            v = h0_class(c, spec.points);
        } else if (i == 2) {
            v = h2_class(c, spec.points);
        } else {
            Int chi = chi_class(c);
            v = h0_class(c, spec.points) + h2_class(c, spec.points) -
                static_cast<long long>(chi);
            if (v < 0) throw validation_error("negative h1 summand; inconsistent data");
        }
        total += v;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Surface invariants of the cover.

struct Invariants {
    Int chi = 0;
    long long p_g = 0;
    long long q = 0;
    DivisorClass k_class;        // K_base + sum (1 - 1/e) * component class
    Rat k_selfint = 0;           // |G| * k_class^2
    bool k_selfint_integral = true;
    std::map<int, long long> p_m;  // m = 2..5 when computable
    bool p_m_computed = false;
    bool support_generates = true;
};

inline DivisorClass canonical_pullback_class(const CoverSpec& spec) {
    DivisorClass k = canonical_class(spec.blowups);
    for (const auto& c : spec.components) {
        long long e = ramification(spec.group, c.alpha);
        k = k + Rat(e - 1, e) * c.cls;
    }
    return k;
}

inline Invariants invariants(const CoverSpec& spec) {
    validate_spec(spec);
    LTable table = l_table(spec);
    Invariants inv;

    if (spec.blowups == 0) {
        for (const auto& g : table.elems) inv.chi += chi_plane(-table.degree(g));
    } else {
        for (const auto& c : table.cls) inv.chi += chi_class(-c);
    }

    DivisorClass zero(Rat(0), std::vector<Rat>(spec.blowups, Rat(0)));
    inv.p_g = hi_cover(spec, zero, 2);
    inv.q = hi_cover(spec, zero, 1);

    inv.k_class = canonical_pullback_class(spec);
    inv.k_selfint = Rat(spec.group.order()) * intersect(inv.k_class, inv.k_class);
    inv.k_selfint_integral = is_integer(inv.k_selfint);

    // Plurigenera through the pushforward, only when the canonical class
    // pulls back from an integral class (nonnegative degree on the plane).
    if (spec.blowups == 0) {
        Rat kappa = inv.k_class.h;
        if (is_integer(kappa) && kappa >= 0) {
            long long kd = static_cast<long long>(boost::multiprecision::numerator(kappa));
            inv.p_m_computed = true;
            for (int m = 2; m <= 5; ++m) {
                long long pm = 0;
                for (const auto& g : table.elems) pm += h0_plane(m * kd - table.degree(g));
                inv.p_m[m] = pm;
            }
        }
    } else if (inv.k_class.is_integral() && spec.realized()) {
        inv.p_m_computed = true;
        for (int m = 2; m <= 5; ++m) {
            long long pm = 0;
            for (const auto& c : table.cls)
                pm += h0_class(Rat(m) * inv.k_class - c, spec.points);
            inv.p_m[m] = pm;
        }
    }

    std::vector<GroupElement> support;
    for (const auto& c : spec.components)
        if (c.cls.h > 0 || !c.cls.is_zero()) support.push_back(c.alpha);
    inv.support_generates = generates(spec.group, support);
    return inv;
}

// ---------------------------------------------------------------------------
// Canonical-map pattern test on the plane: the pushforward must be
// O + O(-2)^(d-2) + O(-4) and the canonical pullback degree must equal 1.
// Base-point-freeness and minimality are NOT checked.

struct CanonicalVerdict {
    bool is_canonical_pattern = false;
    bool pushforward_ok = false;
    bool pullback_degree_one = false;
    Rat pullback_degree = 0;
    std::vector<long long> pushforward;  // sorted multiset of summand degrees
    std::string diagnostics;
    bool base_point_freeness_checked = false;
    bool minimality_checked = false;
};

inline CanonicalVerdict canonical_test(const CoverSpec& spec) {
    if (spec.blowups != 0) throw usage_error("canonical pattern test requires a plane base");
    CanonicalVerdict v;
    v.pushforward = pushforward_degrees(spec);
    long long d = spec.group.order();

    std::vector<long long> expected;
    expected.push_back(-4);
    for (long long i = 0; i < d - 2; ++i) expected.push_back(-2);
    expected.push_back(0);
    v.pushforward_ok = (v.pushforward == expected);

    v.pullback_degree = canonical_pullback_class(spec).h;
    v.pullback_degree_one = (v.pullback_degree == 1);
    v.is_canonical_pattern = v.pushforward_ok && v.pullback_degree_one;

    std::ostringstream diag;
    if (!v.pushforward_ok) diag << "pushforward is not O + O(-2)^(d-2) + O(-4); ";
    if (!v.pullback_degree_one)
        diag << "canonical pullback degree is " << rational_to_string(v.pullback_degree)
             << ", not 1; ";
    diag << "base point freeness: not checked; minimality: not checked";
    v.diagnostics = diag.str();
    return v;
}

// ---------------------------------------------------------------------------
// Exceptional curves under blow-up: the character of E at a multiple point is
// the sum of the characters of the incident lines; the identity means E is
// not a branch component.

inline GroupElement exceptional_characters(const GroupType& G,
                                           const std::vector<GroupElement>& line_alphas,
                                           const MultiplePoint& point) {
    GroupElement sum = identity(G);
    for (int idx : point.incident) {
        if (idx < 0 || idx >= static_cast<int>(line_alphas.size()))
            throw usage_error("multiple point references a line outside the arrangement");
        sum = add(G, sum, line_alphas[idx]);
    }
    return sum;
}

// Build the cover over the blow-up of an arranged line cover: every multiple
// point of multiplicity >= 3 is blown up, lines become their strict
// transforms, and each exceptional curve with nontrivial character joins the
// branch components.
inline CoverSpec realized_cover(const GroupType& G, const LineArrangement& arr,
                                const std::vector<GroupElement>& alphas) {
    if (alphas.size() != arr.lines.size())
        throw usage_error("one character per line is required");
    for (const auto& a : alphas) {
        check_element(G, a);
        if (is_identity(a)) throw validation_error("line carries the trivial character");
    }
    auto mps = multiple_points(arr);
    std::vector<MultiplePoint> blown;
    for (const auto& mp : mps)
        if (mp.multiplicity >= 3) blown.push_back(mp);
    int t = static_cast<int>(blown.size());

    CoverSpec spec;
    spec.group = G;
    spec.blowups = t;
    spec.arrangement = arr;
    for (const auto& mp : blown) spec.points.push_back(mp.point);

    for (std::size_t i = 0; i < arr.lines.size(); ++i) {
        DivisorClass cls(Rat(1), std::vector<Rat>(t, Rat(0)));
        for (int s = 0; s < t; ++s)
            if (std::find(blown[s].incident.begin(), blown[s].incident.end(),
                          static_cast<int>(i)) != blown[s].incident.end())
                cls.e[s] = 1;
        spec.components.push_back({std::move(cls), alphas[i]});
    }
    for (int s = 0; s < t; ++s) {
        GroupElement gamma = exceptional_characters(G, alphas, blown[s]);
        if (is_identity(gamma)) continue;
        DivisorClass cls(Rat(0), std::vector<Rat>(t, Rat(0)));
        cls.e[s] = -1;  // the exceptional curve itself
        spec.components.push_back({std::move(cls), std::move(gamma)});
    }
    validate_spec(spec);
    return spec;
}

}  // namespace abcover
