// geometry.hpp -- exact rational geometry of the base surface: divisor
// classes on the plane and its blow-ups, cohomology of O(t) on the plane,
// line arrangements with their multiple points, and dimensions of linear
// systems with assigned base-point multiplicities (honest rank, no
// independence assumptions).
#pragma once

#include "abcover/base.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <vector>

namespace abcover {

// ---------------------------------------------------------------------------
// Cohomology of O(t) on P^2. h1 vanishes for every t.

inline long long h0_plane(long long t) {
    return t >= 0 ? (t + 1) * (t + 2) / 2 : 0;
}

inline long long chi_plane(long long t) {
    // (t+1)(t+2)/2 as a polynomial, valid for all t.
    return (t + 1) * (t + 2) / 2;
}

inline long long h2_plane(long long t) {
    return h0_plane(-t - 3);  // Serre duality against K = O(-3)
}

// ---------------------------------------------------------------------------
// Divisor classes on a plane blown up at t points.
//
// (h; m_1,...,m_t) stands for h*H - sum m_s E_s with the intersection form
// H^2 = 1, E_s^2 = -1, H.E_s = 0. The canonical class is -3H + sum E_s,
// stored as (-3; -1,...,-1).

struct DivisorClass {
    Rat h;
    std::vector<Rat> e;

    DivisorClass() : h(0) {}
    explicit DivisorClass(Rat hh, std::vector<Rat> ee = {}) : h(std::move(hh)), e(std::move(ee)) {}

    int blowups() const { return static_cast<int>(e.size()); }

    bool is_integral() const {
        if (!is_integer(h)) return false;
        return std::all_of(e.begin(), e.end(), [](const Rat& m) { return is_integer(m); });
    }

    bool is_zero() const {
        if (h != 0) return false;
        return std::all_of(e.begin(), e.end(), [](const Rat& m) { return m == 0; });
    }

    bool operator==(const DivisorClass& o) const { return h == o.h && e == o.e; }
    bool operator!=(const DivisorClass& o) const { return !(*this == o); }
};

inline void check_same_base(const DivisorClass& a, const DivisorClass& b) {
    if (a.blowups() != b.blowups())
        throw usage_error("divisor classes live on different blow-ups");
}

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    check_same_base(a, b);
    DivisorClass r(a.h + b.h, a.e);
    for (int s = 0; s < a.blowups(); ++s) r.e[s] += b.e[s];
    return r;
}

inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    check_same_base(a, b);
    DivisorClass r(a.h - b.h, a.e);
    for (int s = 0; s < a.blowups(); ++s) r.e[s] -= b.e[s];
    return r;
}

inline DivisorClass operator*(const Rat& c, const DivisorClass& a) {
    DivisorClass r(c * a.h, a.e);
    for (auto& m : r.e) m *= c;
    return r;
}

inline DivisorClass operator-(const DivisorClass& a) { return Rat(-1) * a; }

inline Rat intersect(const DivisorClass& a, const DivisorClass& b) {
    check_same_base(a, b);
    Rat r = a.h * b.h;
    for (int s = 0; s < a.blowups(); ++s) r -= a.e[s] * b.e[s];
    return r;
}

inline DivisorClass canonical_class(int blowups) {
    return DivisorClass(Rat(-3), std::vector<Rat>(blowups, Rat(-1)));
}

// Riemann-Roch on a rational surface: chi(O(D)) = 1 + (D^2 - D.K)/2.
inline Int chi_class(const DivisorClass& d) {
    if (!d.is_integral()) throw usage_error("chi_class requires an integral divisor class");
    Rat val = 1 + (intersect(d, d) - intersect(d, canonical_class(d.blowups()))) / 2;
    if (!is_integer(val)) throw usage_error("chi_class value is not integral");
    return boost::multiprecision::numerator(val);
}

// ---------------------------------------------------------------------------
// Projective points and line arrangements, all over exact rationals.

using ProjPoint = std::array<Rat, 3>;

// Scale so the first nonzero coordinate becomes 1; comparison-stable.
inline ProjPoint normalize_point(const ProjPoint& p) {
    for (const Rat& c : p) {
        if (c != 0) {
            ProjPoint r;
            for (int i = 0; i < 3; ++i) r[i] = p[i] / c;
            return r;
        }
    }
    throw usage_error("(0:0:0) is not a projective point");
}

struct LineArrangement {
    // Each line as coefficients (a, b, c) of a x + b y + c z = 0, up to scale.
    std::vector<std::array<Rat, 3>> lines;
};

struct MultiplePoint {
    ProjPoint point;             // normalized coordinates
    std::vector<int> incident;   // indices of lines through the point, ascending
    int multiplicity = 0;        // incident.size()
};

inline bool point_on_line(const ProjPoint& p, const std::array<Rat, 3>& l) {
    return l[0] * p[0] + l[1] * p[1] + l[2] * p[2] == 0;
}

inline ProjPoint line_intersection(const std::array<Rat, 3>& l1, const std::array<Rat, 3>& l2) {
    ProjPoint p{l1[1] * l2[2] - l1[2] * l2[1],
                l1[2] * l2[0] - l1[0] * l2[2],
                l1[0] * l2[1] - l1[1] * l2[0]};
    return normalize_point(p);
}

inline void validate_arrangement(const LineArrangement& arr) {
    std::set<ProjPoint> seen;
    for (const auto& l : arr.lines) {
        ProjPoint norm = normalize_point(ProjPoint{l[0], l[1], l[2]});
        if (!seen.insert(norm).second)
            throw validation_error("arrangement contains duplicate lines");
    }
}

// All points where at least two lines meet, with exact coordinates and full
// incidence sets, sorted lexicographically by normalized coordinates.
inline std::vector<MultiplePoint> multiple_points(const LineArrangement& arr) {
    validate_arrangement(arr);
    int n = static_cast<int>(arr.lines.size());
    std::map<ProjPoint, std::set<int>> at;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ProjPoint p = line_intersection(arr.lines[i], arr.lines[j]);
            at[p].insert(i);
            at[p].insert(j);
        }
    std::vector<MultiplePoint> out;
    out.reserve(at.size());
    for (auto& [p, inc] : at) {
        MultiplePoint mp;
        mp.point = p;
        mp.incident.assign(inc.begin(), inc.end());
        mp.multiplicity = static_cast<int>(mp.incident.size());
        out.push_back(std::move(mp));
    }
    return out;
}

inline int max_multiplicity(const LineArrangement& arr) {
    int m = 1;
    for (const auto& mp : multiple_points(arr)) m = std::max(m, mp.multiplicity);
    return m;
}

// ---------------------------------------------------------------------------
// Exact rank and linear systems with base points.

// Row-reduce over Q; the input is consumed.
inline long long rank_rational(std::vector<std::vector<Rat>>& m) {
    long long rank = 0;
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

struct PointCondition {
    ProjPoint point;
    int multiplicity = 1;
};

namespace detail {

inline Rat rat_pow(const Rat& base, int exp) {
    Rat r(1);
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

inline Int falling(int n, int k) {
    Int r(1);
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
}

}  // namespace detail

// Dimension of the space of degree-t forms in three variables vanishing to
// order >= m at each assigned point: number of monomials minus the exact rank
// of all partial-derivative conditions of order < m. This is h0 of
// O(t H - sum m_s E_s) on the blow-up at those points.
inline long long linear_system_dim(long long t, const std::vector<PointCondition>& conds) {
    if (t < 0) return 0;
    // Monomial exponents (a, b, c), a + b + c = t.
    std::vector<std::array<int, 3>> mons;
    for (int a = static_cast<int>(t); a >= 0; --a)
        for (int b = static_cast<int>(t) - a; b >= 0; --b)
            mons.push_back({a, b, static_cast<int>(t) - a - b});

    std::vector<std::vector<Rat>> rows;
    for (const auto& pc : conds) {
        if (pc.multiplicity < 1) throw usage_error("point multiplicity must be >= 1");
        ProjPoint p = normalize_point(pc.point);
        for (int d1 = 0; d1 < pc.multiplicity; ++d1)
            for (int d2 = 0; d2 + d1 < pc.multiplicity; ++d2)
                for (int d3 = 0; d3 + d2 + d1 < pc.multiplicity; ++d3) {
                    std::vector<Rat> row;
                    row.reserve(mons.size());
                    for (const auto& mon : mons) {
                        if (mon[0] < d1 || mon[1] < d2 || mon[2] < d3) {
                            row.emplace_back(0);
                            continue;
                        }
                        Rat v = Rat(detail::falling(mon[0], d1) * detail::falling(mon[1], d2) *
                                    detail::falling(mon[2], d3));
                        v *= detail::rat_pow(p[0], mon[0] - d1);
                        v *= detail::rat_pow(p[1], mon[1] - d2);
                        v *= detail::rat_pow(p[2], mon[2] - d3);
                        row.push_back(std::move(v));
                    }
                    rows.push_back(std::move(row));
                }
    }
    return static_cast<long long>(mons.size()) - rank_rational(rows);
}

// h0 of an integral class (d; m_1,...,m_t) given the blown-up points.
// Multiplicities <= 0 impose nothing (adding exceptional multiples does not
// create sections).
inline long long h0_class(const DivisorClass& d, const std::vector<ProjPoint>& points) {
    if (!d.is_integral()) throw usage_error("h0_class requires an integral divisor class");
    if (static_cast<std::size_t>(d.blowups()) != points.size())
        throw usage_error("h0_class: class and point list disagree on blow-up count");
    Int deg = boost::multiprecision::numerator(d.h);
    if (deg < 0) return 0;
    std::vector<PointCondition> conds;
    for (int s = 0; s < d.blowups(); ++s) {
        Int m = boost::multiprecision::numerator(d.e[s]);
        if (m > 0) conds.push_back({points[s], static_cast<int>(m)});
    }
    return linear_system_dim(static_cast<long long>(deg), conds);
}

inline long long h2_class(const DivisorClass& d, const std::vector<ProjPoint>& points) {
    return h0_class(canonical_class(d.blowups()) - d, points);
}

}  // namespace abcover
