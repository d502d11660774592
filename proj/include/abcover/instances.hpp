// instances.hpp -- ready-made cover specifications and line arrangements:
// the Campedelli cover, the degree-16 cover and its arranged variants, and
// the degree-3/degree-5 covers over pencil configurations. These back the
// bundled data files and the verification suite.
#pragma once

#include "abcover/cover.hpp"

namespace abcover {
namespace instances {

// Characters of the eight lines of the degree-16 cover, in the line order
// z_1^2 = l1 l3 l4 l7, z_2^2 = l1 l2 l4 l5, z_3^2 = l1 l2 l3 l6,
// z_4^2 = l2 l5 l6 l8.
inline std::vector<GroupElement> degree16_line_characters() {
    return {{1, 1, 1, 0}, {0, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0},
            {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 0, 0, 0}, {0, 0, 0, 1}};
}

// Abstract plane cover with the branch data of the distinguished degree-16
// solution: one line for each character with first coordinate 1.
inline CoverSpec degree16_cover() {
    GroupType G({2, 2, 2, 2});
    std::vector<BranchComponent> comps;
    for (const auto& a : elements(G))
        if (!a.empty() && a[0] == 1)
            comps.push_back({DivisorClass(Rat(1)), a});
    return plane_cover(G, std::move(comps));
}

// Seven generic lines carrying the seven nonzero characters of Z_2^3 (the
// first three defining equations of the degree-16 cover).
inline CoverSpec campedelli_cover() {
    GroupType G({2, 2, 2});
    std::vector<GroupElement> alphas = {{1, 1, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0},
                                        {0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    std::vector<BranchComponent> comps;
    for (auto& a : alphas) comps.push_back({DivisorClass(Rat(1)), std::move(a)});
    return plane_cover(G, std::move(comps));
}

// Five general lines; the cover z_1^5 = l1..l5, z_2^5 = l1 l2^2 l3^3 l4^4
// whose canonical map has degree 5.
inline CoverSpec degree5_cover() {
    GroupType G({5, 5});
    std::vector<BranchComponent> comps;
    for (int c = 1; c <= 4; ++c) comps.push_back({DivisorClass(Rat(1)), {1, c}});
    comps.push_back({DivisorClass(Rat(1)), {1, 0}});
    return plane_cover(G, std::move(comps));
}

inline std::array<Rat, 3> line(long long a, long long b, long long c) {
    return {Rat(a), Rat(b), Rat(c)};
}

// Eight lines in general position (28 double points, no triple point).
inline LineArrangement eight_generic_lines() {
    LineArrangement arr;
    long long slope[8] = {0, 1, 2, 3, 5, 7, 11, 13};
    long long off[8] = {16, 46, 156, 64, 88, 196, 145, 92};
    for (int i = 0; i < 8; ++i) arr.lines.push_back(line(slope[i], -1, off[i]));
    return arr;
}

// Eight lines with exactly one triple point: l1, l3, l4 meet at (1:1:1).
inline LineArrangement eight_lines_one_triple() {
    LineArrangement arr;
    arr.lines.push_back(line(1, -1, 0));    // l1: x = y
    arr.lines.push_back(line(1, 2, 7));     // l2
    arr.lines.push_back(line(0, 1, -1));    // l3: y = z
    arr.lines.push_back(line(1, 0, -1));    // l4: x = z
    arr.lines.push_back(line(1, 3, -11));   // l5
    arr.lines.push_back(line(1, 5, 13));    // l6
    arr.lines.push_back(line(1, 7, -17));   // l7
    arr.lines.push_back(line(1, 11, 19));   // l8
    return arr;
}

// Eight lines with one 4-fold point: l1, l2, l3, l4 meet at (1:1:1).
inline LineArrangement eight_lines_fourfold() {
    LineArrangement arr = eight_lines_one_triple();
    arr.lines[1] = line(1, 1, -2);  // l2 moved through (1:1:1)
    return arr;
}

// As above but with l7 through the common point instead of l2, so the
// exceptional curve over the 4-fold point is unbranched.
inline LineArrangement eight_lines_fourfold_unbranched() {
    LineArrangement arr = eight_lines_one_triple();
    arr.lines[6] = line(2, -1, -1);  // l7 moved through (1:1:1)
    return arr;
}

// Nine lines in three pencils of three (through q1 = (1:0:0), q2 = (0:1:0),
// q3 = (0:0:1)) with exactly n extra triple points, 0 <= n <= 3. A line from
// each pencil, y = t z, x = u z, x = v y, is concurrent exactly when
// u = v t; the offsets below realize n such coincidences and no others.
inline LineArrangement nine_line_pencils(int n) {
    if (n < 0 || n > 3) throw usage_error("supported instances have 0..3 extra triple points");
    long long t[3] = {1, 2, 3};
    long long u0[3] = {5, 7, 11};     // no products v*t hit these
    long long u1[3] = {13, 7, 11};    // 13 = 13*1
    long long u2[3] = {13, 34, 11};   // 34 = 17*2
    long long u3[3] = {13, 34, 57};   // 57 = 19*3
    long long v[3] = {13, 17, 19};
    const long long* u = (n == 0) ? u0 : (n == 1) ? u1 : (n == 2) ? u2 : u3;
    LineArrangement arr;
    for (int i = 0; i < 3; ++i) arr.lines.push_back(line(0, 1, -t[i]));
    for (int i = 0; i < 3; ++i) arr.lines.push_back(line(1, 0, -u[i]));
    for (int i = 0; i < 3; ++i) arr.lines.push_back(line(1, -v[i], 0));
    return arr;
}

// Characters of the nine pencil lines for the triple cover
// z_1^3 = l1...l9, z_2^3 = l1 l2 l3 l4^2 l5^2 l6^2 over Z_3 + Z_3.
inline std::vector<GroupElement> nine_line_characters() {
    std::vector<GroupElement> alphas;
    for (int i = 0; i < 3; ++i) alphas.push_back({1, 1});
    for (int i = 0; i < 3; ++i) alphas.push_back({1, 2});
    for (int i = 0; i < 3; ++i) alphas.push_back({1, 0});
    return alphas;
}

// The triple cover over the blow-up of all triple points of the nine-line
// configuration with n extra triple points.
inline CoverSpec nine_line_cover(int n) {
    return realized_cover(GroupType({3, 3}), nine_line_pencils(n), nine_line_characters());
}

}  // namespace instances
}  // namespace abcover
