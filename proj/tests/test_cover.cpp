// Unit tests for the abelian-cover calculus: floor coefficients, summand
// tables, pushforward patterns, ramification, cohomology and invariants.
#include "abcover/cover.hpp"
#include "abcover/instances.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace abcover;

TEST_CASE("c_coeff floors the whole sum") {
    CHECK(c_coeff(GroupType({36}), {5}, {20}) == 2);
    CHECK(c_coeff(GroupType({3, 3}), {1, 2}, {2, 1}) == 1);
    GroupType G({2, 2, 2, 2});
    for (const auto& a : elements(G))
        CHECK(c_coeff(G, {1, 0, 0, 0}, a) == 0);
    // Termwise flooring would give 0 here; the whole sum gives 1.
    CHECK(c_coeff(GroupType({2, 2}), {1, 1}, {1, 1}) == 1);
}

TEST_CASE("l_table on the plane") {
    SECTION("cubic cover z^3 = c with deg c = 6, alpha = 1") {
        auto spec = plane_cover(GroupType({3}), BranchData{{{1}, 6}});
        auto t = l_table(spec);
        CHECK(t.degree({0}) == 0);
        CHECK(t.degree({1}) == 2);
        CHECK(t.degree({2}) == 4);
    }
    SECTION("z^4 = a^2 b^3 with deg a = 2, deg b = 4") {
        auto spec = plane_cover(GroupType({4}), BranchData{{{2}, 2}, {{3}, 4}});
        auto t = l_table(spec);
        CHECK(t.degree({1}) == 4);
        CHECK(t.degree({2}) == 2);
        CHECK(t.degree({3}) == 2);
    }
    SECTION("two cubic equations over Z_3 + Z_3") {
        auto spec = plane_cover(GroupType({3, 3}),
                                BranchData{{{1, 1}, 2}, {{2, 1}, 2}, {{0, 1}, 2}});
        auto t = l_table(spec);
        for (const auto& g : elements(spec.group)) {
            if (is_identity(g)) CHECK(t.degree(g) == 0);
            else if (g == GroupElement{0, 2}) CHECK(t.degree(g) == 4);
            else CHECK(t.degree(g) == 2);
        }
    }
    SECTION("identity summand is always trivial") {
        auto spec = instances::degree16_cover();
        CHECK(l_table(spec).degree(identity(spec.group)) == 0);
    }
    SECTION("divisibility failure reports the factor") {
        auto spec = plane_cover(GroupType({3}), BranchData{{{1}, 5}});
        CHECK_THROWS_AS(l_table(spec), validation_error);
        try {
            l_table(spec);
        } catch (const validation_error& e) {
            CHECK(std::string(e.what()).find("factor 1") != std::string::npos);
        }
    }
}

TEST_CASE("l_table does not depend on component order") {
    auto spec = instances::degree16_cover();
    auto shuffled = spec;
    std::mt19937 rng(4);
    std::shuffle(shuffled.components.begin(), shuffled.components.end(), rng);
    auto a = l_table(spec);
    auto b = l_table(shuffled);
    for (const auto& g : elements(spec.group)) CHECK(a.at(g) == b.at(g));
}

TEST_CASE("components sharing a character floor independently") {
    // One curve of degree 4 vs two curves of degree 2 with the same character
    // give the same degrees l_g (the floor distributes over reduced pieces).
    GroupType G({2, 2});
    auto one = plane_cover(G, {{{DivisorClass(Rat(4)), {1, 0}}, {DivisorClass(Rat(4)), {0, 1}}}});
    auto two = plane_cover(
        G, {{{DivisorClass(Rat(2)), {1, 0}}, {DivisorClass(Rat(2)), {1, 0}},
             {DivisorClass(Rat(4)), {0, 1}}}});
    for (const auto& g : elements(G)) CHECK(l_table(one).at(g) == l_table(two).at(g));
}

TEST_CASE("pushforward degree multisets") {
    auto d16 = pushforward_degrees(instances::degree16_cover());
    std::vector<long long> expected{-4};
    for (int i = 0; i < 14; ++i) expected.push_back(-2);
    expected.push_back(0);
    CHECK(d16 == expected);

    CHECK(pushforward_degrees(plane_cover(GroupType({2}), BranchData{{{1}, 8}})) ==
          std::vector<long long>{-4, 0});
    CHECK(pushforward_degrees(plane_cover(GroupType({3}), BranchData{{{2}, 6}})) ==
          std::vector<long long>{-4, -2, 0});
    CHECK_THROWS_AS(pushforward_degrees(instances::nine_line_cover(0)), usage_error);
}

TEST_CASE("ramification indices") {
    CHECK(ramification(GroupType({2, 2, 2, 2}), {1, 1, 1, 0}) == 2);
    CHECK(ramification(GroupType({5, 5}), {1, 2}) == 5);
    CHECK(ramification(GroupType({4}), {2}) == 2);
    CHECK(ramification(GroupType({4}), {1}) == 4);
    CHECK(ramification(GroupType({6}), {3}) == 2);
    CHECK(ramification(GroupType({6}), {2}) == 3);
    CHECK_THROWS_AS(ramification(GroupType({4}), {0}), usage_error);

    // e divides |G| and e = |G|/d exactly; e >= 2 for alpha != 0.
    for (long long n = 2; n <= 16; ++n)
        for (const auto& G : enumerate_groups(n))
            for (const auto& a : elements(G)) {
                if (is_identity(a)) continue;
                long long e = ramification(G, a);
                CHECK(e >= 2);
                CHECK(G.order() % e == 0);
            }
}

TEST_CASE("hi_cover on the plane") {
    DivisorClass zero(Rat(0));
    CHECK(hi_cover(instances::degree16_cover(), zero, 2) == 3);
    CHECK(hi_cover(instances::campedelli_cover(), zero, 2) == 0);
    CHECK(hi_cover(instances::campedelli_cover(), zero, 1) == 0);
    CHECK(hi_cover(instances::degree5_cover(), zero, 1) == 0);
    CHECK(hi_cover(instances::degree16_cover(), zero, 0) == 1);
}

TEST_CASE("hi_cover requires realization on blow-ups") {
    auto spec = instances::nine_line_cover(0);
    auto broken = spec;
    broken.points.clear();
    DivisorClass zero(Rat(0), std::vector<Rat>(spec.blowups, Rat(0)));
    CHECK_THROWS_AS(hi_cover(broken, zero, 2), usage_error);
    CHECK(hi_cover(spec, zero, 2) == 8);
}

TEST_CASE("invariants of the named covers") {
    SECTION("degree 16") {
        auto inv = invariants(instances::degree16_cover());
        CHECK(inv.chi == 4);
        CHECK(inv.p_g == 3);
        CHECK(inv.q == 0);
        CHECK(inv.k_class == DivisorClass(Rat(1)));
        CHECK(inv.k_selfint == 16);
        CHECK(inv.p_m.at(2) == 20);
    }
    SECTION("Campedelli") {
        auto inv = invariants(instances::campedelli_cover());
        CHECK(inv.chi == 1);
        CHECK(inv.p_g == 0);
        CHECK(inv.q == 0);
        CHECK(inv.k_selfint == 2);
        CHECK(inv.k_class.h == Rat(1, 2));
        CHECK_FALSE(inv.p_m_computed);  // half-integral pullback degree
    }
    SECTION("degree-5 cover over five general lines") {
        auto inv = invariants(instances::degree5_cover());
        CHECK(inv.chi == 5);
        CHECK(inv.k_selfint == 25);
        CHECK(inv.p_g == 4);
        CHECK(inv.q == 0);
    }
    SECTION("chi = p_g - q + 1 for plane covers") {
        for (const auto& spec : {instances::degree16_cover(), instances::campedelli_cover(),
                                 instances::degree5_cover()}) {
            auto inv = invariants(spec);
            CHECK(inv.chi == inv.p_g - inv.q + 1);
        }
    }
}

TEST_CASE("plurigenus pattern of canonical covers") {
    // For the canonical pattern the pushforward forces
    // p_m = h0(m) + (d-2) h0(m-2) + h0(m-4), so p_2 = d + 4.
    auto spec = instances::degree16_cover();
    auto inv = invariants(spec);
    long long d = spec.group.order();
    for (int m = 2; m <= 5; ++m)
        CHECK(inv.p_m.at(m) ==
              h0_plane(m) + (d - 2) * h0_plane(m - 2) + h0_plane(m - 4));
    CHECK(inv.p_m.at(2) == d + 4);

    auto octic = invariants(plane_cover(GroupType({2}), BranchData{{{1}, 8}}));
    CHECK(octic.p_m.at(2) == 2 + 4);
}

TEST_CASE("the alternative summand pattern fails the plurigenus count") {
    // The competing shape O + O(-2)^(d-4) + O(-3)^3 would give p_2 = d + 2,
    // never d + 4; this reproduces the case elimination.
    for (long long d = 4; d <= 40; ++d) {
        long long p2_canonical = h0_plane(2) + (d - 2) * h0_plane(0) + h0_plane(-2);
        long long p2_alt = h0_plane(2) + (d - 4) * h0_plane(0) + 3 * h0_plane(-1);
        CHECK(p2_canonical == d + 4);
        CHECK(p2_alt == d + 2);
        CHECK(p2_alt != p2_canonical);
    }
}

TEST_CASE("canonical pattern test") {
    CHECK(canonical_test(instances::degree16_cover()).is_canonical_pattern);
    CHECK(canonical_test(plane_cover(GroupType({2}), BranchData{{{1}, 8}})).is_canonical_pattern);

    auto v = canonical_test(plane_cover(GroupType({2}), BranchData{{{1}, 6}}));
    CHECK_FALSE(v.is_canonical_pattern);
    CHECK_FALSE(v.pushforward_ok);
    CHECK(v.pushforward == std::vector<long long>{-3, 0});
    CHECK(v.pullback_degree == 0);
    CHECK_FALSE(v.base_point_freeness_checked);
    CHECK_FALSE(v.minimality_checked);

    CHECK_FALSE(canonical_test(instances::degree5_cover()).is_canonical_pattern);
    CHECK_THROWS_AS(canonical_test(instances::nine_line_cover(0)), usage_error);
}

TEST_CASE("exceptional characters at multiple points") {
    GroupType G({2, 2, 2, 2});
    auto alphas = instances::degree16_line_characters();
    auto mps = multiple_points(instances::eight_lines_one_triple());
    const MultiplePoint* triple = nullptr;
    for (const auto& mp : mps)
        if (mp.multiplicity == 3) triple = &mp;
    REQUIRE(triple != nullptr);
    CHECK(exceptional_characters(G, alphas, *triple) == GroupElement{1, 0, 0, 0});
    CHECK(ramification(G, exceptional_characters(G, alphas, *triple)) == 2);

    // A double point of two lines with opposite characters is unbranched.
    GroupType z3({3});
    MultiplePoint dbl;
    dbl.incident = {0, 1};
    dbl.multiplicity = 2;
    CHECK(is_identity(exceptional_characters(z3, {{1}, {2}}, dbl)));

    // A triple point of three lines with character 1 over Z_3 is unbranched.
    MultiplePoint trp;
    trp.incident = {0, 1, 2};
    trp.multiplicity = 3;
    CHECK(is_identity(exceptional_characters(z3, {{1}, {1}, {1}}, trp)));
}

TEST_CASE("blow-up canonical identities for the degree-16 arrangement") {
    GroupType G({2, 2, 2, 2});
    auto alphas = instances::degree16_line_characters();

    SECTION("generic position stays on the plane") {
        auto spec = realized_cover(G, instances::eight_generic_lines(), alphas);
        CHECK(spec.blowups == 0);
        auto inv = invariants(spec);
        CHECK(inv.k_class == DivisorClass(Rat(1)));
        CHECK(inv.k_selfint == 16);
    }
    SECTION("one triple point: the canonical class is the pullback of H") {
        auto spec = realized_cover(G, instances::eight_lines_one_triple(), alphas);
        CHECK(spec.blowups == 1);
        // The exceptional curve is branched with index 2.
        CHECK(spec.components.size() == 9);
        auto inv = invariants(spec);
        CHECK(inv.k_class == DivisorClass(Rat(1), {Rat(0)}));
        CHECK(inv.k_selfint == 16);
        CHECK(inv.chi == 4);
        CHECK(inv.p_g == 3);
    }
    SECTION("a 4-fold point drops the self-intersection below 16") {
        auto inv = invariants(realized_cover(G, instances::eight_lines_fourfold(), alphas));
        CHECK(inv.k_selfint < 16);
        CHECK(inv.k_selfint == 12);
        auto inv2 =
            invariants(realized_cover(G, instances::eight_lines_fourfold_unbranched(), alphas));
        CHECK(inv2.k_selfint < 16);
        CHECK(inv2.k_selfint == 0);
    }
}

TEST_CASE("nine-line triple covers on the blow-up") {
    for (int n = 0; n <= 3; ++n) {
        auto spec = instances::nine_line_cover(n);
        CHECK(spec.blowups == n + 3);
        // All exceptional characters vanish: components are the nine lines only.
        CHECK(spec.components.size() == 9);
        auto inv = invariants(spec);
        CHECK(inv.p_g == 8 - n);
        CHECK(inv.q == 0);
        CHECK(inv.chi == inv.p_g - inv.q + 1);
    }
}

TEST_CASE("spec validation") {
    GroupType G({2, 2});
    CHECK_THROWS_AS(plane_cover(G, {{{DivisorClass(Rat(2)), {0, 0}}}}), validation_error);
    CHECK_THROWS_AS(plane_cover(G, {{{DivisorClass(Rat(-2)), {1, 0}}}}), validation_error);
    CHECK_THROWS_AS(plane_cover(G, {{{DivisorClass(Rat(1, 2)), {1, 0}}}}), validation_error);
    CHECK_THROWS_AS(plane_cover(G, BranchData{{{1, 0}, -1}}), validation_error);
    CHECK_THROWS_AS(realized_cover(G, instances::eight_generic_lines(),
                                   std::vector<GroupElement>(8, GroupElement{0, 0})),
                    validation_error);
    CHECK_THROWS_AS(
        realized_cover(G, instances::eight_generic_lines(), {{1, 0}}), usage_error);
}
