// Unit tests for abelian group arithmetic, group enumeration and GL(k, F_p).
#include "abcover/groups.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

using namespace abcover;

namespace {

// Independent oracle: the number of abelian groups of order n is the product
// of partition counts p(a) over the prime factorization n = prod q^a.
long long partition_count(int n) {
    std::vector<long long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int s = part; s <= n; ++s) p[s] += p[s - part];
    return p[n];
}

long long abelian_group_count_oracle(long long n) {
    long long count = 1;
    for (long long q = 2; q * q <= n; ++q) {
        int a = 0;
        while (n % q == 0) { n /= q; ++a; }
        if (a > 0) count *= partition_count(a);
    }
    if (n > 1) count *= partition_count(1);
    return count;
}

std::vector<std::vector<int>> factor_lists(const std::vector<GroupType>& gs) {
    std::vector<std::vector<int>> out;
    for (const auto& g : gs) out.push_back(g.factors);
    return out;
}

}  // namespace

TEST_CASE("enumerate_groups matches known lists") {
    CHECK(factor_lists(enumerate_groups(36)) ==
          std::vector<std::vector<int>>{{36}, {2, 18}, {3, 12}, {6, 6}});
    CHECK(factor_lists(enumerate_groups(16)) ==
          std::vector<std::vector<int>>{{16}, {2, 8}, {4, 4}, {2, 2, 4}, {2, 2, 2, 2}});
    CHECK(factor_lists(enumerate_groups(1)) == std::vector<std::vector<int>>{{}});
    CHECK_THROWS_AS(enumerate_groups(0), usage_error);
}

TEST_CASE("enumerate_groups agrees with the partition-count oracle up to 64") {
    for (long long n = 1; n <= 64; ++n) {
        auto gs = enumerate_groups(n);
        CHECK(static_cast<long long>(gs.size()) == abelian_group_count_oracle(n));
        std::set<std::vector<int>> seen;
        for (const auto& g : gs) {
            CHECK(g.order() == n);
            CHECK(seen.insert(g.factors).second);  // no duplicates
        }
    }
}

TEST_CASE("elements are lexicographic with identity first") {
    CHECK(elements(GroupType({2, 2})) ==
          std::vector<GroupElement>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(elements(GroupType({3})) == std::vector<GroupElement>{{0}, {1}, {2}});
    auto e24 = elements(GroupType({2, 4}));
    REQUIRE(e24.size() == 8);
    CHECK(e24.front() == GroupElement{0, 0});
    CHECK(e24.back() == GroupElement{1, 3});
    CHECK(std::is_sorted(e24.begin(), e24.end()));

    auto triv = elements(GroupType{});
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].empty());
}

TEST_CASE("element arithmetic") {
    GroupType z4({4});
    CHECK(add(z4, {3}, {2}) == GroupElement{1});
    GroupType z22({2, 2});
    CHECK(add(z22, {1, 0}, {1, 1}) == GroupElement{0, 1});
    GroupType z33({3, 3});
    CHECK(neg(z33, {1, 2}) == GroupElement{2, 1});
    CHECK(neg(z33, {0, 0}) == GroupElement{0, 0});
    CHECK(scalar_mul(z33, 2, {1, 2}) == GroupElement{2, 1});
    CHECK_THROWS_AS(add(z4, {3}, {1, 0}), usage_error);
    CHECK_THROWS_AS(check_element(z4, {4}), usage_error);
}

TEST_CASE("group axioms hold exhaustively for all orders <= 36") {
    for (long long n = 1; n <= 36; ++n)
        for (const auto& G : enumerate_groups(n)) {
            auto elems = elements(G);
            REQUIRE(static_cast<long long>(elems.size()) == n);
            for (const auto& a : elems) {
                CHECK(add(G, a, identity(G)) == a);
                CHECK(is_identity(add(G, a, neg(G, a))));
            }
            // Associativity on all triples (kept to orders <= 16 per group to
            // stay quick; commutativity checked on all pairs).
            if (n <= 16)
                for (const auto& a : elems)
                    for (const auto& b : elems)
                        for (const auto& c : elems)
                            CHECK(add(G, add(G, a, b), c) == add(G, a, add(G, b, c)));
            for (const auto& a : elems)
                for (const auto& b : elems)
                    CHECK(add(G, a, b) == add(G, b, a));
        }
}

TEST_CASE("automorphism counts for elementary abelian groups") {
    CHECK(automorphisms(GroupType({2})).size() == 1);
    CHECK(automorphisms(GroupType({3})).size() == 2);
    CHECK(automorphisms(GroupType({2, 2})).size() == 6);
    CHECK(automorphisms(GroupType({3, 3})).size() == 48);
    CHECK(automorphisms(GroupType({2, 2, 2})).size() == 168);
    CHECK(automorphisms(GroupType({2, 2, 2, 2})).size() == 20160);
    CHECK_THROWS_AS(automorphisms(GroupType({4})), usage_error);
    CHECK_THROWS_AS(automorphisms(GroupType({2, 4})), usage_error);
}

TEST_CASE("automorphisms of [2,2] are bijections and closed under composition") {
    GroupType G({2, 2});
    auto autos = automorphisms(G);
    auto elems = elements(G);
    std::set<GroupAutomorphism> aset(autos.begin(), autos.end());
    for (const auto& A : autos) {
        std::set<GroupElement> image;
        for (const auto& v : elems) image.insert(apply(G, A, v));
        CHECK(image.size() == elems.size());
        for (const auto& B : autos) CHECK(aset.count(compose(G, A, B)) == 1);
        CHECK(aset.count(inverse(G, A)) == 1);
        CHECK(compose(G, A, inverse(G, A)).m == GroupAutomorphism{{{1, 0}, {0, 1}}}.m);
    }
}

TEST_CASE("automorphisms of [2,2,2,2]: sampled closure and bijectivity") {
    GroupType G({2, 2, 2, 2});
    auto autos = automorphisms(G);
    REQUIRE(autos.size() == 20160);
    std::set<GroupAutomorphism> aset(autos.begin(), autos.end());
    std::mt19937 rng(12345);
    std::uniform_int_distribution<std::size_t> pick(0, autos.size() - 1);
    auto elems = elements(G);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& A = autos[pick(rng)];
        const auto& B = autos[pick(rng)];
        CHECK(aset.count(compose(G, A, B)) == 1);
        std::set<GroupElement> image;
        for (const auto& v : elems) image.insert(apply(G, A, v));
        CHECK(image.size() == 16);
    }
}

TEST_CASE("dual automorphism preserves the pairing sum mod 1") {
    // sum g_i alpha_i / n_i must have the same fractional part after
    // alpha |-> A(alpha), g |-> dual(A)(g).
    for (const auto& factors : {std::vector<int>{2, 2}, std::vector<int>{3, 3}}) {
        GroupType G(factors);
        int p = factors[0];
        for (const auto& A : automorphisms(G)) {
            auto Ad = dual(G, A);
            for (const auto& g : elements(G))
                for (const auto& a : elements(G)) {
                    int before = 0, after = 0;
                    auto g2 = apply(G, Ad, g);
                    auto a2 = apply(G, A, a);
                    for (int i = 0; i < G.rank(); ++i) {
                        before += g[i] * a[i];
                        after += g2[i] * a2[i];
                    }
                    CHECK(before % p == after % p);
                }
        }
    }
}

TEST_CASE("subgroup generation") {
    GroupType G({2, 2, 2});
    CHECK(generates(G, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK_FALSE(generates(G, {{1, 1, 0}, {0, 0, 0}}));
    CHECK(subgroup_generated(G, {{1, 1, 0}}).size() == 2);
    GroupType z9({9});
    CHECK(generates(z9, {{2}}));
    CHECK_FALSE(generates(z9, {{3}, {6}}));
}

TEST_CASE("element index is the position in elements order") {
    GroupType G({2, 4});
    auto elems = elements(G);
    for (std::size_t i = 0; i < elems.size(); ++i)
        CHECK(element_index(G, elems[i]) == static_cast<long long>(i));
}
