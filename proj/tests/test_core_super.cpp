#include "doctest.h"
#include "pvac/core_super.hpp"
#include "pvac/linalg.hpp"

using namespace pvac;

TEST_CASE("koszul_sign examples") {
    CHECK(koszul_sign(identity_perm(3), {1, 1, 0}) == 1);
    CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
    // 1->2->3->1 inverts (1,3) and (2,3), both involving the even v_3
    CHECK(koszul_sign(cycle_perm(3, {1, 2, 3}), {1, 1, 0}) == 1);
    // its inverse inverts (1,2) as well
    CHECK(koszul_sign(cycle_perm(3, {1, 3, 2}), {1, 1, 0}) == -1);
    CHECK_THROWS_AS(koszul_sign({1, 0}, {1}), Error);
}

TEST_CASE("koszul_sign is a cocycle") {
    for (int n = 0; n <= 5; ++n) {
        auto perms = all_perms(n);
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<Parity> p(n);
            for (int i = 0; i < n; ++i) p[i] = (mask >> i) & 1;
            for (auto& t : perms) {
                // parities carried to their new positions by tau
                std::vector<Parity> tp(n);
                for (int i = 0; i < n; ++i) tp[t[i]] = p[i];
                for (auto& s : perms)
                    REQUIRE(koszul_sign(compose(s, t), p) == koszul_sign(s, tp) * koszul_sign(t, p));
            }
        }
    }
}

TEST_CASE("set_sign examples") {
    CHECK(set_sign(make_set({1}), make_set({1}), 1) == 0);
    CHECK(set_sign(0, make_set({1, 2}), 2) == 1);
    CHECK(set_sign(make_set({2}), make_set({1}), 2) == -1);
    CHECK(complement_sign(0, 3) == 1);
    CHECK(complement_sign(full_set(3), 3) == 1);
    CHECK(complement_sign(make_set({2}), 2) == -1);
    CHECK_THROWS_AS(set_sign(make_set({3}), 0, 2), Error);
}

TEST_CASE("set_sign associativity and graded commutativity") {
    for (int N = 0; N <= 4; ++N) {
        IndexSet full = full_set(N);
        for (IndexSet I = 0; I <= full; ++I)
            for (IndexSet J = 0; J <= full; ++J) {
                if (I & J) continue;
                CHECK(set_sign(I, J, N) == sign_of(popcount(I) * popcount(J)) * set_sign(J, I, N));
                for (IndexSet K = 0; K <= full; ++K) {
                    if ((I | J) & K) continue;
                    REQUIRE(set_sign(I, J, N) * set_sign(I | J, K, N) ==
                            set_sign(J, K, N) * set_sign(I, J | K, N));
                }
            }
    }
}

TEST_CASE("rational parsing") {
    CHECK(parse_scalar("3/6") == Scalar(1, 2));
    CHECK(parse_scalar("-4") == -4);
    CHECK(to_string(parse_scalar("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_scalar("1/0"), Error);
    CHECK_THROWS_AS(parse_scalar("x"), Error);
    CHECK_THROWS_AS(parse_scalar(""), Error);
}

TEST_CASE("exact linear algebra") {
    Mat a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK(rank(a) == 2);
    auto ns = nullspace(a, 3);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(mat_vec(a, ns[0])));
    auto x = solve(a, {6, 12, 2});
    REQUIRE(x.has_value());
    CHECK(mat_vec(a, *x) == Vec{6, 12, 2});
    CHECK_FALSE(solve(a, {1, 0, 0}).has_value());
    RowSpace rs(3);
    CHECK(rs.insert({1, 1, 0}));
    CHECK(rs.insert({0, 1, 1}));
    CHECK_FALSE(rs.insert({1, 2, 1}));
    CHECK(rs.contains({2, 0, -2}));
    CHECK_FALSE(rs.contains({0, 0, 1}));
}
