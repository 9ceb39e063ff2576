#include "doctest.h"
#include "pvac/hmodule.hpp"

using namespace pvac;

TEST_CASE("parity shift") {
    HModule V(1, Variant::W, {0, 1});
    CHECK(parity_shift(V, 0).parities() == V.parities());
    CHECK(parity_shift(V, 2).parities() == V.parities());
    CHECK(parity_shift(V, 1).parities() == std::vector<Parity>{1, 0});
    CHECK(parity_shift(parity_shift(V, 1), 1).parities() == V.parities());
}

TEST_CASE("H-action relations") {
    HModule Z(2, Variant::W, {0, 1});
    CHECK(check_h_action(Z).empty());

    HModule bad(1, Variant::W, {0, 1});
    bad.set_T({{0, 1}, {0, 0}});
    bad.set_S(1, {{0, 0}, {1, 0}});
    auto r = check_h_action(bad);
    CHECK_FALSE(r.empty());
    bool commut = false;
    for (auto& s : r) commut = commut || s.find("T S1") != std::string::npos;
    CHECK(commut);

    HModule k(1, Variant::K, {0, 1});
    k.set_T(identity_mat(2));
    k.set_S(1, {{0, 1}, {1, 0}});
    CHECK(check_h_action(k).empty());
    k.set_T(zero_mat(2, 2));
    CHECK_FALSE(check_h_action(k).empty());
}

TEST_CASE("reduction of the last variable") {
    HModule V(0, Variant::W, {0, 0});
    V.set_T({{0, 0}, {1, 0}});
    // n = 1: lambda_1 v -> -T v
    auto a = Poly::lambda(0, 1, Variant::W, 0) * Poly::constant(0, 1, Variant::W, {0});
    CHECK(reduce_last(a, V) == Poly::constant(0, 0, Variant::W, {1}, -1));
    // n = 2: lambda_2 v -> -lambda_1 v - T v
    auto b = Poly::lambda(0, 2, Variant::W, 1) * Poly::constant(0, 2, Variant::W, {0});
    CHECK(reduce_last(b, V) ==
          -(Poly::lambda(0, 1, Variant::W, 0) * Poly::constant(0, 1, Variant::W, {0})) -
              Poly::constant(0, 1, Variant::W, {1}));
    CHECK(reduce_last(Poly::constant(0, 2, Variant::W, {0}), V) == Poly::constant(0, 1, Variant::W, {0}));
}

TEST_CASE("reduction balances the total momentum") {
    // reduce(a (lambda_1 + lambda_2) v) = -reduce(a T v), monomials of degree <= 2, N <= 1
    for (int N = 0; N <= 1; ++N) {
        HModule V(N, Variant::W, {0, 1, 0, 1});
        // T shifts e1->e3, e2->e4; S^1 maps e2->e1, e4->e3 (commutes with T, squares to 0)
        Mat T = zero_mat(4, 4);
        T[2][0] = 1;
        T[3][1] = 1;
        V.set_T(T);
        if (N == 1) {
            Mat S = zero_mat(4, 4);
            S[0][1] = 1;
            S[2][3] = 1;
            V.set_S(1, S);
        }
        REQUIRE(check_h_action(V).empty());
        Poly sum = Poly::lambda(N, 2, Variant::W, 0) + Poly::lambda(N, 2, Variant::W, 1);
        for (int e1 = 0; e1 <= 2; ++e1)
            for (int e2 = 0; e1 + e2 <= 2; ++e2)
                for (IndexSet I1 = 0; I1 <= full_set(N); ++I1)
                    for (IndexSet I2 = 0; I2 <= full_set(N); ++I2)
                        for (int b = 0; b < 4; ++b) {
                            Mono m(2);
                            m.e = {e1, e2};
                            m.th = {I1, I2};
                            auto a = Poly::monomial(N, Variant::W, m, {});
                            auto lhs = reduce_last(sum * a * Poly::constant(N, 2, Variant::W, {b}), V);
                            auto rhs = reduce_last(apply_matrix(a * Poly::constant(N, 2, Variant::W, {b}), T), V);
                            REQUIRE(lhs == -rhs);
                        }
    }
}
