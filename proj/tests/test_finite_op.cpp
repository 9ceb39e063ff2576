#include <random>

#include "doctest.h"
#include "pvac/finite_op.hpp"
#include "pvac/symgrp.hpp"
#include "samplers.hpp"

using namespace pvac;

namespace {

FiniteOp random_op(std::mt19937& rng, int n, int d) {
    FiniteOp f(n, d);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int l = 0; l < f.lines(); ++l)
        for (int t = 0; t < f.tensors(); ++t)
            for (int k = 0; k < d; ++k) f.at(l, t)[k] = c(rng);
    return f;
}

FiniteOp random_invariant(std::mt19937& rng, int n, int d) { return sign_symmetrize(random_op(rng, n, d)); }

int g_dimension_rank(int n, int d, int p) {
    // rank of the sign projection restricted to p-block coordinates
    FiniteOp proto(n, d);
    const int total = static_cast<int>(proto.flat().size());
    Mat rows;
    for (int i = 0; i < total; ++i) {
        Vec e(total, Scalar(0));
        e[i] = 1;
        FiniteOp f = bigrade(FiniteOp::from_flat(n, d, e), p);
        if (f.is_zero()) continue;
        rows.push_back(sign_symmetrize(f).flat());
    }
    return rows.empty() ? 0 : rank(rows);
}

}  // namespace

TEST_CASE("identity is a two-sided unit") {
    std::mt19937 rng(1);
    for (int n = 1; n <= 3; ++n) {
        FiniteOp f = random_op(rng, n, 2);
        CHECK(fn_compose(FiniteOp::identity(2), {f}) == f);
        std::vector<FiniteOp> ids(n, FiniteOp::identity(2));
        CHECK(fn_compose(f, ids) == f);
    }
}

TEST_CASE("composition is associative") {
    std::mt19937 rng(2);
    const int d = 2;
    FiniteOp f = random_op(rng, 2, d), g = random_op(rng, 2, d), h = random_op(rng, 2, d);
    FiniteOp id = FiniteOp::identity(d);
    // (f o (g, id)) o (id, h, id) == f o (g o (id, h), id)
    auto lhs = fn_compose(fn_compose(f, {g, id}), {id, h, id});
    auto rhs = fn_compose(f, {fn_compose(g, {id, h}), id});
    CHECK(lhs == rhs);
    // (f o (id, g)) o (h, id, id) == f o (h, g)
    CHECK(fn_compose(fn_compose(f, {id, g}), {h, id, id}) == fn_compose(f, {h, g}));
}

TEST_CASE("right action of the symmetric group") {
    std::mt19937 rng(3);
    FiniteOp f = random_op(rng, 3, 2);
    for (auto& s : all_perms(3))
        for (auto& t : all_perms(3)) REQUIRE(fn_act(t, fn_act(s, f)) == fn_act(compose(s, t), f));
    CHECK(fn_act(identity_perm(3), f) == f);
}

TEST_CASE("sign invariants are closed under the bracket and satisfy graded Jacobi") {
    std::mt19937 rng(4);
    const int d = 2;
    FiniteOp a = random_invariant(rng, 2, d), b = random_invariant(rng, 2, d), c = random_invariant(rng, 1, d);
    CHECK(is_sign_invariant(a));
    CHECK(is_sign_invariant(fn_bracket(a, b)));
    CHECK(is_sign_invariant(fn_bracket(a, c)));
    auto deg = [](const FiniteOp& f) { return f.arity() - 1; };
    auto br = fn_bracket;
    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
    FiniteOp lhs = br(a, br(b, c));
    FiniteOp rhs = br(br(a, b), c) + br(b, br(a, c)).scaled(sign_of(deg(a) * deg(b)));
    CHECK(lhs == rhs);
    FiniteOp e = random_invariant(rng, 2, d);
    CHECK(br(a, br(b, e)) == br(br(a, b), e) + br(b, br(a, e)).scaled(sign_of(deg(a) * deg(b))));
    // graded antisymmetry
    CHECK(br(a, b) == br(b, a).scaled(-sign_of(deg(a) * deg(b))));
}

TEST_CASE("bracket agrees with the term-by-term formula") {
    std::mt19937 rng(5);
    for (int d = 1; d <= 2; ++d) {
        FiniteOp X = random_invariant(rng, 2, d);
        for (int n = 1; n <= 3; ++n) {
            FiniteOp Y = random_invariant(rng, n, d);
            CHECK(fn_bracket(X, Y) == fn_bracket_explicit(X, Y));
        }
    }
    FiniteOp X = mc_from_poisson(samplers::kplus_g());
    FiniteOp Y = random_invariant(rng, 2, 3);
    CHECK(fn_bracket(X, Y) == fn_bracket_explicit(X, Y));
}

TEST_CASE("dimension of the sign invariants by two constructions") {
    for (int n = 1; n <= 3; ++n)
        for (int p = 1; p <= n; ++p) {
            CAPTURE(n);
            CAPTURE(p);
            CHECK(g_dimension_character(n, 2, p) == g_dimension_rank(n, 2, p));
        }
    for (int p = 1; p <= 4; ++p) CHECK(g_dimension_character(4, 1, p) == g_dimension_rank(4, 1, p));
    // arity 2, d = 1: the product survives, the bracket does not
    CHECK(g_dimension_character(2, 1, 1) == 1);
    CHECK(g_dimension_character(2, 1, 2) == 0);
    // arity 1 is all of End(V)
    CHECK(g_dimension_character(1, 3, 1) == 9);
}

TEST_CASE("K plus g is Maurer-Cartan") {
    auto P = samplers::kplus_g();
    CHECK(report_ok(check_poisson_direct(P)));
    FiniteOp X = mc_from_poisson(P);
    CHECK(is_mc(X));
    CHECK(fn_box(X, X).is_zero());
    CHECK(poisson_from_mc(X) == P);
}

TEST_CASE("a bracket violating Jacobi is caught with a witness") {
    auto P = PoissonPresentation::zero(3);
    samplers::set_bracket(P, 0, 1, {1, 0, 0});
    samplers::set_bracket(P, 1, 2, {0, 1, 0});
    auto direct = check_poisson_direct(P);
    CHECK_FALSE(report_ok(direct));
    bool jacobi_failed = false;
    for (auto& i : direct)
        if (i.name == "Jacobi") jacobi_failed = !i.ok;
    CHECK(jacobi_failed);
    auto mc = fn_mc_check(mc_from_poisson(P));
    CHECK_FALSE(report_ok(mc));
    CHECK(mc[0].ok);  // antisymmetric, so invariance holds
    CHECK_FALSE(mc[1].ok);
    CHECK(mc[2].ok);
    CHECK(mc[3].ok);
    CHECK(mc[1].witness.find("lines {1}{2}{3}") != std::string::npos);
}

TEST_CASE("non-commutative product breaks sign invariance") {
    auto P = PoissonPresentation::zero(2);
    P.prod[0 * 2 + 1][0] = 1;
    CHECK_FALSE(is_mc(mc_from_poisson(P)));
    CHECK_FALSE(report_ok(check_poisson_direct(P)));
}

TEST_CASE("Maurer-Cartan agrees with the direct axioms on random presentations") {
    std::mt19937 rng(6);
    int genuine = 0;
    for (int rep = 0; rep < 60; ++rep) {
        auto P = samplers::random_presentation(rng);
        bool direct = report_ok(check_poisson_direct(P));
        FiniteOp X = mc_from_poisson(P);
        REQUIRE(is_mc(X) == direct);
        REQUIRE(poisson_from_mc(X) == P);
        genuine += direct;
    }
    CHECK(genuine > 5);
    CHECK(genuine < 55);
}

TEST_CASE("differentials square to zero and split by bigrading") {
    std::mt19937 rng(7);
    FiniteOp X = mc_from_poisson(samplers::kplus_g());
    auto [Xh, Xv] = split_differential(X);
    CHECK(Xh + Xv == X);
    for (int n = 1; n <= 2; ++n) {
        FiniteOp f = random_invariant(rng, n, 3);
        CHECK(fn_differential(X, fn_differential(X, f)).is_zero());
        CHECK(fn_bracket(Xh, fn_bracket(Xh, f)).is_zero());
        CHECK(fn_bracket(Xv, fn_bracket(Xv, f)).is_zero());
        CHECK((fn_bracket(Xh, fn_bracket(Xv, f)) + fn_bracket(Xv, fn_bracket(Xh, f))).is_zero());
        for (int p = 1; p <= n; ++p) {
            FiniteOp fp = bigrade(f, p);
            CHECK(bigrade(fn_bracket(Xv, fp), p) == fn_bracket(Xv, fp));
            CHECK(bigrade(fn_bracket(Xh, fp), p + 1) == fn_bracket(Xh, fp));
        }
    }
    auto bad = PoissonPresentation::zero(2);
    bad.prod[1][0] = 1;
    CHECK_THROWS_AS(split_differential(mc_from_poisson(bad)), Error);
}
