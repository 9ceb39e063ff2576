#include <random>

#include "doctest.h"
#include "pvac/pois_cohomology.hpp"
#include "pvac/symgrp.hpp"
#include "samplers.hpp"

using namespace pvac;

namespace {

Cochain alternating(const Cochain& f) {
    Cochain r(f.n, f.d, f.dm);
    for (auto& s : all_perms(f.n))
        for (std::size_t t = 0; t < r.v.size(); ++t) {
            auto w = decode_tensor(static_cast<int>(t), f.d, f.n);
            auto x = f.eval(act_on_word(s, w));
            for (int k = 0; k < f.dm; ++k) r.v[t][k] += perm_sign(s) * x[k];
        }
    return r;
}

PoissonPresentation nonabelian_lie() {
    auto P = PoissonPresentation::zero(2);
    samplers::set_bracket(P, 0, 1, {0, 1});
    return P;
}

WordComb harrison_of(const WordComb& x) {
    WordComb out;
    for (auto& [w, c] : x) {
        int n = static_cast<int>(w.size());
        auto e = eulerian(n)[0];
        for (auto& s : all_perms(n)) {
            Scalar k = e.coeff(s);
            if (sgn(k) != 0) out[act_on_word(s, w)] += c * k * perm_sign(s);
        }
    }
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

TEST_CASE("Harrison spaces") {
    auto H1 = harrison_space(3, 1);
    CHECK(H1.dim() == 3);
    CHECK(H1.relations.empty());
    auto H2 = harrison_space(3, 2);
    // frozen from the exact rank: the relations a(x)b - b(x)a span the 3 antisymmetric tensors
    CHECK(H2.dim() == 6);
    // s_{1,1} = e - (12) identifies a(x)b with b(x)a
    Vec ab(9, Scalar(0));
    ab[encode_tensor({1, 2}, 3)] = 1;
    ab[encode_tensor({2, 1}, 3)] = -1;
    CHECK(is_zero(H2.project(ab)));
    Vec aa(9, Scalar(0));
    aa[encode_tensor({1, 1}, 3)] = 1;
    CHECK_FALSE(is_zero(H2.project(aa)));
    for (int n = 1; n <= 4; ++n) CHECK(harrison_space(2, n).dim() == eulerian_rank(n, 2, 1));
}

TEST_CASE("Harrison chain boundary") {
    auto A = samplers::kplus_g();
    auto prod = product_of(A);
    // d([u (x) v] (x) 1) = [v] (x) u - [uv] (x) 1 + [u] (x) v, and uv = 0
    Vec got = hochschild_chain_boundary(prod, prod, {1, 2}, 0);
    Vec expect(9, Scalar(0));
    expect[2 * 3 + 1] = 1;  // [v] (x) u
    expect[1 * 3 + 2] = 1;  // [u] (x) v
    CHECK(got == expect);
    CHECK(is_zero(hochschild_chain_boundary(prod, prod, {1}, 0)));
    for (int n = 2; n <= 4; ++n) {
        auto hb = harrison_boundary(prod, prod, n);
        CHECK(hb.well_defined);
        if (n >= 3) {
            auto lower = harrison_boundary(prod, prod, n - 1);
            CHECK(is_zero(mat_mul(lower.matrix, hb.matrix)));
        }
    }
}

TEST_CASE("Hochschild coboundary squares to zero") {
    std::mt19937 rng(1);
    auto A = samplers::kplus_g();
    auto prod = product_of(A);
    for (int n = 0; n <= 3; ++n) {
        auto f = random_cochain(rng, n, 3, 3);
        CHECK(hochschild_coboundary(prod, prod, hochschild_coboundary(prod, prod, f)).is_zero());
    }
}

TEST_CASE("Eulerian decomposition of cochains") {
    std::mt19937 rng(2);
    auto A = samplers::kplus_g();
    auto prod = product_of(A);
    for (int n = 1; n <= 4; ++n) {
        auto f = random_cochain(rng, n, 3, 3);
        Cochain sum(n, 3, 3);
        for (int p = 1; p <= n; ++p) {
            auto fp = eulerian_project(f, p);
            sum = sum + fp;
            CHECK(eulerian_project(fp, p) == fp);
            for (int p2 = 1; p2 <= n; ++p2)
                if (p2 != p) CHECK(eulerian_project(fp, p2).is_zero());
            auto bf = hochschild_coboundary(prod, prod, fp);
            CHECK(eulerian_project(bf, p) == bf);
        }
        CHECK(sum == f);
        // the p = 1 part is exactly the Harrison cochains
        auto H = harrison_space(3, n);
        CHECK(is_harrison_cochain(eulerian_project(f, 1), H));
        CHECK(eulerian_rank(n, 3, 1) == H.dim());
    }
}

TEST_CASE("Chevalley-Eilenberg coboundary") {
    auto L = nonabelian_lie();
    auto br = bracket_of(L);
    // n = 0: (delta m)(u) = [u, m]
    Cochain m(0, 2, 2);
    m.v[0] = {0, 1};
    auto dm = ce_coboundary(br, br, m);
    CHECK(dm.eval({0}) == Vec{0, 1});
    CHECK(dm.eval({1}) == Vec{0, 0});
    std::mt19937 rng(3);
    for (int n = 0; n <= 3; ++n) {
        auto f = alternating(random_cochain(rng, n, 2, 2));
        CHECK(ce_coboundary(br, br, ce_coboundary(br, br, f)).is_zero());
    }
    auto Z = PoissonPresentation::zero(2);
    auto f = alternating(random_cochain(rng, 2, 2, 2));
    CHECK(ce_coboundary(bracket_of(Z), bracket_of(Z), f).is_zero());
}

TEST_CASE("word bracket descends to Harrison chains") {
    auto A = samplers::kplus_g();
    auto br = bracket_of(A);
    std::vector<Word> ws{{1}, {2}, {0, 2}, {1, 2}, {2, 1, 1}};
    for (auto& x : ws)
        for (auto& y : ws)
            for (auto& z : ws) {
                if (x.size() + y.size() + z.size() > 6) continue;
                WordComb yz = shuffle_product({{y, 1}}, {{z, 1}});
                WordComb l, r;
                for (auto& [w, c] : yz) {
                    for (auto& [u, k] : word_bracket(br, x, w)) l[u] += c * k;
                    for (auto& [u, k] : word_bracket(br, w, x)) r[u] += c * k;
                }
                CHECK(harrison_of(l).empty());
                CHECK(harrison_of(r).empty());
            }
}

TEST_CASE("Poisson bicomplex identities on K plus g") {
    auto A = samplers::kplus_g();
    PoissonBicomplex B(A);
    std::mt19937 rng(4);
    auto br = bracket_of(A);
    for (int n = 1; n <= 4; ++n)
        for (int p = 1; p <= n; ++p) {
            const int q = n - p;
            CAPTURE(p);
            CAPTURE(q);
            auto f = B.random_element(rng, p, q);
            auto hf = B.horizontal(f, p), vf = B.vertical(f, p);
            CHECK(eulerian_project(hf, p + 1) == hf);
            CHECK(eulerian_project(vf, p) == vf);
            CHECK(B.vertical(vf, p).is_zero());
            CHECK(B.horizontal(hf, p + 1).is_zero());
            CHECK((B.vertical(hf, p + 1) + B.horizontal(vf, p)).is_zero());
            if (n <= 3) CHECK(B.horizontal_reference(f, p) == hf);
            if (q == 0) CHECK(hf == ce_coboundary(br, br, f));
            if (p == 1) CHECK(B.cell_dim(1, q) == harrison_space(3, n).dim() * 3);
            CHECK(static_cast<int>(B.cell_basis(p, q).size()) == B.cell_dim(p, q));
        }
}

TEST_CASE("zero bracket gives zero horizontal differential") {
    auto A = PoissonPresentation::zero(1);
    A.prod[0] = {1};
    PoissonBicomplex B(A);
    std::mt19937 rng(5);
    for (int n = 1; n <= 3; ++n)
        for (int p = 1; p <= n; ++p) CHECK(B.horizontal(B.random_element(rng, p, n - p), p).is_zero());
}

TEST_CASE("comparison with the finite complex") {
    std::mt19937 rng(6);
    auto rep = compare_with_finite(samplers::kplus_g(), 4, rng, 2);
    CHECK(rep.verdict == "isomorphic, chain maps commute");
    CHECK(rep.cells.size() == 10);
    for (auto& c : rep.cells) {
        CAPTURE(c.p);
        CAPTURE(c.q);
        CHECK(c.dim_c == c.dim_g);
        CHECK(c.rank_phi == c.dim_c);
        if (c.dim_c == 0) continue;
        // normalisation found on every cell: (-1)^{binom(p+q-1, 2)} p!
        int n = c.p + c.q;
        CHECK(c.scale == Scalar(sign_of((n - 1) * (n - 2) / 2) * factorial(c.p)));
    }
    // p = 1 is evaluation on the single line 1 -> 2 -> ... -> n
    FiniteOp Y = sign_symmetrize(mc_from_poisson(samplers::kplus_g()));
    Cochain f = phi_map(Y, 1);
    int line = lines_index({{0, 1}}, 2);
    for (int t = 0; t < 9; ++t) CHECK(f.v[t] == Y.at(line, t));
    auto bad = samplers::kplus_g();
    bad.br[1 * 3 + 2][1] += 1;
    CHECK_THROWS_AS(compare_with_finite(bad, 2, rng), Error);
}

TEST_CASE("bicomplex summary") {
    std::mt19937 rng(7);
    auto S = summarize_bicomplex(samplers::kplus_g(), 4, 4, 4, rng);
    CHECK(S.d_squared);
    CHECK(S.delta_squared);
    CHECK(S.anticommute);
    // frozen after the exact computation
    CHECK(S.cohomology == std::vector<int>{0, 2, 0, 1});
}
