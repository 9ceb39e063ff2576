// Acceptance run: one PASS/FAIL line per criterion, with timings. Exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "pvac/coisson.hpp"
#include "pvac/finite_op.hpp"
#include "pvac/linalg.hpp"
#include "pvac/pois_cohomology.hpp"
#include "pvac/quiver.hpp"
#include "pvac/symgrp.hpp"
#include "quiver_relations.hpp"
#include "samplers.hpp"
#include "susy_samplers.hpp"

using namespace pvac;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail << "failed: " << what << "; ";
        }
    }
};

// ---- 1 ----
void eulerian_suite(Outcome& out) {
    for (int n = 1; n <= 6; ++n) {
        auto e = eulerian(n);
        out.require(static_cast<int>(e.size()) == n, "n idempotents for n = " + std::to_string(n));
        GroupAlgebraElement sum(n);
        for (int p = 0; p < n; ++p) {
            sum = sum + e[p];
            for (int q = 0; q < n; ++q) {
                auto pq = e[p] * e[q];
                const std::string at = "n=" + std::to_string(n) + " p=" + std::to_string(p + 1) +
                                       " q=" + std::to_string(q + 1);
                if (p == q) out.require(pq == e[p], "idempotent " + at);
                else out.require(pq.is_zero(), "orthogonal " + at);
            }
        }
        out.require(sum == GroupAlgebraElement::identity(n), "sum is the identity, n=" + std::to_string(n));
    }
    out.detail << "n = 1..6";
}

// ---- 2 ----
void line_basis_suite(Outcome& out) {
    for (int n = 1; n <= 6; ++n)
        out.require(static_cast<int>(enumerate_lines(n).size()) == factorial(n), "|L(n)| = n!, n=" + std::to_string(n));
    int generators = 0;
    for (int n = 2; n <= 5; ++n)
        for (auto& [g, cyc] : quiver_relations::directed_cycle_relations(n)) {
            ++generators;
            out.require(quiver_relations::relation_image(g, cyc).empty(), "directed cycle relation " + g.str());
            // reversing the closing edge gives a non-directed cycle, which must vanish by itself
            auto e = g.edges().back();
            Quiver h = g.without_edge(e.id);
            h.add_edge(e.t, e.s);
            out.require(reduce_to_lines(h).empty(), "non-directed cycle " + h.str());
            ++generators;
        }
    // loops
    for (int n = 1; n <= 5; ++n) {
        Quiver loop(n);
        loop.add_edge(0, 0);
        out.require(reduce_to_lines(loop).empty(), "loop on " + std::to_string(n) + " vertices");
        ++generators;
    }
    out.detail << "|L(n)| = n! for n <= 6; " << generators << " relation generators for n <= 5 reduce to 0";
}

// ---- 3 ----
void worked_example(Outcome& out) {
    Quiver q = parse_quiver("7; 1>3,2>3,3>4,3>7,6>7,5>1");
    Cocomposition c = cocompose({3, 2, 2}, q);
    out.require(c.delta0.str() == "[1>2,1>3,2>1]", "Delta_0 = " + c.delta0.str());
    out.require(c.blocks.size() == 3, "three blocks");
    if (c.blocks.size() == 3) {
        out.require(c.blocks[0].str() == "[1>3,2>3]" && c.blocks[0].n() == 3, "Delta_1 = " + c.blocks[0].str());
        out.require(c.blocks[1].str() == "[]" && c.blocks[1].n() == 2, "Delta_2 = " + c.blocks[1].str());
        out.require(c.blocks[2].str() == "[1>2]" && c.blocks[2].n() == 2, "Delta_3 = " + c.blocks[2].str());
    }
    auto E1 = externally_connected({3, 2, 2}, q, 0);
    std::string e1 = "{";
    for (std::size_t i = 0; i < E1.size(); ++i) e1 += (i ? "," : "") + std::to_string(E1[i] + 1);
    e1 += "}";
    out.require(e1 == "{1,2,3}", "E(1) = " + e1);
    for (int j = 0; j < 7; ++j)
        out.require(externally_connected({3, 2, 2}, q, j) == externally_connected_bruteforce({3, 2, 2}, q, j),
                    "E(" + std::to_string(j + 1) + ") against enumeration");
    out.detail << "E^nu_Q(1)=" << e1;
}

// ---- 4 ----
void finite_mc(Outcome& out) {
    std::mt19937 rng(401);
    int samples = 0, genuine = 0;
    auto one = [&](const PoissonPresentation& P) {
        const bool direct = report_ok(check_poisson_direct(P));
        const bool mc = is_mc(mc_from_poisson(P));
        out.require(direct == mc, "sample " + std::to_string(samples));
        ++samples;
        genuine += direct;
    };
    one(samplers::kplus_g());
    out.require(genuine == 1, "K plus g is Poisson");
    for (int i = 0; i < 240; ++i) one(samplers::random_presentation(rng));
    out.require(genuine > 10 && genuine < samples - 10, "both outcomes occur");
    out.detail << samples << " presentations (incl. K+g), " << genuine << " Poisson";
}

// ---- 5 ----
void bicomplex(Outcome& out) {
    const auto A = samplers::kplus_g();
    std::mt19937 rng(501);
    PoissonBicomplex B(A);
    for (int n = 1; n <= 4; ++n)
        for (int p = 1; p <= n; ++p) {
            auto f = B.random_element(rng, p, n - p);
            auto hf = B.horizontal(f, p), vf = B.vertical(f, p);
            const std::string at = "(" + std::to_string(p) + "," + std::to_string(n - p) + ")";
            out.require(B.vertical(vf, p).is_zero(), "d^2 on " + at);
            out.require(B.horizontal(hf, p + 1).is_zero(), "delta^2 on " + at);
            out.require((B.vertical(hf, p + 1) + B.horizontal(vf, p)).is_zero(), "anticommute on " + at);
        }
    BicomplexSummary s = summarize_bicomplex(A, 4, 3, 4, rng);
    out.require(s.d_squared && s.delta_squared && s.anticommute, "identities on cell bases");
    ComparisonReport cmp = compare_with_finite(A, 4, rng, 2);
    int cells = 0;
    for (auto& c : cmp.cells) {
        const std::string at = "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")";
        out.require(c.dim_c == c.dim_g && c.rank_phi == c.dim_c && c.in_image, "isomorphism on " + at);
        out.require(c.vertical_ok && c.horizontal_ok, "chain maps on " + at);
        ++cells;
    }
    out.require(cmp.verdict == "isomorphic, chain maps commute", "verdict '" + cmp.verdict + "'");
    out.detail << cells << " cells with p+q <= 4: " << cmp.verdict;
}

// ---- 6 ----
void susy_equivalence(Outcome& out) {
    using namespace susy_samplers;
    std::mt19937 rng(601);
    int samples = 0, invariant = 0, pva = 0;
    for (int i = 0; i < 180; ++i) {
        const int N = i % 2;
        // two invariant samples for every non-commutative one
        const Kind kind = i % 3 == 0 ? Kind::Compatible : (i % 3 == 1 ? Kind::Commutative : Kind::Genuine);
        auto P = random_presentation(rng, N, kind);
        const std::string at = "sample " + std::to_string(i);
        out.require(report_ok(check_compatibility(P)), at + " is compatible");
        CoissonOp X = mc_from_pva(P);
        const bool direct = report_ok(check_pva_axioms(P));
        out.require(direct == report_ok(mc_check(X)), at + ": axioms vs MC");
        pva += direct;
        ++samples;
        // X box X and its component formulas live on invariant operations
        if (!is_invariant(X)) continue;
        ++invariant;
        auto ex = xsq_components_explicit(X), bx = xsq_components_box(X);
        out.require(ex.jacobi == bx.jacobi, at + ": Jacobi component");
        out.require(ex.leibniz == bx.leibniz, at + ": Leibniz component");
        out.require(ex.assoc == bx.assoc, at + ": associativity component");
    }
    out.require(invariant >= 100, "at least 100 invariant samples");
    out.require(pva > 0 && pva < samples, "both outcomes occur");
    out.detail << samples << " presentations (N=0,1), " << pva << " PVAs; components compared on " << invariant
               << " invariant ones";
}

// ---- 7 ----
void k_smoke(Outcome& out) {
    using namespace susy_samplers;
    for (int nv = 1; nv <= 2; ++nv) {
        Poly th = Poly::theta(1, nv, Variant::K, nv - 1, 1);
        out.require(th * th == -Poly::lambda(1, nv, Variant::K, nv - 1), "theta^2 = -lambda");
    }
    HModule V = small_module(1, Variant::K);
    out.require(check_h_action(V).empty(), "K module");
    std::mt19937 rng(701);
    CoissonOp id = CoissonOp::identity(V);
    out.require(report_ok(check_valid(id)), "identity valid");
    for (int r = 0; r < 5; ++r) {
        CoissonOp X = random_op(rng, V, 2, 1), Y = random_op(rng, V, 1, 1), Z = random_op(rng, V, 1, 0);
        out.require(compose(id, {X}) == X && compose(X, {id, id}) == X, "unit laws");
        out.require(act({1, 0}, act({1, 0}, X)) == X, "action is an involution");
        out.require(compose(compose(Y, {Z}), {Y}) == compose(Y, {compose(Z, {Y})}), "associativity in arity 1");
    }
    // module maps commuting with T and S are valid; composition and the action keep validity
    CoissonOp phi(V, 1, 0);
    for (int b = 0; b < 3; ++b) phi.at(0, b) = Poly::constant(1, 0, Variant::K, {b}, 3);
    out.require(report_ok(check_valid(phi)), "scalar map valid");
    out.require(report_ok(check_valid(compose(phi, {phi}))), "composite valid");
    CoissonOp W0(V, 2, 1);
    out.require(report_ok(check_valid(act({1, 0}, compose(phi, {W0})))), "acted composite valid");
    // S-sesquilinearity in K forces X(T v) = -lambda X(v): a product term cannot be valid
    SusyPvaPresentation P = SusyPvaPresentation::zero(V);
    auto basis = nullspace(product_constraints(V, true), 27);
    if (!basis.empty()) {
        for (int ab = 0; ab < 9; ++ab)
            for (int k = 0; k < 3; ++k) P.prod[ab][k] = basis[0][ab * 3 + k];
        CoissonOp M = mc_from_pva(P);
        out.require(!report_ok(check_valid(M)), "nonzero product op is caught by validity");
        out.require(pva_from_mc(M) == P, "K round trip");
    }
    out.detail << "N=1, arities <= 2";
}

// ---- 8 ----
void round_trips(Outcome& out) {
    std::mt19937 rng(801);
    int n = 0;
    for (int i = 0; i < 240; ++i) {
        auto P = i == 0 ? samplers::kplus_g() : samplers::random_presentation(rng);
        out.require(poisson_from_mc(mc_from_poisson(P)) == P, "Poisson sample " + std::to_string(i));
        ++n;
    }
    for (int i = 0; i < 180; ++i) {
        auto P = susy_samplers::random_presentation(rng, i % 2, static_cast<susy_samplers::Kind>(i % 3));
        out.require(pva_from_mc(mc_from_pva(P)) == P, "SUSY sample " + std::to_string(i));
        ++n;
    }
    out.detail << n << " presentations";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> all = {
        {1, "Eulerian idempotents", 60, eulerian_suite},
        {2, "line basis and cycle relations", 60, line_basis_suite},
        {3, "worked cocomposition example", 1, worked_example},
        {4, "finite MC <=> Poisson", 120, finite_mc},
        {5, "Poisson bicomplex and finite complex", 300, bicomplex},
        {6, "SUSY PVA <=> MC, box components", 600, susy_equivalence},
        {7, "K variant smoke", 60, k_smoke},
        {8, "round trips", 30, round_trips},
    };
    int failed = 0;
    for (auto& c : all) {
        Outcome out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget) {
            out.ok = false;
            out.detail << "; over the " << c.budget << " s budget";
        }
        failed += !out.ok;
        std::cout << (out.ok ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << std::fixed
                  << std::setprecision(2) << secs << " s): " << out.detail.str() << std::endl;
    }
    std::cout << (failed ? "some criteria failed" : "all criteria passed") << std::endl;
    return failed ? 1 : 0;
}
