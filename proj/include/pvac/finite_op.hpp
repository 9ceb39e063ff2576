#pragma once
// The finite operad over an even finite-dimensional space, its graded Lie algebra of
// sign-invariants, Maurer-Cartan elements and Poisson structures.

#include <optional>
#include <string>
#include <vector>

#include "pvac/linalg.hpp"
#include "pvac/quiver.hpp"

namespace pvac {

class FiniteOp {
public:
    FiniteOp() = default;
    FiniteOp(int n, int d);
    static FiniteOp identity(int d);

    int arity() const { return n_; }
    int dim() const { return d_; }
    int tensors() const { return nt_; }
    int lines() const { return nl_; }

    Vec& at(int line, int t) { return tab_[static_cast<std::size_t>(line) * nt_ + t]; }
    const Vec& at(int line, int t) const { return tab_[static_cast<std::size_t>(line) * nt_ + t]; }
    // Value on an arbitrary quiver through the line-basis reduction.
    Vec eval(const Quiver& q, int t) const;
    // Multilinear value on arbitrary vectors.
    Vec eval_vectors(const Quiver& q, const std::vector<Vec>& args) const;

    FiniteOp operator+(const FiniteOp& o) const;
    FiniteOp operator-(const FiniteOp& o) const;
    FiniteOp scaled(const Scalar& c) const;
    bool operator==(const FiniteOp& o) const { return n_ == o.n_ && d_ == o.d_ && tab_ == o.tab_; }
    bool is_zero() const;

    // Coordinates as a flat vector (line-major), and back.
    Vec flat() const;
    static FiniteOp from_flat(int n, int d, const Vec& v);

private:
    int n_ = 0, d_ = 0, nt_ = 0, nl_ = 0;
    std::vector<Vec> tab_;
};

// (f^sigma)^Gamma(v_1..v_n) = f^{sigma Gamma}(sigma . v), sigma . v placing v_i in slot sigma(i).
FiniteOp fn_act(const Perm& sigma, const FiniteOp& f);
FiniteOp fn_compose(const FiniteOp& f, const std::vector<FiniteOp>& gs);
FiniteOp fn_circ1(const FiniteOp& f, const FiniteOp& g);

bool is_sign_invariant(const FiniteOp& f);
FiniteOp sign_symmetrize(const FiniteOp& f);

// f box g = sum_{sigma in Sh(arity g, arity f - 1)} sgn(sigma) (f o_1 g)^{sigma^{-1}}
FiniteOp fn_box(const FiniteOp& f, const FiniteOp& g);
// [f,g] = f box g - (-1)^{|f||g|} g box f with |f| = arity - 1.
FiniteOp fn_bracket(const FiniteOp& f, const FiniteOp& g);
// Same bracket for an arity-2 X written out term by term (collapse and restriction of quivers).
FiniteOp fn_bracket_explicit(const FiniteOp& X, const FiniteOp& Y);

struct PoissonPresentation {
    int d = 0;
    std::vector<std::string> names;
    // prod[a*d+b] = e_a e_b, br[a*d+b] = {e_a, e_b}
    std::vector<Vec> prod, br;

    static PoissonPresentation zero(int d);
    bool operator==(const PoissonPresentation& o) const {
        return d == o.d && prod == o.prod && br == o.br;
    }
};

// Commutativity, associativity, antisymmetry, Jacobi, Leibniz on basis triples.
Report check_poisson_direct(const PoissonPresentation& P);

FiniteOp mc_from_poisson(const PoissonPresentation& P);
PoissonPresentation poisson_from_mc(const FiniteOp& X);

// X box X = 0 together with sign invariance; items name the failing line partition.
Report fn_mc_check(const FiniteOp& X);
bool is_mc(const FiniteOp& X);

// Component with exactly p blocks.
FiniteOp bigrade(const FiniteOp& f, int p);
struct SplitDifferential {
    FiniteOp Xh, Xv;  // bracket part (2 blocks) and product part (1 block)
};
SplitDifferential split_differential(const FiniteOp& X);
FiniteOp fn_differential(const FiniteOp& X, const FiniteOp& f);

// dim of the sign-invariants with p blocks in arity n by the character formula.
int g_dimension_character(int n, int d, int p);

}  // namespace pvac
