#pragma once
// The SUSY coisson operads P^cl_W(V), P^cl_K(V) of a finite-dimensional H-module, the Lie
// structure on invariants, Maurer-Cartan elements and SUSY Poisson vertex algebra presentations.

#include <optional>
#include <string>
#include <vector>

#include "pvac/hmodule.hpp"
#include "pvac/quiver.hpp"

namespace pvac {

// Largest lambda-degree allowed in stored values (default 6). Composition checks it.
int degree_bound();
void set_degree_bound(int d);

// Values are stored on the line basis only, each as the reduced element: a V-valued polynomial
// in Lambda_1..Lambda_{n-1}, Lambda_n having been eliminated through Lambda_n = -sum - nabla.
class CoissonOp {
public:
    CoissonOp() = default;
    CoissonOp(const HModule& V, int n, Parity p);
    static CoissonOp identity(const HModule& V);

    int arity() const { return n_; }
    Parity parity() const { return par_; }
    int dim() const { return V_.dim(); }
    int tensors() const { return nt_; }
    int lines() const { return nl_; }
    const HModule& module() const { return V_; }

    Poly& at(int line, int t) { return tab_[static_cast<std::size_t>(line) * nt_ + t]; }
    const Poly& at(int line, int t) const { return tab_[static_cast<std::size_t>(line) * nt_ + t]; }
    // X^Q(v) for an arbitrary quiver, through the line-basis reduction.
    Poly eval(const Quiver& q, int t) const;
    // A zero polynomial of the right shape for this arity.
    Poly zero_value() const;

    CoissonOp operator+(const CoissonOp& o) const;
    CoissonOp operator-(const CoissonOp& o) const;
    CoissonOp scaled(const Scalar& c) const;
    bool operator==(const CoissonOp& o) const;
    bool operator!=(const CoissonOp& o) const { return !(*this == o); }
    bool is_zero() const;
    int max_degree() const;

private:
    void check_same_shape(const CoissonOp& o) const;
    HModule V_;
    int n_ = 0, nt_ = 0, nl_ = 0;
    Parity par_ = 0;
    std::vector<Poly> tab_;
};

// X^Q(v) for a basis word v.
Poly evaluate(const CoissonOp& X, const std::vector<int>& word, const Quiver& q);

// Sesquilinearity per line partition and basis tensor; cycle relations hold by construction.
// Items: "parity", "(a) lambda-translation", "(b) T-sesquilinearity", "(c) S-sesquilinearity".
Report check_valid(const CoissonOp& X);

// X^sigma(v (x) Q) = X^{sigma Q}_{sigma(Lambda)}(sigma v).
CoissonOp act(const Perm& sigma, const CoissonOp& X);

// X o (Y_1 . ... . Y_m); arities of the Y_j must be positive.
CoissonOp compose(const CoissonOp& X, const std::vector<CoissonOp>& Ys);
// The same composition evaluated directly on one quiver of [n] and one basis tensor, without
// passing through the line basis of the result.
Poly compose_at(const CoissonOp& X, const std::vector<CoissonOp>& Ys, const Quiver& q, int t);
// f o_i g (0-based slot).
CoissonOp circ(const CoissonOp& f, int i, const CoissonOp& g);

bool is_invariant(const CoissonOp& f);
// (1/n!) sum_sigma f^sigma.
CoissonOp symmetrize(const CoissonOp& f);

// f box g = sum_{sigma in Sh(arity g, arity f - 1)} (f o_1 g)^{sigma^{-1}}; throws unless both
// arguments are invariant.
CoissonOp box(const CoissonOp& f, const CoissonOp& g);
// [f,g] = f box g - (-1)^{p(f)p(g)} g box f.
CoissonOp lie_bracket(const CoissonOp& f, const CoissonOp& g);

// Line partitions of [3] carrying the three components of X box X.
int line_jacobi();    // {1}{2}{3}
int line_leibniz();   // {1}{2,3}
int line_assoc();     // {1,2,3}

// Items: "invariance", "Jacobi component (. . .)", "Leibniz component (. .->.)",
// "associativity component (.->.->.)"; X must be of arity 2.
Report mc_check(const CoissonOp& X);
bool is_mc(const CoissonOp& X);

struct SusyPvaPresentation {
    HModule V;
    // br[a*d+b] = {e_a _Lambda e_b}: one supervariable, V-valued
    std::vector<Poly> br;
    // prod[a*d+b] = e_a e_b
    std::vector<Vec> prod;

    static SusyPvaPresentation zero(const HModule& V);
    int dim() const { return V.dim(); }
    bool operator==(const SusyPvaPresentation& o) const;
};

// H-compatibility: parities, sesquilinearity of the bracket, T and S^i acting as derivations.
Report check_compatibility(const SusyPvaPresentation& P);
// Throws with the compatibility report when P is not H-compatible. The result lives on
// Pi^{N+1} V, is odd, of arity 2.
// check=false skips the compatibility test (for deliberately broken examples).
CoissonOp mc_from_pva(const SusyPvaPresentation& P, bool check = true);
// X odd of arity 2 on Pi^{N+1} V; the module of the result is V.
SusyPvaPresentation pva_from_mc(const CoissonOp& X);

// Direct expansion of the axioms: "parity", "sesquilinearity", "derivation", "skew-symmetry",
// "Jacobi", "commutativity", "associativity", "Leibniz".
Report check_pva_axioms(const SusyPvaPresentation& P);

// Right-hand sides of the three component formulas, per basis tensor a(x)b(x)c, as reduced
// elements in Lambda_1, Lambda_2 over Pi^{N+1} V.
struct XsqComponents {
    std::vector<Poly> jacobi, leibniz, assoc;
};
XsqComponents xsq_components_explicit(const CoissonOp& X);
// The same three families read off X box X.
XsqComponents xsq_components_box(const CoissonOp& X);

// {a_Lambda1 {b_Lambda2 c}}, {{a_Lambda1 b}_{Lambda1+Lambda2} c}, {b_Lambda2 {a_Lambda1 c}} in
// two variables.
struct NestedBrackets {
    Poly inner_right, inner_left, swapped;
};
NestedBrackets nested_brackets(const SusyPvaPresentation& P, int a, int b, int c);

// Non-unital SUSY vertex algebra axioms for a Lambda-bracket (the br field) and a product:
// "derivation", "quasi-commutativity", "quasi-associativity", "Wick formula", plus "vacuum"
// when a candidate vacuum vector is supplied.
Report check_susy_va_axioms(const SusyPvaPresentation& P, const std::optional<Vec>& vacuum = std::nullopt);

// int_{-T}^0 dLambda {a_Lambda b}, the quasi-commutativity correction.
Vec quasi_commutator(const SusyPvaPresentation& P, int a, int b);

}  // namespace pvac
