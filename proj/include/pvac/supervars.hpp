#pragma once
// Polynomial superalgebras in (1|N) supervariables, W (free) and K (theta^2 = -lambda) variants,
// with coefficients in tensor powers of a module basis.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pvac/core_super.hpp"
#include "pvac/linalg.hpp"

namespace pvac {

enum class Variant { W, K };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

// lambda_1^{e_1} theta_1^{I_1} ... lambda_n^{e_n} theta_n^{I_n}, factors ascending by variable.
struct Mono {
    std::vector<int> e;
    std::vector<IndexSet> th;

    Mono() = default;
    explicit Mono(int nvars) : e(nvars, 0), th(nvars, 0) {}
    int nvars() const { return static_cast<int>(e.size()); }
    int parity() const;
    int odd_count() const;
    bool operator<(const Mono& o) const;
    bool operator==(const Mono& o) const { return e == o.e && th == o.th; }
};

using Tensor = std::vector<int>;  // basis indices of V^{(x)m}; empty for scalar coefficients

struct Term {
    Mono m;
    Tensor t;
    bool operator<(const Term& o) const {
        if (!(m == o.m)) return m < o.m;
        return t < o.t;
    }
    bool operator==(const Term& o) const { return m == o.m && t == o.t; }
};

// The operators T, S^i of an H-module acting on basis vectors.
struct NablaAction {
    virtual ~NablaAction() = default;
    virtual int basis_parity(int b) const = 0;
    virtual int odd_count() const = 0;  // N
    // T e_b = sum out[k].second * e_{out[k].first}
    virtual void apply_T(int b, std::vector<std::pair<int, Scalar>>& out) const = 0;
    virtual void apply_S(int i, int b, std::vector<std::pair<int, Scalar>>& out) const = 0;
};

class Poly {
public:
    Poly() = default;
    Poly(int N, int nvars, Variant v) : N_(N), nvars_(nvars), var_(v) {}

    static Poly constant(int N, int nvars, Variant v, const Tensor& t, const Scalar& c = 1);
    static Poly lambda(int N, int nvars, Variant v, int k);           // lambda_k, 0-based k
    static Poly theta(int N, int nvars, Variant v, int k, int i);     // theta_k^i, i 1-based
    static Poly monomial(int N, Variant v, const Mono& m, const Tensor& t, const Scalar& c = 1);

    int N() const { return N_; }
    int nvars() const { return nvars_; }
    Variant variant() const { return var_; }
    const std::map<Term, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const Mono& m, const Tensor& t, const Scalar& c);
    void add(const Term& t, const Scalar& c) { add(t.m, t.t, c); }
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Scalar& c) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Product a*b where at most one factor carries a nonempty tensor.
    Poly operator*(const Poly& o) const;

    // Parity of each term given basis parities (for homogeneity checks).
    std::string str(const std::vector<std::string>* names = nullptr) const;

    void check_compatible(const Poly& o) const;

private:
    int N_ = 0;
    int nvars_ = 0;
    Variant var_ = Variant::W;
    std::map<Term, Scalar> terms_;
};

// Product of monomials; returns coefficient (0, +-1) and the normal form. In the K variant a
// repeated theta_k^i contributes -lambda_k.
std::pair<int, Mono> mono_mul(const Mono& a, const Mono& b, int N, Variant v);

// Tensor product of coefficients: (a w)(b u) = (-1)^{p(w)p(b)} ab (w (x) u).
Poly tensor_mul(const Poly& a, const Poly& b, const NablaAction& V);

Poly partial_lambda(const Poly& p, int k);
Poly partial_theta(const Poly& p, int k, int i);

// Target of a substitution Lambda_k -> sum_j s_j Lambda_{v_j} + sum_l s_l nabla^{(slot_l)}.
struct SubstTarget {
    std::vector<std::pair<int, int>> vars;    // (variable, sign)
    std::vector<std::pair<int, int>> nablas;  // (tensor slot, sign)
};

// Substitute Lambda_k. Theta factors of Lambda_k are moved next to the coefficient and replaced
// one at a time, innermost first; each S^i acts on its slot with the Koszul sign of the slots to
// its left. The result no longer involves Lambda_k unless k is itself a target.
Poly substitute(const Poly& p, int k, const SubstTarget& tgt, const NablaAction* V);

// Rename variables: variable k goes to map[k] in a system with new_nvars variables.
Poly rename_vars(const Poly& p, const std::vector<int>& map, int new_nvars);

// Drop trailing variables that do not occur (n -> new_nvars); throws if one occurs.
Poly truncate_vars(const Poly& p, int new_nvars);

// Apply an operator to one tensor slot of every coefficient (even operators: no sign).
Poly apply_T_slot(const Poly& p, int slot, const NablaAction& V);
Poly apply_S_slot(const Poly& p, int i, int slot, const NablaAction& V);

// Coefficient of lambda_k^0 theta_k^{[N]}, variable k removed.
Poly residue(const Poly& p, int k);

// int_F^G dLambda on a one-variable V-valued polynomial.
Poly integrate(const Mat& F, const Mat& G, const Poly& p);

// Total parity of a term given basis parities.
int term_parity(const Term& t, const NablaAction& V);

}  // namespace pvac
