#pragma once
// Hochschild, Harrison and Chevalley-Eilenberg cochains of a Poisson algebra, the Eulerian
// splitting, the Poisson bicomplex and its comparison with the finite operad side.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "pvac/finite_op.hpp"
#include "pvac/linalg.hpp"

namespace pvac {

// Bilinear table: t[a*d2+b] = a * b, a vector of length dout.
struct Bilinear {
    int d1 = 0, d2 = 0, dout = 0;
    std::vector<Vec> t;
    Vec apply(const Vec& x, const Vec& y) const;
    Vec apply_basis(int a, const Vec& y) const;
};

Bilinear product_of(const PoissonPresentation& P);
Bilinear bracket_of(const PoissonPresentation& P);

// Multilinear maps A^{(x)n} -> M; v[t] is the value on the basis tensor t (base d, slot 0 first).
struct Cochain {
    int n = 0, d = 0, dm = 0;
    std::vector<Vec> v;

    Cochain() = default;
    Cochain(int n_, int d_, int dm_);
    Vec eval(const std::vector<int>& word) const;
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain scaled(const Scalar& c) const;
    bool operator==(const Cochain& o) const { return n == o.n && d == o.d && dm == o.dm && v == o.v; }
    bool is_zero() const;
    Vec flat() const;
    static Cochain from_flat(int n, int d, int dm, const Vec& x);
};

Cochain random_cochain(std::mt19937& rng, int n, int d, int dm);

// Hochschild coboundary of a commutative algebra A (prod) with coefficients in a symmetric
// bimodule M given by act: act.t[a*dm+m] = a.m.
Cochain hochschild_coboundary(const Bilinear& prod, const Bilinear& act, const Cochain& f);

// f o e^(p)_n, the letters of A carrying degree one so sigma acts with sgn(sigma).
Cochain eulerian_project(const Cochain& f, int p);
// trace of e^(p)_n on A^{(x)n}: the rank of the projection on scalar-valued cochains.
int eulerian_rank(int n, int d, int p);

// ch_n(A) = A^{(x)n} / <s_{r,n-r}(w)>, s_{r,n-r} the signed shuffle sum.
struct HarrisonSpace {
    int n = 0, d = 0;
    Mat relations;              // reduced row echelon basis of the relation span
    std::vector<int> pivots;
    std::vector<int> basis;     // tensors whose classes form a basis of the quotient
    int dim() const { return static_cast<int>(basis.size()); }
    // quotient coordinates of a tensor combination
    Vec project(const Vec& x) const;
};

HarrisonSpace harrison_space(int d, int n);
bool is_harrison_cochain(const Cochain& f, const HarrisonSpace& H);

// Chain boundary ch_n (x) M -> ch_{n-1} (x) M in quotient coordinates, columns indexed by
// (basis tensor, module basis element). well_defined records that relations map to relations.
struct HarrisonBoundary {
    Mat matrix;
    bool well_defined = true;
};
HarrisonBoundary harrison_boundary(const Bilinear& prod, const Bilinear& act, int n);
// Hochschild chain boundary on a single basis tensor (x) m, as a map on A^{(x)n-1} (x) M.
Vec hochschild_chain_boundary(const Bilinear& prod, const Bilinear& act, const std::vector<int>& word, int m);

// Classical coboundary of L (bracket) with coefficients in M (act: act.t[a*dm+m] = a.m).
Cochain ce_coboundary(const Bilinear& bracket, const Bilinear& act, const Cochain& f);

// Words over the basis of A with rational coefficients.
using Word = std::vector<int>;
using WordComb = std::map<Word, Scalar>;
// Signed shuffle product (letters odd).
WordComb shuffle_product(const WordComb& x, const WordComb& y);
// Bracket on words induced by {,}: the pair x_i, y_j merged in every shuffle where x_i sits
// immediately before y_j, with the sign of that shuffle.
WordComb word_bracket(const Bilinear& br, const Word& x, const Word& y);

// Poisson bicomplex of A with coefficients in A: C^{p,q} = e^(p)-part of C^{p+q}.
class PoissonBicomplex {
public:
    explicit PoissonBicomplex(const PoissonPresentation& A);

    int d() const { return d_; }
    int cell_dim(int p, int q) const;
    Cochain project(const Cochain& f, int p) const { return eulerian_project(f, p); }
    Cochain random_element(std::mt19937& rng, int p, int q) const;
    // d: C^{p,q} -> C^{p,q+1}
    Cochain vertical(const Cochain& f, int p) const;
    // delta: C^{p,q} -> C^{p+1,q}
    Cochain horizontal(const Cochain& f, int p) const;
    // Same map evaluated with Harrison projections inserted everywhere; used as a cross-check.
    Cochain horizontal_reference(const Cochain& f, int p) const;
    // Total differential on C^k = sum_p C^{p,k-p}.
    Cochain total(const Cochain& f) const;

    // Basis of C^{p,q} as flat vectors.
    std::vector<Vec> cell_basis(int p, int q) const;

    const Bilinear& prod() const { return prod_; }
    const Bilinear& bracket() const { return br_; }
    const Bilinear& adjoint_product() const { return prod_; }
    const Bilinear& adjoint_bracket() const { return br_; }

private:
    struct StencilEntry {
        int x;        // source tensor
        int letter;   // -1: plain value, otherwise {e_letter, f(x)}
        Scalar c;
    };
    const std::vector<std::vector<StencilEntry>>& stencil(int n, int p) const;

    int d_;
    Bilinear prod_, br_;
    mutable std::map<std::pair<int, int>, std::vector<std::vector<StencilEntry>>> stencils_;
};

struct CellComparison {
    int p = 0, q = 0;          // cell C^{p,q}, matched with g^{p,q-1}
    int dim_c = 0, dim_g = 0, rank_phi = 0;
    bool in_image = true;      // Phi lands in the e^(p)-part
    Scalar scale;              // normalisation c_{p,q} applied to Phi on this cell
    bool vertical_ok = true, horizontal_ok = true;
    std::string note;
};

struct ComparisonReport {
    std::vector<CellComparison> cells;
    bool dims_ok = true, bijective = true, chain_maps_ok = true, squares_ok = true;
    std::string verdict;   // "isomorphic, chain maps commute" on success
};

// Phi(Y)(w) = (1/p!) sum over cuts of w into p consecutive intervals of Y^{lines of the cut}(w).
Cochain phi_map(const FiniteOp& Y, int p);

// Cells with p >= 1, q >= 0, p + q <= max_total; chain maps are checked on samples
// random elements per source cell.
ComparisonReport compare_with_finite(const PoissonPresentation& A, int max_total, std::mt19937& rng,
                                     int samples = 2);

struct BicomplexSummary {
    struct Cell {
        int p, q, dim, rank_d, rank_delta;
    };
    std::vector<Cell> cells;
    std::vector<int> total_dims, total_ranks, cohomology;   // index k = total degree, from 0
    bool d_squared = true, delta_squared = true, anticommute = true;
};
// Cells with 1 <= p <= pmax, 0 <= q <= qmax, p + q <= max_total; total cohomology for
// k <= max_total - 1.
BicomplexSummary summarize_bicomplex(const PoissonPresentation& A, int pmax, int qmax, int max_total,
                                     std::mt19937& rng);

}  // namespace pvac
