#include "pvac/coisson.hpp"

#include <atomic>
#include <map>
#include <sstream>

#include "pvac/symgrp.hpp"

namespace pvac {

namespace {

std::atomic<int> g_degree_bound{6};

int word_parity(const HModule& V, const std::vector<int>& w) {
    int p = 0;
    for (int b : w) p ^= V.basis_parity(b);
    return p;
}

std::string word_str(const HModule& V, const std::vector<int>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + V.names().at(w[i]);
    return s;
}

Poly lift(const Poly& p, int offset, int nvars) {
    std::vector<int> map(p.nvars());
    for (int k = 0; k < p.nvars(); ++k) map[k] = offset + k;
    return rename_vars(p, map, nvars);
}

Poly vec_poly(const HModule& V, const Vec& x, int nvars) {
    Poly r(V.N(), nvars, V.variant());
    for (int i = 0; i < static_cast<int>(x.size()); ++i) r.add(Mono(nvars), {i}, x[i]);
    return r;
}

Vec poly_vec(const Poly& p, int d) {
    Vec x(d, Scalar(0));
    for (auto& [t, c] : p.terms()) {
        if (t.m.nvars() != 0 || t.t.size() != 1) throw Error("expected a constant vector");
        x[t.t[0]] += c;
    }
    return x;
}

Vec basis_vec(int d, int b) {
    Vec x(d, Scalar(0));
    x[b] = 1;
    return x;
}

// nabla operators acting from the left on a V-valued polynomial; S^i passes the coefficient.
Poly S_left(const Poly& f, int i, const HModule& V) {
    Poly r(f.N(), f.nvars(), f.variant());
    const Mat& S = V.S(i);
    for (auto& [t, c] : f.terms()) {
        Scalar s = t.m.parity() ? Scalar(-c) : c;
        for (int r0 = 0; r0 < V.dim(); ++r0)
            if (sgn(S[r0][t.t[0]]) != 0) r.add(t.m, {r0}, s * S[r0][t.t[0]]);
    }
    return r;
}

Vec mat_apply(const Mat& M, const Vec& x) { return mat_vec(M, x); }

// S^I x = S^{i_1} ... S^{i_r} x
Vec S_power(const HModule& V, IndexSet I, Vec x) {
    auto ms = members(I);
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) x = mat_apply(V.S(*it), x);
    return x;
}

Poly theta_mono(const HModule& V, int nvars, const std::vector<IndexSet>& th) {
    Mono m(nvars);
    for (int k = 0; k < nvars; ++k) m.th[k] = th[k];
    return Poly::monomial(V.N(), V.variant(), m, {});
}

}  // namespace

int degree_bound() { return g_degree_bound.load(); }
void set_degree_bound(int d) {
    if (d < 0) throw Error("degree bound must be non-negative");
    g_degree_bound.store(d);
}

// ---------------------------------------------------------------- CoissonOp

CoissonOp::CoissonOp(const HModule& V, int n, Parity p) : V_(V), n_(n), par_(p & 1) {
    if (n < 1) throw Error("coisson operations need arity at least 1");
    if (n > max_arity()) throw BoundError("arity " + std::to_string(n) + " exceeds the bound " + std::to_string(max_arity()) + " (bound exceeded)");
    nt_ = tensor_count(V.dim(), n);
    nl_ = static_cast<int>(line_basis(n).size());
    tab_.assign(static_cast<std::size_t>(nt_) * nl_, Poly(V.N(), n - 1, V.variant()));
}

CoissonOp CoissonOp::identity(const HModule& V) {
    CoissonOp id(V, 1, 0);
    for (int b = 0; b < V.dim(); ++b) id.at(0, b) = Poly::constant(V.N(), 0, V.variant(), {b});
    return id;
}

Poly CoissonOp::zero_value() const { return Poly(V_.N(), n_ - 1, V_.variant()); }

Poly CoissonOp::eval(const Quiver& q, int t) const {
    if (q.n() != n_) throw Error("quiver has " + std::to_string(q.n()) + " vertices, operation has arity " + std::to_string(n_));
    Poly r = zero_value();
    for (auto& [idx, c] : reduce_indexed(q)) r += at(idx, t).scaled(c);
    return r;
}

void CoissonOp::check_same_shape(const CoissonOp& o) const {
    if (n_ != o.n_ || V_.dim() != o.V_.dim() || V_.N() != o.V_.N() || V_.variant() != o.V_.variant())
        throw Error("operations of different shapes");
}

CoissonOp CoissonOp::operator+(const CoissonOp& o) const {
    check_same_shape(o);
    CoissonOp r = *this;
    for (std::size_t i = 0; i < tab_.size(); ++i) r.tab_[i] += o.tab_[i];
    return r;
}

CoissonOp CoissonOp::operator-(const CoissonOp& o) const {
    check_same_shape(o);
    CoissonOp r = *this;
    for (std::size_t i = 0; i < tab_.size(); ++i) r.tab_[i] -= o.tab_[i];
    return r;
}

CoissonOp CoissonOp::scaled(const Scalar& c) const {
    CoissonOp r = *this;
    for (auto& p : r.tab_) p = p.scaled(c);
    return r;
}

bool CoissonOp::operator==(const CoissonOp& o) const {
    return n_ == o.n_ && V_.dim() == o.V_.dim() && V_.parities() == o.V_.parities() && tab_ == o.tab_;
}

bool CoissonOp::is_zero() const {
    for (auto& p : tab_)
        if (!p.is_zero()) return false;
    return true;
}

int CoissonOp::max_degree() const {
    int best = 0;
    for (auto& p : tab_)
        for (auto& [t, c] : p.terms()) {
            int e = 0;
            for (int x : t.m.e) e += x;
            best = std::max(best, e);
        }
    return best;
}

Poly evaluate(const CoissonOp& X, const std::vector<int>& word, const Quiver& q) {
    if (static_cast<int>(word.size()) != X.arity()) throw Error("word length does not match the arity");
    return X.eval(q, encode_tensor(word, X.dim()));
}

// ---------------------------------------------------------------- validity

Report check_valid(const CoissonOp& X) {
    const HModule& V = X.module();
    const int n = X.arity(), d = X.dim(), N = V.N();
    const int last = n - 1;
    CheckItem par{"parity", true, ""}, sa{"(a) lambda-translation", true, ""},
        sb{"(b) T-sesquilinearity", true, ""}, sc{"(c) S-sesquilinearity", true, ""};
    auto fail = [](CheckItem& it, const std::string& w) {
        if (!it.ok) return;
        it.ok = false;
        it.witness = w;
    };
    const auto& basis = line_basis(n);
    for (int li = 0; li < X.lines(); ++li) {
        const Lines& L = basis[li];
        for (int t = 0; t < X.tensors(); ++t) {
            auto w = decode_tensor(t, d, n);
            const Poly& r = X.at(li, t);
            const std::string where = "Q=" + lines_str(L) + " v=" + word_str(V, w);
            const int pw = word_parity(V, w);
            for (auto& [term, c] : r.terms())
                if (term_parity(term, V) != (pw ^ X.parity())) {
                    fail(par, where);
                    break;
                }
            Poly emb = embed_reduced(r, n);
            for (auto& blk : L) {
                bool has_last = false;
                for (int k : blk) has_last |= (k == last);
                // (a)
                for (std::size_t x = 0; x < blk.size(); ++x)
                    for (std::size_t y = x + 1; y < blk.size(); ++y) {
                        int k = blk[x], l = blk[y];
                        Poly diff = (k == last ? -partial_lambda(r, l)
                                     : l == last ? partial_lambda(r, k)
                                                 : partial_lambda(r, k) - partial_lambda(r, l));
                        if (!diff.is_zero())
                            fail(sa, where + " k=" + std::to_string(k + 1) + " l=" + std::to_string(l + 1));
                    }
                (void)has_last;
                // (b)
                Poly lhs = X.zero_value();
                Poly lam(N, n, V.variant());
                for (int k : blk) {
                    for (int b = 0; b < d; ++b) {
                        const Scalar& m = V.T()[b][w[k]];
                        if (sgn(m) == 0) continue;
                        auto u = w;
                        u[k] = b;
                        lhs += X.at(li, encode_tensor(u, d)).scaled(m);
                    }
                    lam -= Poly::lambda(N, n, V.variant(), k);
                }
                Poly rhs = reduce_last(lam * emb, V);
                if (lhs != rhs) fail(sb, where + " component " + lines_str({blk}));
            }
            // (c)
            for (int k = 0; k < n; ++k) {
                const int ks = sign_of(word_parity(V, std::vector<int>(w.begin(), w.begin() + k)));
                for (int i = 1; i <= N; ++i) {
                    Poly lhs = X.zero_value();
                    for (int b = 0; b < d; ++b) {
                        const Scalar& m = V.S(i)[b][w[k]];
                        if (sgn(m) == 0) continue;
                        auto u = w;
                        u[k] = b;
                        lhs += X.at(li, encode_tensor(u, d)).scaled(m * ks);
                    }
                    Poly th = Poly::theta(N, n, V.variant(), k, i);
                    Poly rhs = reduce_last(th * emb, V).scaled(-sign_of(X.parity()));
                    if (lhs != rhs) fail(sc, where + " slot " + std::to_string(k + 1) + " S" + std::to_string(i));
                }
            }
        }
    }
    return {par, sa, sb, sc};
}

// ---------------------------------------------------------------- symmetric group

CoissonOp act(const Perm& sigma, const CoissonOp& X) {
    const int n = X.arity(), d = X.dim();
    if (static_cast<int>(sigma.size()) != n || !is_perm(sigma)) throw Error("act: not a permutation of the arity");
    const HModule& V = X.module();
    CoissonOp R(V, n, X.parity());
    const Perm inv = inverse(sigma);
    std::vector<int> map(n > 1 ? n - 1 : 0);
    for (int j = 0; j + 1 < n; ++j) map[j] = inv[j];
    const auto& basis = line_basis(n);
    for (int li = 0; li < X.lines(); ++li) {
        const auto& comb = reduce_indexed(act(sigma, lines_quiver(basis[li], n)));
        for (int t = 0; t < X.tensors(); ++t) {
            auto w = decode_tensor(t, d, n);
            std::vector<Parity> ps(n);
            for (int k = 0; k < n; ++k) ps[k] = V.basis_parity(w[k]);
            const int ks = koszul_sign(sigma, ps);
            const int st = encode_tensor(act_on_word(sigma, w), d);
            Poly val = X.zero_value();
            for (auto& [idx, c] : comb) val += X.at(idx, st).scaled(c);
            if (val.is_zero()) continue;
            if (n == 1) {
                R.at(li, t) = val.scaled(ks);
                continue;
            }
            R.at(li, t) = reduce_last(rename_vars(val, map, n), V).scaled(ks);
        }
    }
    return R;
}

bool is_invariant(const CoissonOp& f) {
    const int n = f.arity();
    for (int k = 0; k + 1 < n; ++k) {
        Perm tau = identity_perm(n);
        std::swap(tau[k], tau[k + 1]);
        if (act(tau, f) != f) return false;
    }
    return true;
}

CoissonOp symmetrize(const CoissonOp& f) {
    CoissonOp r(f.module(), f.arity(), f.parity());
    for (auto& s : all_perms(f.arity())) r = r + act(s, f);
    return r.scaled(Scalar(1, factorial(f.arity())));
}

// ---------------------------------------------------------------- composition

namespace {

struct Plan {
    std::vector<int> nu;
    int n = 0, m = 0, W = 0;
    Cocomposition cc;
    std::vector<SubstTarget> shift;     // per global vertex, empty vars = no shift
    std::vector<SubstTarget> xi;        // Xi_i -> Lambda'_i + nabla^{(i)}
    std::vector<SubstTarget> outer;     // X's variable l -> Lambda'_l
};

Plan make_plan(const CoissonOp& X, const std::vector<CoissonOp>& Ys, const Quiver& q) {
    Plan P;
    P.m = X.arity();
    if (static_cast<int>(Ys.size()) != P.m) throw Error("compose: expected " + std::to_string(P.m) + " inner operations");
    for (auto& Y : Ys) {
        if (Y.dim() != X.dim() || Y.module().N() != X.module().N() || Y.module().variant() != X.module().variant() ||
            Y.module().parities() != X.module().parities())
            throw Error("compose: operations over different modules");
        P.nu.push_back(Y.arity());
        P.n += Y.arity();
    }
    if (q.n() != P.n) throw Error("compose: quiver size does not match the total arity");
    P.W = P.n + P.m;
    P.cc = cocompose(P.nu, q);
    P.shift.resize(P.n);
    for (int j = 0; j < P.m; ++j)
        for (int l = 0; l + 1 < P.nu[j]; ++l) {
            const int k = P.cc.offset[j] + l;
            auto E = externally_connected(P.nu, q, k);
            if (E.empty()) continue;
            SubstTarget tg;
            tg.vars.emplace_back(k, 1);
            for (int i : E) tg.vars.emplace_back(P.n + i, 1);
            P.shift[k] = tg;
        }
    for (int i = 0; i < P.m; ++i) {
        SubstTarget tg, og;
        for (int k = 0; k < P.nu[i]; ++k) {
            tg.vars.emplace_back(P.cc.offset[i] + k, 1);
            og.vars.emplace_back(P.cc.offset[i] + k, 1);
        }
        tg.nablas.emplace_back(i, 1);
        P.xi.push_back(tg);
        P.outer.push_back(og);
    }
    return P;
}

Poly compose_value(const CoissonOp& X, const std::vector<CoissonOp>& Ys, const Plan& P, int t,
                   std::map<int, Poly>& xcache) {
    const HModule& V = X.module();
    const int d = X.dim(), N = V.N();
    const Variant var = V.variant();
    auto v = decode_tensor(t, d, P.n);

    // Y_1 . ... . Y_m with the Koszul sign of moving each Y_j past the earlier inputs
    int odot = 0, before = 0;
    Poly acc = Poly::constant(N, P.W, var, {}, 1);
    for (int j = 0; j < P.m; ++j) {
        std::vector<int> wj(v.begin() + P.cc.offset[j], v.begin() + P.cc.offset[j] + P.nu[j]);
        odot ^= before & Ys[j].parity();
        before ^= word_parity(V, wj);
        Poly a = Ys[j].eval(P.cc.blocks[j], encode_tensor(wj, d));
        if (a.is_zero()) return Poly(N, P.n - 1, var);
        a = lift(a, P.cc.offset[j], P.W);
        for (int l = 0; l + 1 < P.nu[j]; ++l) {
            const int k = P.cc.offset[j] + l;
            if (!P.shift[k].vars.empty()) a = substitute(a, k, P.shift[k], nullptr);
        }
        acc = tensor_mul(acc, a, V);
    }
    for (int i = 0; i < P.m; ++i) acc = substitute(acc, P.n + i, P.xi[i], &V);

    Poly out(N, P.W, var);
    for (auto& [term, c] : acc.terms()) {
        const int u = encode_tensor(term.t, d);
        auto it = xcache.find(u);
        if (it == xcache.end()) {
            Poly x = X.eval(P.cc.delta0, u);
            x = lift(x, P.n, P.W);
            for (int l = 0; l + 1 < P.m; ++l) x = substitute(x, P.n + l, P.outer[l], nullptr);
            it = xcache.emplace(u, std::move(x)).first;
        }
        if (it->second.is_zero()) continue;
        Scalar s = (X.parity() & term.m.parity()) ? Scalar(-c) : c;
        out += Poly::monomial(N, var, term.m, {}, s) * it->second;
    }
    Poly r = reduce_last(truncate_vars(out, P.n), V);
    return odot ? -r : r;
}

}  // namespace

Poly compose_at(const CoissonOp& X, const std::vector<CoissonOp>& Ys, const Quiver& q, int t) {
    Plan P = make_plan(X, Ys, q);
    std::map<int, Poly> cache;
    return compose_value(X, Ys, P, t, cache);
}

CoissonOp compose(const CoissonOp& X, const std::vector<CoissonOp>& Ys) {
    int n = 0, par = X.parity();
    for (auto& Y : Ys) {
        n += Y.arity();
        par ^= Y.parity();
    }
    CoissonOp R(X.module(), n, par);
    const auto& basis = line_basis(n);
    for (int li = 0; li < R.lines(); ++li) {
        Plan P = make_plan(X, Ys, lines_quiver(basis[li], n));
        std::map<int, Poly> cache;
        for (int t = 0; t < R.tensors(); ++t) R.at(li, t) = compose_value(X, Ys, P, t, cache);
    }
    if (R.max_degree() > degree_bound())
        throw BoundError("composition reaches lambda-degree " + std::to_string(R.max_degree()) +
                         " above the bound " + std::to_string(degree_bound()) + " (bound exceeded)");
    return R;
}

CoissonOp circ(const CoissonOp& f, int i, const CoissonOp& g) {
    if (i < 0 || i >= f.arity()) throw Error("circ: slot out of range");
    std::vector<CoissonOp> ys(f.arity(), CoissonOp::identity(f.module()));
    ys[i] = g;
    return compose(f, ys);
}

namespace {

CoissonOp box_raw(const CoissonOp& f, const CoissonOp& g) {
    CoissonOp fg = circ(f, 0, g);
    CoissonOp r(fg.module(), fg.arity(), fg.parity());
    for (auto& s : shuffles(g.arity(), f.arity() - 1)) r = r + act(inverse(s), fg);
    return r;
}

}  // namespace

CoissonOp box(const CoissonOp& f, const CoissonOp& g) {
    if (!is_invariant(f)) throw Error("box: left argument is not invariant under the symmetric group");
    if (!is_invariant(g)) throw Error("box: right argument is not invariant under the symmetric group");
    return box_raw(f, g);
}

CoissonOp lie_bracket(const CoissonOp& f, const CoissonOp& g) {
    return box(f, g) - box(g, f).scaled(sign_of(f.parity() * g.parity()));
}

int line_jacobi() { return lines_index({{0}, {1}, {2}}, 3); }
int line_leibniz() { return lines_index({{0}, {1, 2}}, 3); }
int line_assoc() { return lines_index({{0, 1, 2}}, 3); }

XsqComponents xsq_components_box(const CoissonOp& X) {
    if (X.arity() != 2) throw Error("expected an operation of arity 2");
    CoissonOp B = box_raw(X, X);
    XsqComponents r;
    for (int t = 0; t < B.tensors(); ++t) {
        r.jacobi.push_back(B.at(line_jacobi(), t));
        r.leibniz.push_back(B.at(line_leibniz(), t));
        r.assoc.push_back(B.at(line_assoc(), t));
    }
    return r;
}

Report mc_check(const CoissonOp& X) {
    if (X.arity() != 2) throw Error("mc_check: expected an operation of arity 2");
    Report rep;
    CheckItem inv{"invariance", is_invariant(X), ""};
    if (!inv.ok) inv.witness = "X^(12) != X";
    rep.push_back(inv);
    auto comp = xsq_components_box(X);
    const char* names[3] = {"Jacobi component (. . .)", "Leibniz component (. .->.)", "associativity component (.->.->.)"};
    const char* lines[3] = {"{1}{2}{3}", "{1}{2,3}", "{1,2,3}"};
    const std::vector<Poly>* fams[3] = {&comp.jacobi, &comp.leibniz, &comp.assoc};
    for (int c = 0; c < 3; ++c) {
        CheckItem it{names[c], true, ""};
        for (int t = 0; t < static_cast<int>(fams[c]->size()); ++t)
            if (!(*fams[c])[t].is_zero()) {
                it.ok = false;
                it.witness = std::string("lines ") + lines[c] + " on " +
                             word_str(X.module(), decode_tensor(t, X.dim(), 3)) + ": " +
                             (*fams[c])[t].str(&X.module().names());
                break;
            }
        rep.push_back(it);
    }
    return rep;
}

bool is_mc(const CoissonOp& X) { return report_ok(mc_check(X)); }

// ---------------------------------------------------------------- presentations

SusyPvaPresentation SusyPvaPresentation::zero(const HModule& V) {
    SusyPvaPresentation P;
    P.V = V;
    const int d = V.dim();
    P.br.assign(static_cast<std::size_t>(d) * d, Poly(V.N(), 1, V.variant()));
    P.prod.assign(static_cast<std::size_t>(d) * d, Vec(d, Scalar(0)));
    return P;
}

bool SusyPvaPresentation::operator==(const SusyPvaPresentation& o) const {
    return V.dim() == o.V.dim() && V.parities() == o.V.parities() && V.N() == o.V.N() &&
           V.variant() == o.V.variant() && br == o.br && prod == o.prod;
}

namespace {

struct Algebra {
    const SusyPvaPresentation& P;
    const HModule& V;
    int d, N;
    Variant var;

    explicit Algebra(const SusyPvaPresentation& p)
        : P(p), V(p.V), d(p.V.dim()), N(p.V.N()), var(p.V.variant()) {}

    int par(int a) const { return V.basis_parity(a); }
    const Poly& br(int a, int b) const { return P.br[a * d + b]; }
    const Vec& mu(int a, int b) const { return P.prod[a * d + b]; }

    Vec mu(const Vec& x, const Vec& y) const {
        Vec r(d, Scalar(0));
        for (int a = 0; a < d; ++a)
            if (sgn(x[a]) != 0)
                for (int b = 0; b < d; ++b)
                    if (sgn(y[b]) != 0)
                        for (int k = 0; k < d; ++k) r[k] += x[a] * y[b] * mu(a, b)[k];
        return r;
    }
    // products of V-valued polynomials: (f e_i)(g e_j) = (-1)^{p(e_i)p(g)} f g e_i e_j
    Poly mu(const Poly& F, const Poly& G) const {
        Poly r(N, F.nvars(), var);
        for (auto& [tf, cf] : F.terms())
            for (auto& [tg, cg] : G.terms()) {
                auto [s, m] = mono_mul(tf.m, tg.m, N, var);
                if (s == 0) continue;
                if (par(tf.t[0]) & tg.m.parity()) s = -s;
                const Vec& x = mu(tf.t[0], tg.t[0]);
                for (int k = 0; k < d; ++k)
                    if (sgn(x[k]) != 0) r.add(m, {k}, cf * cg * s * x[k]);
            }
        return r;
    }
    Poly vec(const Vec& x, int nvars) const { return vec_poly(V, x, nvars); }
    // {a_Lambda x} for a vector x, one variable
    Poly br_vec(int a, const Vec& x) const {
        Poly r(N, 1, var);
        for (int b = 0; b < d; ++b)
            if (sgn(x[b]) != 0) r += br(a, b).scaled(x[b]);
        return r;
    }
    Poly br_vec_left(const Vec& x, int b) const {
        Poly r(N, 1, var);
        for (int a = 0; a < d; ++a)
            if (sgn(x[a]) != 0) r += br(a, b).scaled(x[a]);
        return r;
    }
    // {a_{Lambda_k} F} with F in nvars variables: the bracket operator has parity p(a)+N
    Poly br_on(int a, int k, const Poly& F) const {
        Poly r(N, F.nvars(), var);
        for (auto& [t, c] : F.terms()) {
            int s = sign_of(t.m.parity() * ((par(a) + N) & 1));
            r += Poly::monomial(N, var, t.m, {}, c * s) * lift(br(a, t.t[0]), k, F.nvars());
        }
        return r;
    }
};

Poly shifted_pair(const Poly& b1, int nvars) {
    // g(Gamma) -> g(Lambda_1 + Lambda_2)
    Poly x = lift(b1, nvars, nvars + 1);
    SubstTarget tg;
    for (int k = 0; k < nvars; ++k) tg.vars.emplace_back(k, 1);
    return truncate_vars(substitute(x, nvars, tg, nullptr), nvars);
}

}  // namespace

NestedBrackets nested_brackets(const SusyPvaPresentation& P, int a, int b, int c) {
    Algebra A(P);
    NestedBrackets r{Poly(A.N, 2, A.var), Poly(A.N, 2, A.var), Poly(A.N, 2, A.var)};
    r.inner_right = A.br_on(a, 0, lift(A.br(b, c), 1, 2));
    r.swapped = A.br_on(b, 1, lift(A.br(a, c), 0, 2));
    const Poly ab = lift(A.br(a, b), 0, 2);
    // the outer bracket has parity N and passes the coefficient of the inner one
    for (auto& [t, k] : ab.terms())
        r.inner_left += Poly::monomial(A.N, A.var, t.m, {}, k * sign_of(A.N * t.m.parity())) *
                        shifted_pair(A.br(t.t[0], c), 2);
    return r;
}

Report check_compatibility(const SusyPvaPresentation& P) {
    Algebra A(P);
    const HModule& V = P.V;
    const int d = A.d, N = A.N;
    CheckItem par{"parity", true, ""}, ses{"sesquilinearity", true, ""}, der{"derivation", true, ""};
    auto fail = [](CheckItem& it, const std::string& w) {
        if (!it.ok) return;
        it.ok = false;
        it.witness = w;
    };
    if (static_cast<int>(P.br.size()) != d * d || static_cast<int>(P.prod.size()) != d * d)
        throw Error("presentation tables do not match the dimension");
    auto nm = [&](int a) { return V.names()[a]; };
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const std::string ab = nm(a) + "," + nm(b);
            for (auto& [t, c] : A.br(a, b).terms())
                if (term_parity(t, V) != ((A.par(a) + A.par(b) + N) & 1)) fail(par, "bracket " + ab);
            for (int k = 0; k < d; ++k)
                if (sgn(A.mu(a, b)[k]) != 0 && A.par(k) != (A.par(a) ^ A.par(b))) fail(par, "product " + ab);
            const Vec ea = basis_vec(d, a), eb = basis_vec(d, b);
            const Poly& f = A.br(a, b);
            Poly lam = Poly::lambda(N, 1, A.var, 0);
            // [Ta_L b] = -lambda [a_L b], [a_L Tb] = (lambda + T)[a_L b]
            if (A.br_vec_left(mat_vec(V.T(), ea), b) != -(lam * f)) fail(ses, "[T" + nm(a) + "_L " + nm(b) + "]");
            if (A.br_vec(a, mat_vec(V.T(), eb)) != lam * f + apply_T_slot(f, 0, V))
                fail(ses, "[" + nm(a) + "_L T" + nm(b) + "]");
            for (int i = 1; i <= N; ++i) {
                Poly th = Poly::theta(N, 1, A.var, 0, i);
                const std::string si = "S" + std::to_string(i);
                if (A.br_vec_left(mat_vec(V.S(i), ea), b) != (th * f).scaled(-sign_of(N)))
                    fail(ses, "[" + si + nm(a) + "_L " + nm(b) + "]");
                if (A.br_vec(a, mat_vec(V.S(i), eb)) != (th * f + S_left(f, i, V)).scaled(sign_of(A.par(a) + N)))
                    fail(ses, "[" + nm(a) + "_L " + si + nm(b) + "]");
            }
            // T(ab) = (Ta)b + a(Tb), S(ab) = (Sa)b + (-1)^{p(a)} a(Sb)
            const Vec& m = A.mu(a, b);
            Vec lhs = mat_vec(V.T(), m), rhs = A.mu(mat_vec(V.T(), ea), eb);
            Vec r2 = A.mu(ea, mat_vec(V.T(), eb));
            for (int k = 0; k < d; ++k) rhs[k] += r2[k];
            if (lhs != rhs) fail(der, "T(" + nm(a) + nm(b) + ")");
            for (int i = 1; i <= N; ++i) {
                Vec l2 = mat_vec(V.S(i), m), q = A.mu(mat_vec(V.S(i), ea), eb), q2 = A.mu(ea, mat_vec(V.S(i), eb));
                for (int k = 0; k < d; ++k) q[k] += sign_of(A.par(a)) * q2[k];
                if (l2 != q) fail(der, "S" + std::to_string(i) + "(" + nm(a) + nm(b) + ")");
            }
        }
    return {par, ses, der};
}

namespace {

int pre_sign(int pa, int N) { return sign_of(pa * (N + 1)); }

}  // namespace

CoissonOp mc_from_pva(const SusyPvaPresentation& P, bool check) {
    if (check) {
        Report r = check_compatibility(P);
        if (!report_ok(r)) throw Error("presentation is not H-compatible:\n" + report_str(r));
    }
    Algebra A(P);
    const int d = A.d, N = A.N;
    HModule Vt = parity_shift(P.V, N + 1);
    CoissonOp X(Vt, 2, 1);
    const int edgeless = lines_index({{0}, {1}}, 2), edge = lines_index({{0, 1}}, 2);
    const IndexSet full = full_set(N);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const int t = a * d + b, s = pre_sign(A.par(a), N);
            X.at(edgeless, t) = A.br(a, b).scaled(s);
            Poly e(N, 1, A.var);
            for (IndexSet I = 0; I <= full; ++I) {
                Vec x = A.mu(S_power(P.V, I, basis_vec(d, a)), basis_vec(d, b));
                if (is_zero(x)) continue;
                int c = sign_of(popcount(I) * (N + 1)) * complement_sign(I, N);
                e += theta_mono(P.V, 1, {full & ~I}) * A.vec(x, 1).scaled(c);
            }
            X.at(edge, t) = e.scaled(s);
        }
    return X;
}

SusyPvaPresentation pva_from_mc(const CoissonOp& X) {
    if (X.arity() != 2) throw Error("pva_from_mc: expected an operation of arity 2");
    const int N = X.module().N(), d = X.dim();
    HModule V = parity_shift(X.module(), N + 1);
    SusyPvaPresentation P = SusyPvaPresentation::zero(V);
    const int edgeless = lines_index({{0}, {1}}, 2), edge = lines_index({{0, 1}}, 2);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const int t = a * d + b, s = pre_sign(V.basis_parity(a), N);
            P.br[t] = X.at(edgeless, t).scaled(s);
            Vec x = poly_vec(residue(X.at(edge, t), 0), d);
            for (auto& c : x) c *= s;
            P.prod[t] = x;
        }
    return P;
}

Report check_pva_axioms(const SusyPvaPresentation& P) {
    Report rep = check_compatibility(P);
    Algebra A(P);
    const HModule& V = P.V;
    const int d = A.d, N = A.N;
    auto nm = [&](int a) { return V.names()[a]; };
    CheckItem skew{"skew-symmetry", true, ""}, jac{"Jacobi", true, ""}, com{"commutativity", true, ""},
        ass{"associativity", true, ""}, leib{"Leibniz", true, ""};
    auto fail = [](CheckItem& it, const std::string& w) {
        if (!it.ok) return;
        it.ok = false;
        it.witness = w;
    };
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            // {b_L a} = -(-1)^{p(a)p(b)+N} {a_{-L-nabla} b}
            Poly flipped = reduce_last(lift(A.br(a, b), 1, 2), V);
            if (A.br(b, a) != flipped.scaled(-sign_of(A.par(a) * A.par(b) + N))) fail(skew, nm(a) + "," + nm(b));
            Vec ba = A.mu(b, a), ab = A.mu(a, b);
            for (auto& x : ab) x *= sign_of(A.par(a) * A.par(b));
            if (ba != ab) fail(com, nm(a) + "," + nm(b));
            for (int c = 0; c < d; ++c) {
                const std::string abc = nm(a) + "," + nm(b) + "," + nm(c);
                const Vec ea = basis_vec(d, a), eb = basis_vec(d, b), ec = basis_vec(d, c);
                if (A.mu(A.mu(ea, eb), ec) != A.mu(ea, A.mu(eb, ec))) fail(ass, abc);
                auto nb = nested_brackets(P, a, b, c);
                Poly rhs = nb.inner_left.scaled(sign_of(((A.par(a) + N) * N))) +
                           nb.swapped.scaled(sign_of((A.par(a) + N) * (A.par(b) + N)));
                if (nb.inner_right != rhs) fail(jac, abc);
                // {a_L bc} = {a_L b}c + (-1)^{(p(a)+N)p(b)} b{a_L c}
                Poly lhs = A.br_vec(a, A.mu(b, c));
                Poly r1 = A.mu(A.br(a, b), A.vec(ec, 1));
                Poly r2 = A.mu(A.vec(eb, 1), A.br(a, c)).scaled(sign_of((A.par(a) + N) * A.par(b)));
                if (lhs != r1 + r2) fail(leib, abc);
            }
        }
    rep.push_back(skew);
    rep.push_back(jac);
    rep.push_back(com);
    rep.push_back(ass);
    rep.push_back(leib);
    return rep;
}

XsqComponents xsq_components_explicit(const CoissonOp& X) {
    if (X.arity() != 2) throw Error("expected an operation of arity 2");
    SusyPvaPresentation P = pva_from_mc(X);
    Algebra A(P);
    const HModule& V = P.V;
    const int d = A.d, N = A.N;
    const Variant var = A.var;
    const IndexSet full = full_set(N);
    XsqComponents r;
    for (int t = 0; t < tensor_count(d, 3); ++t) {
        auto w = decode_tensor(t, d, 3);
        const int a = w[0], b = w[1], c = w[2];
        const int pa = A.par(a), pb = A.par(b), pta = (pa + N + 1) & 1;
        const Vec ea = basis_vec(d, a), eb = basis_vec(d, b), ec = basis_vec(d, c);

        auto nb = nested_brackets(P, a, b, c);
        Poly jac = nb.inner_right - nb.inner_left.scaled(sign_of((pa + N) * N)) -
                   nb.swapped.scaled(sign_of((pa + N) * (pb + N)));
        r.jacobi.push_back(jac.scaled(sign_of(N + 1) * sign_of(pa * N) * sign_of(pb * (N + 1))));

        Poly leib(N, 2, var);
        for (IndexSet I = 0; I <= full; ++I) {
            const int nI = popcount(I);
            Vec sb = S_power(V, I, eb);
            Poly inner = A.br_vec(a, A.mu(sb, ec)) - A.mu(A.br_vec(a, sb), A.vec(ec, 1)) -
                         A.mu(A.vec(sb, 1), A.br(a, c)).scaled(sign_of((pa + N) * (pb + nI)));
            Poly th = theta_mono(V, 2, {0, full & ~I});
            leib += (th * lift(inner, 0, 2)).scaled(sign_of(pta * nI) * complement_sign(I, N));
        }
        r.leibniz.push_back(leib.scaled(sign_of(pb * (N + 1) + 1)));

        Poly ass(N, 2, var);
        for (IndexSet I = 0; I <= full; ++I)
            for (IndexSet J = 0; J <= full; ++J) {
                const int nI = popcount(I), nJ = popcount(J);
                Vec sa = S_power(V, I, ea), sb = S_power(V, J, eb);
                Vec x = A.mu(A.mu(sa, sb), ec), y = A.mu(sa, A.mu(sb, ec));
                for (int k = 0; k < d; ++k) x[k] -= y[k];
                if (is_zero(x)) continue;
                int s = sign_of(pa * nJ) * sign_of(nI * nJ + nI) * complement_sign(I, N) * complement_sign(J, N);
                ass += theta_mono(V, 2, {full & ~I, full & ~J}) * A.vec(x, 2).scaled(s);
            }
        r.assoc.push_back(ass.scaled(sign_of(pb * (N + 1)) * sign_of(N)));
    }
    return r;
}

// ---------------------------------------------------------------- SUSY vertex algebras

Vec quasi_commutator(const SusyPvaPresentation& P, int a, int b) {
    const HModule& V = P.V;
    Mat mT = V.T();
    for (auto& row : mT)
        for (auto& x : row) x = -x;
    return poly_vec(integrate(mT, zero_mat(V.dim(), V.dim()), P.br[a * V.dim() + b]), V.dim());
}

Report check_susy_va_axioms(const SusyPvaPresentation& P, const std::optional<Vec>& vacuum) {
    Algebra A(P);
    const HModule& V = P.V;
    const int d = A.d, N = A.N;
    const IndexSet full = full_set(N);
    auto nm = [&](int a) { return V.names()[a]; };
    Report compat = check_compatibility(P);
    CheckItem der = compat[2];
    CheckItem qc{"quasi-commutativity", true, ""}, qa{"quasi-associativity", true, ""}, wick{"Wick formula", true, ""};
    auto fail = [](CheckItem& it, const std::string& w) {
        if (!it.ok) return;
        it.ok = false;
        it.witness = w;
    };
    // (int_0^T dLambda x) applied to a V-valued polynomial in one variable
    auto int_T = [&](const Vec& x, const Poly& f) {
        Vec r(d, Scalar(0));
        for (auto& [t, c] : f.terms()) {
            if (t.m.th[0] != full) continue;
            Vec y = x;
            for (int j = 0; j <= t.m.e[0]; ++j) y = mat_vec(V.T(), y);
            Vec z = A.mu(y, basis_vec(d, t.t[0]));
            for (int k = 0; k < d; ++k) r[k] += z[k] * c / (t.m.e[0] + 1);
        }
        return r;
    };
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const Vec ea = basis_vec(d, a), eb = basis_vec(d, b);
            Vec lhs = A.mu(a, b), ba = A.mu(b, a), corr = quasi_commutator(P, a, b);
            for (int k = 0; k < d; ++k) lhs[k] -= sign_of(A.par(a) * A.par(b)) * ba[k];
            if (lhs != corr) fail(qc, nm(a) + "," + nm(b));
            for (int c = 0; c < d; ++c) {
                const std::string abc = nm(a) + "," + nm(b) + "," + nm(c);
                const Vec ec = basis_vec(d, c);
                Vec l = A.mu(A.mu(ea, eb), ec), r = A.mu(ea, A.mu(eb, ec));
                Vec x1 = int_T(ea, A.br(b, c)), x2 = int_T(eb, A.br(a, c));
                for (int k = 0; k < d; ++k) {
                    l[k] -= r[k];
                    x1[k] += sign_of(A.par(a) * A.par(b)) * x2[k];
                }
                if (l != x1) fail(qa, abc);
                // [a_L bc] = [a_L b]c + (-1)^{(p(a)+N)p(b)} b[a_L c] + int_0^lambda dGamma [[a_L b]_Gamma c]
                Poly wl = A.br_vec(a, A.mu(eb, ec));
                Poly wr = A.mu(A.br(a, b), A.vec(ec, 1)) +
                          A.mu(A.vec(eb, 1), A.br(a, c)).scaled(sign_of((A.par(a) + N) * A.par(b)));
                Poly nest(N, 2, A.var);
                const Poly ab = lift(A.br(a, b), 0, 2);
                for (auto& [t, k] : ab.terms())
                    nest += Poly::monomial(N, A.var, t.m, {}, k) * lift(A.br(t.t[0], c), 1, 2);
                // the Gamma factor stands next to the vector in normal order; integrate it there
                for (auto& [t, k] : nest.terms()) {
                    if (t.m.th[1] != full) continue;
                    Mono m(1);
                    m.e[0] = t.m.e[0] + t.m.e[1] + 1;
                    m.th[0] = t.m.th[0];
                    wr.add(m, t.t, k / (t.m.e[1] + 1));
                }
                if (wl != wr) fail(wick, abc);
            }
        }
    Report rep{der, qc, qa, wick};
    if (vacuum) {
        CheckItem vac{"vacuum", true, ""};
        if (static_cast<int>(vacuum->size()) != d) throw Error("vacuum vector has the wrong dimension");
        for (int a = 0; a < d; ++a) {
            Vec ea = basis_vec(d, a);
            if (A.mu(ea, *vacuum) != ea || A.mu(*vacuum, ea) != ea) fail(vac, nm(a));
        }
        rep.push_back(vac);
    }
    return rep;
}

}  // namespace pvac
