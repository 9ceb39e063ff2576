#include "pvac/finite_op.hpp"

#include <sstream>

#include "pvac/symgrp.hpp"

namespace pvac {

FiniteOp::FiniteOp(int n, int d)
    : n_(n), d_(d), nt_(tensor_count(d, n)), nl_(static_cast<int>(line_basis(n).size())) {
    tab_.assign(static_cast<std::size_t>(nl_) * nt_, Vec(d, Scalar(0)));
}

FiniteOp FiniteOp::identity(int d) {
    FiniteOp f(1, d);
    for (int b = 0; b < d; ++b) f.at(0, b)[b] = 1;
    return f;
}

Vec FiniteOp::eval(const Quiver& q, int t) const {
    if (q.n() != n_) throw Error("eval: arity mismatch");
    Vec r(d_, Scalar(0));
    for (auto& [l, c] : reduce_indexed(q)) {
        const Vec& v = at(l, t);
        for (int k = 0; k < d_; ++k)
            if (sgn(v[k]) != 0) r[k] += c * v[k];
    }
    return r;
}

Vec FiniteOp::eval_vectors(const Quiver& q, const std::vector<Vec>& args) const {
    if (static_cast<int>(args.size()) != n_) throw Error("eval_vectors: arity mismatch");
    const auto& red = reduce_indexed(q);
    Vec r(d_, Scalar(0));
    if (red.empty()) return r;
    std::vector<std::vector<int>> nz(n_);
    for (int i = 0; i < n_; ++i)
        for (int b = 0; b < d_; ++b)
            if (sgn(args[i][b]) != 0) nz[i].push_back(b);
    for (auto& z : nz)
        if (z.empty()) return r;
    std::vector<std::size_t> pos(n_, 0);
    while (true) {
        int t = 0;
        Scalar c = 1;
        for (int i = 0; i < n_; ++i) {
            int b = nz[i][pos[i]];
            t = t * d_ + b;
            c *= args[i][b];
        }
        for (auto& [l, x] : red) {
            const Vec& v = at(l, t);
            for (int k = 0; k < d_; ++k)
                if (sgn(v[k]) != 0) r[k] += c * x * v[k];
        }
        int i = n_ - 1;
        while (i >= 0 && ++pos[i] == nz[i].size()) pos[i--] = 0;
        if (i < 0) break;
    }
    return r;
}

FiniteOp FiniteOp::operator+(const FiniteOp& o) const {
    if (n_ != o.n_ || d_ != o.d_) throw Error("finite operations of different shape");
    FiniteOp r = *this;
    for (std::size_t i = 0; i < tab_.size(); ++i)
        for (int k = 0; k < d_; ++k) r.tab_[i][k] += o.tab_[i][k];
    return r;
}

FiniteOp FiniteOp::operator-(const FiniteOp& o) const { return *this + o.scaled(-1); }

FiniteOp FiniteOp::scaled(const Scalar& c) const {
    FiniteOp r = *this;
    for (auto& v : r.tab_)
        for (auto& x : v) x *= c;
    return r;
}

bool FiniteOp::is_zero() const {
    for (auto& v : tab_)
        if (!pvac::is_zero(v)) return false;
    return true;
}

Vec FiniteOp::flat() const {
    Vec out;
    out.reserve(tab_.size() * d_);
    for (auto& v : tab_) out.insert(out.end(), v.begin(), v.end());
    return out;
}

FiniteOp FiniteOp::from_flat(int n, int d, const Vec& v) {
    FiniteOp f(n, d);
    if (v.size() != f.tab_.size() * d) throw Error("from_flat: size mismatch");
    for (std::size_t i = 0; i < f.tab_.size(); ++i)
        for (int k = 0; k < d; ++k) f.tab_[i][k] = v[i * d + k];
    return f;
}

FiniteOp fn_act(const Perm& sigma, const FiniteOp& f) {
    const int n = f.arity(), d = f.dim();
    if (static_cast<int>(sigma.size()) != n) throw Error("fn_act: permutation size mismatch");
    FiniteOp g(n, d);
    const auto& L = line_basis(n);
    for (int l = 0; l < f.lines(); ++l) {
        Quiver q = act(sigma, lines_quiver(L[l], n));
        const auto& red = reduce_indexed(q);
        for (int t = 0; t < f.tensors(); ++t) {
            int st = encode_tensor(act_on_word(sigma, decode_tensor(t, d, n)), d);
            Vec& out = g.at(l, t);
            for (auto& [l2, c] : red) {
                const Vec& v = f.at(l2, st);
                for (int k = 0; k < d; ++k)
                    if (sgn(v[k]) != 0) out[k] += c * v[k];
            }
        }
    }
    return g;
}

FiniteOp fn_compose(const FiniteOp& f, const std::vector<FiniteOp>& gs) {
    if (static_cast<int>(gs.size()) != f.arity()) throw Error("fn_compose: arity mismatch");
    const int d = f.dim();
    std::vector<int> nu;
    int n = 0;
    for (auto& g : gs) {
        if (g.dim() != d) throw Error("fn_compose: dimension mismatch");
        nu.push_back(g.arity());
        n += g.arity();
    }
    FiniteOp r(n, d);
    const auto& L = line_basis(n);
    for (int l = 0; l < r.lines(); ++l) {
        Cocomposition c = cocompose(nu, lines_quiver(L[l], n));
        for (int t = 0; t < r.tensors(); ++t) {
            auto v = decode_tensor(t, d, n);
            std::vector<Vec> ys;
            for (std::size_t j = 0; j < gs.size(); ++j) {
                std::vector<int> part(v.begin() + c.offset[j], v.begin() + c.offset[j] + nu[j]);
                ys.push_back(gs[j].eval(c.blocks[j], encode_tensor(part, d)));
            }
            r.at(l, t) = f.eval_vectors(c.delta0, ys);
        }
    }
    return r;
}

FiniteOp fn_circ1(const FiniteOp& f, const FiniteOp& g) {
    std::vector<FiniteOp> gs{g};
    for (int i = 1; i < f.arity(); ++i) gs.push_back(FiniteOp::identity(f.dim()));
    return fn_compose(f, gs);
}

bool is_sign_invariant(const FiniteOp& f) {
    const int n = f.arity();
    for (int i = 0; i + 1 < n; ++i) {
        Perm tau = identity_perm(n);
        std::swap(tau[i], tau[i + 1]);
        if (!(fn_act(tau, f) == f.scaled(-1))) return false;
    }
    return true;
}

FiniteOp sign_symmetrize(const FiniteOp& f) {
    FiniteOp acc(f.arity(), f.dim());
    auto perms = all_perms(f.arity());
    for (auto& s : perms) acc = acc + fn_act(s, f).scaled(perm_sign(s));
    return acc.scaled(Scalar(1, static_cast<long>(perms.size())));
}

FiniteOp fn_box(const FiniteOp& f, const FiniteOp& g) {
    FiniteOp c = fn_circ1(f, g);
    FiniteOp acc(c.arity(), c.dim());
    for (auto& s : shuffles(g.arity(), f.arity() - 1)) acc = acc + fn_act(inverse(s), c).scaled(perm_sign(s));
    return acc;
}

FiniteOp fn_bracket(const FiniteOp& f, const FiniteOp& g) {
    int df = f.arity() - 1, dg = g.arity() - 1;
    return fn_box(f, g) - fn_box(g, f).scaled(sign_of(df * dg));
}

FiniteOp fn_bracket_explicit(const FiniteOp& X, const FiniteOp& Y) {
    if (X.arity() != 2) throw Error("explicit bracket needs an arity-2 X");
    const int n = Y.arity(), d = X.dim(), N1 = n + 1;
    FiniteOp R(N1, d);
    const auto& L = line_basis(N1);
    const Scalar second = -sign_of(n - 1);
    for (int l = 0; l < R.lines(); ++l) {
        Quiver G = lines_quiver(L[l], N1);
        for (int t = 0; t < R.tensors(); ++t) {
            auto v = decode_tensor(t, d, N1);
            Vec out(d, Scalar(0));
            // Y on everything but j, X on (Y(...), v_j)
            for (int j = 0; j < N1; ++j) {
                Quiver rest(n), pair(2);
                auto idx = [j](int x) { return x < j ? x : x - 1; };
                for (auto& e : G.edges()) {
                    if (e.s != j && e.t != j) rest.add_edge(idx(e.s), idx(e.t));
                    else if (e.t == j) pair.add_edge(0, 1);
                    else pair.add_edge(1, 0);
                }
                std::vector<int> w;
                for (int i = 0; i < N1; ++i)
                    if (i != j) w.push_back(i);
                std::vector<int> wv;
                for (int i : w) wv.push_back(v[i]);
                Vec y = Y.eval(rest, encode_tensor(wv, d));
                Vec vj(d, Scalar(0));
                vj[v[j]] = 1;
                Vec x = X.eval_vectors(pair, {y, vj});
                Scalar s = sign_of(n - j);
                for (int k = 0; k < d; ++k) out[k] += s * x[k];
            }
            // X on (v_j, v_k), Y on the collapsed quiver
            for (int j = 0; j < N1; ++j)
                for (int k = j + 1; k < N1; ++k) {
                    Quiver inner(2), outer(n);
                    auto idx = [j, k](int x) {
                        if (x == j || x == k) return 0;
                        return x - (x > j) - (x > k) + 1;
                    };
                    for (auto& e : G.edges()) {
                        bool sj = e.s == j || e.s == k, tj = e.t == j || e.t == k;
                        if (sj && tj) inner.add_edge(e.s == j ? 0 : 1, e.t == j ? 0 : 1);
                        else outer.add_edge(idx(e.s), idx(e.t));
                    }
                    Vec a(d, Scalar(0)), b(d, Scalar(0));
                    a[v[j]] = 1;
                    b[v[k]] = 1;
                    Vec x = X.eval_vectors(inner, {a, b});
                    std::vector<Vec> args{x};
                    for (int i = 0; i < N1; ++i) {
                        if (i == j || i == k) continue;
                        Vec e(d, Scalar(0));
                        e[v[i]] = 1;
                        args.push_back(e);
                    }
                    Vec y = Y.eval_vectors(outer, args);
                    Scalar s = second * sign_of(j + k - 1);
                    for (int m = 0; m < d; ++m) out[m] += s * y[m];
                }
            R.at(l, t) = out;
        }
    }
    return R;
}

PoissonPresentation PoissonPresentation::zero(int d) {
    PoissonPresentation P;
    P.d = d;
    for (int b = 0; b < d; ++b) P.names.push_back("e" + std::to_string(b + 1));
    P.prod.assign(d * d, Vec(d, Scalar(0)));
    P.br.assign(d * d, Vec(d, Scalar(0)));
    return P;
}

namespace {

Vec bil(const std::vector<Vec>& tab, int d, const Vec& x, const Vec& y) {
    Vec r(d, Scalar(0));
    for (int a = 0; a < d; ++a) {
        if (sgn(x[a]) == 0) continue;
        for (int b = 0; b < d; ++b) {
            if (sgn(y[b]) == 0) continue;
            const Vec& v = tab[a * d + b];
            for (int k = 0; k < d; ++k) r[k] += x[a] * y[b] * v[k];
        }
    }
    return r;
}

Vec unit(int d, int a) {
    Vec v(d, Scalar(0));
    v[a] = 1;
    return v;
}

Vec vadd(Vec a, const Vec& b, const Scalar& c = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
    return a;
}

}  // namespace

Report check_poisson_direct(const PoissonPresentation& P) {
    const int d = P.d;
    Report rep;
    auto nm = [&](int a) { return P.names.empty() ? "e" + std::to_string(a + 1) : P.names[a]; };
    auto item = [&](const std::string& name, auto&& test) {
        CheckItem it{name, true, ""};
        test(it);
        rep.push_back(it);
    };
    auto mul = [&](const Vec& x, const Vec& y) { return bil(P.prod, d, x, y); };
    auto br = [&](const Vec& x, const Vec& y) { return bil(P.br, d, x, y); };
    item("commutativity", [&](CheckItem& it) {
        for (int a = 0; a < d && it.ok; ++a)
            for (int b = 0; b < d && it.ok; ++b)
                if (P.prod[a * d + b] != P.prod[b * d + a]) {
                    it.ok = false;
                    it.witness = nm(a) + "," + nm(b);
                }
    });
    item("associativity", [&](CheckItem& it) {
        for (int a = 0; a < d && it.ok; ++a)
            for (int b = 0; b < d && it.ok; ++b)
                for (int c = 0; c < d && it.ok; ++c)
                    if (mul(mul(unit(d, a), unit(d, b)), unit(d, c)) != mul(unit(d, a), mul(unit(d, b), unit(d, c)))) {
                        it.ok = false;
                        it.witness = nm(a) + "," + nm(b) + "," + nm(c);
                    }
    });
    item("antisymmetry", [&](CheckItem& it) {
        for (int a = 0; a < d && it.ok; ++a)
            for (int b = 0; b < d && it.ok; ++b)
                if (!is_zero(vadd(P.br[a * d + b], P.br[b * d + a]))) {
                    it.ok = false;
                    it.witness = nm(a) + "," + nm(b);
                }
    });
    item("Jacobi", [&](CheckItem& it) {
        for (int a = 0; a < d && it.ok; ++a)
            for (int b = 0; b < d && it.ok; ++b)
                for (int c = 0; c < d && it.ok; ++c) {
                    Vec ea = unit(d, a), eb = unit(d, b), ec = unit(d, c);
                    Vec j = vadd(vadd(br(ea, br(eb, ec)), br(eb, br(ec, ea))), br(ec, br(ea, eb)));
                    if (!is_zero(j)) {
                        it.ok = false;
                        it.witness = nm(a) + "," + nm(b) + "," + nm(c);
                    }
                }
    });
    item("Leibniz", [&](CheckItem& it) {
        for (int a = 0; a < d && it.ok; ++a)
            for (int b = 0; b < d && it.ok; ++b)
                for (int c = 0; c < d && it.ok; ++c) {
                    Vec ea = unit(d, a), eb = unit(d, b), ec = unit(d, c);
                    Vec l = vadd(br(ea, mul(eb, ec)), vadd(mul(br(ea, eb), ec), mul(eb, br(ea, ec))), -1);
                    if (!is_zero(l)) {
                        it.ok = false;
                        it.witness = nm(a) + "," + nm(b) + "," + nm(c);
                    }
                }
    });
    return rep;
}

FiniteOp mc_from_poisson(const PoissonPresentation& P) {
    FiniteOp X(2, P.d);
    int edgeless = lines_index({{0}, {1}}, 2), line = lines_index({{0, 1}}, 2);
    for (int a = 0; a < P.d; ++a)
        for (int b = 0; b < P.d; ++b) {
            X.at(edgeless, a * P.d + b) = P.br[a * P.d + b];
            X.at(line, a * P.d + b) = P.prod[a * P.d + b];
        }
    return X;
}

PoissonPresentation poisson_from_mc(const FiniteOp& X) {
    if (X.arity() != 2) throw Error("poisson_from_mc: arity must be 2");
    PoissonPresentation P = PoissonPresentation::zero(X.dim());
    int edgeless = lines_index({{0}, {1}}, 2), line = lines_index({{0, 1}}, 2);
    for (int t = 0; t < X.tensors(); ++t) {
        P.br[t] = X.at(edgeless, t);
        P.prod[t] = X.at(line, t);
    }
    return P;
}

Report fn_mc_check(const FiniteOp& X) {
    Report rep;
    if (X.arity() != 2) throw Error("MC check needs an arity-2 element");
    CheckItem inv{"sign invariance", is_sign_invariant(X), ""};
    if (!inv.ok) inv.witness = "X^(12) != -X";
    rep.push_back(inv);
    FiniteOp XX = fn_box(X, X);
    const auto& L = line_basis(3);
    const char* names[3] = {"Jacobi component (. . .)", "Leibniz component (. .->.)", "associativity component (.->.->.)"};
    CheckItem items[3];
    for (int c = 0; c < 3; ++c) items[c] = {names[c], true, ""};
    for (int l = 0; l < XX.lines(); ++l) {
        int edges = 3 - static_cast<int>(L[l].size());
        for (int t = 0; t < XX.tensors(); ++t)
            if (!is_zero(XX.at(l, t)) && items[edges].ok) {
                items[edges].ok = false;
                auto v = decode_tensor(t, X.dim(), 3);
                items[edges].witness = "lines " + lines_str(L[l]) + " on e" + std::to_string(v[0] + 1) + ",e" +
                                       std::to_string(v[1] + 1) + ",e" + std::to_string(v[2] + 1);
            }
    }
    for (auto& i : items) rep.push_back(i);
    return rep;
}

bool is_mc(const FiniteOp& X) { return report_ok(fn_mc_check(X)); }

FiniteOp bigrade(const FiniteOp& f, int p) {
    FiniteOp r(f.arity(), f.dim());
    const auto& L = line_basis(f.arity());
    for (int l = 0; l < f.lines(); ++l) {
        if (static_cast<int>(L[l].size()) != p) continue;
        for (int t = 0; t < f.tensors(); ++t) r.at(l, t) = f.at(l, t);
    }
    return r;
}

SplitDifferential split_differential(const FiniteOp& X) {
    if (!is_mc(X)) throw Error("split_differential: X is not a Maurer-Cartan element");
    return {bigrade(X, 2), bigrade(X, 1)};
}

FiniteOp fn_differential(const FiniteOp& X, const FiniteOp& f) { return fn_bracket(X, f); }

int g_dimension_character(int n, int d, int p) {
    const auto& L = line_basis(n);
    Scalar total = 0;
    for (auto& s : all_perms(n)) {
        Scalar chi = 0;
        for (int l = 0; l < static_cast<int>(L.size()); ++l) {
            if (static_cast<int>(L[l].size()) != p) continue;
            for (auto& [l2, c] : reduce_indexed(act(s, lines_quiver(L[l], n))))
                if (l2 == l) chi += c;
        }
        // cycles of s
        std::vector<char> seen(n, 0);
        int cyc = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            ++cyc;
            for (int j = i; !seen[j]; j = s[j]) seen[j] = 1;
        }
        Scalar u = d;
        for (int i = 0; i < cyc; ++i) u *= d;
        total += perm_sign(s) * chi * u;
    }
    total /= factorial(n);
    if (total.get_den() != 1) throw Error("character formula gave a non-integer dimension");
    return static_cast<int>(total.get_num().get_si());
}

}  // namespace pvac
