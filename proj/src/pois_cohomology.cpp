#include "pvac/pois_cohomology.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <mutex>

#include "pvac/quiver.hpp"
#include "pvac/symgrp.hpp"

namespace pvac {

namespace {

int ipow(int d, int n) { return tensor_count(d, n); }

Vec zeros(int d) { return Vec(d, Scalar(0)); }

void axpy(Vec& y, const Scalar& c, const Vec& x) {
    if (sgn(c) == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (sgn(x[i]) != 0) y[i] += c * x[i];
}

int cycles(const Perm& s) {
    std::vector<char> seen(s.size(), 0);
    int c = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (seen[i]) continue;
        ++c;
        for (std::size_t j = i; !seen[j]; j = s[j]) seen[j] = 1;
    }
    return c;
}

}  // namespace

Vec Bilinear::apply(const Vec& x, const Vec& y) const {
    Vec r = zeros(dout);
    for (int a = 0; a < d1; ++a) {
        if (sgn(x[a]) == 0) continue;
        for (int b = 0; b < d2; ++b) {
            if (sgn(y[b]) == 0) continue;
            axpy(r, x[a] * y[b], t[a * d2 + b]);
        }
    }
    return r;
}

Vec Bilinear::apply_basis(int a, const Vec& y) const {
    Vec r = zeros(dout);
    for (int b = 0; b < d2; ++b)
        if (sgn(y[b]) != 0) axpy(r, y[b], t[a * d2 + b]);
    return r;
}

Bilinear product_of(const PoissonPresentation& P) { return {P.d, P.d, P.d, P.prod}; }
Bilinear bracket_of(const PoissonPresentation& P) { return {P.d, P.d, P.d, P.br}; }

Cochain::Cochain(int n_, int d_, int dm_) : n(n_), d(d_), dm(dm_), v(ipow(d_, n_), zeros(dm_)) {}

Vec Cochain::eval(const std::vector<int>& word) const { return v.at(encode_tensor(word, d)); }

Cochain Cochain::operator+(const Cochain& o) const {
    if (n != o.n || d != o.d || dm != o.dm) throw Error("cochains of different shape");
    Cochain r = *this;
    for (std::size_t i = 0; i < v.size(); ++i) axpy(r.v[i], 1, o.v[i]);
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(-1); }

Cochain Cochain::scaled(const Scalar& c) const {
    Cochain r = *this;
    for (auto& x : r.v)
        for (auto& y : x) y *= c;
    return r;
}

bool Cochain::is_zero() const {
    for (auto& x : v)
        if (!pvac::is_zero(x)) return false;
    return true;
}

Vec Cochain::flat() const {
    Vec out;
    out.reserve(v.size() * dm);
    for (auto& x : v) out.insert(out.end(), x.begin(), x.end());
    return out;
}

Cochain Cochain::from_flat(int n, int d, int dm, const Vec& x) {
    Cochain c(n, d, dm);
    if (x.size() != c.v.size() * dm) throw Error("cochain from_flat: size mismatch");
    for (std::size_t t = 0; t < c.v.size(); ++t)
        for (int k = 0; k < dm; ++k) c.v[t][k] = x[t * dm + k];
    return c;
}

Cochain random_cochain(std::mt19937& rng, int n, int d, int dm) {
    Cochain c(n, d, dm);
    std::uniform_int_distribution<int> u(-3, 3);
    for (auto& x : c.v)
        for (auto& y : x) y = u(rng);
    return c;
}

Cochain hochschild_coboundary(const Bilinear& prod, const Bilinear& act, const Cochain& f) {
    const int n = f.n, d = f.d;
    Cochain r(n + 1, d, f.dm);
    for (int t = 0; t < ipow(d, n + 1); ++t) {
        Word w = decode_tensor(t, d, n + 1);
        Vec out = zeros(f.dm);
        axpy(out, 1, act.apply_basis(w[0], f.eval(Word(w.begin() + 1, w.end()))));
        for (int i = 1; i <= n; ++i) {
            const Vec& ab = prod.t[w[i - 1] * d + w[i]];
            Word x;
            x.insert(x.end(), w.begin(), w.begin() + i - 1);
            x.push_back(0);
            x.insert(x.end(), w.begin() + i + 1, w.end());
            for (int k = 0; k < d; ++k) {
                if (sgn(ab[k]) == 0) continue;
                x[i - 1] = k;
                axpy(out, sign_of(i) * ab[k], f.eval(x));
            }
        }
        axpy(out, sign_of(n + 1), act.apply_basis(w[n], f.eval(Word(w.begin(), w.begin() + n))));
        r.v[t] = out;
    }
    return r;
}

Cochain eulerian_project(const Cochain& f, int p) {
    const int n = f.n;
    Cochain r(n, f.d, f.dm);
    if (p < 1 || p > n) return r;
    const auto e = eulerian(n)[p - 1];
    auto perms = all_perms(n);
    std::vector<std::pair<Perm, Scalar>> terms;
    for (auto& s : perms) {
        Scalar c = e.coeff(s);
        if (sgn(c) != 0) terms.push_back({s, c * perm_sign(s)});
    }
    for (std::size_t t = 0; t < r.v.size(); ++t) {
        Word w = decode_tensor(static_cast<int>(t), f.d, n);
        Vec out = zeros(f.dm);
        for (auto& [s, c] : terms) axpy(out, c, f.eval(act_on_word(s, w)));
        r.v[t] = out;
    }
    return r;
}

int eulerian_rank(int n, int d, int p) {
    if (p < 1 || p > n) return 0;
    const auto e = eulerian(n)[p - 1];
    Scalar tr = 0;
    for (auto& s : all_perms(n)) {
        Scalar c = e.coeff(s);
        if (sgn(c) == 0) continue;
        Scalar u = 1;
        for (int i = cycles(s); i > 0; --i) u *= d;
        tr += c * perm_sign(s) * u;
    }
    if (tr.get_den() != 1) throw Error("eulerian_rank: non-integral trace");
    return static_cast<int>(tr.get_num().get_si());
}

Vec HarrisonSpace::project(const Vec& x0) const {
    Vec x = x0;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        int c = pivots[i];
        if (sgn(x[c]) != 0) axpy(x, -x[c], relations[i]);
    }
    Vec out;
    for (int b : basis) out.push_back(x[b]);
    return out;
}

HarrisonSpace harrison_space(int d, int n) {
    if (n > max_arity()) throw BoundError("bound exceeded: Harrison degree " + std::to_string(n));
    HarrisonSpace H;
    H.n = n;
    H.d = d;
    const int T = ipow(d, n);
    Mat rows;
    for (int r = 1; r < n; ++r) {
        auto sh = shuffles(r, n - r);
        for (int t = 0; t < T; ++t) {
            Word w = decode_tensor(t, d, n);
            Vec row = zeros(T);
            for (auto& s : sh) row[encode_tensor(act_on_word(s, w), d)] += perm_sign(s);
            rows.push_back(row);
        }
    }
    if (!rows.empty()) {
        H.pivots = rref(rows);
        rows.resize(H.pivots.size());
    }
    H.relations = rows;
    std::vector<char> piv(T, 0);
    for (int c : H.pivots) piv[c] = 1;
    for (int t = 0; t < T; ++t)
        if (!piv[t]) H.basis.push_back(t);
    return H;
}

bool is_harrison_cochain(const Cochain& f, const HarrisonSpace& H) {
    for (auto& row : H.relations)
        for (int k = 0; k < f.dm; ++k) {
            Scalar s = 0;
            for (std::size_t t = 0; t < row.size(); ++t)
                if (sgn(row[t]) != 0) s += row[t] * f.v[t][k];
            if (sgn(s) != 0) return false;
        }
    return true;
}

Vec hochschild_chain_boundary(const Bilinear& prod, const Bilinear& act, const Word& w, int m) {
    const int n = static_cast<int>(w.size()), d = prod.d1, dm = act.dout;
    Vec out = zeros(ipow(d, n - 1) * dm);
    if (n <= 1) return out;  // the boundary out of degree one is zero
    auto add = [&](const Word& x, const Vec& mv, const Scalar& c) {
        int t = encode_tensor(x, d);
        for (int k = 0; k < dm; ++k) out[t * dm + k] += c * mv[k];
    };
    Vec em = zeros(dm);
    em[m] = 1;
    add(Word(w.begin() + 1, w.end()), act.apply_basis(w[0], em), 1);
    for (int i = 1; i < n; ++i) {
        const Vec& ab = prod.t[w[i - 1] * d + w[i]];
        for (int k = 0; k < d; ++k) {
            if (sgn(ab[k]) == 0) continue;
            Word x(w.begin(), w.begin() + i - 1);
            x.push_back(k);
            x.insert(x.end(), w.begin() + i + 1, w.end());
            add(x, em, sign_of(i) * ab[k]);
        }
    }
    add(Word(w.begin(), w.end() - 1), act.apply_basis(w[n - 1], em), sign_of(n));
    return out;
}

HarrisonBoundary harrison_boundary(const Bilinear& prod, const Bilinear& act, int n) {
    const int d = prod.d1, dm = act.dout;
    HarrisonSpace src = harrison_space(d, n);
    HarrisonSpace dst = harrison_space(d, std::max(n - 1, 0));
    auto project_chain = [&](const Vec& c) {
        // c is laid out tensor*dm + m; project every module slice
        Vec out(dst.dim() * dm, Scalar(0));
        for (int k = 0; k < dm; ++k) {
            Vec slice(ipow(d, std::max(n - 1, 0)), Scalar(0));
            for (std::size_t t = 0; t < slice.size(); ++t) slice[t] = c[t * dm + k];
            Vec q = dst.project(slice);
            for (int i = 0; i < dst.dim(); ++i) out[i * dm + k] = q[i];
        }
        return out;
    };
    HarrisonBoundary hb;
    hb.matrix = zero_mat(dst.dim() * dm, src.dim() * dm);
    for (int i = 0; i < src.dim(); ++i) {
        Word w = decode_tensor(src.basis[i], d, n);
        for (int m = 0; m < dm; ++m) {
            Vec col = project_chain(hochschild_chain_boundary(prod, act, w, m));
            for (std::size_t r = 0; r < col.size(); ++r) hb.matrix[r][i * dm + m] = col[r];
        }
    }
    for (auto& rel : src.relations)
        for (int m = 0; m < dm && hb.well_defined; ++m) {
            Vec acc(ipow(d, std::max(n - 1, 0)) * dm, Scalar(0));
            for (std::size_t t = 0; t < rel.size(); ++t)
                if (sgn(rel[t]) != 0)
                    axpy(acc, rel[t], hochschild_chain_boundary(prod, act, decode_tensor(static_cast<int>(t), d, n), m));
            if (!is_zero(project_chain(acc))) hb.well_defined = false;
        }
    return hb;
}

Cochain ce_coboundary(const Bilinear& br, const Bilinear& act, const Cochain& f) {
    const int n = f.n, d = f.d;
    Cochain r(n + 1, d, f.dm);
    for (int t = 0; t < ipow(d, n + 1); ++t) {
        Word u = decode_tensor(t, d, n + 1);
        Vec out = zeros(f.dm);
        for (int i = 0; i <= n; ++i) {
            Word rest;
            for (int k = 0; k <= n; ++k)
                if (k != i) rest.push_back(u[k]);
            axpy(out, sign_of(i), act.apply_basis(u[i], f.eval(rest)));
        }
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const Vec& b = br.t[u[i] * d + u[j]];
                Word x{0};
                for (int k = 0; k <= n; ++k)
                    if (k != i && k != j) x.push_back(u[k]);
                for (int k = 0; k < d; ++k) {
                    if (sgn(b[k]) == 0) continue;
                    x[0] = k;
                    axpy(out, sign_of(i + j) * b[k], f.eval(x));
                }
            }
        r.v[t] = out;
    }
    return r;
}

WordComb shuffle_product(const WordComb& x, const WordComb& y) {
    WordComb out;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) {
            Word ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            for (auto& s : shuffles(static_cast<int>(a.size()), static_cast<int>(b.size())))
                out[act_on_word(s, ab)] += ca * cb * perm_sign(s);
        }
    for (auto it = out.begin(); it != out.end();)
        it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
}

WordComb word_bracket(const Bilinear& br, const Word& x, const Word& y) {
    const int k = static_cast<int>(x.size()), l = static_cast<int>(y.size()), d = br.d1;
    WordComb out;
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    for (auto& s : shuffles(k, l)) {
        Word sh = act_on_word(s, xy);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < l; ++j) {
                if (s[i] + 1 != s[k + j]) continue;
                const Vec& b = br.t[x[i] * d + y[j]];
                for (int c = 0; c < d; ++c) {
                    if (sgn(b[c]) == 0) continue;
                    Word m(sh.begin(), sh.begin() + s[i]);
                    m.push_back(c);
                    m.insert(m.end(), sh.begin() + s[i] + 2, sh.end());
                    // pi has degree -1 and passes the i + j letters in front of it
                    out[m] += perm_sign(s) * sign_of(i + j) * b[c];
                }
            }
    }
    for (auto it = out.begin(); it != out.end();)
        it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
}

namespace {

WordComb single(const Word& w) { return {{w, Scalar(1)}}; }

// Harrison projection e^(1) applied to a word, letters odd.
WordComb harrison_part(const Word& w) {
    const int n = static_cast<int>(w.size());
    WordComb out;
    const auto e = eulerian(n)[0];
    for (auto& s : all_perms(n)) {
        Scalar c = e.coeff(s);
        if (sgn(c) != 0) out[act_on_word(s, w)] += c * perm_sign(s);
    }
    return out;
}

WordComb comb_bracket(const Bilinear& br, const WordComb& x, const WordComb& y) {
    WordComb out;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y)
            for (auto& [w, c] : word_bracket(br, a, b)) out[w] += ca * cb * c;
    return out;
}

// All ways of cutting {0..m-1} into k nonempty consecutive pieces, as cut positions.
void cuts(int m, int k, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(cur.size()) == k - 1) {
        emit(cur);
        return;
    }
    int start = cur.empty() ? 1 : cur.back() + 1;
    int left = k - 1 - static_cast<int>(cur.size());
    for (int c = start; c <= m - left; ++c) {
        cur.push_back(c);
        cuts(m, k, cur, emit);
        cur.pop_back();
    }
}

std::vector<Word> split_at(const Word& w, const std::vector<int>& cs) {
    std::vector<Word> out;
    int prev = 0;
    for (int c : cs) {
        out.emplace_back(w.begin() + prev, w.begin() + c);
        prev = c;
    }
    out.emplace_back(w.begin() + prev, w.end());
    return out;
}

}  // namespace

PoissonBicomplex::PoissonBicomplex(const PoissonPresentation& A)
    : d_(A.d), prod_(product_of(A)), br_(bracket_of(A)) {}

int PoissonBicomplex::cell_dim(int p, int q) const {
    if (p < 1 || q < 0) return 0;
    return eulerian_rank(p + q, d_, p) * d_;
}

Cochain PoissonBicomplex::random_element(std::mt19937& rng, int p, int q) const {
    return eulerian_project(random_cochain(rng, p + q, d_, d_), p);
}

Cochain PoissonBicomplex::vertical(const Cochain& f, int p) const {
    (void)p;
    return hochschild_coboundary(prod_, prod_, f);
}

const std::vector<std::vector<PoissonBicomplex::StencilEntry>>& PoissonBicomplex::stencil(int n, int p) const {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, p);
    auto it = stencils_.find(key);
    if (it != stencils_.end()) return it->second;
    const int m = n + 1;
    Scalar inv_pf = Scalar(1, factorial(p));
    // The bracket does not respect the Eulerian weights, so its two inputs keep their
    // Harrison projections; every other slot can use plain words.
    std::map<std::pair<Word, Word>, WordComb> memo;
    auto projected_bracket = [&](const Word& x, const Word& y) -> const WordComb& {
        auto k = std::make_pair(x, y);
        auto f = memo.find(k);
        if (f != memo.end()) return f->second;
        return memo.emplace(k, comb_bracket(br_, harrison_part(x), harrison_part(y))).first->second;
    };
    std::vector<std::vector<StencilEntry>> st(ipow(d_, m));
    for (int t = 0; t < ipow(d_, m); ++t) {
        Word w = decode_tensor(t, d_, m);
        std::map<std::pair<int, int>, Scalar> acc;
        auto feed = [&](const WordComb& arg, int letter, const Scalar& c) {
            for (auto& [x, cx] : arg) acc[{encode_tensor(x, d_), letter}] += c * cx;
        };
        std::vector<int> cur;
        cuts(m, p + 1, cur, [&](const std::vector<int>& cs) {
            auto u = split_at(w, cs);
            const int k = p + 1;
            std::vector<int> deg(k);
            for (int i = 0; i < k; ++i) deg[i] = static_cast<int>(u[i].size());
            // action by length-one pieces
            int before = 0;
            for (int i = 0; i < k; ++i) {
                if (deg[i] == 1) {
                    WordComb rest = {{Word{}, Scalar(1)}};
                    for (int j = 0; j < k; ++j)
                        if (j != i) rest = shuffle_product(rest, single(u[j]));
                    int s = sign_of(deg[i] * before);
                    feed(rest, u[i][0], s * inv_pf);
                }
                before += deg[i];
            }
            // bracket terms
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) {
                    int bi = 0, bj = 0;
                    for (int l = 0; l < i; ++l) bi += deg[l];
                    for (int l = 0; l < j; ++l)
                        if (l != i) bj += deg[l];
                    int s = -sign_of(deg[i] * bi + deg[j] * bj);
                    WordComb rest = projected_bracket(u[i], u[j]);
                    for (int l = 0; l < k; ++l)
                        if (l != i && l != j) rest = shuffle_product(rest, single(u[l]));
                    feed(rest, -1, s * inv_pf);
                }
        });
        for (auto& [key2, c] : acc)
            if (sgn(c) != 0) st[t].push_back({key2.first, key2.second, c});
    }
    return stencils_.emplace(key, std::move(st)).first->second;
}

Cochain PoissonBicomplex::horizontal(const Cochain& f, int p) const {
    const int n = f.n;
    Cochain r(n + 1, d_, d_);
    if (p < 1 || p > n) return r;
    const auto& st = stencil(n, p);
    for (std::size_t t = 0; t < st.size(); ++t) {
        Vec out = zeros(d_);
        for (auto& e : st[t]) {
            const Vec& fx = f.v[e.x];
            if (e.letter < 0) axpy(out, e.c, fx);
            else axpy(out, e.c, br_.apply_basis(e.letter, fx));
        }
        r.v[t] = out;
    }
    return r;
}

Cochain PoissonBicomplex::horizontal_reference(const Cochain& f, int p) const {
    const int n = f.n, m = n + 1;
    Cochain r(m, d_, d_);
    if (p < 1 || p > n) return r;
    Scalar inv_pf = Scalar(1, factorial(p));
    // G(u_1..u_p) = f(e1 u_1 sh ... sh e1 u_p) / p!
    auto G = [&](const std::vector<WordComb>& args) {
        WordComb prodw = {{Word{}, Scalar(1)}};
        for (auto& a : args) {
            WordComb pa;
            for (auto& [w, c] : a)
                for (auto& [x, cx] : harrison_part(w)) pa[x] += c * cx;
            prodw = shuffle_product(prodw, pa);
        }
        Vec out = zeros(d_);
        for (auto& [w, c] : prodw) axpy(out, c * inv_pf, f.eval(w));
        return out;
    };
    for (int t = 0; t < ipow(d_, m); ++t) {
        Word w = decode_tensor(t, d_, m);
        Vec out = zeros(d_);
        std::vector<int> cur;
        cuts(m, p + 1, cur, [&](const std::vector<int>& cs) {
            auto pieces = split_at(w, cs);
            const int k = p + 1;
            std::vector<WordComb> u;
            std::vector<int> deg;
            for (auto& pc : pieces) {
                u.push_back(harrison_part(pc));
                deg.push_back(static_cast<int>(pc.size()));
            }
            int before = 0;
            for (int i = 0; i < k; ++i) {
                if (deg[i] == 1) {
                    std::vector<WordComb> rest;
                    for (int j = 0; j < k; ++j)
                        if (j != i) rest.push_back(u[j]);
                    int s = sign_of(deg[i] * before);
                    axpy(out, s, br_.apply_basis(pieces[i][0], G(rest)));
                }
                before += deg[i];
            }
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) {
                    int bi = 0, bj = 0;
                    for (int l = 0; l < i; ++l) bi += deg[l];
                    for (int l = 0; l < j; ++l)
                        if (l != i) bj += deg[l];
                    int s = -sign_of(deg[i] * bi + deg[j] * bj);
                    std::vector<WordComb> args{comb_bracket(br_, u[i], u[j])};
                    for (int l = 0; l < k; ++l)
                        if (l != i && l != j) args.push_back(u[l]);
                    axpy(out, s, G(args));
                }
        });
        r.v[t] = out;
    }
    return r;
}

Cochain PoissonBicomplex::total(const Cochain& f) const {
    Cochain r(f.n + 1, d_, d_);
    for (int p = 1; p <= f.n; ++p) {
        Cochain fp = eulerian_project(f, p);
        r = r + vertical(fp, p) + horizontal(fp, p);
    }
    return r;
}

std::vector<Vec> PoissonBicomplex::cell_basis(int p, int q) const {
    const int n = p + q;
    std::vector<Vec> out;
    if (p < 1 || q < 0) return out;
    const int T = ipow(d_, n);
    const auto e = eulerian(n)[p - 1];
    std::vector<std::pair<Perm, Scalar>> terms;
    for (auto& s : all_perms(n)) {
        Scalar c = e.coeff(s);
        if (sgn(c) != 0) terms.push_back({s, c * perm_sign(s)});
    }
    // scalar functionals: P_p(delta_t)(w) = sum c [sigma w = t]
    RowSpace rs(T);
    for (int t = 0; t < T; ++t) {
        Vec row(T, Scalar(0));
        for (int w = 0; w < T; ++w) {
            Word ww = decode_tensor(w, d_, n);
            for (auto& [s, c] : terms)
                if (encode_tensor(act_on_word(s, ww), d_) == t) row[w] += c;
        }
        rs.insert(row);
    }
    for (auto& row : rs.rows())
        for (int k = 0; k < d_; ++k) {
            Vec v(T * d_, Scalar(0));
            for (int w = 0; w < T; ++w) v[w * d_ + k] = row[w];
            out.push_back(v);
        }
    return out;
}

Cochain phi_map(const FiniteOp& Y, int p) {
    const int n = Y.arity(), d = Y.dim();
    Cochain r(n, d, d);
    std::vector<int> idx;
    std::vector<int> cur;
    cuts(n, p, cur, [&](const std::vector<int>& cs) {
        Lines L;
        int prev = 0;
        std::vector<int> bounds = cs;
        bounds.push_back(n);
        for (int c : bounds) {
            std::vector<int> blk;
            for (int i = prev; i < c; ++i) blk.push_back(i);
            L.push_back(blk);
            prev = c;
        }
        idx.push_back(lines_index(L, n));
    });
    Scalar inv = Scalar(1, factorial(p));
    for (std::size_t t = 0; t < r.v.size(); ++t)
        for (int l : idx) axpy(r.v[t], inv, Y.at(l, static_cast<int>(t)));
    return r;
}

namespace {

// lambda with a = lambda b; nullopt when b = 0 != a or the vectors are not proportional.
// Both zero gives an undetermined ratio, reported through the flag.
std::optional<Scalar> ratio(const Vec& a, const Vec& b, bool& undetermined) {
    undetermined = false;
    std::optional<Scalar> lam;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(b[i]) == 0) {
            if (sgn(a[i]) != 0) return std::nullopt;
            continue;
        }
        Scalar r = a[i] / b[i];
        if (lam && *lam != r) return std::nullopt;
        lam = r;
    }
    if (!lam) undetermined = true;
    return lam ? lam : std::optional<Scalar>(Scalar(0));
}

FiniteOp random_finite(std::mt19937& rng, int n, int d) {
    FiniteOp f(n, d);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int l = 0; l < f.lines(); ++l)
        for (int t = 0; t < f.tensors(); ++t)
            for (int k = 0; k < d; ++k) f.at(l, t)[k] = c(rng);
    return f;
}

// rank of Phi on g^{p, n-1-p}, from the spanning set of symmetrised elementary operations
int phi_rank(int n, int d, int p) {
    const auto& L = line_basis(n);
    const int T = tensor_count(d, n);
    std::vector<int> interval;
    {
        std::vector<int> cur;
        cuts(n, p, cur, [&](const std::vector<int>& cs) {
            Lines li;
            int prev = 0;
            std::vector<int> bounds = cs;
            bounds.push_back(n);
            for (int c : bounds) {
                std::vector<int> blk;
                for (int i = prev; i < c; ++i) blk.push_back(i);
                li.push_back(blk);
                prev = c;
            }
            interval.push_back(lines_index(li, n));
        });
    }
    // phi[line][t] is a functional on words
    std::map<int, std::vector<Vec>> phi;
    for (auto& s : all_perms(n)) {
        Perm si = inverse(s);
        int sg = perm_sign(s);
        for (int li : interval)
            for (auto& [l, c] : reduce_indexed(act(s, lines_quiver(L[li], n)))) {
                auto& rows = phi[l];
                if (rows.empty()) rows.assign(T, Vec(T, Scalar(0)));
                for (int t = 0; t < T; ++t) {
                    int w = encode_tensor(act_on_word(si, decode_tensor(t, d, n)), d);
                    rows[t][w] += sg * c;
                }
            }
    }
    RowSpace rs(T);
    for (auto& [l, rows] : phi)
        for (auto& r : rows)
            if (!is_zero(r)) rs.insert(r);
    return rs.rank() * d;
}

}  // namespace

ComparisonReport compare_with_finite(const PoissonPresentation& A, int max_total, std::mt19937& rng, int samples) {
    Report ax = check_poisson_direct(A);
    if (!report_ok(ax)) throw Error("not a Poisson algebra:\n" + report_str(ax));
    const int d = A.d;
    PoissonBicomplex B(A);
    FiniteOp X = mc_from_poisson(A);
    SplitDifferential sd = split_differential(X);
    ComparisonReport rep;

    // measured ratios, keyed by source cell (p,q) of the Poisson side
    std::map<std::pair<int, int>, std::optional<Scalar>> lam_v, lam_h;
    for (int n = 1; n <= max_total; ++n)
        for (int p = 1; p <= n; ++p) {
            const int q = n - p;
            CellComparison cc;
            cc.p = p;
            cc.q = q;
            cc.dim_c = B.cell_dim(p, q);
            cc.dim_g = g_dimension_character(n, d, p);
            cc.rank_phi = phi_rank(n, d, p);
            std::optional<Scalar> lv, lh;
            bool v_fixed = false, h_fixed = false;
            for (int k = 0; k < samples; ++k) {
                FiniteOp Y = sign_symmetrize(bigrade(random_finite(rng, n, d), p));
                Cochain f = phi_map(Y, p);
                if (!(eulerian_project(f, p) == f)) cc.in_image = false;
                bool und = false;
                // vertical
                auto rv = ratio(B.vertical(f, p).flat(), phi_map(fn_bracket(sd.Xv, Y), p).flat(), und);
                if (!rv) cc.vertical_ok = false;
                else if (!und) {
                    if (v_fixed && *lv != *rv) cc.vertical_ok = false;
                    lv = rv;
                    v_fixed = true;
                }
                auto rh = ratio(B.horizontal(f, p).flat(), phi_map(fn_bracket(sd.Xh, Y), p + 1).flat(), und);
                if (!rh) cc.horizontal_ok = false;
                else if (!und) {
                    if (h_fixed && *lh != *rh) cc.horizontal_ok = false;
                    lh = rh;
                    h_fixed = true;
                }
            }
            if (lv && sgn(*lv) == 0) cc.vertical_ok = false;
            if (lh && sgn(*lh) == 0) cc.horizontal_ok = false;
            lam_v[{p, q}] = lv;
            lam_h[{p, q}] = lh;
            rep.cells.push_back(cc);
        }

    // scales: s_{p,q+1} = s_{p,q} lam_v, s_{p+1,q} = s_{p,q} lam_h
    std::map<std::pair<int, int>, Scalar> scale;
    scale[{1, 0}] = 1;
    for (int n = 1; n <= max_total; ++n)
        for (int p = 1; p <= n; ++p) {
            const int q = n - p;
            auto it = scale.find({p, q});
            Scalar s = it == scale.end() ? Scalar(1) : it->second;
            scale[{p, q}] = s;
            auto push = [&](std::pair<int, int> key, const std::optional<Scalar>& lam) {
                if (!lam) return;
                Scalar v = s * *lam;
                auto f = scale.find(key);
                if (f == scale.end()) scale[key] = v;
                else if (f->second != v) rep.squares_ok = false;
            };
            push({p, q + 1}, lam_v[{p, q}]);
            push({p + 1, q}, lam_h[{p, q}]);
        }

    for (auto& cc : rep.cells) {
        cc.scale = scale[{cc.p, cc.q}];
        if (cc.dim_c != cc.dim_g) rep.dims_ok = false;
        if (cc.rank_phi != cc.dim_c || !cc.in_image) rep.bijective = false;
        if (!cc.vertical_ok || !cc.horizontal_ok) rep.chain_maps_ok = false;
        std::ostringstream os;
        auto show = [&](const char* nm, const std::optional<Scalar>& l) {
            os << nm << "=" << (l ? to_string(*l) : std::string("free")) << " ";
        };
        show("dv/d", lam_v[{cc.p, cc.q}]);
        show("dh/delta", lam_h[{cc.p, cc.q}]);
        cc.note = os.str();
    }
    bool ok = rep.dims_ok && rep.bijective && rep.chain_maps_ok && rep.squares_ok;
    if (ok) rep.verdict = "isomorphic, chain maps commute";
    else {
        rep.verdict = "NOT isomorphic:";
        if (!rep.dims_ok) rep.verdict += " dimension mismatch";
        if (!rep.bijective) rep.verdict += " comparison map not bijective";
        if (!rep.chain_maps_ok) rep.verdict += " differentials not intertwined";
        if (!rep.squares_ok) rep.verdict += " inconsistent normalisation";
    }
    return rep;
}

}  // namespace pvac

namespace pvac {

namespace {

int rank_of_images(const std::vector<Vec>& basis, const std::function<Vec(const Vec&)>& map) {
    if (basis.empty()) return 0;
    std::optional<RowSpace> rs;
    for (auto& b : basis) {
        Vec img = map(b);
        if (!rs) rs.emplace(static_cast<int>(img.size()));
        rs->insert(img);
    }
    return rs->rank();
}

}  // namespace

BicomplexSummary summarize_bicomplex(const PoissonPresentation& A, int pmax, int qmax, int max_total,
                                     std::mt19937& rng) {
    Report ax = check_poisson_direct(A);
    if (!report_ok(ax)) throw Error("not a Poisson algebra:\n" + report_str(ax));
    if (max_total + 2 > max_arity()) throw BoundError("bound exceeded: total degree " + std::to_string(max_total));
    const int d = A.d;
    PoissonBicomplex B(A);
    BicomplexSummary S;
    for (int p = 1; p <= pmax; ++p)
        for (int q = 0; q <= qmax && p + q <= max_total; ++q) {
            const int n = p + q;
            auto basis = B.cell_basis(p, q);
            BicomplexSummary::Cell c{p, q, static_cast<int>(basis.size()), 0, 0};
            c.rank_d = rank_of_images(basis, [&](const Vec& v) {
                return B.vertical(Cochain::from_flat(n, d, d, v), p).flat();
            });
            c.rank_delta = rank_of_images(basis, [&](const Vec& v) {
                return B.horizontal(Cochain::from_flat(n, d, d, v), p).flat();
            });
            S.cells.push_back(c);
            Cochain f = B.random_element(rng, p, q);
            Cochain vf = B.vertical(f, p), hf = B.horizontal(f, p);
            if (!B.vertical(vf, p).is_zero()) S.d_squared = false;
            if (!B.horizontal(hf, p + 1).is_zero()) S.delta_squared = false;
            if (!(B.vertical(hf, p + 1) + B.horizontal(vf, p)).is_zero()) S.anticommute = false;
        }
    // Tot^k = C^k for k >= 1; Tot^0 = 0
    for (int k = 0; k <= max_total; ++k) S.total_dims.push_back(k == 0 ? 0 : tensor_count(d, k) * d);
    for (int k = 0; k < max_total; ++k) {
        if (k == 0) {
            S.total_ranks.push_back(0);
            continue;
        }
        std::vector<Vec> basis;
        const int T = tensor_count(d, k) * d;
        for (int i = 0; i < T; ++i) {
            Vec e(T, Scalar(0));
            e[i] = 1;
            basis.push_back(e);
        }
        S.total_ranks.push_back(rank_of_images(basis, [&](const Vec& v) {
            return B.total(Cochain::from_flat(k, d, d, v)).flat();
        }));
    }
    for (int k = 0; k < max_total; ++k) {
        int prev = k == 0 ? 0 : S.total_ranks[k - 1];
        S.cohomology.push_back(S.total_dims[k] - S.total_ranks[k] - prev);
    }
    return S;
}

}  // namespace pvac
