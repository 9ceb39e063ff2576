#include "pvac/supervars.hpp"

#include <algorithm>
#include <sstream>

namespace pvac {

std::string variant_name(Variant v) { return v == Variant::W ? "W" : "K"; }

Variant parse_variant(const std::string& s) {
    if (s == "W" || s == "w") return Variant::W;
    if (s == "K" || s == "k") return Variant::K;
    throw Error("unknown variant '" + s + "' (expected W or K)");
}

int Mono::odd_count() const {
    int c = 0;
    for (auto s : th) c += popcount(s);
    return c;
}

int Mono::parity() const { return odd_count() & 1; }

bool Mono::operator<(const Mono& o) const {
    if (e != o.e) return e < o.e;
    return th < o.th;
}

namespace {

constexpr int kLetterStride = 64;

void push_letters(const Mono& m, std::vector<int>& w) {
    for (int k = 0; k < m.nvars(); ++k)
        for (int i : members(m.th[k])) w.push_back(k * kLetterStride + i);
}

// Sorts w (each letter at most twice); equal letters are never swapped.
int sort_letters(std::vector<int>& w) {
    int s = 1;
    for (std::size_t i = 1; i < w.size(); ++i)
        for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
            std::swap(w[j - 1], w[j]);
            s = -s;
        }
    return s;
}

// Normal form of a word of odd letters times lambda exponents e.
std::pair<int, Mono> normalize(std::vector<int> w, std::vector<int> e, Variant v) {
    int s = sort_letters(w);
    Mono out;
    out.e = std::move(e);
    out.th.assign(out.e.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        int k = w[i] / kLetterStride, idx = w[i] % kLetterStride;
        if (i + 1 < w.size() && w[i + 1] == w[i]) {
            if (v == Variant::W) return {0, Mono()};
            // theta^2 = -lambda, central
            s = -s;
            out.e[k] += 1;
            ++i;
            continue;
        }
        out.th[k] |= IndexSet(1) << (idx - 1);
    }
    return {s, out};
}

void check_vars(const Poly& p, int k) {
    if (k < 0 || k >= p.nvars()) throw Error("variable index out of range");
}

}  // namespace

std::pair<int, Mono> mono_mul(const Mono& a, const Mono& b, int, Variant v) {
    if (a.nvars() != b.nvars()) throw Error("mono_mul: variable count mismatch");
    std::vector<int> w;
    push_letters(a, w);
    push_letters(b, w);
    std::vector<int> e(a.e);
    for (int k = 0; k < b.nvars(); ++k) e[k] += b.e[k];
    return normalize(std::move(w), std::move(e), v);
}

Poly Poly::constant(int N, int nvars, Variant v, const Tensor& t, const Scalar& c) {
    Poly p(N, nvars, v);
    p.add(Mono(nvars), t, c);
    return p;
}

Poly Poly::lambda(int N, int nvars, Variant v, int k) {
    Mono m(nvars);
    m.e.at(k) = 1;
    return monomial(N, v, m, {});
}

Poly Poly::theta(int N, int nvars, Variant v, int k, int i) {
    if (i < 1 || i > N) throw Error("theta index out of range");
    Mono m(nvars);
    m.th.at(k) = IndexSet(1) << (i - 1);
    return monomial(N, v, m, {});
}

Poly Poly::monomial(int N, Variant v, const Mono& m, const Tensor& t, const Scalar& c) {
    Poly p(N, m.nvars(), v);
    for (auto s : m.th)
        if (s & ~full_set(N)) throw Error("theta index outside [N]");
    p.add(m, t, c);
    return p;
}

void Poly::add(const Mono& m, const Tensor& t, const Scalar& c) {
    if (sgn(c) == 0) return;
    Term key{m, t};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

void Poly::check_compatible(const Poly& o) const {
    if (N_ != o.N_ || nvars_ != o.nvars_ || var_ != o.var_)
        throw Error("polynomials live in different superalgebras");
}

Poly& Poly::operator+=(const Poly& o) {
    check_compatible(o);
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_compatible(o);
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Scalar& c) const {
    Poly r(N_, nvars_, var_);
    if (sgn(c) == 0) return r;
    for (const auto& [t, x] : terms_) r.terms_.emplace(t, x * c);
    return r;
}

bool Poly::operator==(const Poly& o) const {
    return N_ == o.N_ && nvars_ == o.nvars_ && var_ == o.var_ && terms_ == o.terms_;
}

Poly Poly::operator*(const Poly& o) const {
    check_compatible(o);
    Poly r(N_, nvars_, var_);
    for (const auto& [ta, ca] : terms_)
        for (const auto& [tb, cb] : o.terms_) {
            if (!ta.t.empty() && !tb.t.empty())
                throw Error("product of two tensor-valued polynomials; use tensor_mul");
            if (!ta.t.empty() && tb.m.parity())
                throw Error("odd scalar to the right of a tensor; use tensor_mul");
            auto [s, m] = mono_mul(ta.m, tb.m, N_, var_);
            if (s == 0) continue;
            r.add(m, ta.t.empty() ? tb.t : ta.t, ca * cb * s);
        }
    return r;
}

Poly tensor_mul(const Poly& a, const Poly& b, const NablaAction& V) {
    a.check_compatible(b);
    Poly r(a.N(), a.nvars(), a.variant());
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) {
            auto [s, m] = mono_mul(ta.m, tb.m, a.N(), a.variant());
            if (s == 0) continue;
            int pw = 0;
            for (int x : ta.t) pw ^= V.basis_parity(x);
            if (pw & tb.m.parity()) s = -s;
            Tensor t = ta.t;
            t.insert(t.end(), tb.t.begin(), tb.t.end());
            r.add(m, t, ca * cb * s);
        }
    return r;
}

std::string Poly::str(const std::vector<std::string>* names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        Scalar a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        std::vector<std::string> f;
        for (int k = 0; k < t.m.nvars(); ++k) {
            if (t.m.e[k] == 1) f.push_back("l" + std::to_string(k + 1));
            if (t.m.e[k] > 1) f.push_back("l" + std::to_string(k + 1) + "^" + std::to_string(t.m.e[k]));
            if (t.m.th[k]) {
                std::string s = "th" + std::to_string(k + 1) + "{";
                auto ms = members(t.m.th[k]);
                for (std::size_t j = 0; j < ms.size(); ++j) s += (j ? "," : "") + std::to_string(ms[j]);
                f.push_back(s + "}");
            }
        }
        if (!t.t.empty()) {
            std::string s;
            for (std::size_t j = 0; j < t.t.size(); ++j) {
                if (j) s += "(x)";
                s += names ? names->at(t.t[j]) : "e" + std::to_string(t.t[j]);
            }
            f.push_back(s);
        }
        if (f.empty() || a != 1) os << a.get_str() << (f.empty() ? "" : "*");
        for (std::size_t j = 0; j < f.size(); ++j) os << (j ? "*" : "") << f[j];
    }
    return os.str();
}

Poly partial_lambda(const Poly& p, int k) {
    check_vars(p, k);
    Poly r(p.N(), p.nvars(), p.variant());
    for (const auto& [t, c] : p.terms()) {
        if (t.m.e[k] == 0) continue;
        Mono m = t.m;
        m.e[k] -= 1;
        r.add(m, t.t, c * t.m.e[k]);
    }
    return r;
}

Poly partial_theta(const Poly& p, int k, int i) {
    check_vars(p, k);
    IndexSet bit = IndexSet(1) << (i - 1);
    Poly r(p.N(), p.nvars(), p.variant());
    for (const auto& [t, c] : p.terms()) {
        if (!(t.m.th[k] & bit)) continue;
        int before = popcount(t.m.th[k] & (bit - 1));
        for (int j = 0; j < k; ++j) before += popcount(t.m.th[j]);
        Mono m = t.m;
        m.th[k] &= ~bit;
        r.add(m, t.t, before & 1 ? -c : c);
    }
    return r;
}

namespace {

int koszul_prefix(const Tensor& u, int slot, const NablaAction& V) {
    int e = 0;
    for (int l = 0; l < slot; ++l) e ^= V.basis_parity(u[l]);
    return sign_of(e);
}

}  // namespace

Poly apply_T_slot(const Poly& p, int slot, const NablaAction& V) {
    Poly r(p.N(), p.nvars(), p.variant());
    std::vector<std::pair<int, Scalar>> img;
    for (const auto& [t, c] : p.terms()) {
        if (slot < 0 || slot >= static_cast<int>(t.t.size())) throw Error("tensor slot out of range");
        img.clear();
        V.apply_T(t.t[slot], img);
        for (const auto& [b, x] : img) {
            Tensor u = t.t;
            u[slot] = b;
            r.add(t.m, u, c * x);
        }
    }
    return r;
}

Poly apply_S_slot(const Poly& p, int i, int slot, const NablaAction& V) {
    Poly r(p.N(), p.nvars(), p.variant());
    std::vector<std::pair<int, Scalar>> img;
    for (const auto& [t, c] : p.terms()) {
        if (slot < 0 || slot >= static_cast<int>(t.t.size())) throw Error("tensor slot out of range");
        img.clear();
        V.apply_S(i, t.t[slot], img);
        int s = koszul_prefix(t.t, slot, V);
        for (const auto& [b, x] : img) {
            Tensor u = t.t;
            u[slot] = b;
            r.add(t.m, u, c * x * s);
        }
    }
    return r;
}

Poly substitute(const Poly& p, int k, const SubstTarget& tgt, const NablaAction* V) {
    check_vars(p, k);
    if (!tgt.nablas.empty() && V == nullptr) throw Error("substitution with nabla needs a module");
    const int N = p.N(), n = p.nvars();
    const Variant var = p.variant();
    Poly out(N, n, var);
    std::vector<std::pair<int, Scalar>> img;

    for (const auto& [term, coef] : p.terms()) {
        // term = sign * B * theta_k^I * lambda_k^e, with B free of Lambda_k
        Mono B = term.m;
        int e = B.e[k];
        IndexSet I = B.th[k];
        B.e[k] = 0;
        B.th[k] = 0;
        int later = 0;
        for (int j = k + 1; j < n; ++j) later += popcount(term.m.th[j]);
        int s0 = sign_of(popcount(I) * later);

        std::map<Term, Scalar> state;
        state[{Mono(n), term.t}] = coef * s0;
        auto ms = members(I);
        for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
            int i = *it;
            std::map<Term, Scalar> next;
            auto put = [&next](const Mono& m, const Tensor& t, const Scalar& c) {
                if (sgn(c) == 0) return;
                auto& slot = next[{m, t}];
                slot += c;
            };
            for (const auto& [cu, x] : state) {
                Scalar y = cu.m.parity() ? Scalar(-x) : x;
                for (const auto& [j, eps] : tgt.vars) {
                    Mono th(n);
                    th.th[j] = IndexSet(1) << (i - 1);
                    auto [s, m] = mono_mul(cu.m, th, N, var);
                    if (s) put(m, cu.t, y * eps * s);
                }
                for (const auto& [slot, eps] : tgt.nablas) {
                    if (slot >= static_cast<int>(cu.t.size())) throw Error("nabla slot out of range");
                    img.clear();
                    V->apply_S(i, cu.t[slot], img);
                    int ks = koszul_prefix(cu.t, slot, *V);
                    for (const auto& [b, z] : img) {
                        Tensor u = cu.t;
                        u[slot] = b;
                        put(cu.m, u, y * eps * ks * z);
                    }
                }
            }
            state.clear();
            for (auto& [t, c] : next)
                if (sgn(c) != 0) state.emplace(t, c);
        }
        for (int r = 0; r < e; ++r) {
            std::map<Term, Scalar> next;
            for (const auto& [cu, x] : state) {
                for (const auto& [j, eps] : tgt.vars) {
                    Mono m = cu.m;
                    m.e[j] += 1;
                    next[{m, cu.t}] += x * eps;
                }
                for (const auto& [slot, eps] : tgt.nablas) {
                    if (slot >= static_cast<int>(cu.t.size())) throw Error("nabla slot out of range");
                    img.clear();
                    V->apply_T(cu.t[slot], img);
                    for (const auto& [b, z] : img) {
                        Tensor u = cu.t;
                        u[slot] = b;
                        next[{cu.m, u}] += x * eps * z;
                    }
                }
            }
            state.clear();
            for (auto& [t, c] : next)
                if (sgn(c) != 0) state.emplace(t, c);
        }
        for (const auto& [cu, x] : state) {
            auto [s, m] = mono_mul(B, cu.m, N, var);
            if (s) out.add(m, cu.t, x * s);
        }
    }
    return out;
}

Poly rename_vars(const Poly& p, const std::vector<int>& map, int new_nvars) {
    if (static_cast<int>(map.size()) != p.nvars()) throw Error("rename_vars: map size mismatch");
    std::vector<char> used(new_nvars, 0);
    for (int x : map) {
        if (x < 0 || x >= new_nvars || used[x]) throw Error("rename_vars: map is not injective");
        used[x] = 1;
    }
    Poly r(p.N(), new_nvars, p.variant());
    for (const auto& [t, c] : p.terms()) {
        std::vector<int> w;
        std::vector<int> e(new_nvars, 0);
        for (int k = 0; k < p.nvars(); ++k) {
            e[map[k]] = t.m.e[k];
            for (int i : members(t.m.th[k])) w.push_back(map[k] * kLetterStride + i);
        }
        auto [s, m] = normalize(std::move(w), std::move(e), p.variant());
        r.add(m, t.t, c * s);
    }
    return r;
}

Poly truncate_vars(const Poly& p, int new_nvars) {
    Poly r(p.N(), new_nvars, p.variant());
    for (const auto& [t, c] : p.terms()) {
        for (int k = new_nvars; k < p.nvars(); ++k)
            if (t.m.e[k] || t.m.th[k]) throw Error("truncate_vars: variable still occurs");
        Mono m(new_nvars);
        for (int k = 0; k < new_nvars; ++k) {
            m.e[k] = t.m.e[k];
            m.th[k] = t.m.th[k];
        }
        r.add(m, t.t, c);
    }
    return r;
}

Poly residue(const Poly& p, int k) {
    check_vars(p, k);
    const IndexSet full = full_set(p.N());
    Poly r(p.N(), p.nvars() - 1, p.variant());
    for (const auto& [t, c] : p.terms()) {
        if (t.m.e[k] != 0 || t.m.th[k] != full) continue;
        int before = 0;
        for (int j = 0; j < k; ++j) before += popcount(t.m.th[j]);
        Mono m(p.nvars() - 1);
        for (int j = 0, q = 0; j < p.nvars(); ++j) {
            if (j == k) continue;
            m.e[q] = t.m.e[j];
            m.th[q] = t.m.th[j];
            ++q;
        }
        r.add(m, t.t, (before * p.N()) & 1 ? -c : c);
    }
    return r;
}

Poly integrate(const Mat& F, const Mat& G, const Poly& p) {
    if (p.nvars() != 1) throw Error("integrate: expects one variable");
    const IndexSet full = full_set(p.N());
    const int d = static_cast<int>(F.size());
    Poly r(p.N(), 0, p.variant());
    for (const auto& [t, c] : p.terms()) {
        if (t.m.th[0] != full) continue;
        if (t.t.size() != 1) throw Error("integrate: expects V-valued polynomial");
        int m = t.m.e[0];
        Vec v(d, Scalar(0));
        v.at(t.t[0]) = 1;
        Vec f = v, g = v;
        for (int j = 0; j <= m; ++j) {
            f = mat_vec(F, f);
            g = mat_vec(G, g);
        }
        for (int b = 0; b < d; ++b) {
            Scalar x = (g[b] - f[b]) * c / (m + 1);
            r.add(Mono(0), {b}, x);
        }
    }
    return r;
}

int term_parity(const Term& t, const NablaAction& V) {
    int p = t.m.parity();
    for (int b : t.t) p ^= V.basis_parity(b);
    return p;
}

}  // namespace pvac
