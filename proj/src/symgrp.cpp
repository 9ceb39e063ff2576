#include "pvac/symgrp.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "pvac/quiver.hpp"

namespace pvac {

int factorial(int n) {
    int f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

std::vector<Perm> shuffles(int m, int n) {
    if (m < 0 || n < 0) throw Error("shuffles: negative size");
    std::vector<Perm> out;
    // choose the image positions of the first m letters
    std::vector<int> mask(m + n, 0);
    std::fill(mask.begin() + n, mask.end(), 1);
    do {
        Perm p(m + n);
        int a = 0, b = m;
        for (int pos = 0; pos < m + n; ++pos) {
            if (mask[pos]) p[a++] = pos;
            else p[b++] = pos;
        }
        out.push_back(p);
    } while (std::next_permutation(mask.begin(), mask.end()));
    std::sort(out.begin(), out.end());
    return out;
}

int perm_rank(const Perm& p) {
    const int n = static_cast<int>(p.size());
    int r = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller;
        r = r * (n - i) + smaller;
    }
    return r;
}

Perm perm_unrank(int n, int r) {
    std::vector<int> digits(n);
    for (int i = n - 1; i >= 0; --i) {
        digits[i] = r % (n - i);
        r /= (n - i);
    }
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    Perm p(n);
    for (int i = 0; i < n; ++i) {
        p[i] = pool[digits[i]];
        pool.erase(pool.begin() + digits[i]);
    }
    return p;
}

GroupAlgebraElement::GroupAlgebraElement(int n) : n_(n), c_(factorial(n), Scalar(0)) {}

GroupAlgebraElement GroupAlgebraElement::identity(int n) { return of(identity_perm(n)); }

GroupAlgebraElement GroupAlgebraElement::of(const Perm& p, const Scalar& c) {
    GroupAlgebraElement g(static_cast<int>(p.size()));
    g.add(p, c);
    return g;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    if (n_ != o.n_) throw Error("group algebra degree mismatch");
    GroupAlgebraElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    return *this + o.scaled(-1);
}

GroupAlgebraElement GroupAlgebraElement::scaled(const Scalar& s) const {
    GroupAlgebraElement r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

bool GroupAlgebraElement::is_zero() const {
    for (auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    if (n_ != o.n_) throw Error("group algebra degree mismatch");
    GroupAlgebraElement r(n_);
    std::vector<int> nzb;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
        if (sgn(o.c_[j]) != 0) nzb.push_back(static_cast<int>(j));
    std::vector<Perm> bp;
    for (int j : nzb) bp.push_back(perm_unrank(n_, j));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        Perm a = perm_unrank(n_, static_cast<int>(i));
        for (std::size_t k = 0; k < nzb.size(); ++k)
            r.c_[perm_rank(compose(a, bp[k]))] += c_[i] * o.c_[nzb[k]];
    }
    return r;
}

std::vector<int> act_on_word(const Perm& sigma, const std::vector<int>& w) {
    if (sigma.size() != w.size()) throw Error("act_on_word: length mismatch");
    std::vector<int> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[sigma[i]] = w[i];
    return r;
}

Graded graded_identity(int n) {
    Graded g;
    for (int k = 0; k <= n; ++k) g.push_back(GroupAlgebraElement::identity(k));
    return g;
}

Graded graded_unit(int n) {
    Graded g;
    for (int k = 0; k <= n; ++k) g.push_back(k == 0 ? GroupAlgebraElement::identity(0) : GroupAlgebraElement(k));
    return g;
}

GroupAlgebraElement block_product(const GroupAlgebraElement& f, const GroupAlgebraElement& g) {
    const int a = f.n(), b = g.n();
    GroupAlgebraElement r(a + b);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (sgn(f.coeffs()[i]) == 0) continue;
        Perm pa = perm_unrank(a, static_cast<int>(i));
        for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
            if (sgn(g.coeffs()[j]) == 0) continue;
            Perm pb = perm_unrank(b, static_cast<int>(j));
            Perm p(pa);
            for (int x : pb) p.push_back(x + a);
            r.add(p, f.coeffs()[i] * g.coeffs()[j]);
        }
    }
    return r;
}

Graded convolve(const Graded& f, const Graded& g) {
    if (f.size() != g.size()) throw Error("convolve: degree range mismatch");
    Graded out;
    for (int k = 0; k < static_cast<int>(f.size()); ++k) {
        GroupAlgebraElement acc(k);
        for (int r = 0; r <= k; ++r) {
            if (f[r].is_zero() || g[k - r].is_zero()) continue;
            GroupAlgebraElement bp = block_product(f[r], g[k - r]);
            GroupAlgebraElement sh(k);
            for (auto& s : shuffles(r, k - r)) sh.add(s, 1);
            acc = acc + sh * bp;
        }
        out.push_back(acc);
    }
    return out;
}

namespace {
std::mutex g_eul_mu;
std::map<int, std::vector<GroupAlgebraElement>> g_eul;
}  // namespace

std::vector<GroupAlgebraElement> eulerian(int n) {
    if (n < 1) throw Error("eulerian: n must be positive");
    if (n > max_arity())
        throw BoundError("bound exceeded: n = " + std::to_string(n) + " > " + std::to_string(max_arity()));
    {
        std::lock_guard<std::mutex> lk(g_eul_mu);
        auto it = g_eul.find(n);
        if (it != g_eul.end()) return it->second;
    }
    Graded J = graded_identity(n);
    J[0] = GroupAlgebraElement(0);
    // e1 = sum_{k>=1} (-1)^{k+1} J^{*k} / k
    Graded e1 = J, power = J;
    for (int k = 2; k <= n; ++k) {
        power = convolve(power, J);
        Scalar c(sign_of(k + 1), k);
        for (int d = 0; d <= n; ++d) e1[d] = e1[d] + power[d].scaled(c);
    }
    std::vector<GroupAlgebraElement> out;
    Graded p = e1;
    Scalar fact = 1;
    for (int q = 1; q <= n; ++q) {
        if (q > 1) {
            p = convolve(p, e1);
            fact *= q;
        }
        out.push_back(p[n].scaled(Scalar(1) / fact));
    }
    std::lock_guard<std::mutex> lk(g_eul_mu);
    g_eul[n] = out;
    return out;
}

GroupAlgebraElement shuffle_sum(int r, int n, bool signed_sum) {
    GroupAlgebraElement g(n);
    for (auto& s : shuffles(r, n - r)) g.add(s, signed_sum ? perm_sign(s) : 1);
    return g;
}

}  // namespace pvac
