#include "pvac/core_super.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace pvac {

Scalar parse_scalar(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    if (t.empty()) throw Error("empty rational literal");
    if (t.front() == '+') t.erase(t.begin());
    for (std::size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && i == 0);
        if (!ok) throw Error("bad rational literal '" + s + "'");
    }
    Scalar q;
    if (q.set_str(t, 10) != 0) throw Error("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

Perm identity_perm(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw Error("compose: size mismatch");
    Perm r(a.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

bool is_perm(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

int perm_sign(const Perm& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return sign_of(inv);
}

std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p = identity_perm(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Perm cycle_perm(int n, const std::vector<int>& cycle1) {
    Perm p = identity_perm(n);
    for (std::size_t i = 0; i < cycle1.size(); ++i) {
        int a = cycle1[i] - 1, b = cycle1[(i + 1) % cycle1.size()] - 1;
        if (a < 0 || a >= n || b < 0 || b >= n) throw Error("cycle entry out of range");
        p[a] = b;
    }
    if (!is_perm(p)) throw Error("cycle has repeated entries");
    return p;
}

int koszul_sign(const Perm& sigma, const std::vector<Parity>& parities) {
    if (sigma.size() != parities.size()) throw Error("koszul_sign: length mismatch");
    int e = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = i + 1; j < sigma.size(); ++j)
            if (sigma[i] > sigma[j]) e += (parities[i] & parities[j]);
    return sign_of(e);
}

int sort_sign(std::vector<int>& w) {
    int s = 1;
    // insertion sort counting transpositions of distinct letters
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && w[j - 1] > w[j]) {
            std::swap(w[j - 1], w[j]);
            s = -s;
            --j;
        }
    }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return 0;
    return s;
}

IndexSet full_set(int N) { return N >= 32 ? ~IndexSet(0) : ((IndexSet(1) << N) - 1); }

std::vector<int> members(IndexSet s) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (s & (IndexSet(1) << i)) out.push_back(i + 1);
    return out;
}

IndexSet make_set(const std::vector<int>& elems) {
    IndexSet s = 0;
    for (int e : elems) {
        if (e < 1 || e > 32) throw Error("index out of range");
        s |= IndexSet(1) << (e - 1);
    }
    return s;
}

int set_sign(IndexSet I, IndexSet J, int N) {
    if ((I | J) & ~full_set(N)) throw Error("set_sign: index outside [N]");
    if (I & J) return 0;
    // each j in J moves left past the elements of I that exceed it
    int e = 0;
    for (int j : members(J)) e += popcount(I & ~full_set(j));
    return sign_of(e);
}

int complement_sign(IndexSet I, int N) { return set_sign(I, full_set(N) & ~I, N); }

int tensor_count(int d, int n) {
    int r = 1;
    for (int i = 0; i < n; ++i) r *= d;
    return r;
}

std::vector<int> decode_tensor(int t, int d, int n) {
    std::vector<int> v(n);
    for (int i = n - 1; i >= 0; --i) {
        v[i] = t % d;
        t /= d;
    }
    return v;
}

int encode_tensor(const std::vector<int>& v, int d) {
    int t = 0;
    for (int x : v) t = t * d + x;
    return t;
}

bool report_ok(const Report& r) {
    for (auto& i : r)
        if (!i.ok) return false;
    return true;
}

std::string report_str(const Report& r) {
    std::ostringstream os;
    for (auto& i : r) {
        os << (i.ok ? "  ok    " : "  FAIL  ") << i.name;
        if (!i.ok && !i.witness.empty()) os << "  [" << i.witness << "]";
        os << "\n";
    }
    return os.str();
}

}  // namespace pvac
