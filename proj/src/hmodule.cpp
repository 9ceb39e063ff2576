#include "pvac/hmodule.hpp"

namespace pvac {

HModule::HModule(int N, Variant v, std::vector<Parity> parities)
    : N_(N), var_(v), par_(std::move(parities)) {
    if (N < 0) throw Error("N must be non-negative");
    for (auto& p : par_)
        if (p != 0 && p != 1) throw Error("parity must be 0 or 1");
    T_ = zero_mat(dim(), dim());
    S_.assign(N, zero_mat(dim(), dim()));
    for (int b = 0; b < dim(); ++b) names_.push_back("e" + std::to_string(b + 1));
}

void HModule::set_names(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != dim()) throw Error("basis name count mismatch");
    names_ = std::move(names);
}

static void check_square(const Mat& m, int d, const char* what) {
    if (static_cast<int>(m.size()) != d) throw Error(std::string(what) + ": wrong row count");
    for (auto& r : m)
        if (static_cast<int>(r.size()) != d) throw Error(std::string(what) + ": wrong column count");
}

void HModule::set_T(Mat t) {
    check_square(t, dim(), "T");
    T_ = std::move(t);
}

void HModule::set_S(int i, Mat s) {
    if (i < 1 || i > N_) throw Error("S index out of range");
    check_square(s, dim(), "S");
    S_[i - 1] = std::move(s);
}

void HModule::apply_T(int b, std::vector<std::pair<int, Scalar>>& out) const {
    for (int i = 0; i < dim(); ++i)
        if (sgn(T_[i][b]) != 0) out.emplace_back(i, T_[i][b]);
}

void HModule::apply_S(int i, int b, std::vector<std::pair<int, Scalar>>& out) const {
    const Mat& s = S_.at(i - 1);
    for (int r = 0; r < dim(); ++r)
        if (sgn(s[r][b]) != 0) out.emplace_back(r, s[r][b]);
}

HModule parity_shift(const HModule& V, int k) {
    std::vector<Parity> p = V.parities();
    for (auto& x : p) x = (x + k) & 1;
    HModule W(V.N(), V.variant(), p);
    W.set_names(V.names());
    W.set_T(V.T());
    for (int i = 1; i <= V.N(); ++i) W.set_S(i, V.S(i));
    return W;
}

std::vector<std::string> check_h_action(const HModule& V) {
    std::vector<std::string> bad;
    const int d = V.dim();
    auto parity_ok = [&](const Mat& m, int shift) {
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (sgn(m[r][c]) != 0 && ((V.parities()[r] ^ V.parities()[c]) != shift)) return false;
        return true;
    };
    if (!parity_ok(V.T(), 0)) bad.push_back("T is not even");
    for (int i = 1; i <= V.N(); ++i) {
        if (!parity_ok(V.S(i), 1)) bad.push_back("S" + std::to_string(i) + " is not odd");
        if (!is_zero(mat_add(mat_mul(V.T(), V.S(i)), mat_mul(V.S(i), V.T()), -1)))
            bad.push_back("T S" + std::to_string(i) + " != S" + std::to_string(i) + " T");
        for (int j = i; j <= V.N(); ++j) {
            Mat ac = mat_add(mat_mul(V.S(i), V.S(j)), mat_mul(V.S(j), V.S(i)));
            if (V.variant() == Variant::K && i == j) ac = mat_add(ac, V.T(), -2);
            if (!is_zero(ac)) {
                std::string rhs = (V.variant() == Variant::K && i == j) ? "2T" : "0";
                bad.push_back("S" + std::to_string(i) + " S" + std::to_string(j) + " + S" +
                              std::to_string(j) + " S" + std::to_string(i) + " != " + rhs);
            }
        }
    }
    return bad;
}

Poly reduce_last(const Poly& a, const HModule& V) {
    const int n = a.nvars();
    if (n < 1) throw Error("reduce: needs at least one variable");
    SubstTarget tg;
    for (int j = 0; j < n - 1; ++j) tg.vars.emplace_back(j, -1);
    tg.nablas.emplace_back(0, -1);
    return truncate_vars(substitute(a, n - 1, tg, &V), n - 1);
}

Poly embed_reduced(const Poly& r, int n) {
    std::vector<int> map(r.nvars());
    for (int k = 0; k < r.nvars(); ++k) map[k] = k;
    return rename_vars(r, map, n);
}

Poly apply_matrix(const Poly& p, const Mat& M) {
    Poly r(p.N(), p.nvars(), p.variant());
    for (const auto& [t, c] : p.terms()) {
        if (t.t.size() != 1) throw Error("apply_matrix: expects V-valued polynomial");
        for (std::size_t i = 0; i < M.size(); ++i)
            if (sgn(M[i][t.t[0]]) != 0) r.add(t.m, {static_cast<int>(i)}, c * M[i][t.t[0]]);
    }
    return r;
}

}  // namespace pvac
