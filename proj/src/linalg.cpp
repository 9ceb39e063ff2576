#include "pvac/linalg.hpp"

namespace pvac {

Mat zero_mat(int rows, int cols) { return Mat(rows, Vec(cols, Scalar(0))); }

Mat identity_mat(int n) {
    Mat m = zero_mat(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty()) return {};
    std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    if (a[0].size() != inner) throw Error("mat_mul: shape mismatch");
    Mat r = zero_mat(static_cast<int>(a.size()), static_cast<int>(cols));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                if (sgn(b[k][j]) != 0) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Mat mat_add(const Mat& a, const Mat& b, const Scalar& cb) {
    if (a.size() != b.size()) throw Error("mat_add: shape mismatch");
    Mat r = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) throw Error("mat_add: shape mismatch");
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] += cb * b[i][j];
    }
    return r;
}

Vec mat_vec(const Mat& a, const Vec& v) {
    Vec r(a.size(), Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (sgn(v[j]) != 0 && sgn(a[i][j]) != 0) r[i] += a[i][j] * v[j];
    return r;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

bool is_zero(const Mat& a) {
    for (const auto& row : a)
        if (!is_zero(row)) return false;
    return true;
}

std::vector<int> rref(Mat& a) {
    std::vector<int> piv;
    if (a.empty()) return piv;
    int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(a[i][c]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        Scalar inv = 1 / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            Scalar f = a[i][c];
            for (int j = c; j < cols; ++j)
                if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(Mat a) { return static_cast<int>(rref(a).size()); }

std::vector<Vec> nullspace(Mat a, int cols) {
    std::vector<Vec> out;
    if (a.empty()) {
        for (int j = 0; j < cols; ++j) {
            Vec v(cols, Scalar(0));
            v[j] = 1;
            out.push_back(v);
        }
        return out;
    }
    auto piv = rref(a);
    std::vector<int> is_piv(cols, -1);
    for (std::size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f] >= 0) continue;
        Vec v(cols, Scalar(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
        out.push_back(v);
    }
    return out;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Mat aug = a;
    for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    Vec x(cols, Scalar(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
    return x;
}

void RowSpace::reduce(Vec& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        int c = piv_[i];
        if (sgn(v[c]) == 0) continue;
        Scalar f = v[c];
        for (int j = c; j < dim_; ++j)
            if (sgn(rows_[i][j]) != 0) v[j] -= f * rows_[i][j];
    }
}

bool RowSpace::insert(Vec v) {
    if (static_cast<int>(v.size()) != dim_) throw Error("RowSpace: dimension mismatch");
    reduce(v);
    int c = -1;
    for (int j = 0; j < dim_; ++j)
        if (sgn(v[j]) != 0) {
            c = j;
            break;
        }
    if (c < 0) return false;
    Scalar inv = 1 / v[c];
    for (int j = c; j < dim_; ++j) v[j] *= inv;
    // keep rows fully reduced at the new pivot
    for (auto& row : rows_) {
        if (sgn(row[c]) == 0) continue;
        Scalar f = row[c];
        for (int j = c; j < dim_; ++j)
            if (sgn(v[j]) != 0) row[j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    piv_.push_back(c);
    return true;
}

bool RowSpace::contains(Vec v) const {
    reduce(v);
    return is_zero(v);
}

}  // namespace pvac
