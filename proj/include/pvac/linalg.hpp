#pragma once
// Dense exact linear algebra over Q.

#include <optional>
#include <vector>

#include "pvac/core_super.hpp"

namespace pvac {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;  // row major

Mat zero_mat(int rows, int cols);
Mat identity_mat(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b, const Scalar& cb = 1);
Vec mat_vec(const Mat& a, const Vec& v);
bool is_zero(const Mat& a);
bool is_zero(const Vec& v);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& a);
int rank(Mat a);
// Basis of {x : a x = 0}.
std::vector<Vec> nullspace(Mat a, int cols);
// Some x with a x = b, if one exists.
std::optional<Vec> solve(const Mat& a, const Vec& b);

// Incrementally grown row space in echelon form.
class RowSpace {
public:
    explicit RowSpace(int dim) : dim_(dim) {}
    // Returns true when v was independent of the stored rows.
    bool insert(Vec v);
    bool contains(Vec v) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    const std::vector<Vec>& rows() const { return rows_; }

private:
    void reduce(Vec& v) const;
    int dim_;
    std::vector<Vec> rows_;
    std::vector<int> piv_;
};

}  // namespace pvac
