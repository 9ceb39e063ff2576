#pragma once
// Finite-dimensional H_W / H_K supermodules (V, T, S^1..S^N).

#include <string>
#include <vector>

#include "pvac/supervars.hpp"

namespace pvac {

class HModule : public NablaAction {
public:
    HModule() = default;
    HModule(int N, Variant v, std::vector<Parity> parities);

    int dim() const { return static_cast<int>(par_.size()); }
    int N() const { return N_; }
    Variant variant() const { return var_; }
    const std::vector<Parity>& parities() const { return par_; }
    const std::vector<std::string>& names() const { return names_; }
    void set_names(std::vector<std::string> names);

    // Column convention: M[i][b] is the e_i coordinate of M e_b.
    const Mat& T() const { return T_; }
    const Mat& S(int i) const { return S_.at(i - 1); }  // 1-based
    void set_T(Mat t);
    void set_S(int i, Mat s);

    int basis_parity(int b) const override { return par_.at(b); }
    int odd_count() const override { return N_; }
    void apply_T(int b, std::vector<std::pair<int, Scalar>>& out) const override;
    void apply_S(int i, int b, std::vector<std::pair<int, Scalar>>& out) const override;

private:
    int N_ = 0;
    Variant var_ = Variant::W;
    std::vector<Parity> par_;
    std::vector<std::string> names_;
    Mat T_;
    std::vector<Mat> S_;
};

HModule parity_shift(const HModule& V, int k);

// Failed relations, empty when V is a valid H_W / H_K module.
std::vector<std::string> check_h_action(const HModule& V);

// a(Lambda_1..Lambda_n) v  ->  a(Lambda_1..Lambda_{n-1}, -Lambda_1-...-Lambda_{n-1}-nabla) v.
// Input: n variables, tensors of length 1.
Poly reduce_last(const Poly& a, const HModule& V);

// Re-express a reduced element (n-1 variables) as a polynomial in n variables (identity embedding).
Poly embed_reduced(const Poly& r, int n);

// Even operator matrix applied to a V-valued polynomial coefficientwise.
Poly apply_matrix(const Poly& p, const Mat& M);

}  // namespace pvac
