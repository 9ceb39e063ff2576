#pragma once
// Shuffles, the rational group algebra Q[S_n], convolution on the tensor coalgebra and the
// Eulerian idempotents.

#include <vector>

#include "pvac/core_super.hpp"

namespace pvac {

// All sigma with sigma(0)<...<sigma(m-1) and sigma(m)<...<sigma(m+n-1).
std::vector<Perm> shuffles(int m, int n);

int perm_rank(const Perm& p);              // lexicographic rank
Perm perm_unrank(int n, int r);
int factorial(int n);

// Element of Q[S_n], dense in the lexicographic order of permutations.
class GroupAlgebraElement {
public:
    GroupAlgebraElement() = default;
    explicit GroupAlgebraElement(int n);
    static GroupAlgebraElement identity(int n);
    static GroupAlgebraElement of(const Perm& p, const Scalar& c = 1);

    int n() const { return n_; }
    const Scalar& coeff(const Perm& p) const { return c_.at(perm_rank(p)); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    void add(const Perm& p, const Scalar& c) { c_.at(perm_rank(p)) += c; }

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;  // composition
    GroupAlgebraElement scaled(const Scalar& s) const;
    bool operator==(const GroupAlgebraElement& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool is_zero() const;

private:
    int n_ = 0;
    std::vector<Scalar> c_;
};

// sigma acting on a word: the letter in position i moves to position sigma(i).
std::vector<int> act_on_word(const Perm& sigma, const std::vector<int>& w);

// Degree-graded family (f_0, ..., f_n) of group-algebra elements: a map on T^c up to degree n.
using Graded = std::vector<GroupAlgebraElement>;

Graded graded_identity(int n);   // id
Graded graded_unit(int n);       // u epsilon
// (f*g)_k = sum_r sum_{Sh(r,k-r)} sigma (f_r x g_{k-r})
Graded convolve(const Graded& f, const Graded& g);
// Block product f (x) g in S_{a+b}.
GroupAlgebraElement block_product(const GroupAlgebraElement& f, const GroupAlgebraElement& g);

// [e^(1)_n, ..., e^(n)_n]; throws BoundError above max_arity().
std::vector<GroupAlgebraElement> eulerian(int n);

// sum over Sh(r, n-r), with sgn(sigma) when signed is true.
GroupAlgebraElement shuffle_sum(int r, int n, bool signed_sum);

}  // namespace pvac
