#pragma once
// Exact scalars, parities, permutations and the sign bookkeeping shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvac {

using Scalar = mpq_class;

// Z/2 parity, 0 = even, 1 = odd.
using Parity = int;

// Permutation of {0..n-1}; p[i] is the image of i.
using Perm = std::vector<int>;

// Subset of [N] as a bitmask, bit i-1 standing for index i.
using IndexSet = std::uint32_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundError : Error {
    using Error::Error;
};

inline int sign_of(int exponent) { return (exponent & 1) ? -1 : 1; }

Scalar parse_scalar(const std::string& s);
std::string to_string(const Scalar& q);

// ---- permutations ----
Perm identity_perm(int n);
Perm compose(const Perm& a, const Perm& b);  // (a o b)(i) = a(b(i))
Perm inverse(const Perm& p);
bool is_perm(const Perm& p);
int perm_sign(const Perm& p);
std::vector<Perm> all_perms(int n);
// 1-based cycle notation, e.g. {1,4,5} means 1->4->5->1.
Perm cycle_perm(int n, const std::vector<int>& cycle1);

// Product over inversions i<j, p(i)>p(j) of (-1)^{par_i par_j}.
int koszul_sign(const Perm& sigma, const std::vector<Parity>& parities);

// Sign of sorting the word w (list of odd letters) ascending; 0 if a letter repeats.
int sort_sign(std::vector<int>& w);

// ---- index sets ----
inline int popcount(IndexSet s) { return __builtin_popcount(s); }
IndexSet full_set(int N);
std::vector<int> members(IndexSet s);  // 1-based, ascending
IndexSet make_set(const std::vector<int>& elems);

// theta^I theta^J = set_sign(I,J) theta^{I u J}
int set_sign(IndexSet I, IndexSet J, int N);
int complement_sign(IndexSet I, int N);

// ---- basis tensors of V^{(x)n}: base d, slot 0 most significant ----
int tensor_count(int d, int n);
std::vector<int> decode_tensor(int t, int d, int n);
int encode_tensor(const std::vector<int>& v, int d);

// ---- itemized check reports ----
struct CheckItem {
    std::string name;
    bool ok = true;
    std::string witness;
};
using Report = std::vector<CheckItem>;
bool report_ok(const Report& r);
std::string report_str(const Report& r);

}  // namespace pvac
