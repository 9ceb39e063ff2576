#pragma once
// n-quivers, cocomposition, external connectivity and the line basis of KQ(n)/R(n).

#include <map>
#include <string>
#include <vector>

#include "pvac/core_super.hpp"

namespace pvac {

struct Edge {
    int id;
    int s;  // 0-based
    int t;
};

class Quiver {
public:
    Quiver() = default;
    explicit Quiver(int n) : n_(n) {}
    Quiver(int n, const std::vector<std::pair<int, int>>& edges0);  // 0-based endpoints

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int add_edge(int s, int t);                // fresh id; returns it
    void add_edge_with_id(int id, int s, int t);
    Quiver without_edge(int id) const;
    bool has_loop() const;

    // Edge list with ids forgotten, sorted: the basis element of KQ(n).
    std::vector<std::pair<int, int>> key() const;
    std::string str() const;  // "[1>2,3>4]" style, sorted, 1-based

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

// "n; s>t, s>t" with 1-based vertices.
Quiver parse_quiver(const std::string& text);

std::vector<std::vector<int>> components(const Quiver& q);  // 0-based, sorted
bool is_acyclic(const Quiver& q);  // underlying multigraph is a forest
Quiver act(const Perm& sigma, const Quiver& q);

struct Cocomposition {
    Quiver delta0;                 // on m vertices, edges keep their original ids
    std::vector<Quiver> blocks;    // Delta_j on n_j vertices
    std::vector<int> block_of;     // vertex -> block (0-based)
    std::vector<int> offset;       // first vertex of each block
};

Cocomposition cocompose(const std::vector<int>& nu, const Quiver& q);

// E^nu_Q(j) as 0-based block indices; j is a 0-based vertex of [n].
std::vector<int> externally_connected(const std::vector<int>& nu, const Quiver& q, int j);
// Same set by exhaustive enumeration of edge sequences; used as an oracle.
std::vector<int> externally_connected_bruteforce(const std::vector<int>& nu, const Quiver& q, int j);

// Blocks of a line partition: each block starts at its minimum, blocks ordered by minima.
using Lines = std::vector<std::vector<int>>;

std::vector<Lines> enumerate_lines(int n);
// Cached, stable reference to enumerate_lines(n).
const std::vector<Lines>& line_basis(int n);
Quiver lines_quiver(const Lines& l, int n);
std::string lines_str(const Lines& l);
int lines_block_count(const Lines& l);
// Index of l in enumerate_lines(n).
int lines_index(const Lines& l, int n);

// Upper bound on arities accepted by the tabulated routines (PVAC_MAX_N, default 7).
int max_arity();

using LineCombination = std::map<Lines, Scalar>;

// Coordinates of a quiver modulo the cycle relations in the line basis.
LineCombination reduce_to_lines(const Quiver& q);
LineCombination reduce_to_lines(const std::map<std::vector<std::pair<int, int>>, Scalar>& x, int n);

std::string combination_str(const LineCombination& c);

// Reduction as (index in line_basis(n), coefficient) pairs, memoized by edge multiset.
using IndexedCombination = std::vector<std::pair<int, Scalar>>;
const IndexedCombination& reduce_indexed(const Quiver& q);

}  // namespace pvac
