#include "pvac/quiver.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pvac {

Quiver::Quiver(int n, const std::vector<std::pair<int, int>>& edges0) : n_(n) {
    for (auto [s, t] : edges0) add_edge(s, t);
}

int Quiver::add_edge(int s, int t) {
    int id = 0;
    for (auto& e : edges_) id = std::max(id, e.id + 1);
    add_edge_with_id(id, s, t);
    return id;
}

void Quiver::add_edge_with_id(int id, int s, int t) {
    if (s < 0 || s >= n_ || t < 0 || t >= n_) throw Error("edge endpoint out of range");
    for (auto& e : edges_)
        if (e.id == id) throw Error("duplicate edge id");
    edges_.push_back({id, s, t});
}

Quiver Quiver::without_edge(int id) const {
    Quiver q(n_);
    for (auto& e : edges_)
        if (e.id != id) q.edges_.push_back(e);
    return q;
}

bool Quiver::has_loop() const {
    for (auto& e : edges_)
        if (e.s == e.t) return true;
    return false;
}

std::vector<std::pair<int, int>> Quiver::key() const {
    std::vector<std::pair<int, int>> k;
    for (auto& e : edges_) k.emplace_back(e.s, e.t);
    std::sort(k.begin(), k.end());
    return k;
}

std::string Quiver::str() const {
    std::string s = "[";
    bool first = true;
    for (auto [a, b] : key()) {
        if (!first) s += ",";
        first = false;
        s += std::to_string(a + 1) + ">" + std::to_string(b + 1);
    }
    return s + "]";
}

Quiver parse_quiver(const std::string& text) {
    auto fail = [&](std::size_t pos, const std::string& why) {
        throw Error("quiver literal, position " + std::to_string(pos + 1) + ": " + why);
    };
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&]() {
        skip();
        std::size_t st = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (st == i) fail(st, "expected a number");
        return std::stoi(text.substr(st, i - st));
    };
    int n = number();
    Quiver q(n);
    skip();
    if (i == text.size()) return q;
    if (text[i] != ';') fail(i, "expected ';'");
    ++i;
    skip();
    if (i == text.size()) return q;
    while (true) {
        std::size_t at = i;
        int s = number();
        skip();
        if (i >= text.size() || text[i] != '>') fail(i, "expected '>'");
        ++i;
        int t = number();
        if (s < 1 || s > n || t < 1 || t > n) fail(at, "vertex out of range 1.." + std::to_string(n));
        if (s == t) fail(at, "loops are not allowed");
        q.add_edge(s - 1, t - 1);
        skip();
        if (i == text.size()) break;
        if (text[i] != ',') fail(i, "expected ','");
        ++i;
    }
    return q;
}

namespace {

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

std::vector<std::vector<int>> components(const Quiver& q) {
    DSU d(q.n());
    for (auto& e : q.edges()) d.unite(e.s, e.t);
    std::map<int, std::vector<int>> by;
    for (int v = 0; v < q.n(); ++v) by[d.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [r, vs] : by) out.push_back(vs);
    return out;
}

bool is_acyclic(const Quiver& q) {
    DSU d(q.n());
    for (auto& e : q.edges())
        if (e.s == e.t || !d.unite(e.s, e.t)) return false;
    return true;
}

Quiver act(const Perm& sigma, const Quiver& q) {
    if (static_cast<int>(sigma.size()) != q.n()) throw Error("act: permutation size mismatch");
    Quiver r(q.n());
    for (auto& e : q.edges()) r.add_edge_with_id(e.id, sigma[e.s], sigma[e.t]);
    return r;
}

Cocomposition cocompose(const std::vector<int>& nu, const Quiver& q) {
    int total = 0;
    for (int x : nu) {
        if (x < 1) throw Error("composition parts must be positive");
        total += x;
    }
    if (total != q.n()) throw Error("composition does not sum to the vertex count");
    Cocomposition c;
    const int m = static_cast<int>(nu.size());
    c.block_of.resize(q.n());
    for (int j = 0, off = 0; j < m; ++j) {
        c.offset.push_back(off);
        for (int k = 0; k < nu[j]; ++k) c.block_of[off + k] = j;
        c.blocks.emplace_back(nu[j]);
        off += nu[j];
    }
    c.delta0 = Quiver(m);
    for (auto& e : q.edges()) {
        int bs = c.block_of[e.s], bt = c.block_of[e.t];
        if (bs == bt)
            c.blocks[bs].add_edge_with_id(e.id, e.s - c.offset[bs], e.t - c.offset[bs]);
        else
            c.delta0.add_edge_with_id(e.id, bs, bt);
    }
    return c;
}

std::vector<int> externally_connected(const std::vector<int>& nu, const Quiver& q, int j) {
    Cocomposition c = cocompose(nu, q);
    const auto& ext = c.delta0.edges();
    std::vector<char> touches(ext.size()), used(ext.size(), 0), hit(c.delta0.n(), 0);
    std::map<int, const Edge*> orig;
    for (auto& e : q.edges()) orig[e.id] = &e;
    for (std::size_t k = 0; k < ext.size(); ++k) {
        const Edge* o = orig[ext[k].id];
        touches[k] = (o->s == j || o->t == j);
    }
    // trails from block(j); a trail read backwards ends at block(j)
    std::function<void(int, bool, int)> dfs = [&](int at, bool good, int len) {
        if (len > 0 && good) hit[at] = 1;
        for (std::size_t k = 0; k < ext.size(); ++k) {
            if (used[k]) continue;
            int nxt;
            if (ext[k].s == at) nxt = ext[k].t;
            else if (ext[k].t == at) nxt = ext[k].s;
            else continue;
            used[k] = 1;
            dfs(nxt, good || touches[k], len + 1);
            used[k] = 0;
        }
    };
    dfs(c.block_of[j], false, 0);
    std::vector<int> out;
    for (int i = 0; i < c.delta0.n(); ++i)
        if (hit[i]) out.push_back(i);
    return out;
}

std::vector<int> externally_connected_bruteforce(const std::vector<int>& nu, const Quiver& q, int j) {
    Cocomposition c = cocompose(nu, q);
    std::vector<Edge> ext = c.delta0.edges();
    const int E = static_cast<int>(ext.size());
    std::map<int, const Edge*> orig;
    for (auto& e : q.edges()) orig[e.id] = &e;
    std::vector<char> hit(c.delta0.n(), 0);
    // every ordered selection of distinct edges with every orientation
    for (int mask = 1; mask < (1 << E); ++mask) {
        std::vector<int> sel;
        for (int k = 0; k < E; ++k)
            if (mask & (1 << k)) sel.push_back(k);
        std::sort(sel.begin(), sel.end());
        do {
            const int L = static_cast<int>(sel.size());
            for (int o = 0; o < (1 << L); ++o) {
                std::vector<int> walk;
                bool ok = true, touch = false;
                for (int r = 0; r < L && ok; ++r) {
                    const Edge& e = ext[sel[r]];
                    int a = (o >> r) & 1 ? e.t : e.s, b = (o >> r) & 1 ? e.s : e.t;
                    if (!walk.empty() && walk.back() != a) ok = false;
                    if (walk.empty()) walk.push_back(a);
                    walk.push_back(b);
                    const Edge* oe = orig[e.id];
                    touch = touch || oe->s == j || oe->t == j;
                }
                if (ok && touch && walk.back() == c.block_of[j]) hit[walk.front()] = 1;
            }
        } while (std::next_permutation(sel.begin(), sel.end()));
    }
    std::vector<int> out;
    for (int i = 0; i < c.delta0.n(); ++i)
        if (hit[i]) out.push_back(i);
    return out;
}

int max_arity() {
    const char* s = std::getenv("PVAC_MAX_N");
    if (!s || !*s) return 7;
    int v = std::atoi(s);
    return v > 0 ? v : 7;
}

namespace {

void gen_lines(int n, int v, Lines& cur, std::vector<Lines>& out) {
    if (v == n) {
        // all orderings of the non-minimal members of each block
        std::function<void(std::size_t, Lines&)> perm_blocks = [&](std::size_t b, Lines& l) {
            if (b == l.size()) {
                out.push_back(l);
                return;
            }
            std::vector<int> tail(l[b].begin() + 1, l[b].end());
            std::sort(tail.begin(), tail.end());
            do {
                std::copy(tail.begin(), tail.end(), l[b].begin() + 1);
                perm_blocks(b + 1, l);
            } while (std::next_permutation(tail.begin(), tail.end()));
        };
        Lines l = cur;
        perm_blocks(0, l);
        return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(v);
        gen_lines(n, v + 1, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({v});
    gen_lines(n, v + 1, cur, out);
    cur.pop_back();
}

std::mutex g_lines_mu;
std::map<int, std::vector<Lines>> g_lines;
std::map<int, std::map<Lines, int>> g_lines_idx;

}  // namespace

std::vector<Lines> enumerate_lines(int n) { return line_basis(n); }

const std::vector<Lines>& line_basis(int n) {
    if (n < 0) throw Error("negative arity");
    if (n > max_arity()) throw BoundError("bound exceeded: arity " + std::to_string(n) + " > " +
                                          std::to_string(max_arity()));
    std::lock_guard<std::mutex> lk(g_lines_mu);
    auto it = g_lines.find(n);
    if (it != g_lines.end()) return it->second;  // map nodes are stable
    std::vector<Lines> out;
    Lines cur;
    if (n == 0) out.push_back({});
    else gen_lines(n, 0, cur, out);
    std::sort(out.begin(), out.end());
    auto& idx = g_lines_idx[n];
    for (std::size_t i = 0; i < out.size(); ++i) idx[out[i]] = static_cast<int>(i);
    return g_lines[n] = out;
}

int lines_index(const Lines& l, int n) {
    line_basis(n);
    std::lock_guard<std::mutex> lk(g_lines_mu);
    auto& idx = g_lines_idx[n];
    auto it = idx.find(l);
    if (it == idx.end()) throw Error("not a line partition of [" + std::to_string(n) + "]");
    return it->second;
}

Quiver lines_quiver(const Lines& l, int n) {
    Quiver q(n);
    for (auto& b : l)
        for (std::size_t k = 0; k + 1 < b.size(); ++k) q.add_edge(b[k], b[k + 1]);
    return q;
}

std::string lines_str(const Lines& l) {
    std::string s;
    for (auto& b : l) {
        s += "{";
        for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "," : "") + std::to_string(b[k] + 1);
        s += "}";
    }
    return s;
}

int lines_block_count(const Lines& l) { return static_cast<int>(l.size()); }

namespace {

// Rooted tree on `verts` given by parent pointers (-1 at the root), oriented away from the root.
// Returns the expansion as a combination of chains starting at the root.
void expand_tree(std::map<int, int> parent, const Scalar& coef, std::map<std::vector<int>, Scalar>& out) {
    std::map<int, std::vector<int>> kids;
    int root = -1;
    for (auto [v, p] : parent) {
        if (p < 0) root = v;
        else kids[p].push_back(v);
    }
    for (auto& [v, ch] : kids) {
        if (ch.size() < 2) continue;
        std::sort(ch.begin(), ch.end());
        int c1 = ch[0], c2 = ch[1];
        // v->c1 plus v->c2 equals v->c2->c1 plus v->c1->c2
        auto a = parent;
        a[c1] = c2;
        expand_tree(a, coef, out);
        auto b = parent;
        b[c2] = c1;
        expand_tree(b, coef, out);
        return;
    }
    std::vector<int> chain{root};
    while (kids.count(chain.back())) chain.push_back(kids[chain.back()][0]);
    out[chain] += coef;
}

}  // namespace

LineCombination reduce_to_lines(const Quiver& q) {
    const int n = q.n();
    if (n > max_arity()) throw BoundError("bound exceeded: arity " + std::to_string(n) + " > " +
                                          std::to_string(max_arity()));
    LineCombination res;
    if (!is_acyclic(q)) return res;
    auto comps = components(q);
    std::vector<int> comp_of(n);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) comp_of[v] = static_cast<int>(c);

    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, +1 if edge points to it)
    for (auto& e : q.edges()) {
        adj[e.s].emplace_back(e.t, 1);
        adj[e.t].emplace_back(e.s, 0);
    }
    Scalar sign = 1;
    std::vector<std::map<std::vector<int>, Scalar>> per;
    for (auto& comp : comps) {
        std::map<int, int> parent;
        int root = comp.front();
        parent[root] = -1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, fwd] : adj[v]) {
                if (parent.count(w)) continue;
                parent[w] = v;
                if (!fwd) sign = -sign;  // edge oriented toward the root
                stack.push_back(w);
            }
        }
        std::map<std::vector<int>, Scalar> ex;
        expand_tree(parent, 1, ex);
        per.push_back(std::move(ex));
    }
    // product over components
    std::map<Lines, Scalar> acc{{Lines{}, sign}};
    for (auto& ex : per) {
        std::map<Lines, Scalar> nxt;
        for (auto& [l, c] : acc)
            for (auto& [ch, d] : ex) {
                Lines l2 = l;
                l2.push_back(ch);
                nxt[l2] += c * d;
            }
        acc.swap(nxt);
    }
    for (auto& [l, c] : acc) {
        if (sgn(c) == 0) continue;
        Lines s = l;
        std::sort(s.begin(), s.end());
        res[s] += c;
    }
    for (auto it = res.begin(); it != res.end();)
        it = sgn(it->second) == 0 ? res.erase(it) : std::next(it);
    return res;
}

LineCombination reduce_to_lines(const std::map<std::vector<std::pair<int, int>>, Scalar>& x, int n) {
    LineCombination res;
    for (auto& [k, c] : x) {
        for (auto& [l, d] : reduce_to_lines(Quiver(n, k))) res[l] += c * d;
    }
    for (auto it = res.begin(); it != res.end();)
        it = sgn(it->second) == 0 ? res.erase(it) : std::next(it);
    return res;
}

std::string combination_str(const LineCombination& c) {
    if (c.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [l, x] : c) {
        if (!first) s += " + ";
        first = false;
        int n = 0;
        for (auto& b : l) n += static_cast<int>(b.size());
        s += x.get_str() + " * " + lines_quiver(l, n).str();
    }
    return s;
}

}  // namespace pvac

namespace pvac {

namespace {
std::mutex g_red_mu;
std::map<std::pair<int, std::vector<std::pair<int, int>>>, IndexedCombination> g_red;
}  // namespace

const IndexedCombination& reduce_indexed(const Quiver& q) {
    auto key = std::make_pair(q.n(), q.key());
    {
        std::lock_guard<std::mutex> lk(g_red_mu);
        auto it = g_red.find(key);
        if (it != g_red.end()) return it->second;
    }
    IndexedCombination out;
    for (auto& [l, c] : reduce_to_lines(q)) out.emplace_back(lines_index(l, q.n()), c);
    std::lock_guard<std::mutex> lk(g_red_mu);
    return g_red.emplace(key, std::move(out)).first->second;
}

}  // namespace pvac
