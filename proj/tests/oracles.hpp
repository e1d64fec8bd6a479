#pragma once

// Brute-force reference implementations for the tests. They work on a plain
// adjacency matrix and share no code with the library beyond the graph type
// they read from.

#include "ohc/graph.hpp"
#include "ohc/rng.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using ohc::VertexId;

struct Matrix {
    std::size_t n = 0;
    std::vector<char> a;
    bool operator()(VertexId u, VertexId v) const { return a[u * n + v] != 0; }
};

inline Matrix matrix(const ohc::OrientedGraph& g) {
    Matrix m{g.order(), std::vector<char>(g.order() * g.order(), 0)};
    for (VertexId u = 0; u < m.n; ++u)
        for (VertexId v = 0; v < m.n; ++v) m.a[u * m.n + v] = g.has_arc(u, v) ? 1 : 0;
    return m;
}

inline std::size_t out_deg(const Matrix& m, VertexId v) {
    std::size_t c = 0;
    for (VertexId w = 0; w < m.n; ++w) c += m(v, w) ? 1 : 0;
    return c;
}

inline std::size_t in_deg(const Matrix& m, VertexId v) {
    std::size_t c = 0;
    for (VertexId w = 0; w < m.n; ++w) c += m(w, v) ? 1 : 0;
    return c;
}

/// Every k-tuple of distinct vertices outside {u, v} forming u -> t1 -> ... -> tk -> v.
inline std::vector<std::vector<VertexId>> connectors(const Matrix& m, VertexId u, VertexId v, std::size_t k) {
    std::vector<std::vector<VertexId>> out;
    std::vector<VertexId> t(k, 0);
    const std::size_t n = m.n;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= n;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = k; i-- > 0;) t[i] = c % n, c /= n;
        bool ok = m(u, t[0]) && m(t[k - 1], v);
        for (std::size_t i = 0; ok && i < k; ++i) {
            ok = t[i] != u && t[i] != v;
            for (std::size_t j = 0; ok && j < i; ++j) ok = t[i] != t[j];
            if (ok && i + 1 < k) ok = m(t[i], t[i + 1]);
        }
        if (ok) out.push_back(t);
    }
    return out;
}

/// Ordered (w, z) outside {u, v} with w -> z, w -> u, v -> z.
inline std::vector<std::pair<VertexId, VertexId>> strong(const Matrix& m, VertexId u, VertexId v) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId w = 0; w < m.n; ++w)
        for (VertexId z = 0; z < m.n; ++z)
            if (w != u && w != v && z != u && z != v && w != z && m(w, z) && m(w, u) && m(v, z)) out.push_back({w, z});
    return out;
}

inline std::vector<std::array<VertexId, 4>> weak(const Matrix& m, VertexId u, VertexId v, std::size_t threshold) {
    std::vector<std::array<VertexId, 4>> out;
    const std::size_t n = m.n;
    for (VertexId w = 0; w < n; ++w)
        for (VertexId w2 = 0; w2 < n; ++w2)
            for (VertexId z2 = 0; z2 < n; ++z2)
                for (VertexId z = 0; z < n; ++z) {
                    const std::array<VertexId, 4> q{w, w2, z2, z};
                    bool distinct = true;
                    for (std::size_t i = 0; i < 4; ++i) {
                        distinct = distinct && q[i] != u && q[i] != v;
                        for (std::size_t j = 0; j < i; ++j) distinct = distinct && q[i] != q[j];
                    }
                    if (!distinct || !m(w, w2) || !m(w, u) || !m(z2, z) || !m(v, z)) continue;
                    if (strong(m, w2, z2).size() >= threshold) out.push_back(q);
                }
    return out;
}

/// Backtracking Hamiltonicity test from vertex 0.
inline bool hamiltonian(const Matrix& m) {
    const std::size_t n = m.n;
    if (n < 3) return false;
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    auto go = [&](auto&& self, VertexId last, std::size_t depth) -> bool {
        if (depth == n) return m(last, 0);
        for (VertexId w = 1; w < n; ++w) {
            if (seen[w] || !m(last, w)) continue;
            seen[w] = 1;
            if (self(self, w, depth + 1)) return true;
            seen[w] = 0;
        }
        return false;
    };
    return go(go, 0, 1);
}

/// Random oriented graph from its own coin flips.
inline ohc::OrientedGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
    ohc::Rng rng(seed ^ 0x5bd1e995ULL);
    ohc::GraphBuilder b(n);
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j)
            if (rng.unit() < p) {
                if (rng.unit() < 0.5)
                    b.add_arc(i, j);
                else
                    b.add_arc(j, i);
            }
    return std::move(b).build();
}

/// The oriented graph on n vertices indexed by code in [0, 3^(n(n-1)/2)):
/// each unordered pair takes none / i->j / j->i.
inline ohc::OrientedGraph graph_from_code(std::size_t n, std::uint64_t code) {
    ohc::GraphBuilder b(n);
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j) {
            const auto t = code % 3;
            code /= 3;
            if (t == 1) b.add_arc(i, j);
            if (t == 2) b.add_arc(j, i);
        }
    return std::move(b).build();
}

}  // namespace oracle
