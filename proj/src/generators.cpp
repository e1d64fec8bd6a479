#include "ohc/generators.hpp"

#include "ohc/extremal.hpp"
#include "ohc/rng.hpp"

#include <stdexcept>

namespace ohc {

OrientedGraph directed_cycle(std::size_t n) {
    GraphBuilder b(n);
    if (n >= 3)
        for (VertexId v = 0; v < n; ++v) b.add_arc(v, (v + 1) % n);
    return std::move(b).build();
}

OrientedGraph transitive_tournament(std::size_t n) {
    GraphBuilder b(n);
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j) b.add_arc(i, j);
    return std::move(b).build();
}

OrientedGraph random_oriented(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    GraphBuilder b(n);
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = i + 1; j < n; ++j) {
            if (!rng.bernoulli(p)) continue;
            if (rng.bernoulli(0.5))
                b.add_arc(i, j);
            else
                b.add_arc(j, i);
        }
    }
    return std::move(b).build();
}

OrientedGraph dense_semidegree_graph(std::size_t n, std::uint64_t seed, std::size_t min_semidegree) {
    const std::size_t floor = min_semidegree != 0 ? min_semidegree : three_eighths(n);
    if (n < 3 || 2 * floor > n - 1)
        throw Error(ErrorKind::Infeasible, "minimum semidegree " + std::to_string(floor) + " impossible for n = " +
                                               std::to_string(n));
    Rng rng(seed);
    // adj[u*n+v] == 1 iff u -> v
    std::vector<char> adj(n * n, 0);
    for (const Arc& a : near_regular_tournament(n, rng()).arcs()) adj[a.from * n + a.to] = 1;
    auto arc = [&](VertexId u, VertexId v) { return adj[u * n + v] != 0; };

    // Reversing a directed triangle keeps every in- and out-degree.
    for (std::size_t step = 0; step < 4 * n * n; ++step) {
        const auto u = static_cast<VertexId>(rng.below(n));
        const auto v = static_cast<VertexId>(rng.below(n));
        const auto w = static_cast<VertexId>(rng.below(n));
        if (u == v || v == w || u == w) continue;
        if (arc(u, v) && arc(v, w) && arc(w, u)) {
            adj[u * n + v] = adj[v * n + w] = adj[w * n + u] = 0;
            adj[v * n + u] = adj[w * n + v] = adj[u * n + w] = 1;
        }
    }

    std::vector<std::size_t> out(n, 0);
    std::vector<std::size_t> in(n, 0);
    std::vector<Arc> arcs;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = 0; v < n; ++v)
            if (arc(u, v)) ++out[u], ++in[v], arcs.push_back({u, v});
    rng.shuffle(std::span<Arc>(arcs));
    std::vector<Arc> kept;
    for (const Arc& a : arcs) {
        // Delete about half of the arcs that are removable.
        if (out[a.from] > floor && in[a.to] > floor && rng.bernoulli(0.5)) {
            --out[a.from];
            --in[a.to];
        } else {
            kept.push_back(a);
        }
    }
    return make_graph(n, kept);
}

}  // namespace ohc
