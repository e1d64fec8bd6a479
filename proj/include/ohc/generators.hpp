#pragma once

#include "ohc/graph.hpp"

#include <cstdint>

namespace ohc {

/// 0 -> 1 -> ... -> n-1 -> 0.
OrientedGraph directed_cycle(std::size_t n);

/// i -> j for every i < j.
OrientedGraph transitive_tournament(std::size_t n);

/// Each vertex pair independently receives an arc with probability p, in a
/// direction chosen by a fair coin.
OrientedGraph random_oriented(std::size_t n, double p, std::uint64_t seed);

/// Dense oriented graph with minimum semidegree at least `min_semidegree`
/// (default ceil(3n/8)): a near-regular tournament shuffled by degree-
/// preserving triangle reversals, then thinned by random arc deletions that
/// keep the semidegree floor. Requires min_semidegree <= (n-1)/2.
OrientedGraph dense_semidegree_graph(std::size_t n, std::uint64_t seed, std::size_t min_semidegree = 0);

/// ceil(3n/8).
constexpr std::size_t three_eighths(std::size_t n) { return (3 * n + 7) / 8; }

}  // namespace ohc
