#pragma once

#include "ohc/graph.hpp"
#include "ohc/rational.hpp"

#include <optional>
#include <string>
#include <variant>

namespace ohc {

/// Ordered pair (x, y) whose degree sum deg+(x) + deg-(y) attains the margin.
struct PairWitness {
    VertexId x;
    VertexId y;
    friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

/// Vertex attaining the minimum semidegree; `out_side` tells which of its
/// degrees is the minimum.
struct VertexWitness {
    VertexId v;
    bool out_side;
    friend bool operator==(const VertexWitness&, const VertexWitness&) = default;
};

/// Index i (1-based, i < n/2) and bullet (1 or 2) of the degree-sequence test.
struct IndexWitness {
    std::size_t i;
    int bullet;
    friend bool operator==(const IndexWitness&, const IndexWitness&) = default;
};

/// |X| and e(X) of an audited vertex set.
struct SetWitness {
    std::size_t size;
    std::size_t arcs;
    friend bool operator==(const SetWitness&, const SetWitness&) = default;
};

using Witness = std::variant<std::monostate, PairWitness, VertexWitness, IndexWitness, SetWitness>;

/// Outcome of a degree-hypothesis check. `margin` is the minimum slack over the
/// quantified objects; nullopt stands for +infinity (nothing to quantify over).
struct ConditionReport {
    std::string condition;
    bool satisfied = true;
    std::optional<Rational> margin;
    Witness witness;
    std::optional<bool> strongly_connected;
};

/// deg+(x) + deg-(y) >= (3n-3)/4 for every ordered x != y with (x,y) not an arc.
ConditionReport check_ore(const OrientedGraph& g);

/// delta0(G) >= n/8; implied by the Ore-type condition above.
ConditionReport check_semidegree_consequence(const OrientedGraph& g);

/// delta+(G) + delta-(G) >= n on a strongly connected digraph.
ConditionReport check_ghouila_houri(const OrientedGraph& g);

/// deg+(x) + deg-(y) >= n for every ordered non-arc pair x != y, strongly connected.
ConditionReport check_woodall(const OrientedGraph& g);

/// Degree-sequence hypothesis: for all 1 <= i < n/2,
///   d+_i >= i+1 or d-_{n-i} >= n-i,   and   d-_i >= i+1 or d+_{n-i} >= n-i,
/// with both sequences sorted ascending; margin is the worst bullet's best term.
ConditionReport check_nash_williams(const OrientedGraph& g);

/// Audit of the sparse-set bound |X| <= n/4 + 21 sigma n given e(X) <= sigma n^2.
/// Throws Error{HypothesisViolated} when e(X) > sigma n^2.
ConditionReport check_sparse_set_bound(const OrientedGraph& g, const VertexSet& x, const Rational& sigma);

/// Minimum of deg+(x) + deg-(y) over ordered non-arc pairs x != y, with a pair
/// attaining it; nullopt when every ordered pair is an arc (n < 2).
std::optional<std::pair<std::size_t, PairWitness>> min_nonarc_degree_sum(const OrientedGraph& g);

}  // namespace ohc
