#pragma once

#include "ohc/error.hpp"
#include "ohc/vertex_set.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace ohc {

/// Desk-scale cap on the order of any graph.
inline constexpr std::size_t kMaxVertices = 4096;

struct Arc {
    VertexId from;
    VertexId to;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct Degrees {
    std::size_t out;
    std::size_t in;
    friend bool operator==(const Degrees&, const Degrees&) = default;
};

/// Directed path as an ordered sequence of distinct vertices.
struct DiPath {
    std::vector<VertexId> vertices;
    std::size_t size() const { return vertices.size(); }
    bool empty() const { return vertices.empty(); }
    VertexId front() const { return vertices.front(); }
    VertexId back() const { return vertices.back(); }
    friend bool operator==(const DiPath&, const DiPath&) = default;
};

/// Directed cycle; the arc last -> first is implied.
struct DiCycle {
    std::vector<VertexId> vertices;
    std::size_t size() const { return vertices.size(); }
    friend bool operator==(const DiCycle&, const DiCycle&) = default;
};

/// Frozen oriented graph: no loops, at most one arc per vertex pair.
/// Adjacency is kept twice (out-rows and in-rows), one word row per vertex.
class OrientedGraph {
public:
    OrientedGraph() = default;
    /// Arcless graph on n vertices.
    explicit OrientedGraph(std::size_t n);

    std::size_t order() const { return n_; }
    std::size_t arc_count() const { return arc_count_; }

    bool has_arc(VertexId u, VertexId v) const { return row_test(out_row(u), v); }
    bool adjacent(VertexId u, VertexId v) const { return has_arc(u, v) || has_arc(v, u); }

    BitRow out_row(VertexId v) const { return {out_.data() + v * words_, words_}; }
    BitRow in_row(VertexId v) const { return {in_.data() + v * words_, words_}; }
    VertexSet out_set(VertexId v) const { return VertexSet::from_row(n_, out_row(v)); }
    VertexSet in_set(VertexId v) const { return VertexSet::from_row(n_, in_row(v)); }

    std::size_t out_degree(VertexId v) const { return out_deg_[v]; }
    std::size_t in_degree(VertexId v) const { return in_deg_[v]; }

    std::vector<VertexId> out_neighbors(VertexId v) const;
    std::vector<VertexId> in_neighbors(VertexId v) const;

    /// All arcs in lexicographic order.
    std::vector<Arc> arcs() const;

    /// e(X): arcs with both ends in X.
    std::size_t arcs_within(const VertexSet& x) const;
    /// e(X, Y): arcs from X to Y.
    std::size_t arcs_between(const VertexSet& x, const VertexSet& y) const;

    friend bool operator==(const OrientedGraph& a, const OrientedGraph& b) {
        return a.n_ == b.n_ && a.out_ == b.out_;
    }

private:
    friend class GraphBuilder;

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::size_t arc_count_ = 0;
    std::vector<Word> out_;
    std::vector<Word> in_;
    std::vector<std::size_t> out_deg_;
    std::vector<std::size_t> in_deg_;
};

/// Single-owner builder; `build()` hands out the frozen graph.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n);
    explicit GraphBuilder(OrientedGraph g) : g_(std::move(g)) {}

    std::size_t order() const { return g_.n_; }
    bool has_arc(VertexId u, VertexId v) const { return g_.has_arc(u, v); }

    /// Throws Error{SelfLoop | TwoCycle | OutOfRange}. Re-adding an existing
    /// arc is a no-op.
    GraphBuilder& add_arc(VertexId u, VertexId v);
    /// Adds the arc when it keeps the graph oriented; returns whether it did.
    bool try_add_arc(VertexId u, VertexId v);

    OrientedGraph build() const& { return g_; }
    OrientedGraph build() && { return std::move(g_); }

private:
    void check_range(VertexId u, VertexId v) const;
    OrientedGraph g_;
};

/// Value-semantic insertion: returns g plus arc (u,v).
OrientedGraph add_arc(const OrientedGraph& g, VertexId u, VertexId v);

OrientedGraph make_graph(std::size_t n, const std::vector<Arc>& arcs);

Degrees degrees(const OrientedGraph& g, VertexId v);

/// True iff every ordered pair of vertices is joined by a directed path.
bool strongly_connected(const OrientedGraph& g);

/// Distinct vertices, every consecutive pair an arc.
bool is_valid_path(const OrientedGraph& g, const DiPath& p);

/// Distinct vertices, consecutive arcs including last -> first, length >= 2.
bool is_valid_cycle(const OrientedGraph& g, const DiCycle& c);

/// Visits each of the n vertices exactly once along arcs of g (cyclically).
bool verify_hamilton_cycle(const OrientedGraph& g, const DiCycle& c);

// ---------------------------------------------------------------------------
// Four-class partitions and path contraction

enum class Part : unsigned char { A = 0, B = 1, C = 2, D = 3, None = 4 };

inline constexpr std::array<Part, 4> kParts{Part::A, Part::B, Part::C, Part::D};

char part_name(Part p);

/// Disjoint classes A, B, C, D over the vertices of a graph (A or C may be
/// empty; vertices outside every class are allowed).
class Partition4 {
public:
    Partition4() = default;
    explicit Partition4(std::size_t n) : label_(n, Part::None) {}
    Partition4(std::size_t n, const std::array<std::vector<VertexId>, 4>& classes);

    std::size_t universe() const { return label_.size(); }
    Part part_of(VertexId v) const { return label_[v]; }
    void assign(VertexId v, Part p) { label_[v] = p; }

    std::vector<VertexId> members(Part p) const;
    VertexSet member_set(Part p) const;
    std::size_t class_size(Part p) const;
    bool covers_all() const;

    friend bool operator==(const Partition4&, const Partition4&) = default;

private:
    std::vector<Part> label_;
};

struct Contraction {
    OrientedGraph graph;
    Partition4 partition;
    VertexId contracted;                      // id of the fresh vertex in `graph`
    std::vector<std::optional<VertexId>> new_id;  // old id -> new id (nullopt for path vertices)
    std::vector<VertexId> old_id;             // new id -> old id (contracted maps to path front)
    DiPath path;                              // the contracted path, in old ids
};

/// Replaces the class-internal path P by one vertex p in class P(i) with
/// N+(p) = N+(p2) ∩ P(i+1) and N-(p) = N-(p1) ∩ P(i-1); the cyclic order is the
/// subsequence of nonempty classes of (A, B, C, D).
/// Throws Error{InvalidPath | EndpointsInDifferentClasses | DegenerateClassOrder}.
Contraction contract_path(const OrientedGraph& g, const Partition4& part, const DiPath& path);

/// Maps a cycle of the contracted graph back to the original graph, expanding
/// the contracted vertex into its path.
DiCycle lift_cycle(const Contraction& c, const DiCycle& cycle);

}  // namespace ohc
