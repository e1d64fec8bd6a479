#pragma once

#include "ohc/graph.hpp"
#include "ohc/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ohc {

using VertexPair = std::pair<VertexId, VertexId>;

// ---------------------------------------------------------------------------
// Connectors

/// A path of exactly k internal vertices with u -> path.front() and
/// path.back() -> v; neither u nor v lies on the path.
struct Connector {
    VertexId u = 0;
    VertexId v = 0;
    DiPath path;
    std::size_t k() const { return path.size(); }
    friend bool operator==(const Connector&, const Connector&) = default;
};

inline constexpr std::size_t kMaxConnectorLength = 3;

/// k-connectors for (u, v) in lexicographic order of their vertex sequences,
/// at most `cap` of them. When `allowed` is given, every path vertex must lie
/// in it. Requires u != v and 1 <= k <= 3.
std::vector<Connector> enumerate_connectors(const OrientedGraph& g, VertexId u, VertexId v, std::size_t k,
                                            std::optional<std::size_t> cap = std::nullopt,
                                            const VertexSet* allowed = nullptr);

/// Exact number of k-connectors for (u, v).
std::size_t count_connectors(const OrientedGraph& g, VertexId u, VertexId v, std::size_t k);

struct ProfileEntry {
    VertexId u = 0;
    VertexId v = 0;
    std::array<std::size_t, 3> counts{};  // k = 1, 2, 3
    std::optional<std::size_t> best_k;    // smallest k with a connector
    bool flagged() const { return !best_k; }
    std::size_t best_count() const { return best_k ? counts[*best_k - 1] : 0; }
};

/// One entry per ordered pair u != v with (u, v) not an arc, in lexicographic order.
std::vector<ProfileEntry> connectivity_profile(const OrientedGraph& g);

// ---------------------------------------------------------------------------
// Absorbers

/// w -> z, w -> u and v -> z, with w, z outside {u, v}. Serving a single
/// vertex means u == v.
struct StrongAbsorber {
    VertexId w = 0;
    VertexId z = 0;
    friend auto operator<=>(const StrongAbsorber&, const StrongAbsorber&) = default;
};

/// w -> w', w -> u, z' -> z, v -> z with the four vertices distinct and
/// outside {u, v}, and (w', z') strongly absorbable.
struct WeakAbsorber {
    VertexId w = 0;
    VertexId w2 = 0;  // w'
    VertexId z2 = 0;  // z'
    VertexId z = 0;
    friend auto operator<=>(const WeakAbsorber&, const WeakAbsorber&) = default;
};

std::vector<StrongAbsorber> enumerate_strong_absorbers(const OrientedGraph& g, VertexId u, VertexId v,
                                                       std::optional<std::size_t> cap = std::nullopt);
std::size_t count_strong_absorbers(const OrientedGraph& g, VertexId u, VertexId v);

struct Absorbability {
    std::size_t count = 0;
    std::size_t threshold = 0;  // max(1, floor(alpha * n^2))
    bool absorbable = false;
};

Absorbability is_strongly_absorbable(const OrientedGraph& g, VertexId u, VertexId v, const Rational& alpha1);

inline constexpr std::size_t kDefaultWeakCap = 100000;

/// Weak absorbers for (u, v) in lexicographic (w, w', z', z) order, at most
/// `cap` of them. Strong absorbability of each (w', z') is computed once.
std::vector<WeakAbsorber> enumerate_weak_absorbers(const OrientedGraph& g, VertexId u, VertexId v,
                                                   const Rational& alpha1,
                                                   std::optional<std::size_t> cap = kDefaultWeakCap);

struct DensePairReport {
    std::size_t count = 0;      // alpha-strongly absorbable ordered pairs in X x Y
    std::size_t threshold = 0;  // per-pair absorber threshold
    Rational beta;              // e(Y, X) / n^2
    double bound = 0.0;         // (beta^4 / 32 - alpha) * n^2
    bool bound_met() const { return static_cast<double>(count) >= bound; }
};

/// Ordered pairs (x, y) with x in X, y in Y, x != y, that are alpha-strongly absorbable.
DensePairReport count_dense_strong_pairs(const OrientedGraph& g, const VertexSet& x, const VertexSet& y,
                                         const Rational& alpha);

// ---------------------------------------------------------------------------
// Disjoint family selection

using Tuple = std::vector<VertexId>;

struct FamilyOptions {
    /// Keep probability p = c * sigma * (n'-t)! / (n'-1)!; `p` overrides it.
    double c = 1.0 / 128.0;
    std::optional<double> p;
    /// Per-pair target floor; pairs below it are listed in the report.
    std::size_t floor = 0;
    /// Top up pairs below the floor from their unused candidates.
    bool repair = false;
    /// n' in the probability formula; 0 means the number of distinct candidate vertices.
    std::size_t universe = 0;
};

struct FamilyMember {
    VertexPair owner;
    Tuple tuple;
};

struct AbsorberFamily {
    std::size_t arity = 0;
    double p = 0.0;
    std::vector<FamilyMember> members;              // pairwise vertex-disjoint
    std::map<VertexPair, std::size_t> achieved;     // per-pair retained count
    std::vector<VertexPair> below_floor;            // TargetInfeasible report
    std::size_t sampled = 0;                        // kept by the coin flips
    std::size_t discarded = 0;                      // dropped in conflict removal
    VertexSet vertices(std::size_t n) const;
};

/// Seeded coin-flip sampling followed by conflict removal (one tuple dropped
/// per intersecting pair, processed in a seeded order), then optional repair.
AbsorberFamily select_disjoint_family(const std::map<VertexPair, std::vector<Tuple>>& candidates, std::size_t t,
                                      const Rational& sigma, std::uint64_t seed, const FamilyOptions& opt = {});

// ---------------------------------------------------------------------------
// Reservoir

struct ReservoirParams {
    std::size_t max_vertices = 0;          // budget for |R|
    std::size_t candidates_per_pair = 4;   // k-connectors offered per pair and k
    Rational sigma{1, 64};
    FamilyOptions family{.c = 1.0 / 128.0, .p = 1.0};
};

struct Reservoir {
    VertexSet vertices;                               // R
    std::array<std::vector<Connector>, 3> families;   // F1, F2, F3
    VertexSet ledger;                                 // S: used reservoir vertices
    std::size_t uncovered_pairs = 0;                  // non-arc pairs outside X with no family connector
    std::array<std::size_t, 3> below_floor{};         // per-k family reports

    std::size_t size() const { return vertices.size(); }
    std::size_t unused() const { return vertices.size() - ledger.size(); }
};

/// Families F1, F2, F3 of disjoint connectors avoiding X (each stage also
/// avoiding the previous stages), trimmed to the vertex budget; R is their union.
Reservoir build_reservoir(const OrientedGraph& g, const VertexSet& x, const ReservoirParams& params,
                          std::uint64_t seed);

/// (x, y)-path with at most three internal vertices from R minus the ledger;
/// the internal vertices join the ledger. Throws Error{NoConnector}.
DiPath connect_through_reservoir(const OrientedGraph& g, Reservoir& r, VertexId x, VertexId y);

// ---------------------------------------------------------------------------
// Absorbing path

enum class GadgetKind { Weak, Strong };

struct Gadget {
    GadgetKind kind = GadgetKind::Strong;
    std::size_t id = 0;
    VertexId w = 0;
    VertexId z = 0;
    VertexId w2 = 0;  // weak only: w'
    VertexId z2 = 0;  // weak only: z'
    VertexId served = 0;  // vertex the gadget was selected for
    bool used = false;
};

struct AbsorbingPath {
    DiPath path;
    std::vector<Gadget> gadgets;  // weak first, then strong, each by id

    std::size_t capacity(GadgetKind kind) const;
    /// Registered arcs (w z for strong, w w' and z' z for weak) that must stay consecutive.
    std::vector<VertexPair> protected_arcs() const;
};

struct AbsorbingParams {
    Rational alpha1{1, 64};   // strong-absorbability threshold alpha1 * n^2
    Rational alpha2{1, 4096}; // weak-absorbability threshold alpha2 * n^4
    Rational sigma{1, 64};
    std::size_t max_vertices = 0;       // cap on |V(P_abs)|; 0 = n / 2
    std::size_t weak_cap = kDefaultWeakCap;
    std::size_t candidates_per_vertex = 16;
    FamilyOptions family{.c = 1.0 / 128.0, .p = 1.0};
};

struct AbsorbingBuild {
    AbsorbingPath path;
    std::vector<VertexId> strongly_absorbable;
    std::vector<VertexId> weakly_absorbable;
    std::vector<VertexId> classification_gap;  // neither absorber type
    std::vector<Gadget> dropped;               // selected but not stitched
};

/// Classifies vertices, selects the weak family and then the strong family on
/// the remaining vertices, and stitches every gadget into one path.
AbsorbingBuild build_absorbing_path(const OrientedGraph& g, const AbsorbingParams& params, std::uint64_t seed);

struct AbsorbOptions {
    /// Also insert into path arcs that no unused gadget needs.
    bool use_free_arcs = false;
};

/// Inserts every vertex of U into P using strong gadgets (matched
/// bipartitely) and double-step rewrites through weak gadgets. Returns a path
/// on V(P) ∪ U with the same endpoints. Throws Error{CapacityExhausted |
/// VertexNotAbsorbable}.
AbsorbingPath absorb_vertices(const OrientedGraph& g, const AbsorbingPath& p, const VertexSet& u,
                              const AbsorbOptions& opt = {});

}  // namespace ohc
