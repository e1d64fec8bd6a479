#pragma once

#include "ohc/conditions.hpp"
#include "ohc/graph.hpp"
#include "ohc/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ohc {

/// Class sizes and bound of the sharp non-Hamiltonian four-block construction.
///
///   n      bound    |A|   |B|    |C|       |D|
///   4k     3k-1     a     k+1    2k-1-a    k
///   4k+1   3k-1     a     k+1    2k-a      k
///   4k+2   3k       a     k+2    2k-1-a    k+1
///   4k+3   3k+1     a     k+2    2k-a      k+1
///
/// bound = ceil((3n-3)/4) - 1. Feasible a: 0 <= a <= |C| and ceil(a/2) <= |D|.
struct ExtremalParams {
    std::size_t n = 0;
    std::size_t a = 0;
    std::size_t k = 0;
    std::size_t residue = 0;
    std::array<std::size_t, 4> sizes{};  // |A|, |B|, |C|, |D|
    std::size_t bound = 0;
    std::size_t ac_edges = 0;  // extra seeded A->C arcs (0 = off)
    std::size_t d_edges = 0;   // extra seeded arcs inside D (0 = off)
    std::uint64_t seed = 0;

    std::size_t size(Part p) const { return sizes[static_cast<std::size_t>(p)]; }
    /// Out-neighbours in D of every b in B: ceil(a/2).
    std::size_t b_out_to_d() const { return (a + 1) / 2; }
};

/// Throws Error{Infeasible} for n < 7 and Error{InfeasibleA} when a is out of range.
ExtremalParams table_params(std::size_t n, std::size_t a);

/// Every a for which table_params(n, a) succeeds, ascending.
std::vector<std::size_t> feasible_a_values(std::size_t n);

/// Tournament on m vertices with |deg+ - deg-| <= 1 everywhere: the circulant
/// with out-offsets 1..(m-1)/2 for odd m, and that circulant on m+1 vertices
/// minus one vertex for even m. Labels are permuted by the seed.
OrientedGraph near_regular_tournament(std::size_t m, std::uint64_t seed);

/// Complete bipartite orientation between B = [0, b_size) and
/// D = [b_size, b_size + d_size) where every b has exactly `out_to_d`
/// out-neighbours in D. Throws Error{Infeasible} if out_to_d > d_size.
std::vector<Arc> bipartite_tournament(std::size_t b_size, std::size_t d_size, std::size_t out_to_d,
                                      std::uint64_t seed);

struct ExtremalInstance {
    OrientedGraph graph;
    Partition4 partition;
    ExtremalParams params;
};

/// Tournaments inside A and C, all arcs A->B, B->C, C->D, D->A, the B-D
/// bipartite tournament, plus the optional seeded A->C and inside-D arcs.
/// Classes occupy consecutive id ranges in the order A, B, C, D.
ExtremalInstance generate_extremal(const ExtremalParams& p);

/// Some ordered non-arc pair (x, y) with deg+(x) + deg-(y) == sum, if any.
std::optional<PairWitness> find_pair_with_sum(const OrientedGraph& g, std::size_t sum);

// ---------------------------------------------------------------------------
// eta-extremality scoring

/// How the size bullets and the e(A), e(C) bullets are instantiated.
///  - Template: sizes measured against the construction's exact class sizes
///    for this n, and e(A), e(C) against the tournament count |X|(|X|-1)/2.
///  - Literal: sizes against n/2, n/4, n/4 and e(A), e(C) against |X|^2/2.
enum class SizeReading { Template, Literal };

struct SlackEntry {
    std::string name;   // e.g. "|B|", "e(A,B)"
    Rational value;     // measured quantity
    Rational slack;     // >= 0 means the bullet holds
    bool quadratic;     // tolerance scales with n^2 (edge bullet) or n (size bullet)
};

struct ExtremalityReport {
    Rational eta;
    Rational c_eta;
    SizeReading reading = SizeReading::Template;
    std::vector<SlackEntry> entries;  // 3 size bullets then 10 edge bullets
    bool verdict = false;
    /// Smallest eta >= 0 at which every slack is >= 0 (nullopt if none, c_eta = 0).
    std::optional<Rational> min_eta;
};

/// Throws Error{PartitionNotCovering} unless every vertex is classified.
ExtremalityReport verify_partition(const OrientedGraph& g, const Partition4& part, const Rational& eta,
                                   const Rational& c_eta, SizeReading reading = SizeReading::Template);

struct PartitionSearchOptions {
    std::size_t restarts = 24;
    std::size_t max_passes = 64;
    std::uint64_t seed = 0;
    SizeReading reading = SizeReading::Template;
};

inline constexpr std::size_t kPartitionSearchCap = 512;

struct PartitionFound {
    Partition4 partition;
    ExtremalityReport report;
};

/// Local search over four-class partitions maximising the worst slack. Returns
/// the best partition found (with its report, verdict possibly false), or
/// nullopt when n < 4 or n exceeds kPartitionSearchCap.
std::optional<PartitionFound> find_extremal_partition(const OrientedGraph& g, const Rational& eta,
                                                      const Rational& c_eta, const PartitionSearchOptions& opt = {});

}  // namespace ohc
