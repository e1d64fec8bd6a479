#pragma once

#include "ohc/absorption.hpp"
#include "ohc/extremal.hpp"
#include "ohc/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ohc {

enum class Verdict { CycleFound, NoneExists, NotFound };

std::string_view to_string(Verdict v);

struct Metric {
    std::string name;
    std::int64_t value;
    friend bool operator==(const Metric&, const Metric&) = default;
};

/// One pipeline stage. A failed run stops at its first failing stage.
struct TraceStage {
    std::string stage;
    bool ok = true;
    std::string detail;
    std::vector<Metric> metrics;
};

struct HamiltonResult {
    Verdict verdict = Verdict::NotFound;
    std::optional<DiCycle> certificate;
    std::vector<TraceStage> trace;
    /// On heuristic failure: best four-class partition found and its score.
    std::optional<ExtremalityReport> extremality;

    /// Name of the first failing stage, if any.
    std::optional<std::string> failed_stage() const;
};

inline constexpr std::size_t kBruteMax = 10;
inline constexpr std::size_t kDpMax = 24;

/// Tries every ordering of vertices 1..n-1 after vertex 0. Throws Error{TooLarge} for n > 10.
HamiltonResult exact_brute(const OrientedGraph& g);

/// Subset dynamic programme over (visited set, endpoint) anchored at vertex 0.
/// Throws Error{TooLarge} for n > max_n (at most 24).
HamiltonResult exact_dp(const OrientedGraph& g, std::size_t max_n = kDpMax);

struct PathCover {
    std::vector<DiPath> paths;
    std::size_t covered = 0;   // vertices on the returned paths
    std::size_t eligible = 0;  // |V \ X|
    bool truncated = false;    // more than max_paths were needed
    double fraction() const { return eligible == 0 ? 1.0 : static_cast<double>(covered) / eligible; }
};

/// Vertex-disjoint paths in V \ X built by greedy extension at both ends,
/// insertion of stray vertices and path merging, best of `restarts` seeded
/// runs. Keeps the max_paths longest paths when more were needed.
PathCover greedy_path_cover(const OrientedGraph& g, const VertexSet& x, std::size_t max_paths, std::uint64_t seed,
                            std::size_t restarts = 8);

struct PipelineParams {
    AbsorbingParams absorbing;
    Rational reservoir_ratio{1, 4};  // |R| <= ratio * |V(P_abs)|
    Rational leftover_ratio{1, 4};   // |U| <= ratio * |V(P_abs)|
    std::size_t max_paths = 0;       // 0 = max(1, n / 8)
    std::size_t cover_restarts = 8;
    std::size_t stitch_orders = 8;   // cyclic orders of the cover paths tried per attempt
    std::size_t attempts = 16;       // seeded restarts of the whole skeleton
    bool use_free_arcs = true;
    std::size_t max_n = 512;
    Rational eta{1, 20};             // extremality probe after a failure
    Rational c_eta{1};
};

/// Absorbing path, reservoir, path cover, cyclic stitching, leftover
/// absorption and closing, repeated over seeded attempts. Never reports
/// NoneExists. Throws Error{TooLarge} above max_n.
HamiltonResult find_hamilton_absorption(const OrientedGraph& g, const PipelineParams& params, std::uint64_t seed);

}  // namespace ohc
