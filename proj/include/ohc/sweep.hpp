#pragma once

#include "ohc/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ohc {

/// One suite of a sweep. Recognised kinds and their keys (defaults shown):
///   sharpness  n_min 7, n_max 16                      every feasible a
///   augmented  n [11, 12], seeds 20, ac_edges 5, d_edges 3
///   oracle     count 200, n_min 5, n_max 9, p 0.5
///   pipeline   count 100, n_min 24, n_max 64, target 0.9
struct SuiteSpec {
    std::string kind;
    Json config = Json::object();
};

struct SweepSpec {
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::vector<SuiteSpec> suites;

    /// Throws std::invalid_argument on an unknown suite kind or malformed field.
    static SweepSpec from_json(const Json& j);
    Json to_json() const;
};

struct SweepOutcome {
    Json report;  // {"suites": [{kind, config, rows, summary, passed}]}
    bool all_passed = true;
};

/// Runs every suite; rows are computed on `workers` threads and stored by
/// index, so the report does not depend on scheduling.
SweepOutcome run_sweep(const SweepSpec& spec);

/// Calls f(i) for i in [0, count) on up to `workers` threads and returns the
/// results in index order.
std::vector<Json> parallel_rows(std::size_t count, std::size_t workers, const std::function<Json(std::size_t)>& f);

}  // namespace ohc
