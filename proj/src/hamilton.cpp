#include "ohc/hamilton.hpp"

#include "ohc/rng.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace ohc {

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::CycleFound: return "cycle_found";
    case Verdict::NoneExists: return "none_exists";
    case Verdict::NotFound: return "not_found";
    }
    return "unknown";
}

std::optional<std::string> HamiltonResult::failed_stage() const {
    for (const auto& s : trace)
        if (!s.ok) return s.stage;
    return std::nullopt;
}

namespace {

HamiltonResult found(const OrientedGraph& g, std::vector<VertexId> order) {
    DiCycle c{std::move(order)};
    if (!verify_hamilton_cycle(g, c)) throw std::logic_error("solver produced an invalid Hamilton cycle");
    HamiltonResult r;
    r.verdict = Verdict::CycleFound;
    r.certificate = std::move(c);
    return r;
}

HamiltonResult none() {
    HamiltonResult r;
    r.verdict = Verdict::NoneExists;
    return r;
}

}  // namespace

HamiltonResult exact_brute(const OrientedGraph& g) {
    const std::size_t n = g.order();
    if (n > kBruteMax) throw Error(ErrorKind::TooLarge, "exact_brute handles n <= 10");
    if (n < 3) return none();
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), VertexId{0});
    do {
        bool ok = g.has_arc(order.back(), order.front());
        for (std::size_t i = 0; ok && i + 1 < n; ++i) ok = g.has_arc(order[i], order[i + 1]);
        if (ok) return found(g, order);
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return none();
}

HamiltonResult exact_dp(const OrientedGraph& g, std::size_t max_n) {
    const std::size_t n = g.order();
    if (n > std::min(max_n, kDpMax)) throw Error(ErrorKind::TooLarge, "exact_dp handles n <= " + std::to_string(max_n));
    if (n < 3) return none();
    std::vector<std::uint32_t> in_mask(n, 0);
    for (VertexId v = 0; v < n; ++v)
        row_for_each(g.in_row(v), [&](VertexId u) { in_mask[v] |= std::uint32_t{1} << u; });

    // reach[m]: endpoints e such that some path from 0 visits exactly {0} ∪ m and ends at e,
    // where bit i-1 of m stands for vertex i.
    const std::size_t rest = n - 1;
    std::vector<std::uint32_t> reach(std::size_t{1} << rest, 0);
    reach[0] = 1;
    for (std::size_t m = 1; m < reach.size(); ++m) {
        std::uint32_t ends = 0;
        for (std::size_t bits = m; bits != 0; bits &= bits - 1) {
            const auto i = static_cast<std::size_t>(std::countr_zero(bits));
            if (reach[m ^ (std::size_t{1} << i)] & in_mask[i + 1]) ends |= std::uint32_t{1} << (i + 1);
        }
        reach[m] = ends;
    }
    std::size_t m = reach.size() - 1;
    std::uint32_t closing = reach[m] & ~std::uint32_t{1};
    VertexId end = n;
    for (VertexId e = 1; e < n; ++e)
        if ((closing >> e) & 1U && g.has_arc(e, 0)) end = e;
    if (end == n) return none();

    std::vector<VertexId> back{end};
    while (m != 0) {
        m ^= std::size_t{1} << (end - 1);
        const std::uint32_t prev = reach[m] & in_mask[end];
        end = static_cast<VertexId>(std::countr_zero(prev));
        back.push_back(end);
    }
    std::reverse(back.begin(), back.end());
    return found(g, back);
}

// ---------------------------------------------------------------------------

namespace {

class CoverRun {
public:
    CoverRun(const OrientedGraph& g, const VertexSet& x, Rng& rng) : g_(g), rng_(rng), left_(g.order()) {
        for (VertexId v = 0; v < g.order(); ++v)
            if (!x.contains(v)) left_.insert(v);
    }

    std::vector<std::vector<VertexId>> run() {
        std::vector<std::vector<VertexId>> paths;
        while (!left_.empty()) {
            std::vector<VertexId> p{pick_start()};
            left_.erase(p.front());
            grow(p);
            paths.push_back(std::move(p));
        }
        merge(paths);
        return paths;
    }

private:
    std::size_t avail(BitRow row) const { return row_and_count(row, left_.row()); }

    // Among `cands`, the vertex minimising `score`, ties broken at random.
    template <typename Score>
    std::optional<VertexId> best_of(BitRow cands, Score score) {
        std::optional<VertexId> best;
        std::size_t best_s = 0;
        std::uint64_t tie = 0;
        row_for_each(cands, [&](VertexId v) {
            if (!left_.contains(v)) return;
            const std::size_t s = score(v);
            const std::uint64_t t = rng_();
            if (!best || s < best_s || (s == best_s && t < tie)) best = v, best_s = s, tie = t;
        });
        return best;
    }

    VertexId pick_start() {
        VertexSet all = left_;
        return *best_of(all.row(), [&](VertexId v) { return avail(g_.in_row(v)); });
    }

    void grow(std::vector<VertexId>& p) {
        for (;;) {
            if (auto nx = best_of(g_.out_row(p.back()), [&](VertexId v) { return avail(g_.out_row(v)); })) {
                p.push_back(*nx);
                left_.erase(*nx);
                continue;
            }
            if (auto pv = best_of(g_.in_row(p.front()), [&](VertexId v) { return avail(g_.in_row(v)); })) {
                p.insert(p.begin(), *pv);
                left_.erase(*pv);
                continue;
            }
            if (insert_one(p) || open_cycle(p)) continue;
            return;
        }
    }

    // Some unused r with p[i] -> r -> p[i+1].
    bool insert_one(std::vector<VertexId>& p) {
        for (VertexId r : left_.to_vector()) {
            for (std::size_t i = 0; i + 1 < p.size(); ++i) {
                if (g_.has_arc(p[i], r) && g_.has_arc(r, p[i + 1])) {
                    p.insert(p.begin() + static_cast<std::ptrdiff_t>(i + 1), r);
                    left_.erase(r);
                    return true;
                }
            }
        }
        return false;
    }

    // When back -> front closes a cycle, reopen it next to an unused neighbour.
    bool open_cycle(std::vector<VertexId>& p) {
        if (p.size() < 2 || !g_.has_arc(p.back(), p.front())) return false;
        for (VertexId r : left_.to_vector()) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (g_.has_arc(p[i], r)) {
                    std::rotate(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i + 1), p.end());
                    p.push_back(r);
                    left_.erase(r);
                    return true;
                }
                if (g_.has_arc(r, p[i])) {
                    std::rotate(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i), p.end());
                    p.insert(p.begin(), r);
                    left_.erase(r);
                    return true;
                }
            }
        }
        return false;
    }

    // Concatenate paths joined by an arc and splice short paths into arcs of others.
    void merge(std::vector<std::vector<VertexId>>& paths) {
        bool changed = true;
        while (changed && paths.size() > 1) {
            changed = false;
            for (std::size_t i = 0; i < paths.size() && !changed; ++i) {
                for (std::size_t j = 0; j < paths.size() && !changed; ++j) {
                    if (i == j) continue;
                    auto& a = paths[i];
                    auto& b = paths[j];
                    if (g_.has_arc(a.back(), b.front())) {
                        a.insert(a.end(), b.begin(), b.end());
                        changed = true;
                    } else {
                        for (std::size_t k = 0; k + 1 < a.size(); ++k) {
                            if (g_.has_arc(a[k], b.front()) && g_.has_arc(b.back(), a[k + 1])) {
                                a.insert(a.begin() + static_cast<std::ptrdiff_t>(k + 1), b.begin(), b.end());
                                changed = true;
                                break;
                            }
                        }
                    }
                    if (changed) paths.erase(paths.begin() + static_cast<std::ptrdiff_t>(j));
                }
            }
        }
    }

    const OrientedGraph& g_;
    Rng& rng_;
    VertexSet left_;
};

}  // namespace

PathCover greedy_path_cover(const OrientedGraph& g, const VertexSet& x, std::size_t max_paths, std::uint64_t seed,
                            std::size_t restarts) {
    Rng rng(seed);
    std::optional<std::vector<std::vector<VertexId>>> best;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        CoverRun run(g, x, rng);
        auto paths = run.run();
        if (!best || paths.size() < best->size()) best = std::move(paths);
        if (best->size() <= 1) break;
    }
    PathCover cover;
    for (VertexId v = 0; v < g.order(); ++v)
        if (!x.contains(v)) ++cover.eligible;
    auto& paths = *best;
    std::stable_sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    if (paths.size() > max_paths) {
        cover.truncated = true;
        paths.resize(max_paths);
    }
    for (auto& p : paths) {
        cover.covered += p.size();
        cover.paths.push_back(DiPath{std::move(p)});
    }
    return cover;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t ratio_of(const Rational& r, std::size_t base) {
    return static_cast<std::size_t>(std::max<std::int64_t>(0, floor_of(r * static_cast<std::int64_t>(base))));
}

TraceStage& stage(HamiltonResult& r, std::string name) {
    r.trace.push_back({std::move(name), true, {}, {}});
    return r.trace.back();
}

void metric(TraceStage& s, std::string name, std::size_t value) {
    s.metrics.push_back({std::move(name), static_cast<std::int64_t>(value)});
}

HamiltonResult attempt_once(const OrientedGraph& g, const PipelineParams& params, Rng rng) {
    const std::size_t n = g.order();
    HamiltonResult res;

    auto& s1 = stage(res, "absorbing_path");
    const auto build = build_absorbing_path(g, params.absorbing, rng());
    const DiPath& pabs = build.path.path;
    metric(s1, "vertices", pabs.size());
    metric(s1, "strong_gadgets", build.path.capacity(GadgetKind::Strong));
    metric(s1, "weak_gadgets", build.path.capacity(GadgetKind::Weak));
    metric(s1, "classification_gap", build.classification_gap.size());
    metric(s1, "dropped_gadgets", build.dropped.size());
    if (!build.classification_gap.empty())
        s1.detail = "warning: " + std::to_string(build.classification_gap.size()) + " vertices have no absorber";

    auto& s2 = stage(res, "reservoir");
    const VertexSet x = VertexSet::from_range(n, pabs.vertices);
    ReservoirParams rp;
    rp.max_vertices = ratio_of(params.reservoir_ratio, pabs.size());
    rp.sigma = params.absorbing.sigma;
    const Reservoir reservoir = build_reservoir(g, x, rp, rng());
    metric(s2, "vertices", reservoir.size());
    metric(s2, "budget", rp.max_vertices);

    auto& s3 = stage(res, "cover");
    const std::size_t max_paths = params.max_paths != 0 ? params.max_paths : std::max<std::size_t>(1, n / 8);
    const PathCover cover = greedy_path_cover(g, x | reservoir.vertices, max_paths, rng(), params.cover_restarts);
    metric(s3, "paths", cover.paths.size());
    metric(s3, "covered", cover.covered);
    metric(s3, "eligible", cover.eligible);
    metric(s3, "truncated", cover.truncated ? 1 : 0);

    auto& s4 = stage(res, "stitch");
    std::vector<DiPath> rest = cover.paths;
    std::optional<std::vector<std::vector<VertexId>>> links;  // internal vertices after each piece
    Reservoir ledgered = reservoir;
    std::string last_error = "nothing to stitch";
    for (std::size_t o = 0; o < std::max<std::size_t>(params.stitch_orders, 1) && !links; ++o) {
        if (o > 0) rng.shuffle(std::span<DiPath>(rest));
        std::vector<const DiPath*> pieces;
        if (!pabs.empty()) pieces.push_back(&pabs);
        for (const auto& p : rest) pieces.push_back(&p);
        if (pieces.empty() || (pieces.size() == 1 && pieces[0]->size() < 2)) break;
        Reservoir r = reservoir;
        std::vector<std::vector<VertexId>> joins;
        try {
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                const auto path = connect_through_reservoir(g, r, pieces[i]->back(),
                                                            pieces[(i + 1) % pieces.size()]->front());
                joins.emplace_back(path.vertices.begin() + 1, path.vertices.end() - 1);
            }
            links = std::move(joins);
            ledgered = std::move(r);
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    if (!links) {
        s4.ok = false;
        s4.detail = last_error;
        return res;
    }
    metric(s4, "reservoir_used", ledgered.ledger.size());

    auto& s5 = stage(res, "absorb");
    VertexSet leftover(n);
    {
        VertexSet placed = x | ledgered.ledger;
        for (const auto& p : rest)
            for (VertexId v : p.vertices) placed.insert(v);
        for (VertexId v = 0; v < n; ++v)
            if (!placed.contains(v)) leftover.insert(v);
    }
    const std::size_t cap = ratio_of(params.leftover_ratio, pabs.size());
    metric(s5, "leftover", leftover.size());
    metric(s5, "cap", cap);
    AbsorbingPath absorbed = build.path;
    if (!leftover.empty()) {
        if (leftover.size() > cap) {
            s5.ok = false;
            s5.detail = "leftover " + std::to_string(leftover.size()) + " exceeds cap " + std::to_string(cap);
            return res;
        }
        try {
            absorbed = absorb_vertices(g, build.path, leftover, AbsorbOptions{params.use_free_arcs});
        } catch (const Error& e) {
            s5.ok = false;
            s5.detail = std::string(to_string(e.kind())) + ": " + e.what();
            return res;
        }
    }

    auto& s6 = stage(res, "close");
    std::vector<VertexId> cycle;
    std::size_t li = 0;
    if (!pabs.empty()) {
        cycle = absorbed.path.vertices;
        cycle.insert(cycle.end(), (*links)[li].begin(), (*links)[li].end());
        ++li;
    }
    for (const auto& p : rest) {
        cycle.insert(cycle.end(), p.vertices.begin(), p.vertices.end());
        cycle.insert(cycle.end(), (*links)[li].begin(), (*links)[li].end());
        ++li;
    }
    metric(s6, "length", cycle.size());
    HamiltonResult ok = found(g, std::move(cycle));
    ok.trace = std::move(res.trace);
    return ok;
}

}  // namespace

HamiltonResult find_hamilton_absorption(const OrientedGraph& g, const PipelineParams& params, std::uint64_t seed) {
    const std::size_t n = g.order();
    if (n > params.max_n) throw Error(ErrorKind::TooLarge, "pipeline handles n <= " + std::to_string(params.max_n));
    HamiltonResult last;
    if (n < 3) {
        last.trace.push_back({"input", false, "fewer than 3 vertices", {}});
        return last;
    }
    const Rng master(seed);
    const std::size_t attempts = std::max<std::size_t>(params.attempts, 1);
    for (std::size_t a = 0; a < attempts; ++a) {
        HamiltonResult r = attempt_once(g, params, master.split(a));
        r.trace.front().metrics.push_back({"attempt", static_cast<std::int64_t>(a + 1)});
        if (r.verdict == Verdict::CycleFound) return r;
        last = std::move(r);
    }
    if (n >= 4 && n <= kPartitionSearchCap) {
        PartitionSearchOptions opt;
        opt.seed = seed;
        if (auto p = find_extremal_partition(g, params.eta, params.c_eta, opt)) last.extremality = std::move(p->report);
    }
    return last;
}

}  // namespace ohc
