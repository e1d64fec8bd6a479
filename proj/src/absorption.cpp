#include "ohc/absorption.hpp"

#include "ohc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace ohc {

namespace {

VertexSet all_vertices(std::size_t n) {
    VertexSet s(n);
    for (VertexId v = 0; v < n; ++v) s.insert(v);
    return s;
}

// Depth-first walk over k-connectors in lexicographic order; `emit` returns
// false to stop the walk.
void walk_connectors(const OrientedGraph& g, VertexId u, VertexId v, std::size_t k, const VertexSet& avail,
                     const std::function<bool(const std::vector<VertexId>&)>& emit) {
    std::vector<VertexId> path;
    path.reserve(k);
    VertexSet on_path(g.order());
    bool stop = false;
    std::function<void(VertexId)> extend = [&](VertexId last) {
        const bool final = path.size() + 1 == k;
        for (VertexId next : g.out_neighbors(last)) {
            if (stop) return;
            if (!avail.contains(next) || on_path.contains(next)) continue;
            if (final && !g.has_arc(next, v)) continue;
            path.push_back(next);
            if (final) {
                stop = !emit(path);
            } else {
                on_path.insert(next);
                extend(next);
                on_path.erase(next);
            }
            path.pop_back();
        }
    };
    extend(u);
}

}  // namespace

std::vector<Connector> enumerate_connectors(const OrientedGraph& g, VertexId u, VertexId v, std::size_t k,
                                            std::optional<std::size_t> cap, const VertexSet* allowed) {
    if (u == v) throw std::invalid_argument("connector endpoints must differ");
    if (k < 1 || k > kMaxConnectorLength) throw std::invalid_argument("connector length must be 1, 2 or 3");
    std::vector<Connector> out;
    if (cap && *cap == 0) return out;
    VertexSet avail = allowed ? *allowed : all_vertices(g.order());
    avail.erase(u);
    avail.erase(v);
    walk_connectors(g, u, v, k, avail, [&](const std::vector<VertexId>& p) {
        out.push_back({u, v, DiPath{p}});
        return !cap || out.size() < *cap;
    });
    return out;
}

std::size_t count_connectors(const OrientedGraph& g, VertexId u, VertexId v, std::size_t k) {
    if (u == v) throw std::invalid_argument("connector endpoints must differ");
    const BitRow into_v = g.in_row(v);
    // Paths ending next -> v must not end at u; u is the only repeat that can sneak in.
    auto tails = [&](VertexId w) { return row_and_count(g.out_row(w), into_v) - (g.has_arc(w, u) && g.has_arc(u, v)); };
    switch (k) {
    case 1: return row_and_count(g.out_row(u), into_v);
    case 2: {
        std::size_t c = 0;
        row_for_each(g.out_row(u), [&](VertexId w1) {
            if (w1 != v) c += tails(w1);
        });
        return c;
    }
    case 3: {
        std::size_t c = 0;
        row_for_each(g.out_row(u), [&](VertexId w1) {
            if (w1 == v) return;
            row_for_each(g.out_row(w1), [&](VertexId w2) {
                if (w2 != u && w2 != v) c += tails(w2);
            });
        });
        return c;
    }
    default: throw std::invalid_argument("connector length must be 1, 2 or 3");
    }
}

std::vector<ProfileEntry> connectivity_profile(const OrientedGraph& g) {
    std::vector<ProfileEntry> out;
    for (VertexId u = 0; u < g.order(); ++u) {
        for (VertexId v = 0; v < g.order(); ++v) {
            if (u == v || g.has_arc(u, v)) continue;
            ProfileEntry e{u, v, {}, std::nullopt};
            for (std::size_t k = 1; k <= kMaxConnectorLength; ++k) {
                e.counts[k - 1] = count_connectors(g, u, v, k);
                if (!e.best_k && e.counts[k - 1] > 0) e.best_k = k;
            }
            out.push_back(e);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<StrongAbsorber> enumerate_strong_absorbers(const OrientedGraph& g, VertexId u, VertexId v,
                                                       std::optional<std::size_t> cap) {
    std::vector<StrongAbsorber> out;
    if (cap && *cap == 0) return out;
    for (VertexId w : g.in_neighbors(u)) {
        if (w == v) continue;
        for (VertexId z : g.out_neighbors(w)) {
            if (z == u || z == v || !g.has_arc(v, z)) continue;
            out.push_back({w, z});
            if (cap && out.size() >= *cap) return out;
        }
    }
    return out;
}

std::size_t count_strong_absorbers(const OrientedGraph& g, VertexId u, VertexId v) {
    std::size_t c = 0;
    const BitRow from_v = g.out_row(v);
    const bool v_to_u = g.has_arc(v, u);
    row_for_each(g.in_row(u), [&](VertexId w) {
        if (w != v) c += row_and_count(g.out_row(w), from_v) - (v_to_u ? 1 : 0);
    });
    return c;
}

Absorbability is_strongly_absorbable(const OrientedGraph& g, VertexId u, VertexId v, const Rational& alpha1) {
    Absorbability a;
    a.count = count_strong_absorbers(g, u, v);
    a.threshold = static_cast<std::size_t>(count_threshold(alpha1, static_cast<std::int64_t>(g.order()), 2));
    a.absorbable = a.count >= a.threshold;
    return a;
}

std::vector<WeakAbsorber> enumerate_weak_absorbers(const OrientedGraph& g, VertexId u, VertexId v,
                                                   const Rational& alpha1, std::optional<std::size_t> cap) {
    std::vector<WeakAbsorber> out;
    if (cap && *cap == 0) return out;
    const std::size_t n = g.order();
    const auto threshold = static_cast<std::size_t>(count_threshold(alpha1, static_cast<std::int64_t>(n), 2));
    std::vector<signed char> memo(n * n, -1);
    auto absorbable = [&](VertexId a, VertexId b) {
        signed char& m = memo[a * n + b];
        if (m < 0) m = count_strong_absorbers(g, a, b) >= threshold ? 1 : 0;
        return m == 1;
    };
    for (VertexId w : g.in_neighbors(u)) {
        if (w == v) continue;
        for (VertexId w2 : g.out_neighbors(w)) {
            if (w2 == u || w2 == v) continue;
            for (VertexId z2 = 0; z2 < n; ++z2) {
                if (z2 == u || z2 == v || z2 == w || z2 == w2) continue;
                bool checked = false;
                for (VertexId z : g.out_neighbors(z2)) {
                    if (z == u || z == v || z == w || z == w2 || !g.has_arc(v, z)) continue;
                    if (!checked) {
                        if (!absorbable(w2, z2)) break;
                        checked = true;
                    }
                    out.push_back({w, w2, z2, z});
                    if (cap && out.size() >= *cap) return out;
                }
            }
        }
    }
    return out;
}

DensePairReport count_dense_strong_pairs(const OrientedGraph& g, const VertexSet& x, const VertexSet& y,
                                         const Rational& alpha) {
    DensePairReport r;
    const auto n = static_cast<std::int64_t>(g.order());
    r.threshold = static_cast<std::size_t>(count_threshold(alpha, n, 2));
    x.for_each([&](VertexId a) {
        y.for_each([&](VertexId b) {
            if (a != b && count_strong_absorbers(g, a, b) >= r.threshold) ++r.count;
        });
    });
    if (n > 0) {
        r.beta = Rational(static_cast<std::int64_t>(g.arcs_between(y, x)), n * n);
        const double beta = boost::rational_cast<double>(r.beta);
        r.bound = (std::pow(beta, 4) / 32.0 - boost::rational_cast<double>(alpha)) * static_cast<double>(n * n);
    }
    return r;
}

// ---------------------------------------------------------------------------

VertexSet AbsorberFamily::vertices(std::size_t n) const {
    VertexSet s(n);
    for (const auto& m : members)
        for (VertexId v : m.tuple) s.insert(v);
    return s;
}

AbsorberFamily select_disjoint_family(const std::map<VertexPair, std::vector<Tuple>>& candidates, std::size_t t,
                                      const Rational& sigma, std::uint64_t seed, const FamilyOptions& opt) {
    AbsorberFamily fam;
    fam.arity = t;
    std::vector<FamilyMember> pool;
    std::set<VertexId> seen;
    VertexId max_id = 0;
    for (const auto& [owner, tuples] : candidates) {
        fam.achieved[owner] = 0;
        for (const Tuple& tp : tuples) {
            if (tp.size() != t) throw std::invalid_argument("tuple arity differs from t");
            for (VertexId v : tp) seen.insert(v), max_id = std::max(max_id, v);
            pool.push_back({owner, tp});
        }
    }
    if (opt.p) {
        fam.p = std::clamp(*opt.p, 0.0, 1.0);
    } else {
        const std::size_t universe = opt.universe != 0 ? opt.universe : seen.size();
        double p = opt.c * boost::rational_cast<double>(sigma);
        for (std::size_t i = 1; i < t; ++i) p /= static_cast<double>(universe > i ? universe - i : 1);
        fam.p = std::clamp(p, 0.0, 1.0);
    }

    Rng rng(seed);
    std::vector<std::size_t> sampled;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (rng.bernoulli(fam.p)) sampled.push_back(i);
    fam.sampled = sampled.size();
    rng.shuffle(std::span<std::size_t>(sampled));

    std::vector<char> taken(pool.empty() ? 0 : max_id + 1, 0);
    auto free = [&](const Tuple& tp) {
        return std::none_of(tp.begin(), tp.end(), [&](VertexId v) { return taken[v] != 0; });
    };
    auto keep = [&](std::size_t i) {
        for (VertexId v : pool[i].tuple) taken[v] = 1;
        fam.members.push_back(pool[i]);
        ++fam.achieved[pool[i].owner];
    };
    // A sampled tuple meeting an already kept one is the one removed from that intersecting pair.
    for (std::size_t i : sampled) {
        if (free(pool[i].tuple))
            keep(i);
        else
            ++fam.discarded;
    }

    if (opt.repair) {
        std::size_t start = 0;
        for (const auto& [owner, tuples] : candidates) {
            std::vector<std::size_t> order(tuples.size());
            for (std::size_t j = 0; j < order.size(); ++j) order[j] = start + j;
            start += tuples.size();
            rng.shuffle(std::span<std::size_t>(order));
            for (std::size_t i : order) {
                if (fam.achieved[owner] >= opt.floor) break;
                if (free(pool[i].tuple)) keep(i);
            }
        }
    }
    for (const auto& [owner, count] : fam.achieved)
        if (count < opt.floor) fam.below_floor.push_back(owner);
    return fam;
}

// ---------------------------------------------------------------------------

Reservoir build_reservoir(const OrientedGraph& g, const VertexSet& x, const ReservoirParams& params,
                          std::uint64_t seed) {
    const std::size_t n = g.order();
    Reservoir r{VertexSet(n), {}, VertexSet(n), 0, {}};
    Rng rng(seed);
    VertexSet blocked = x;  // X, then X together with the earlier families
    for (std::size_t k = 1; k <= kMaxConnectorLength; ++k) {
        if (r.size() + k > params.max_vertices) break;
        VertexSet allowed = all_vertices(n);
        allowed.subtract(blocked);
        std::map<VertexPair, std::vector<Tuple>> cands;
        for (VertexId a = 0; a < n; ++a) {
            for (VertexId b = 0; b < n; ++b) {
                if (a == b || g.has_arc(a, b)) continue;
                auto conns = enumerate_connectors(g, a, b, k, std::nullopt, &allowed);
                if (conns.empty()) continue;
                rng.shuffle(std::span<Connector>(conns));
                if (conns.size() > params.candidates_per_pair) conns.resize(params.candidates_per_pair);
                auto& list = cands[{a, b}];
                for (auto& c : conns) list.push_back(std::move(c.path.vertices));
            }
        }
        const auto fam = select_disjoint_family(cands, k, params.sigma, rng(), params.family);
        r.below_floor[k - 1] = fam.below_floor.size();
        for (const auto& m : fam.members) {
            if (r.size() + k > params.max_vertices) break;
            for (VertexId v : m.tuple) r.vertices.insert(v);
            r.families[k - 1].push_back({m.owner.first, m.owner.second, DiPath{m.tuple}});
        }
        blocked |= r.vertices;
    }
    std::set<VertexPair> served;
    for (const auto& fam : r.families)
        for (const auto& c : fam) served.insert({c.u, c.v});
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = 0; b < n; ++b)
            if (a != b && !g.has_arc(a, b) && !x.contains(a) && !x.contains(b) && !served.count({a, b}))
                ++r.uncovered_pairs;
    return r;
}

DiPath connect_through_reservoir(const OrientedGraph& g, Reservoir& r, VertexId x, VertexId y) {
    if (g.has_arc(x, y)) return DiPath{{x, y}};
    auto finish = [&](const std::vector<VertexId>& inner) {
        DiPath p{{x}};
        for (VertexId v : inner) {
            r.ledger.insert(v);
            p.vertices.push_back(v);
        }
        p.vertices.push_back(y);
        return p;
    };
    for (const auto& fam : r.families) {
        for (const auto& c : fam) {
            if (c.u != x || c.v != y) continue;
            const auto& vs = c.path.vertices;
            if (std::none_of(vs.begin(), vs.end(), [&](VertexId v) { return r.ledger.contains(v); }))
                return finish(vs);
        }
    }
    VertexSet allowed = r.vertices;
    allowed.subtract(r.ledger);
    for (std::size_t k = 1; k <= kMaxConnectorLength && k <= allowed.size(); ++k) {
        const auto found = enumerate_connectors(g, x, y, k, 1, &allowed);
        if (!found.empty()) return finish(found.front().path.vertices);
    }
    throw Error(ErrorKind::NoConnector, "no connector for (" + std::to_string(x) + "," + std::to_string(y) +
                                            ") in reservoir; ledger " + std::to_string(r.ledger.size()) + "/" +
                                            std::to_string(r.size()) + " used");
}

// ---------------------------------------------------------------------------

std::size_t AbsorbingPath::capacity(GadgetKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(gadgets.begin(), gadgets.end(), [&](const Gadget& x) { return x.kind == kind && !x.used; }));
}

std::vector<VertexPair> AbsorbingPath::protected_arcs() const {
    std::vector<VertexPair> out;
    for (const Gadget& x : gadgets) {
        if (x.used) continue;
        if (x.kind == GadgetKind::Strong) {
            out.push_back({x.w, x.z});
        } else {
            out.push_back({x.w, x.w2});
            out.push_back({x.z2, x.z});
        }
    }
    return out;
}

namespace {

std::vector<VertexId> gadget_vertices(const Gadget& x) {
    if (x.kind == GadgetKind::Strong) return {x.w, x.z};
    return {x.w, x.w2, x.z2, x.z};
}

// Shortest (u, v)-connection through `free` vertices: the direct arc, else a
// k-connector with k <= 3. Returns the internal vertices.
std::optional<std::vector<VertexId>> link(const OrientedGraph& g, VertexId u, VertexId v, const VertexSet& free) {
    if (g.has_arc(u, v)) return std::vector<VertexId>{};
    for (std::size_t k = 1; k <= kMaxConnectorLength; ++k) {
        const auto c = enumerate_connectors(g, u, v, k, 1, &free);
        if (!c.empty()) return c.front().path.vertices;
    }
    return std::nullopt;
}

template <typename T>
std::vector<T> sample(std::vector<T> items, std::size_t cap, Rng& rng) {
    rng.shuffle(std::span<T>(items));
    if (items.size() > cap) items.resize(cap);
    return items;
}

}  // namespace

AbsorbingBuild build_absorbing_path(const OrientedGraph& g, const AbsorbingParams& params, std::uint64_t seed) {
    const std::size_t n = g.order();
    const auto n64 = static_cast<std::int64_t>(n);
    AbsorbingBuild out;
    Rng rng(seed);
    const auto thr1 = static_cast<std::size_t>(count_threshold(params.alpha1, n64, 2));
    const auto thr2 = static_cast<std::size_t>(count_threshold(params.alpha2, n64, 4));
    const std::size_t budget = params.max_vertices != 0 ? params.max_vertices : n / 2;

    std::map<VertexPair, std::vector<Tuple>> weak_cands;
    for (VertexId v = 0; v < n; ++v) {
        if (count_strong_absorbers(g, v, v) >= thr1) {
            out.strongly_absorbable.push_back(v);
            continue;
        }
        const auto weak = enumerate_weak_absorbers(g, v, v, params.alpha1, params.weak_cap);
        if (weak.size() >= thr2) {
            out.weakly_absorbable.push_back(v);
            auto& list = weak_cands[{v, v}];
            for (const auto& a : sample(weak, params.candidates_per_vertex, rng))
                list.push_back({a.w, a.w2, a.z2, a.z});
        } else {
            out.classification_gap.push_back(v);
        }
    }

    const auto weak_fam = select_disjoint_family(weak_cands, 4, params.sigma, rng(), params.family);
    VertexSet used = weak_fam.vertices(n);

    // Strong candidates serve single vertices and the (w', z') pairs of the weak gadgets.
    std::map<VertexPair, std::vector<Tuple>> strong_cands;
    auto offer = [&](VertexId a, VertexId b) {
        std::vector<StrongAbsorber> list;
        for (const auto& s : enumerate_strong_absorbers(g, a, b))
            if (!used.contains(s.w) && !used.contains(s.z)) list.push_back(s);
        auto& dst = strong_cands[{a, b}];
        for (const auto& s : sample(list, params.candidates_per_vertex, rng)) dst.push_back({s.w, s.z});
    };
    for (VertexId v : out.strongly_absorbable) offer(v, v);
    for (const auto& m : weak_fam.members) offer(m.tuple[1], m.tuple[2]);
    const auto strong_fam = select_disjoint_family(strong_cands, 2, params.sigma, rng(), params.family);

    std::vector<Gadget> order;
    for (const auto& m : weak_fam.members)
        order.push_back({GadgetKind::Weak, order.size(), m.tuple[0], m.tuple[3], m.tuple[1], m.tuple[2],
                         m.owner.first, false});
    for (const auto& m : strong_fam.members)
        order.push_back({GadgetKind::Strong, order.size(), m.tuple[0], m.tuple[1], 0, 0, m.owner.first, false});

    VertexSet reserved(n);  // every selected gadget vertex, stitched or not
    for (const Gadget& x : order)
        for (VertexId v : gadget_vertices(x)) reserved.insert(v);

    auto& path = out.path.path.vertices;
    VertexSet on_path(n);
    auto free_set = [&] {
        VertexSet f = all_vertices(n);
        f.subtract(reserved);
        f.subtract(on_path);
        return f;
    };
    auto try_attach = [&](const Gadget& x) -> bool {
        std::vector<VertexId> piece{x.w};
        VertexSet f = free_set();
        if (x.kind == GadgetKind::Weak) {
            const auto span = link(g, x.w2, x.z2, f);
            if (!span) return false;
            piece.push_back(x.w2);
            piece.insert(piece.end(), span->begin(), span->end());
            piece.push_back(x.z2);
            for (VertexId v : *span) f.erase(v);
        }
        piece.push_back(x.z);
        std::vector<VertexId> bridge;
        if (!path.empty()) {
            const auto b = link(g, path.back(), x.w, f);
            if (!b) return false;
            bridge = *b;
        }
        if (path.size() + bridge.size() + piece.size() > budget) return false;
        for (VertexId v : bridge) path.push_back(v), on_path.insert(v);
        for (VertexId v : piece) path.push_back(v), on_path.insert(v);
        out.path.gadgets.push_back(x);
        return true;
    };

    std::vector<Gadget> pending;
    for (const Gadget& x : order)
        if (!try_attach(x)) pending.push_back(x);
    for (const Gadget& x : pending) {
        if (!try_attach(x)) {
            out.dropped.push_back(x);
        }
    }
    // Registry order: weak before strong, then by id.
    std::stable_sort(out.path.gadgets.begin(), out.path.gadgets.end(), [](const Gadget& a, const Gadget& b) {
        return std::pair{a.kind, a.id} < std::pair{b.kind, b.id};
    });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Plan {
    enum class Kind { Strong, Free, Double } kind;
    VertexId v;
    std::size_t gadget = 0;         // strong or weak gadget index
    std::size_t second = 0;         // strong gadget for the displaced segment (Double)
    VertexPair arc{};               // Free: host arc; Double: free host arc when second is unset
    bool second_free = false;
};

std::size_t position(const std::vector<VertexId>& path, VertexId v) {
    const auto it = std::find(path.begin(), path.end(), v);
    if (it == path.end()) throw std::logic_error("vertex missing from absorbing path");
    return static_cast<std::size_t>(it - path.begin());
}

void insert_into_arc(std::vector<VertexId>& path, VertexPair arc, const std::vector<VertexId>& piece) {
    const std::size_t i = position(path, arc.first);
    if (i + 1 >= path.size() || path[i + 1] != arc.second) throw std::logic_error("host arc not on path");
    path.insert(path.begin() + static_cast<std::ptrdiff_t>(i + 1), piece.begin(), piece.end());
}

}  // namespace

AbsorbingPath absorb_vertices(const OrientedGraph& g, const AbsorbingPath& p, const VertexSet& u,
                              const AbsorbOptions& opt) {
    AbsorbingPath out = p;
    if (u.empty()) return out;
    const std::size_t n = g.order();
    VertexSet on_path = VertexSet::from_range(n, p.path.vertices);
    if (on_path.intersects(u)) throw std::invalid_argument("absorbed vertices must lie outside the path");
    auto& gs = out.gadgets;
    const std::vector<VertexId> todo = u.to_vector();

    auto serves = [&](VertexPair host, VertexId v) { return g.has_arc(host.first, v) && g.has_arc(v, host.second); };

    // Bipartite matching of U into unused strong gadgets (augmenting paths).
    std::vector<std::size_t> strong_ids;
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (gs[i].kind == GadgetKind::Strong && !gs[i].used) strong_ids.push_back(i);
    std::vector<std::optional<std::size_t>> owner(gs.size());  // gadget -> index into todo
    std::vector<std::optional<std::size_t>> match(todo.size());
    std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t i, std::vector<char>& seen) {
        for (std::size_t gi : strong_ids) {
            if (seen[gi] || !serves({gs[gi].w, gs[gi].z}, todo[i])) continue;
            seen[gi] = 1;
            if (!owner[gi] || augment(*owner[gi], seen)) {
                owner[gi] = i;
                match[i] = gi;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < todo.size(); ++i) {
        std::vector<char> seen(gs.size(), 0);
        augment(i, seen);
    }

    std::set<VertexPair> blocked;
    for (const auto& a : p.protected_arcs()) blocked.insert(a);
    std::vector<VertexPair> free_arcs;
    if (opt.use_free_arcs) {
        const auto& pv = p.path.vertices;
        for (std::size_t i = 0; i + 1 < pv.size(); ++i)
            if (!blocked.count({pv[i], pv[i + 1]})) free_arcs.push_back({pv[i], pv[i + 1]});
    }
    // Hosts for displaced segments must not sit inside a segment that may move.
    VertexSet in_span(n);
    for (const Gadget& x : gs) {
        if (x.kind != GadgetKind::Weak || x.used) continue;
        const auto& pv = p.path.vertices;
        for (std::size_t i = position(pv, x.w2); i < pv.size(); ++i) {
            in_span.insert(pv[i]);
            if (pv[i] == x.z2) break;
        }
    }
    std::vector<char> free_taken(free_arcs.size(), 0);
    auto take_free = [&](auto&& pred) -> std::optional<VertexPair> {
        for (std::size_t i = 0; i < free_arcs.size(); ++i) {
            if (!free_taken[i] && pred(free_arcs[i])) {
                free_taken[i] = 1;
                return free_arcs[i];
            }
        }
        return std::nullopt;
    };

    std::vector<Plan> plans;
    std::vector<VertexId> unplaced;
    std::vector<char> weak_taken(gs.size(), 0);
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const VertexId v = todo[i];
        if (match[i]) {
            plans.push_back({Plan::Kind::Strong, v, *match[i]});
            continue;
        }
        bool placed = false;
        for (std::size_t wi = 0; wi < gs.size() && !placed; ++wi) {
            const Gadget& x = gs[wi];
            if (x.kind != GadgetKind::Weak || x.used || weak_taken[wi] || !serves({x.w, x.z}, v)) continue;
            const VertexPair seg{x.w2, x.z2};
            for (std::size_t si : strong_ids) {
                if (owner[si] || !g.has_arc(gs[si].w, seg.first) || !g.has_arc(seg.second, gs[si].z)) continue;
                owner[si] = i;
                plans.push_back({Plan::Kind::Double, v, wi, si});
                placed = true;
                break;
            }
            if (!placed && opt.use_free_arcs) {
                if (const auto host = take_free([&](VertexPair a) { return !in_span.contains(a.first) && g.has_arc(a.first, seg.first) &&
                                                                           g.has_arc(seg.second, a.second); })) {
                    plans.push_back({Plan::Kind::Double, v, wi, 0, *host, true});
                    placed = true;
                }
            }
            if (placed) weak_taken[wi] = 1;
        }
        if (!placed && opt.use_free_arcs) {
            if (const auto host = take_free([&](VertexPair a) { return serves(a, v); })) {
                plans.push_back({Plan::Kind::Free, v, 0, 0, *host});
                placed = true;
            }
        }
        if (!placed) unplaced.push_back(v);
    }

    if (!unplaced.empty()) {
        std::string list;
        bool hopeless = false;
        for (VertexId v : unplaced) {
            list += (list.empty() ? "" : ",") + std::to_string(v);
            const bool any = std::any_of(gs.begin(), gs.end(), [&](const Gadget& x) { return serves({x.w, x.z}, v); });
            hopeless = hopeless || !any;
        }
        throw Error(hopeless ? ErrorKind::VertexNotAbsorbable : ErrorKind::CapacityExhausted,
                    (hopeless ? "no gadget serves some of: " : "gadget capacity exhausted for: ") + list);
    }

    auto& path = out.path.vertices;
    for (const Plan& pl : plans) {
        switch (pl.kind) {
        case Plan::Kind::Strong:
            insert_into_arc(path, {gs[pl.gadget].w, gs[pl.gadget].z}, {pl.v});
            gs[pl.gadget].used = true;
            break;
        case Plan::Kind::Free: insert_into_arc(path, pl.arc, {pl.v}); break;
        case Plan::Kind::Double: {
            Gadget& x = gs[pl.gadget];
            const std::size_t i = position(path, x.w);
            const std::size_t j = position(path, x.z2);
            if (path[i + 1] != x.w2 || j < i + 1 || j + 1 >= path.size() || path[j + 1] != x.z)
                throw std::logic_error("weak gadget no longer embedded");
            std::vector<VertexId> segment(path.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                          path.begin() + static_cast<std::ptrdiff_t>(j + 1));
            path.erase(path.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       path.begin() + static_cast<std::ptrdiff_t>(j + 1));
            path.insert(path.begin() + static_cast<std::ptrdiff_t>(i + 1), pl.v);
            x.used = true;
            if (pl.second_free) {
                insert_into_arc(path, pl.arc, segment);
            } else {
                insert_into_arc(path, {gs[pl.second].w, gs[pl.second].z}, segment);
                gs[pl.second].used = true;
            }
            break;
        }
        }
    }
    return out;
}

}  // namespace ohc
