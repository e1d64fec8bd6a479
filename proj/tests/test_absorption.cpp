#include "doctest.h"
#include "oracles.hpp"
#include "scenarios.hpp"

#include "ohc/absorption.hpp"
#include "ohc/generators.hpp"

#include <algorithm>
#include <stdexcept>

using namespace ohc;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an ohc::Error");
    return ErrorKind::Parse;
}

std::vector<std::vector<VertexId>> paths_of(const std::vector<Connector>& cs) {
    std::vector<std::vector<VertexId>> out;
    for (const auto& c : cs) out.push_back(c.path.vertices);
    return out;
}

}  // namespace

TEST_SUITE("absorption") {
    TEST_CASE("connectors on a directed 5-cycle") {
        const auto g = directed_cycle(5);
        CHECK(paths_of(enumerate_connectors(g, 0, 2, 1)) == std::vector<std::vector<VertexId>>{{1}});
        CHECK(paths_of(enumerate_connectors(g, 0, 3, 2)) == std::vector<std::vector<VertexId>>{{1, 2}});
        CHECK(paths_of(enumerate_connectors(g, 0, 4, 3)) == std::vector<std::vector<VertexId>>{{1, 2, 3}});
        CHECK(enumerate_connectors(g, 0, 2, 2).empty());
        CHECK_THROWS_AS(enumerate_connectors(g, 0, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_connectors(g, 0, 2, 4), std::invalid_argument);
    }

    TEST_CASE("connectors match the nested-loop oracle") {
        for (std::uint64_t s = 0; s < 30; ++s) {
            const auto g = oracle::random_graph(4 + s % 9, 0.6, s);
            const auto m = oracle::matrix(g);
            for (VertexId u = 0; u < m.n; ++u)
                for (VertexId v = 0; v < m.n; ++v) {
                    if (u == v) continue;
                    for (std::size_t k = 1; k <= 3; ++k) {
                        auto got = paths_of(enumerate_connectors(g, u, v, k));
                        const auto want = oracle::connectors(m, u, v, k);
                        CHECK(std::is_sorted(got.begin(), got.end()));
                        CHECK(got == want);
                        CHECK(count_connectors(g, u, v, k) == want.size());
                    }
                }
        }
    }

    TEST_CASE("connector cap and allowed set") {
        const auto g = oracle::random_graph(10, 0.9, 1);
        const auto all = enumerate_connectors(g, 0, 1, 2);
        REQUIRE(all.size() > 2);
        const auto capped = enumerate_connectors(g, 0, 1, 2, 2);
        CHECK(capped.size() == 2);
        CHECK(capped[0] == all[0]);
        VertexSet allowed(10, {2, 3, 4, 5});
        for (const auto& c : enumerate_connectors(g, 0, 1, 2, std::nullopt, &allowed))
            for (VertexId x : c.path.vertices) CHECK(allowed.contains(x));
    }

    TEST_CASE("connectivity profile") {
        const auto g = oracle::random_graph(9, 0.5, 4);
        const auto m = oracle::matrix(g);
        const auto prof = connectivity_profile(g);
        std::size_t nonarc = 0;
        for (VertexId u = 0; u < 9; ++u)
            for (VertexId v = 0; v < 9; ++v) nonarc += (u != v && !m(u, v)) ? 1 : 0;
        CHECK(prof.size() == nonarc);
        for (const auto& e : prof) {
            CHECK_FALSE(m(e.u, e.v));
            for (std::size_t k = 1; k <= 3; ++k) CHECK(e.counts[k - 1] == oracle::connectors(m, e.u, e.v, k).size());
            if (e.best_k) {
                CHECK(e.counts[*e.best_k - 1] > 0);
                for (std::size_t k = 1; k < *e.best_k; ++k) CHECK(e.counts[k - 1] == 0);
            } else {
                CHECK(e.counts == std::array<std::size_t, 3>{0, 0, 0});
            }
        }
    }

    TEST_CASE("strong absorber example") {
        // 3 -> 4 is the host arc; 3 -> 0 and 1 -> 4 let it swallow the pair (0, 1)
        const auto g = make_graph(5, {{3, 4}, {3, 0}, {1, 4}, {0, 1}});
        const auto s = enumerate_strong_absorbers(g, 0, 1);
        CHECK(s == std::vector<StrongAbsorber>{{3, 4}});
        CHECK(enumerate_strong_absorbers(g, 1, 0).empty());
    }

    TEST_CASE("strong and weak absorbers match the oracle") {
        const Rational alpha(1, 64);
        for (std::uint64_t s = 0; s < 16; ++s) {
            const std::size_t n = 5 + s % 6;
            const auto g = oracle::random_graph(n, 0.75, 100 + s);
            const auto m = oracle::matrix(g);
            const auto threshold = static_cast<std::size_t>(count_threshold(alpha, static_cast<std::int64_t>(n), 2));
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = 0; v < n; ++v) {
                    std::vector<std::pair<VertexId, VertexId>> strong;
                    for (const auto& a : enumerate_strong_absorbers(g, u, v)) strong.push_back({a.w, a.z});
                    CHECK(strong == oracle::strong(m, u, v));
                    const auto ab = is_strongly_absorbable(g, u, v, alpha);
                    CHECK(ab.count == strong.size());
                    CHECK(ab.absorbable == (strong.size() >= threshold));
                    std::vector<std::array<VertexId, 4>> weak;
                    for (const auto& a : enumerate_weak_absorbers(g, u, v, alpha)) weak.push_back({a.w, a.w2, a.z2, a.z});
                    CHECK(weak == oracle::weak(m, u, v, threshold));
                }
        }
    }

    TEST_CASE("dense strong pairs count matches a direct count") {
        const auto g = dense_semidegree_graph(16, 2);
        VertexSet x(16), y(16);
        for (VertexId v = 0; v < 16; ++v) (v % 2 ? x : y).insert(v);
        const Rational alpha(1, 64);
        const auto r = count_dense_strong_pairs(g, x, y, alpha);
        std::size_t want = 0;
        x.for_each([&](VertexId a) {
            y.for_each([&](VertexId b) { want += is_strongly_absorbable(g, a, b, alpha).absorbable ? 1 : 0; });
        });
        CHECK(r.count == want);
    }

    TEST_CASE("disjoint family selection") {
        Rng rng(8);
        std::map<VertexPair, std::vector<Tuple>> cands;
        for (VertexId p = 0; p < 12; ++p)
            for (int i = 0; i < 10; ++i) {
                Tuple t{rng.below(40), rng.below(40)};
                if (t[0] != t[1]) cands[{p, p + 1}].push_back(t);
            }
        FamilyOptions opt;
        opt.p = 0.7;
        const auto fam = select_disjoint_family(cands, 2, Rational(1, 64), 5, opt);
        CHECK(fam.arity == 2);
        std::vector<VertexId> used;
        std::size_t total = 0;
        for (const auto& mbr : fam.members) {
            const auto& pool = cands.at(mbr.owner);
            CHECK(std::find(pool.begin(), pool.end(), mbr.tuple) != pool.end());
            used.insert(used.end(), mbr.tuple.begin(), mbr.tuple.end());
        }
        for (const auto& [pair, c] : fam.achieved) total += c;
        CHECK(total == fam.members.size());
        std::sort(used.begin(), used.end());
        CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
        CHECK(fam.sampled == fam.members.size() + fam.discarded);

        const auto again = select_disjoint_family(cands, 2, Rational(1, 64), 5, opt);
        CHECK(again.members.size() == fam.members.size());
        for (std::size_t i = 0; i < fam.members.size(); ++i) CHECK(again.members[i].tuple == fam.members[i].tuple);

        std::map<VertexPair, std::vector<Tuple>> bad{{{0, 1}, {{1, 2, 3}}}};
        CHECK_THROWS_AS(select_disjoint_family(bad, 2, Rational(1, 64), 0), std::invalid_argument);
    }

    TEST_CASE("repair tops pairs back up to the floor when it can") {
        std::map<VertexPair, std::vector<Tuple>> cands;
        for (VertexId p = 0; p < 5; ++p)
            for (VertexId i = 0; i < 3; ++i) cands[{p, p + 100}].push_back({10 * p + i});
        FamilyOptions opt;
        opt.p = 0.0;
        opt.floor = 2;
        const auto bare = select_disjoint_family(cands, 1, Rational(1, 64), 1, opt);
        CHECK(bare.members.empty());
        CHECK(bare.below_floor.size() == 5);
        opt.repair = true;
        const auto fixed = select_disjoint_family(cands, 1, Rational(1, 64), 1, opt);
        CHECK(fixed.below_floor.empty());
        for (const auto& [pair, c] : fixed.achieved) CHECK(c >= 2);
    }

    TEST_CASE("reservoir connectors are valid, disjoint and avoid X") {
        for (std::uint64_t s = 0; s < 6; ++s) {
            const std::size_t n = 24 + 4 * s;
            const auto g = dense_semidegree_graph(n, s);
            VertexSet x(n);
            for (VertexId v = 0; v < n / 3; ++v) x.insert(v);
            ReservoirParams params;
            params.max_vertices = n / 4;
            auto r = build_reservoir(g, x, params, s);
            CHECK(r.size() <= params.max_vertices);
            CHECK_FALSE(r.vertices.intersects(x));
            CHECK(r.ledger.empty());
            VertexSet seen(n);
            for (const auto& fam : r.families)
                for (const Connector& c : fam) {
                    CHECK(c.k() >= 1);
                    CHECK(g.has_arc(c.u, c.path.vertices.front()));
                    CHECK(g.has_arc(c.path.vertices.back(), c.v));
                    CHECK(is_valid_path(g, c.path));
                    for (VertexId v : c.path.vertices) {
                        CHECK_FALSE(seen.contains(v));
                        CHECK(r.vertices.contains(v));
                        seen.insert(v);
                    }
                }

            // repeated joins never reuse a reservoir vertex
            Rng rng(s);
            VertexSet spent(n);
            for (int i = 0; i < 20; ++i) {
                const VertexId a = rng.below(n / 3);
                const VertexId b = rng.below(n / 3);
                if (a == b) continue;
                DiPath p;
                try {
                    p = connect_through_reservoir(g, r, a, b);
                } catch (const Error& e) {
                    CHECK(e.kind() == ErrorKind::NoConnector);
                    continue;
                }
                CHECK(is_valid_path(g, p));
                CHECK(p.vertices.front() == a);
                CHECK(p.vertices.back() == b);
                CHECK(p.size() <= 5);
                for (std::size_t j = 1; j + 1 < p.size(); ++j) {
                    CHECK(r.vertices.contains(p.vertices[j]));
                    CHECK_FALSE(spent.contains(p.vertices[j]));
                    spent.insert(p.vertices[j]);
                }
            }
            CHECK(r.ledger == spent);
        }
    }

    TEST_CASE("an exhausted reservoir reports NoConnector") {
        const auto g = make_graph(4, {{0, 2}, {2, 1}});
        Reservoir r;
        r.vertices = VertexSet(4);
        r.ledger = VertexSet(4);
        CHECK(kind_of([&] { connect_through_reservoir(g, r, 0, 1); }) == ErrorKind::NoConnector);
        r.vertices.insert(2);
        CHECK(connect_through_reservoir(g, r, 0, 1) == DiPath{{0, 2, 1}});
        CHECK(kind_of([&] { connect_through_reservoir(g, r, 0, 1); }) == ErrorKind::NoConnector);
    }

    TEST_CASE("absorbing a single vertex through a strong gadget") {
        // path 0 -> 1 -> 2; vertex 3 sits between 0 and 1 via 0 -> 3 -> 1
        const auto g = make_graph(4, {{0, 1}, {1, 2}, {0, 3}, {3, 1}});
        AbsorbingPath p;
        p.path = DiPath{{0, 1, 2}};
        p.gadgets.push_back(Gadget{GadgetKind::Strong, 0, 0, 1, 0, 0, 3, false});
        const auto out = absorb_vertices(g, p, VertexSet(4, {3}));
        CHECK(out.path == DiPath{{0, 3, 1, 2}});
        CHECK(out.gadgets[0].used);
        CHECK(out.capacity(GadgetKind::Strong) == 0);
    }

    TEST_CASE("absorb errors") {
        const auto g = make_graph(4, {{0, 1}, {1, 2}, {0, 3}, {3, 1}});
        AbsorbingPath bare;
        bare.path = DiPath{{0, 1, 2}};
        CHECK(kind_of([&] { absorb_vertices(g, bare, VertexSet(4, {3})); }) == ErrorKind::VertexNotAbsorbable);
        CHECK(absorb_vertices(g, bare, VertexSet(4, {3}), AbsorbOptions{true}).path == DiPath{{0, 3, 1, 2}});
        CHECK_THROWS_AS(absorb_vertices(g, bare, VertexSet(4, {1})), std::invalid_argument);

        // two vertices competing for one gadget
        const auto h = make_graph(5, {{0, 1}, {1, 2}, {0, 3}, {3, 1}, {0, 4}, {4, 1}});
        AbsorbingPath one;
        one.path = DiPath{{0, 1, 2}};
        one.gadgets.push_back(Gadget{GadgetKind::Strong, 0, 0, 1, 0, 0, 3, false});
        CHECK(kind_of([&] { absorb_vertices(h, one, VertexSet(5, {3, 4})); }) == ErrorKind::CapacityExhausted);
    }

    TEST_CASE("absorbing-path gadgets sit on the path as registered") {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const std::size_t n = 24 + 8 * s;
            const auto g = dense_semidegree_graph(n, s);
            const auto build = build_absorbing_path(g, AbsorbingParams{}, s);
            const auto& P = build.path;
            CHECK(is_valid_path(g, P.path));
            CHECK(P.path.size() <= n / 2);
            std::vector<std::size_t> pos(n, n);
            for (std::size_t i = 0; i < P.path.size(); ++i) pos[P.path.vertices[i]] = i;
            for (const auto& [a, b] : P.protected_arcs()) {
                REQUIRE(pos[a] < n);
                CHECK(pos[b] == pos[a] + 1);
            }
            // a served vertex may have been used as a gadget or connector vertex; it then needs no absorbing
            for (const Gadget& x : P.gadgets) {
                CHECK(g.has_arc(x.w, x.served));
                if (x.kind == GadgetKind::Strong) CHECK(g.has_arc(x.served, x.z));
            }
            CHECK(build.strongly_absorbable.size() + build.weakly_absorbable.size() + build.classification_gap.size() >=
                  n - P.path.size());
        }
    }

    TEST_CASE("absorb rewrite contract on seeded runs") {
        int runs = 0;
        for (std::uint64_t s = 0; s < 25; ++s) {
            auto c = scenario::absorb_case(s);
            if (!c) continue;
            const auto out = absorb_vertices(c->graph, c->path, c->leftover);
            CHECK(scenario::absorb_contract_violation(c->graph, c->path.path, c->leftover, out.path) == "");
            ++runs;
        }
        CHECK(runs > 15);
    }
}
