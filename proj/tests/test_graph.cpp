#include "doctest.h"
#include "oracles.hpp"

#include "ohc/extremal.hpp"
#include "ohc/generators.hpp"
#include "ohc/graph.hpp"
#include "ohc/hamilton.hpp"
#include "ohc/rng.hpp"

#include <algorithm>

using namespace ohc;

namespace {

OrientedGraph three_cycle() { return make_graph(3, {{0, 1}, {1, 2}, {2, 0}}); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an ohc::Error");
    return ErrorKind::Parse;
}

}  // namespace

TEST_SUITE("graph") {
    TEST_CASE("add_arc inserts and rejects loops, 2-cycles and bad ids") {
        const auto g = add_arc(OrientedGraph(3), 0, 1);
        CHECK(g.arcs() == std::vector<Arc>{{0, 1}});
        CHECK(kind_of([&] { add_arc(g, 1, 0); }) == ErrorKind::TwoCycle);
        CHECK(kind_of([&] { add_arc(OrientedGraph(3), 2, 2); }) == ErrorKind::SelfLoop);
        CHECK(kind_of([&] { add_arc(OrientedGraph(3), 0, 3); }) == ErrorKind::OutOfRange);
        // the input graph is untouched
        CHECK(add_arc(g, 1, 2).arc_count() == 2);
        CHECK(g.arc_count() == 1);
    }

    TEST_CASE("degrees on small examples") {
        CHECK(degrees(three_cycle(), 0) == Degrees{1, 1});
        CHECK(degrees(transitive_tournament(3), 0) == Degrees{2, 0});
        CHECK(kind_of([] { degrees(three_cycle(), 5); }) == ErrorKind::OutOfRange);
    }

    TEST_CASE("every B vertex of the n=7, a=0 construction has out-degree |C| + ceil(a/2)") {
        const auto inst = generate_extremal(table_params(7, 0));
        for (VertexId b : inst.partition.members(Part::B)) CHECK(inst.graph.out_degree(b) == 2);
    }

    TEST_CASE("random insertion sequences keep the oriented invariant and degree sums") {
        Rng rng(11);
        for (int round = 0; round < 50; ++round) {
            const std::size_t n = 2 + rng.below(20);
            GraphBuilder b(n);
            for (int i = 0; i < 200; ++i) b.try_add_arc(rng.below(n), rng.below(n));
            const auto g = b.build();
            std::size_t out = 0;
            std::size_t in = 0;
            for (VertexId u = 0; u < n; ++u) {
                out += g.out_degree(u);
                in += g.in_degree(u);
                CHECK_FALSE(g.has_arc(u, u));
                for (VertexId v = 0; v < n; ++v) CHECK_FALSE((g.has_arc(u, v) && g.has_arc(v, u)));
            }
            CHECK(out == g.arc_count());
            CHECK(in == g.arc_count());
            CHECK(g.arcs().size() == g.arc_count());
        }
    }

    TEST_CASE("strong connectivity") {
        CHECK(strongly_connected(three_cycle()));
        CHECK_FALSE(strongly_connected(transitive_tournament(3)));
        CHECK(strongly_connected(generate_extremal(table_params(7, 0)).graph));
    }

    TEST_CASE("strong connectivity agrees with a reachability closure") {
        for (std::uint64_t s = 0; s < 60; ++s) {
            const auto g = oracle::random_graph(2 + s % 9, 0.45, s);
            const auto m = oracle::matrix(g);
            const std::size_t n = m.n;
            std::vector<char> r(m.a);
            for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (r[i * n + k] && r[k * n + j]) r[i * n + j] = 1;
            CHECK(strongly_connected(g) == std::all_of(r.begin(), r.end(), [](char c) { return c != 0; }));
        }
    }

    TEST_CASE("verify_hamilton_cycle") {
        const auto g = three_cycle();
        CHECK(verify_hamilton_cycle(g, DiCycle{{0, 1, 2}}));
        CHECK_FALSE(verify_hamilton_cycle(g, DiCycle{{0, 2, 1}}));
        CHECK_FALSE(verify_hamilton_cycle(g, DiCycle{{0, 1}}));
        CHECK_FALSE(verify_hamilton_cycle(g, DiCycle{{0, 1, 1}}));
        CHECK_FALSE(verify_hamilton_cycle(g, DiCycle{{0, 1, 7}}));
    }

    TEST_CASE("verify_hamilton_cycle is invariant under rotation") {
        const auto g = directed_cycle(9);
        std::vector<VertexId> c(9);
        for (VertexId i = 0; i < 9; ++i) c[i] = i;
        for (int r = 0; r < 9; ++r) {
            CHECK(verify_hamilton_cycle(g, DiCycle{c}));
            std::rotate(c.begin(), c.begin() + 1, c.end());
        }
    }

    TEST_CASE("Partition4 rejects overlaps and tracks membership") {
        CHECK(kind_of([] { Partition4(4, {{{0}, {0}, {}, {}}}); }) == ErrorKind::OverlappingClasses);
        CHECK(kind_of([] { Partition4(4, {{{9}, {}, {}, {}}}); }) == ErrorKind::OutOfRange);
        Partition4 p(4, {{{}, {1}, {2, 3}, {}}});
        CHECK_FALSE(p.covers_all());
        p.assign(0, Part::D);
        CHECK(p.covers_all());
        CHECK(p.class_size(Part::C) == 2);
        CHECK(p.part_of(0) == Part::D);
    }
}

TEST_SUITE("graph") {
    TEST_CASE("contracting one vertex of a four-class 4-cycle gives a 4-cycle") {
        // a=0, b=1, c=2, d=3
        const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        const Partition4 part(4, {{{0}, {1}, {2}, {3}}});
        const auto c = contract_path(g, part, DiPath{{1}});
        CHECK(c.graph.order() == 4);
        CHECK(c.graph.arc_count() == 4);
        CHECK(c.partition.part_of(c.contracted) == Part::B);
        CHECK(c.graph.has_arc(*c.new_id[0], c.contracted));
        CHECK(c.graph.has_arc(c.contracted, *c.new_id[2]));
        CHECK_FALSE(c.new_id[1].has_value());
    }

    TEST_CASE("contraction drops neighbours outside the adjacent classes") {
        const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}});
        const Partition4 part(4, {{{0}, {1}, {2}, {3}}});
        const auto c = contract_path(g, part, DiPath{{1}});
        CHECK_FALSE(c.graph.has_arc(c.contracted, *c.new_id[3]));
        CHECK(c.graph.arc_count() == 4);
    }

    TEST_CASE("contraction errors") {
        const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        const Partition4 part(4, {{{0}, {1}, {2}, {3}}});
        CHECK(kind_of([&] { contract_path(g, part, DiPath{{0, 1}}); }) == ErrorKind::EndpointsInDifferentClasses);
        CHECK(kind_of([&] { contract_path(g, part, DiPath{{1, 0}}); }) == ErrorKind::InvalidPath);
        // Only two nonempty classes: next and previous class coincide.
        const auto h = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
        const Partition4 two(3, {{{0}, {1, 2}, {}, {}}});
        CHECK(kind_of([&] { contract_path(h, two, DiPath{{0}}); }) == ErrorKind::DegenerateClassOrder);
    }

    TEST_CASE("contracting a path inside C of the n=7 construction preserves the Hamiltonicity verdict") {
        const auto inst = generate_extremal(table_params(7, 0));
        const auto cs = inst.partition.members(Part::C);
        REQUIRE(cs.size() == 2);
        const DiPath p = inst.graph.has_arc(cs[0], cs[1]) ? DiPath{{cs[0], cs[1]}} : DiPath{{cs[1], cs[0]}};
        const auto c = contract_path(inst.graph, inst.partition, p);
        const auto before = exact_dp(inst.graph);
        const auto after = exact_dp(c.graph);
        CHECK(before.verdict == Verdict::NoneExists);
        CHECK(after.verdict == before.verdict);
    }

    TEST_CASE("cycles through the contracted vertex lift to valid cycles") {
        Rng rng(5);
        int lifted = 0;
        for (int round = 0; round < 200 && lifted < 25; ++round) {
            const std::size_t n = 6 + rng.below(5);
            const auto g = oracle::random_graph(n, 0.8, rng());
            Partition4 part(n);
            for (VertexId v = 0; v < n; ++v) part.assign(v, kParts[rng.below(4)]);
            // a random two-vertex path inside one class
            std::optional<DiPath> path;
            for (const Arc& a : g.arcs())
                if (part.part_of(a.from) == part.part_of(a.to)) path = DiPath{{a.from, a.to}};
            if (!path) continue;
            Contraction c;
            try {
                c = contract_path(g, part, *path);
            } catch (const Error&) {
                continue;
            }
            const auto r = exact_dp(c.graph);
            if (!r.certificate) continue;
            const DiCycle lifted_cycle = lift_cycle(c, *r.certificate);
            CHECK(is_valid_cycle(g, lifted_cycle));
            CHECK(lifted_cycle.size() == n);
            ++lifted;
        }
        CHECK(lifted > 0);
    }
}
