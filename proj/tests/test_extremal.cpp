#include "doctest.h"
#include "oracles.hpp"

#include "ohc/extremal.hpp"
#include "ohc/generators.hpp"
#include "ohc/hamilton.hpp"

using namespace ohc;

namespace {

std::array<std::size_t, 4> sizes_of(const ExtremalParams& p) { return p.sizes; }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an ohc::Error");
    return ErrorKind::Parse;
}

Partition4 swap_a_c(const Partition4& p) {
    Partition4 q(p.universe());
    for (VertexId v = 0; v < p.universe(); ++v) {
        const Part x = p.part_of(v);
        q.assign(v, x == Part::A ? Part::C : x == Part::C ? Part::A : x);
    }
    return q;
}

}  // namespace

TEST_SUITE("extremal") {
    TEST_CASE("class sizes and bound per residue") {
        const auto p12 = table_params(12, 0);
        CHECK(sizes_of(p12) == std::array<std::size_t, 4>{0, 4, 5, 3});
        CHECK(p12.bound == 8);
        const auto p7 = table_params(7, 0);
        CHECK(sizes_of(p7) == std::array<std::size_t, 4>{0, 3, 2, 2});
        CHECK(p7.bound == 4);
        const auto p13 = table_params(13, 2);
        CHECK(sizes_of(p13) == std::array<std::size_t, 4>{2, 4, 4, 3});
        CHECK(p13.bound == 8);
        const auto p14 = table_params(14, 1);
        CHECK(sizes_of(p14) == std::array<std::size_t, 4>{1, 5, 4, 4});
        CHECK(p14.bound == 9);
        const auto p15 = table_params(15, 0);
        CHECK(sizes_of(p15) == std::array<std::size_t, 4>{0, 5, 6, 4});
        CHECK(p15.bound == 10);
    }

    TEST_CASE("bound equals ceil((3n-3)/4) - 1 and sizes always sum to n") {
        for (std::size_t n = 7; n <= 80; ++n) {
            const std::size_t expected = (3 * n - 3 + 3) / 4 - 1;
            for (std::size_t a : feasible_a_values(n)) {
                const auto p = table_params(n, a);
                CHECK(p.bound == expected);
                CHECK(p.sizes[0] + p.sizes[1] + p.sizes[2] + p.sizes[3] == n);
                CHECK(p.size(Part::B) > p.size(Part::D));
                CHECK(p.b_out_to_d() <= p.size(Part::D));
            }
        }
    }

    TEST_CASE("infeasible parameters") {
        CHECK(kind_of([] { table_params(6, 0); }) == ErrorKind::Infeasible);
        CHECK(kind_of([] { table_params(12, 6); }) == ErrorKind::InfeasibleA);
        CHECK(feasible_a_values(12) == std::vector<std::size_t>{0, 1, 2});
        CHECK(feasible_a_values(7) == std::vector<std::size_t>{0, 1});
        CHECK(kind_of([] { table_params(12, 3); }) == ErrorKind::InfeasibleA);
    }

    TEST_CASE("near-regular tournaments") {
        for (std::size_t m : {1, 2, 4, 5, 8, 11}) {
            const auto t = near_regular_tournament(m, 9);
            CHECK(t.arc_count() == m * (m - 1) / 2);
            for (VertexId v = 0; v < m; ++v) {
                const auto d = static_cast<long>(t.out_degree(v)) - static_cast<long>(t.in_degree(v));
                CHECK(std::abs(d) <= 1);
                if (m % 2 == 1) CHECK(d == 0);
            }
        }
    }

    TEST_CASE("bipartite tournament degrees") {
        const auto arcs = bipartite_tournament(4, 3, 2, 7);
        CHECK(arcs.size() == 12);
        GraphBuilder b(7);
        for (const Arc& a : arcs) b.add_arc(a.from, a.to);
        const auto g = std::move(b).build();
        for (VertexId v = 0; v < 4; ++v) CHECK(g.out_degree(v) == 2);
        std::size_t d_out = 0;
        for (VertexId v = 4; v < 7; ++v) d_out += g.out_degree(v);
        CHECK(d_out == 4);
        CHECK(kind_of([] { bipartite_tournament(2, 1, 2, 0); }) == ErrorKind::Infeasible);
    }

    TEST_CASE("construction arcs match the block description") {
        for (std::size_t n = 7; n <= 16; ++n)
            for (std::size_t a : feasible_a_values(n)) {
                const auto inst = generate_extremal(table_params(n, a));
                const auto m = oracle::matrix(inst.graph);
                const auto& part = inst.partition;
                for (Part p : kParts) CHECK(part.class_size(p) == inst.params.size(p));
                auto adjacent = [&](Part x, Part y) { return (static_cast<int>(y) - static_cast<int>(x) + 4) % 4 == 1; };
                for (VertexId u = 0; u < n; ++u)
                    for (VertexId v = 0; v < n; ++v) {
                        if (u == v) continue;
                        const Part pu = part.part_of(u);
                        const Part pv = part.part_of(v);
                        if (adjacent(pu, pv)) CHECK(m(u, v));
                        if ((pu == Part::A || pu == Part::C) && pu == pv) CHECK((m(u, v) || m(v, u)));
                        if (pu == Part::D && pv == Part::D) CHECK_FALSE(m(u, v));
                        if (pu == Part::A && pv == Part::C) CHECK_FALSE(m(u, v));
                        if (pu == Part::C && pv == Part::A) CHECK_FALSE(m(u, v));
                    }
                for (VertexId b : part.members(Part::B)) {
                    std::size_t to_d = 0;
                    for (VertexId d : part.members(Part::D)) to_d += m(b, d) ? 1 : 0;
                    CHECK(to_d == inst.params.b_out_to_d());
                }
            }
    }

    TEST_CASE("a non-arc pair attains the bound and the Ore condition fails") {
        for (std::size_t n = 7; n <= 16; ++n)
            for (std::size_t a : feasible_a_values(n)) {
                const auto inst = generate_extremal(table_params(n, a));
                const auto w = find_pair_with_sum(inst.graph, inst.params.bound);
                REQUIRE(w.has_value());
                CHECK_FALSE(inst.graph.has_arc(w->x, w->y));
                CHECK(inst.graph.out_degree(w->x) + inst.graph.in_degree(w->y) == inst.params.bound);
                CHECK(min_nonarc_degree_sum(inst.graph)->first <= inst.params.bound);
                CHECK_FALSE(check_ore(inst.graph).satisfied);
            }
    }

    TEST_CASE("small constructions are non-Hamiltonian") {
        for (std::size_t n = 7; n <= 12; ++n)
            for (std::size_t a : feasible_a_values(n)) {
                const auto inst = generate_extremal(table_params(n, a));
                CHECK_FALSE(oracle::hamiltonian(oracle::matrix(inst.graph)));
            }
    }

    TEST_CASE("extra A->C and inside-D arcs keep the graph oriented and non-Hamiltonian") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            auto p = table_params(11 + seed % 2, seed % 3);
            p.ac_edges = 5;
            p.d_edges = 3;
            p.seed = seed;
            const auto inst = generate_extremal(p);
            const auto base = generate_extremal(table_params(p.n, p.a));
            CHECK(inst.graph.arc_count() > base.graph.arc_count());
            CHECK(exact_dp(inst.graph).verdict == Verdict::NoneExists);
        }
    }

    TEST_CASE("the scorer accepts the construction and rejects the A<->C swap") {
        for (std::size_t n = 8; n <= 16; ++n)
            for (std::size_t a : feasible_a_values(n)) {
                const auto inst = generate_extremal(table_params(n, a));
                const auto ok = verify_partition(inst.graph, inst.partition, Rational(1, 20), Rational(1));
                CHECK(ok.verdict);
                CHECK(ok.entries.size() == 13);
                const auto bad = verify_partition(inst.graph, swap_a_c(inst.partition), Rational(1, 20), Rational(1));
                CHECK_FALSE(bad.verdict);
            }
    }

    TEST_CASE("verdict is monotone in eta and min_eta is the exact threshold") {
        Rng rng(17);
        for (int round = 0; round < 30; ++round) {
            const std::size_t n = 8 + rng.below(20);
            const auto g = oracle::random_graph(n, 0.7, rng());
            Partition4 part(n);
            for (VertexId v = 0; v < n; ++v) part.assign(v, kParts[rng.below(4)]);
            for (auto reading : {SizeReading::Template, SizeReading::Literal}) {
                const auto r = verify_partition(g, part, Rational(0), Rational(1), reading);
                REQUIRE(r.min_eta.has_value());
                CHECK(verify_partition(g, part, *r.min_eta, Rational(1), reading).verdict);
                CHECK(verify_partition(g, part, *r.min_eta + Rational(1, 7), Rational(1), reading).verdict);
                if (*r.min_eta > 0)
                    CHECK_FALSE(verify_partition(g, part, *r.min_eta * Rational(99, 100), Rational(1), reading).verdict);
            }
        }
    }

    TEST_CASE("five extra arcs on the n=12 construction are absorbed by the tolerance") {
        auto p = table_params(12, 2);
        p.ac_edges = 5;
        p.seed = 4;
        const auto inst = generate_extremal(p);
        CHECK(verify_partition(inst.graph, inst.partition, Rational(5, 144), Rational(1)).verdict);
    }

    TEST_CASE("unclassified vertices are rejected") {
        const auto inst = generate_extremal(table_params(8, 0));
        Partition4 part = inst.partition;
        part.assign(0, Part::None);
        CHECK(kind_of([&] { verify_partition(inst.graph, part, Rational(1, 20), Rational(1)); }) ==
              ErrorKind::PartitionNotCovering);
    }

    TEST_CASE("partition search") {
        const auto inst = generate_extremal(table_params(12, 0));
        const auto found = find_extremal_partition(inst.graph, Rational(1, 20), Rational(1));
        REQUIRE(found.has_value());
        CHECK(found->report.verdict);
        CHECK(found->partition.covers_all());

        const auto cyc = find_extremal_partition(directed_cycle(12), Rational(1, 20), Rational(1));
        REQUIRE(cyc.has_value());
        CHECK_FALSE(cyc->report.verdict);

        // a regular tournament is far from the construction once eta is small
        const auto t = near_regular_tournament(16, 3);
        const auto tr = find_extremal_partition(t, Rational(1, 100), Rational(1));
        REQUIRE(tr.has_value());
        CHECK_FALSE(tr->report.verdict);
        CHECK(*tr->report.min_eta > Rational(1, 50));

        CHECK_FALSE(find_extremal_partition(directed_cycle(3), Rational(1, 20), Rational(1)).has_value());
    }
}
