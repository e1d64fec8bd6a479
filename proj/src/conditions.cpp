#include "ohc/conditions.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace ohc {

namespace {

Rational to_rational(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

void settle(ConditionReport& r) { r.satisfied = !r.margin || *r.margin >= 0; }

}  // namespace

std::optional<std::pair<std::size_t, PairWitness>> min_nonarc_degree_sum(const OrientedGraph& g) {
    const std::size_t n = g.order();
    std::optional<std::pair<std::size_t, PairWitness>> best;
    for (VertexId x = 0; x < n; ++x) {
        for (VertexId y = 0; y < n; ++y) {
            if (x == y || g.has_arc(x, y)) continue;
            const std::size_t sum = g.out_degree(x) + g.in_degree(y);
            if (!best || sum < best->first) best = {sum, PairWitness{x, y}};
        }
    }
    return best;
}

ConditionReport check_ore(const OrientedGraph& g) {
    ConditionReport r;
    r.condition = "ore";
    const auto n = static_cast<std::int64_t>(g.order());
    if (const auto best = min_nonarc_degree_sum(g)) {
        r.margin = to_rational(best->first) - Rational(3 * n - 3, 4);
        r.witness = best->second;
    }
    settle(r);
    return r;
}

ConditionReport check_semidegree_consequence(const OrientedGraph& g) {
    ConditionReport r;
    r.condition = "semideg";
    const auto n = static_cast<std::int64_t>(g.order());
    if (n == 0) {
        settle(r);
        return r;
    }
    VertexWitness w{0, true};
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (VertexId v = 0; v < g.order(); ++v) {
        if (g.out_degree(v) < best) best = g.out_degree(v), w = {v, true};
        if (g.in_degree(v) < best) best = g.in_degree(v), w = {v, false};
    }
    r.margin = to_rational(best) - Rational(n, 8);
    r.witness = w;
    settle(r);
    return r;
}

ConditionReport check_ghouila_houri(const OrientedGraph& g) {
    ConditionReport r;
    r.condition = "gh";
    const std::size_t n = g.order();
    r.strongly_connected = strongly_connected(g);
    if (n == 0) {
        settle(r);
        return r;
    }
    VertexId min_out = 0;
    VertexId min_in = 0;
    for (VertexId v = 1; v < n; ++v) {
        if (g.out_degree(v) < g.out_degree(min_out)) min_out = v;
        if (g.in_degree(v) < g.in_degree(min_in)) min_in = v;
    }
    r.margin = to_rational(g.out_degree(min_out) + g.in_degree(min_in)) - to_rational(n);
    r.witness = PairWitness{min_out, min_in};
    settle(r);
    r.satisfied = r.satisfied && *r.strongly_connected;
    return r;
}

ConditionReport check_woodall(const OrientedGraph& g) {
    ConditionReport r;
    r.condition = "woodall";
    r.strongly_connected = strongly_connected(g);
    if (const auto best = min_nonarc_degree_sum(g)) {
        r.margin = to_rational(best->first) - to_rational(g.order());
        r.witness = best->second;
    }
    settle(r);
    r.satisfied = r.satisfied && *r.strongly_connected;
    return r;
}

ConditionReport check_nash_williams(const OrientedGraph& g) {
    ConditionReport r;
    r.condition = "nash-williams";
    r.strongly_connected = strongly_connected(g);
    const std::size_t n = g.order();
    std::vector<std::int64_t> dout(n);
    std::vector<std::int64_t> din(n);
    for (VertexId v = 0; v < n; ++v) {
        dout[v] = static_cast<std::int64_t>(g.out_degree(v));
        din[v] = static_cast<std::int64_t>(g.in_degree(v));
    }
    std::sort(dout.begin(), dout.end());
    std::sort(din.begin(), din.end());
    // 1-based d_i is vector index i-1.
    const auto n64 = static_cast<std::int64_t>(n);
    for (std::size_t i = 1; 2 * i < n; ++i) {
        const auto i64 = static_cast<std::int64_t>(i);
        const std::int64_t first = std::max(dout[i - 1] - (i64 + 1), din[n - i - 1] - (n64 - i64));
        const std::int64_t second = std::max(din[i - 1] - (i64 + 1), dout[n - i - 1] - (n64 - i64));
        for (const auto& [value, bullet] : {std::pair{first, 1}, std::pair{second, 2}}) {
            if (!r.margin || Rational(value) < *r.margin) {
                r.margin = Rational(value);
                r.witness = IndexWitness{i, bullet};
            }
        }
    }
    settle(r);
    r.satisfied = r.satisfied && *r.strongly_connected;
    return r;
}

ConditionReport check_sparse_set_bound(const OrientedGraph& g, const VertexSet& x, const Rational& sigma) {
    ConditionReport r;
    r.condition = "sparse-set";
    const auto n = static_cast<std::int64_t>(g.order());
    const std::size_t inside = g.arcs_within(x);
    if (to_rational(inside) > sigma * n * n)
        throw Error(ErrorKind::HypothesisViolated, "e(X) = " + std::to_string(inside) + " exceeds sigma*n^2 = " +
                                                       to_string(sigma * n * n));
    r.margin = Rational(n, 4) + Rational(21) * sigma * n - to_rational(x.size());
    r.witness = SetWitness{x.size(), inside};
    settle(r);
    return r;
}

}  // namespace ohc
