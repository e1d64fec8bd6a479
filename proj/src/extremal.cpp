#include "ohc/extremal.hpp"

#include "ohc/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace ohc {

namespace {

constexpr std::size_t idx(Part p) { return static_cast<std::size_t>(p); }

// |A|+|C|, |B|, |D| of the construction for order n (any n >= 4).
std::array<std::size_t, 3> template_sizes(std::size_t n) {
    const std::size_t k = n / 4;
    switch (n % 4) {
    case 0: return {2 * k - 1, k + 1, k};
    case 1: return {2 * k, k + 1, k};
    case 2: return {2 * k - 1, k + 2, k + 1};
    default: return {2 * k, k + 2, k + 1};
    }
}

std::vector<VertexId> seeded_permutation(std::size_t m, std::uint64_t seed) {
    std::vector<VertexId> perm(m);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    Rng rng(seed);
    rng.shuffle(std::span<VertexId>(perm));
    return perm;
}

}  // namespace

ExtremalParams table_params(std::size_t n, std::size_t a) {
    if (n < 7) throw Error(ErrorKind::Infeasible, "extremal construction needs n >= 7, got " + std::to_string(n));
    ExtremalParams p;
    p.n = n;
    p.a = a;
    p.k = n / 4;
    p.residue = n % 4;
    const auto [ac, b, d] = template_sizes(n);
    if (a > ac || a > ac - a)
        throw Error(ErrorKind::InfeasibleA, "a = " + std::to_string(a) + " exceeds |C| for n = " + std::to_string(n));
    p.sizes = {a, b, ac - a, d};
    if (p.b_out_to_d() > d)
        throw Error(ErrorKind::InfeasibleA, "ceil(a/2) > |D| for n = " + std::to_string(n));
    p.bound = (3 * n - 3 + 3) / 4 - 1;  // ceil((3n-3)/4) - 1
    return p;
}

std::vector<std::size_t> feasible_a_values(std::size_t n) {
    std::vector<std::size_t> out;
    if (n < 7) return out;
    for (std::size_t a = 0; a <= n; ++a) {
        try {
            table_params(n, a);
            out.push_back(a);
        } catch (const Error&) {
        }
    }
    return out;
}

OrientedGraph near_regular_tournament(std::size_t m, std::uint64_t seed) {
    GraphBuilder b(m);
    if (m < 2) return std::move(b).build();
    const std::size_t odd = m % 2 == 1 ? m : m + 1;
    const auto perm = seeded_permutation(m, seed);
    for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t off = 1; off <= (odd - 1) / 2; ++off) {
            const std::size_t v = (u + off) % odd;
            if (v < m) b.add_arc(perm[u], perm[v]);
        }
    }
    return std::move(b).build();
}

std::vector<Arc> bipartite_tournament(std::size_t b_size, std::size_t d_size, std::size_t out_to_d,
                                      std::uint64_t seed) {
    if (out_to_d > d_size)
        throw Error(ErrorKind::Infeasible, "out_to_D = " + std::to_string(out_to_d) + " exceeds |D| = " +
                                               std::to_string(d_size));
    std::vector<Arc> arcs;
    arcs.reserve(b_size * d_size);
    const auto dperm = seeded_permutation(d_size, seed);
    for (std::size_t i = 0; i < b_size; ++i) {
        for (std::size_t j = 0; j < d_size; ++j) {
            // b_i beats the out_to_d consecutive D slots starting at i (mod |D|).
            const bool b_wins = (j + d_size - i % d_size) % d_size < out_to_d;
            const VertexId d = b_size + dperm[j];
            arcs.push_back(b_wins ? Arc{i, d} : Arc{d, i});
        }
    }
    return arcs;
}

ExtremalInstance generate_extremal(const ExtremalParams& p) {
    const auto check = table_params(p.n, p.a);
    if (check.sizes != p.sizes) throw Error(ErrorKind::InfeasibleA, "class sizes disagree with the table");

    std::array<std::vector<VertexId>, 4> cls;
    VertexId next = 0;
    for (Part part : kParts) {
        for (std::size_t i = 0; i < p.size(part); ++i) cls[idx(part)].push_back(next++);
    }
    const auto& A = cls[0];
    const auto& B = cls[1];
    const auto& C = cls[2];
    const auto& D = cls[3];

    Rng rng(p.seed);
    GraphBuilder g(p.n);
    auto embed_tournament = [&](const std::vector<VertexId>& ids, std::uint64_t s) {
        const auto t = near_regular_tournament(ids.size(), s);
        for (const Arc& a : t.arcs()) g.add_arc(ids[a.from], ids[a.to]);
    };
    embed_tournament(A, rng());
    embed_tournament(C, rng());
    auto complete = [&](const std::vector<VertexId>& from, const std::vector<VertexId>& to) {
        for (VertexId u : from)
            for (VertexId v : to) g.add_arc(u, v);
    };
    complete(A, B);
    complete(B, C);
    complete(C, D);
    complete(D, A);
    for (const Arc& a : bipartite_tournament(B.size(), D.size(), p.b_out_to_d(), rng())) {
        auto map = [&](VertexId local) { return local < B.size() ? B[local] : D[local - B.size()]; };
        g.add_arc(map(a.from), map(a.to));
    }

    if (p.ac_edges > 0 && !A.empty() && !C.empty()) {
        std::vector<Arc> pool;
        for (VertexId u : A)
            for (VertexId v : C) pool.push_back({u, v});
        rng.shuffle(std::span<Arc>(pool));
        for (std::size_t i = 0; i < std::min(p.ac_edges, pool.size()); ++i) g.add_arc(pool[i].from, pool[i].to);
    }
    if (p.d_edges > 0 && D.size() >= 2) {
        std::vector<Arc> pool;
        for (std::size_t i = 0; i < D.size(); ++i)
            for (std::size_t j = i + 1; j < D.size(); ++j) pool.push_back({D[i], D[j]});
        rng.shuffle(std::span<Arc>(pool));
        std::size_t added = 0;
        for (const Arc& a : pool) {
            if (added == p.d_edges) break;
            const bool flip = rng.bernoulli(0.5);
            if (g.try_add_arc(flip ? a.to : a.from, flip ? a.from : a.to)) ++added;
        }
    }

    return {std::move(g).build(), Partition4(p.n, cls), p};
}

std::optional<PairWitness> find_pair_with_sum(const OrientedGraph& g, std::size_t sum) {
    for (VertexId x = 0; x < g.order(); ++x)
        for (VertexId y = 0; y < g.order(); ++y)
            if (x != y && !g.has_arc(x, y) && g.out_degree(x) + g.in_degree(y) == sum) return PairWitness{x, y};
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<const char*, 13> kEntryNames{
    "|A|+|C|", "|B|", "|D|", "e(A,B)", "e(B,C)", "e(C,D)", "e(D,A)", "e(B,D)", "e(D,B)", "e(A)", "e(C)", "e(A,C)", "e(D)"};

// Counts of one partition: class sizes and the 4x4 matrix e(Ci, Cj) (diagonal = e(Ci)).
struct ClassCounts {
    std::array<std::int64_t, 4> size{};
    std::array<std::array<std::int64_t, 4>, 4> e{};
};

struct RawSlack {
    std::array<std::int64_t, 13> value{};
    // slack at eta = 0 as an exact fraction num/den, den in {1, 2, 4, 8}
    std::array<Rational, 13> base{};
};

// Value and zero-tolerance slack of every bullet; tolerance is added separately
// as c_eta * eta * n (first three) or c_eta * eta * n^2 (the rest).
RawSlack raw_slacks(std::size_t n_, const ClassCounts& c, SizeReading reading) {
    const auto n = static_cast<std::int64_t>(n_);
    const auto A = c.size[0], B = c.size[1], C = c.size[2], D = c.size[3];
    RawSlack r;
    auto dev = [](const Rational& x) { return x < 0 ? -x : x; };
    Rational tac, tb, td;
    if (reading == SizeReading::Template && n >= 4) {
        const auto t = template_sizes(n_);
        tac = static_cast<std::int64_t>(t[0]);
        tb = static_cast<std::int64_t>(t[1]);
        td = static_cast<std::int64_t>(t[2]);
    } else {
        tac = Rational(n, 2);
        tb = Rational(n, 4);
        td = Rational(n, 4);
    }
    r.value[0] = A + C;
    r.value[1] = B;
    r.value[2] = D;
    r.base[0] = -dev(Rational(A + C) - tac);
    r.base[1] = -dev(Rational(B) - tb);
    r.base[2] = -dev(Rational(D) - td);

    const auto& e = c.e;
    auto tourn = [&](std::int64_t s) {
        return reading == SizeReading::Template ? Rational(s * (s - 1), 2) : Rational(s * s, 2);
    };
    r.value[3] = e[0][1], r.base[3] = Rational(e[0][1] - A * B);
    r.value[4] = e[1][2], r.base[4] = Rational(e[1][2] - B * C);
    r.value[5] = e[2][3], r.base[5] = Rational(e[2][3] - C * D);
    r.value[6] = e[3][0], r.base[6] = Rational(e[3][0] - A * D);
    r.value[7] = e[1][3], r.base[7] = Rational(e[1][3]) - Rational(A * n, 8);
    r.value[8] = e[3][1], r.base[8] = Rational(e[3][1]) - Rational(C * n, 8);
    r.value[9] = e[0][0], r.base[9] = Rational(e[0][0]) - tourn(A);
    r.value[10] = e[2][2], r.base[10] = Rational(e[2][2]) - tourn(C);
    r.value[11] = e[0][2], r.base[11] = Rational(-e[0][2]);
    r.value[12] = e[3][3], r.base[12] = Rational(-e[3][3]);
    return r;
}

ClassCounts count_classes(const OrientedGraph& g, const Partition4& part) {
    ClassCounts c;
    for (VertexId v = 0; v < g.order(); ++v) {
        const Part pv = part.part_of(v);
        if (pv == Part::None) continue;
        ++c.size[idx(pv)];
        row_for_each(g.out_row(v), [&](VertexId w) {
            const Part pw = part.part_of(w);
            if (pw != Part::None) ++c.e[idx(pv)][idx(pw)];
        });
    }
    return c;
}

}  // namespace

ExtremalityReport verify_partition(const OrientedGraph& g, const Partition4& part, const Rational& eta,
                                   const Rational& c_eta, SizeReading reading) {
    if (part.universe() != g.order() || !part.covers_all())
        throw Error(ErrorKind::PartitionNotCovering, "partition must classify every vertex");
    const auto n = static_cast<std::int64_t>(g.order());
    const auto raw = raw_slacks(g.order(), count_classes(g, part), reading);

    ExtremalityReport rep;
    rep.eta = eta;
    rep.c_eta = c_eta;
    rep.reading = reading;
    rep.verdict = true;
    Rational need(0);
    bool attainable = true;
    for (std::size_t i = 0; i < raw.base.size(); ++i) {
        const bool quad = i >= 3;
        const Rational scale = quad ? Rational(n * n) : Rational(n);
        const Rational slack = raw.base[i] + c_eta * eta * scale;
        rep.entries.push_back({kEntryNames[i], Rational(raw.value[i]), slack, quad});
        rep.verdict = rep.verdict && slack >= 0;
        if (raw.base[i] < 0) {
            if (c_eta <= 0 || n == 0)
                attainable = false;
            else
                need = std::max(need, -raw.base[i] / (c_eta * scale));
        }
    }
    if (attainable) rep.min_eta = need;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct Score {
    double violation;  // sum of negative normalised slacks (<= 0)
    double worst;      // minimum normalised slack
    bool better_than(const Score& o) const {
        constexpr double eps = 1e-12;
        if (violation > o.violation + eps) return true;
        if (violation < o.violation - eps) return false;
        return worst > o.worst + eps;
    }
};

class PartitionSearch {
public:
    PartitionSearch(const OrientedGraph& g, double tol, SizeReading reading)
        : g_(g), n_(g.order()), tol_(tol), reading_(reading) {}

    void load(const std::vector<Part>& labels) {
        label_ = labels;
        out_to_.assign(n_, {});
        in_from_.assign(n_, {});
        counts_ = {};
        for (VertexId v = 0; v < n_; ++v) {
            ++counts_.size[idx(label_[v])];
            row_for_each(g_.out_row(v), [&](VertexId w) {
                ++out_to_[v][idx(label_[w])];
                ++in_from_[w][idx(label_[v])];
                ++counts_.e[idx(label_[v])][idx(label_[w])];
            });
        }
    }

    Score score(const ClassCounts& c) const {
        const auto raw = raw_slacks(n_, c, reading_);
        const double n = static_cast<double>(n_);
        Score s{0.0, std::numeric_limits<double>::infinity()};
        for (std::size_t i = 0; i < raw.base.size(); ++i) {
            const double scale = i >= 3 ? n * n : n;
            const double b = boost::rational_cast<double>(raw.base[i]);
            const double norm = (b + tol_ * scale) / scale;
            s.violation += std::min(0.0, norm);
            s.worst = std::min(s.worst, norm);
        }
        return s;
    }
    Score current() const { return score(counts_); }

    // Counts after moving v to q, given per-vertex neighbour class counts.
    static void shift(ClassCounts& c, std::size_t p, std::size_t q, const std::array<std::int64_t, 4>& out_to,
                      const std::array<std::int64_t, 4>& in_from) {
        --c.size[p];
        ++c.size[q];
        for (std::size_t k = 0; k < 4; ++k) {
            c.e[p][k] -= out_to[k];
            c.e[q][k] += out_to[k];
            c.e[k][p] -= in_from[k];
            c.e[k][q] += in_from[k];
        }
    }

    void apply(VertexId v, std::size_t q) {
        const std::size_t p = idx(label_[v]);
        shift(counts_, p, q, out_to_[v], in_from_[v]);
        row_for_each(g_.in_row(v), [&](VertexId w) { --out_to_[w][p], ++out_to_[w][q]; });
        row_for_each(g_.out_row(v), [&](VertexId w) { --in_from_[w][p], ++in_from_[w][q]; });
        label_[v] = kParts[q];
    }

    // One pass of best single moves and swaps; returns whether anything improved.
    bool improve(const std::vector<VertexId>& order) {
        bool any = false;
        Score cur = current();
        for (VertexId v : order) {
            const std::size_t p = idx(label_[v]);
            std::size_t best_q = p;
            Score best = cur;
            for (std::size_t q = 0; q < 4; ++q) {
                if (q == p) continue;
                ClassCounts c = counts_;
                shift(c, p, q, out_to_[v], in_from_[v]);
                if (const Score s = score(c); s.better_than(best)) best = s, best_q = q;
            }
            if (best_q != p) {
                apply(v, best_q);
                cur = best;
                any = true;
            }
        }
        for (VertexId v : order) {
            for (VertexId w = 0; w < n_; ++w) {
                const std::size_t p = idx(label_[v]);
                const std::size_t q = idx(label_[w]);
                if (p == q) continue;
                ClassCounts c = counts_;
                shift(c, p, q, out_to_[v], in_from_[v]);
                auto wo = out_to_[w];
                auto wi = in_from_[w];
                if (g_.has_arc(w, v)) --wo[p], ++wo[q];
                if (g_.has_arc(v, w)) --wi[p], ++wi[q];
                shift(c, q, p, wo, wi);
                if (const Score s = score(c); s.better_than(cur)) {
                    apply(v, q);
                    apply(w, p);
                    cur = s;
                    any = true;
                }
            }
        }
        return any;
    }

    const std::vector<Part>& labels() const { return label_; }

private:
    const OrientedGraph& g_;
    std::size_t n_;
    double tol_;
    SizeReading reading_;
    std::vector<Part> label_;
    std::vector<std::array<std::int64_t, 4>> out_to_;
    std::vector<std::array<std::int64_t, 4>> in_from_;
    ClassCounts counts_;
};

// Seed partition: D and B grown as sparse sets, the rest split by arc direction.
std::vector<Part> structural_seed(const OrientedGraph& g, VertexId start, Rng& rng) {
    const std::size_t n = g.order();
    const auto t = template_sizes(n);
    std::vector<Part> label(n, Part::None);
    auto grow = [&](Part cls, VertexId first, std::size_t target) {
        std::vector<VertexId> members{first};
        label[first] = cls;
        while (members.size() < target) {
            VertexId pick = n;
            std::size_t best = std::numeric_limits<std::size_t>::max();
            std::uint64_t tie = 0;
            for (VertexId v = 0; v < n; ++v) {
                if (label[v] != Part::None) continue;
                std::size_t inside = 0;
                for (VertexId m : members) inside += g.adjacent(v, m) ? 1 : 0;
                const std::uint64_t r = rng();
                if (inside < best || (inside == best && r < tie)) best = inside, pick = v, tie = r;
            }
            if (pick == n) break;
            label[pick] = cls;
            members.push_back(pick);
        }
        return members;
    };
    const auto d = grow(Part::D, start, t[2]);
    // B: sparse set among the remaining vertices, started at the vertex most tied to D.
    VertexId bstart = n;
    std::size_t most = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (label[v] != Part::None) continue;
        std::size_t ties = 0;
        for (VertexId m : d) ties += g.adjacent(v, m) ? 1 : 0;
        if (bstart == n || ties > most) bstart = v, most = ties;
    }
    std::vector<VertexId> b;
    if (bstart != n) b = grow(Part::B, bstart, t[1]);
    for (VertexId v = 0; v < n; ++v) {
        if (label[v] != Part::None) continue;
        std::int64_t score = 0;  // A: into B, out of D;  C: out of B, into D
        for (VertexId m : b) score += g.has_arc(v, m) ? 1 : (g.has_arc(m, v) ? -1 : 0);
        for (VertexId m : d) score += g.has_arc(m, v) ? 1 : (g.has_arc(v, m) ? -1 : 0);
        label[v] = score > 0 ? Part::A : Part::C;
    }
    return label;
}

std::vector<Part> random_seed(std::size_t n, Rng& rng) {
    const auto t = template_sizes(n);
    std::vector<Part> label;
    for (std::size_t i = 0; i < t[1]; ++i) label.push_back(Part::B);
    for (std::size_t i = 0; i < t[2]; ++i) label.push_back(Part::D);
    while (label.size() < n) label.push_back(rng.bernoulli(0.5) ? Part::A : Part::C);
    label.resize(n);
    rng.shuffle(std::span<Part>(label));
    return label;
}

}  // namespace

std::optional<PartitionFound> find_extremal_partition(const OrientedGraph& g, const Rational& eta,
                                                      const Rational& c_eta, const PartitionSearchOptions& opt) {
    const std::size_t n = g.order();
    if (n < 4 || n > kPartitionSearchCap) return std::nullopt;
    const double tol = boost::rational_cast<double>(c_eta * eta);
    PartitionSearch search(g, tol, opt.reading);
    Rng rng(opt.seed);

    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), VertexId{0});
    rng.shuffle(std::span<VertexId>(order));

    std::optional<std::vector<Part>> best;
    Score best_score{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t r = 0; r < opt.restarts; ++r) {
        search.load(r % 3 == 2 ? random_seed(n, rng) : structural_seed(g, order[r % n], rng));
        for (std::size_t pass = 0; pass < opt.max_passes && search.improve(order); ++pass) {
        }
        if (const Score s = search.current(); !best || s.better_than(best_score)) {
            best = search.labels();
            best_score = s;
        }
        if (best_score.violation >= 0.0) break;
    }

    Partition4 part(n);
    for (VertexId v = 0; v < n; ++v) part.assign(v, (*best)[v]);
    auto report = verify_partition(g, part, eta, c_eta, opt.reading);
    return PartitionFound{std::move(part), std::move(report)};
}

}  // namespace ohc
