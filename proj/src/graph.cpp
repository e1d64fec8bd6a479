#include "ohc/graph.hpp"

#include <algorithm>
#include <string>

namespace ohc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::TwoCycle: return "TwoCycle";
    case ErrorKind::DuplicateArc: return "DuplicateArc";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::EndpointsInDifferentClasses: return "EndpointsInDifferentClasses";
    case ErrorKind::DegenerateClassOrder: return "DegenerateClassOrder";
    case ErrorKind::PartitionNotCovering: return "PartitionNotCovering";
    case ErrorKind::OverlappingClasses: return "OverlappingClasses";
    case ErrorKind::InfeasibleA: return "InfeasibleA";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NoConnector: return "NoConnectorAvailable";
    case ErrorKind::CapacityExhausted: return "CapacityExhausted";
    case ErrorKind::VertexNotAbsorbable: return "VertexNotAbsorbable";
    }
    return "Unknown";
}

OrientedGraph::OrientedGraph(std::size_t n)
    : n_(n), words_(words_for(n)), out_(n * words_for(n), 0), in_(n * words_for(n), 0), out_deg_(n, 0),
      in_deg_(n, 0) {
    if (n > kMaxVertices)
        throw Error(ErrorKind::TooLarge,
                    "graph order " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxVertices));
}

std::vector<VertexId> OrientedGraph::out_neighbors(VertexId v) const {
    std::vector<VertexId> out;
    out.reserve(out_deg_[v]);
    row_for_each(out_row(v), [&](VertexId w) { out.push_back(w); });
    return out;
}

std::vector<VertexId> OrientedGraph::in_neighbors(VertexId v) const {
    std::vector<VertexId> out;
    out.reserve(in_deg_[v]);
    row_for_each(in_row(v), [&](VertexId w) { out.push_back(w); });
    return out;
}

std::vector<Arc> OrientedGraph::arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count_);
    for (VertexId u = 0; u < n_; ++u) row_for_each(out_row(u), [&](VertexId v) { out.push_back({u, v}); });
    return out;
}

std::size_t OrientedGraph::arcs_within(const VertexSet& x) const { return arcs_between(x, x); }

std::size_t OrientedGraph::arcs_between(const VertexSet& x, const VertexSet& y) const {
    std::size_t total = 0;
    x.for_each([&](VertexId u) { total += row_and_count(out_row(u), y.row()); });
    return total;
}

GraphBuilder::GraphBuilder(std::size_t n) : g_(n) {}

void GraphBuilder::check_range(VertexId u, VertexId v) const {
    if (u >= g_.n_ || v >= g_.n_)
        throw Error(ErrorKind::OutOfRange, "arc (" + std::to_string(u) + "," + std::to_string(v) +
                                               ") outside vertex range [0," + std::to_string(g_.n_) + ")");
}

GraphBuilder& GraphBuilder::add_arc(VertexId u, VertexId v) {
    check_range(u, v);
    if (u == v) throw Error(ErrorKind::SelfLoop, "self-loop at " + std::to_string(u));
    if (g_.has_arc(v, u))
        throw Error(ErrorKind::TwoCycle,
                    "arc (" + std::to_string(u) + "," + std::to_string(v) + ") closes a 2-cycle");
    try_add_arc(u, v);
    return *this;
}

bool GraphBuilder::try_add_arc(VertexId u, VertexId v) {
    if (u >= g_.n_ || v >= g_.n_ || u == v || g_.has_arc(v, u) || g_.has_arc(u, v)) return false;
    const auto w = g_.words_;
    g_.out_[u * w + v / kWordBits] |= Word{1} << (v % kWordBits);
    g_.in_[v * w + u / kWordBits] |= Word{1} << (u % kWordBits);
    ++g_.out_deg_[u];
    ++g_.in_deg_[v];
    ++g_.arc_count_;
    return true;
}

OrientedGraph add_arc(const OrientedGraph& g, VertexId u, VertexId v) {
    GraphBuilder b(g);
    b.add_arc(u, v);
    return std::move(b).build();
}

OrientedGraph make_graph(std::size_t n, const std::vector<Arc>& arcs) {
    GraphBuilder b(n);
    for (const auto& a : arcs) b.add_arc(a.from, a.to);
    return std::move(b).build();
}

Degrees degrees(const OrientedGraph& g, VertexId v) {
    if (v >= g.order()) throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(v) + " out of range");
    return {g.out_degree(v), g.in_degree(v)};
}

namespace {

// Vertices reachable from `root` following out-rows (forward) or in-rows.
VertexSet reach(const OrientedGraph& g, VertexId root, bool forward) {
    VertexSet seen(g.order());
    std::vector<VertexId> stack{root};
    seen.insert(root);
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        row_for_each(forward ? g.out_row(v) : g.in_row(v), [&](VertexId w) {
            if (!seen.contains(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        });
    }
    return seen;
}

}  // namespace

bool strongly_connected(const OrientedGraph& g) {
    if (g.order() <= 1) return true;
    return reach(g, 0, true).size() == g.order() && reach(g, 0, false).size() == g.order();
}

bool is_valid_path(const OrientedGraph& g, const DiPath& p) {
    VertexSet seen(g.order());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const VertexId v = p.vertices[i];
        if (v >= g.order() || seen.contains(v)) return false;
        seen.insert(v);
        if (i > 0 && !g.has_arc(p.vertices[i - 1], v)) return false;
    }
    return true;
}

bool is_valid_cycle(const OrientedGraph& g, const DiCycle& c) {
    if (c.size() < 2) return false;
    if (!is_valid_path(g, DiPath{c.vertices})) return false;
    return g.has_arc(c.vertices.back(), c.vertices.front());
}

bool verify_hamilton_cycle(const OrientedGraph& g, const DiCycle& c) {
    return c.size() == g.order() && is_valid_cycle(g, c);
}

// ---------------------------------------------------------------------------

char part_name(Part p) {
    switch (p) {
    case Part::A: return 'A';
    case Part::B: return 'B';
    case Part::C: return 'C';
    case Part::D: return 'D';
    case Part::None: break;
    }
    return '-';
}

Partition4::Partition4(std::size_t n, const std::array<std::vector<VertexId>, 4>& classes) : label_(n, Part::None) {
    for (std::size_t i = 0; i < 4; ++i) {
        for (VertexId v : classes[i]) {
            if (v >= n) throw Error(ErrorKind::OutOfRange, "partition vertex " + std::to_string(v) + " out of range");
            if (label_[v] != Part::None)
                throw Error(ErrorKind::OverlappingClasses, "vertex " + std::to_string(v) + " appears in two classes");
            label_[v] = kParts[i];
        }
    }
}

std::vector<VertexId> Partition4::members(Part p) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < label_.size(); ++v)
        if (label_[v] == p) out.push_back(v);
    return out;
}

VertexSet Partition4::member_set(Part p) const {
    VertexSet s(label_.size());
    for (VertexId v = 0; v < label_.size(); ++v)
        if (label_[v] == p) s.insert(v);
    return s;
}

std::size_t Partition4::class_size(Part p) const {
    return static_cast<std::size_t>(std::count(label_.begin(), label_.end(), p));
}

bool Partition4::covers_all() const {
    return std::none_of(label_.begin(), label_.end(), [](Part p) { return p == Part::None; });
}

Contraction contract_path(const OrientedGraph& g, const Partition4& part, const DiPath& path) {
    if (path.empty() || !is_valid_path(g, path)) throw Error(ErrorKind::InvalidPath, "path is not valid in the graph");
    if (part.universe() != g.order())
        throw Error(ErrorKind::PartitionNotCovering, "partition universe differs from graph order");
    const VertexId first = path.front();
    const VertexId last = path.back();
    const Part home = part.part_of(first);
    if (home == Part::None || part.part_of(last) != home)
        throw Error(ErrorKind::EndpointsInDifferentClasses, "path endpoints lie in different classes");

    std::vector<Part> order;
    for (Part p : kParts)
        if (part.class_size(p) > 0) order.push_back(p);
    if (order.size() < 3)
        throw Error(ErrorKind::DegenerateClassOrder, "fewer than three nonempty classes: next and previous coincide");
    const auto at = static_cast<std::size_t>(std::find(order.begin(), order.end(), home) - order.begin());
    const Part next = order[(at + 1) % order.size()];
    const Part prev = order[(at + order.size() - 1) % order.size()];

    VertexSet on_path = VertexSet::from_range(g.order(), path.vertices);
    VertexSet out_p = g.out_set(last) & part.member_set(next);
    VertexSet in_p = g.in_set(first) & part.member_set(prev);
    out_p.subtract(on_path);
    in_p.subtract(on_path);

    Contraction c;
    const std::size_t m = g.order() - path.size() + 1;
    c.new_id.assign(g.order(), std::nullopt);
    for (VertexId v = 0; v < g.order(); ++v) {
        if (on_path.contains(v)) continue;
        c.new_id[v] = c.old_id.size();
        c.old_id.push_back(v);
    }
    c.contracted = m - 1;
    c.old_id.push_back(first);
    c.path = path;

    GraphBuilder b(m);
    for (const Arc& a : g.arcs())
        if (c.new_id[a.from] && c.new_id[a.to]) b.add_arc(*c.new_id[a.from], *c.new_id[a.to]);
    out_p.for_each([&](VertexId w) { b.add_arc(c.contracted, *c.new_id[w]); });
    in_p.for_each([&](VertexId w) { b.add_arc(*c.new_id[w], c.contracted); });
    c.graph = std::move(b).build();

    c.partition = Partition4(m);
    for (VertexId v = 0; v < g.order(); ++v)
        if (c.new_id[v]) c.partition.assign(*c.new_id[v], part.part_of(v));
    c.partition.assign(c.contracted, home);
    return c;
}

DiCycle lift_cycle(const Contraction& c, const DiCycle& cycle) {
    DiCycle out;
    for (VertexId v : cycle.vertices) {
        if (v == c.contracted)
            out.vertices.insert(out.vertices.end(), c.path.vertices.begin(), c.path.vertices.end());
        else
            out.vertices.push_back(c.old_id.at(v));
    }
    return out;
}

}  // namespace ohc
