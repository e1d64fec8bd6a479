#include "ohc/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace ohc {

Json rational_json(const std::optional<Rational>& r) {
    if (!r) return Json{{"num", 1}, {"den", 0}};
    return Json{{"num", r->numerator()}, {"den", r->denominator()}};
}

namespace {

Json witness_json(const Witness& w) {
    struct Visitor {
        Json operator()(std::monostate) const { return nullptr; }
        Json operator()(const PairWitness& p) const { return {{"kind", "pair"}, {"x", p.x}, {"y", p.y}}; }
        Json operator()(const VertexWitness& v) const {
            return {{"kind", "vertex"}, {"v", v.v}, {"side", v.out_side ? "out" : "in"}};
        }
        Json operator()(const IndexWitness& i) const { return {{"kind", "index"}, {"i", i.i}, {"bullet", i.bullet}}; }
        Json operator()(const SetWitness& s) const { return {{"kind", "set"}, {"size", s.size}, {"arcs", s.arcs}}; }
    };
    return std::visit(Visitor{}, w);
}

}  // namespace

Json condition_json(const ConditionReport& r) {
    Json j{{"condition", r.condition},
           {"satisfied", r.satisfied},
           {"margin", rational_json(r.margin)},
           {"witness", witness_json(r.witness)}};
    if (r.strongly_connected) j["strongly_connected"] = *r.strongly_connected;
    return j;
}

Json params_json(const ExtremalParams& p) {
    return {{"n", p.n},
            {"a", p.a},
            {"k", p.k},
            {"residue", p.residue},
            {"sizes", {{"A", p.sizes[0]}, {"B", p.sizes[1]}, {"C", p.sizes[2]}, {"D", p.sizes[3]}}},
            {"bound", p.bound},
            {"ac_edges", p.ac_edges},
            {"d_edges", p.d_edges},
            {"seed", p.seed}};
}

Json partition_json(const Partition4& p) {
    Json j = Json::object();
    for (Part part : kParts) j[std::string(1, part_name(part))] = p.members(part);
    return j;
}

Partition4 partition_from_json(const Json& j, std::size_t n) {
    std::array<std::vector<VertexId>, 4> classes;
    for (Part part : kParts) {
        const std::string key(1, part_name(part));
        if (j.contains(key)) classes[static_cast<std::size_t>(part)] = j.at(key).get<std::vector<VertexId>>();
    }
    return Partition4(n, classes);
}

Json extremality_json(const ExtremalityReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"name", e.name},
                           {"value", rational_json(e.value)},
                           {"slack", rational_json(e.slack)},
                           {"quadratic", e.quadratic}});
    Json j{{"eta", rational_json(r.eta)},
           {"c_eta", rational_json(r.c_eta)},
           {"reading", r.reading == SizeReading::Template ? "template" : "literal"},
           {"entries", std::move(entries)},
           {"verdict", r.verdict}};
    j["min_eta"] = r.min_eta ? rational_json(r.min_eta) : Json(nullptr);
    return j;
}

Json path_json(const DiPath& p) { return p.vertices; }

Json result_json(const HamiltonResult& r) {
    Json trace = Json::array();
    for (const auto& s : r.trace) {
        Json metrics = Json::object();
        for (const auto& m : s.metrics) metrics[m.name] = m.value;
        trace.push_back({{"stage", s.stage}, {"ok", s.ok}, {"detail", s.detail}, {"metrics", std::move(metrics)}});
    }
    Json j{{"verdict", std::string(to_string(r.verdict))}, {"trace", std::move(trace)}};
    j["certificate"] = r.certificate ? Json(r.certificate->vertices) : Json(nullptr);
    j["failed_stage"] = r.failed_stage() ? Json(*r.failed_stage()) : Json(nullptr);
    if (r.extremality) j["extremality"] = extremality_json(*r.extremality);
    return j;
}

Json profile_json(const std::vector<ProfileEntry>& profile) {
    Json pairs = Json::array();
    std::size_t flagged = 0;
    for (const auto& e : profile) {
        flagged += e.flagged() ? 1 : 0;
        pairs.push_back({{"u", e.u},
                         {"v", e.v},
                         {"counts", e.counts},
                         {"best_k", e.best_k ? Json(*e.best_k) : Json(nullptr)},
                         {"count", e.best_count()},
                         {"flagged", e.flagged()}});
    }
    return {{"pairs", std::move(pairs)}, {"flagged", flagged}};
}

Json manifest_json(const RunManifest& m) {
    return {{"command", m.command},
            {"input_digest", m.input_digest},
            {"seed", m.seed},
            {"params", m.params},
            {"tool_version", m.tool_version},
            {"timestamp", m.timestamp}};
}

std::string digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string manifest_timestamp(const std::optional<std::string>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') return env;
    return "unset";
}

std::string emit_report(const RunManifest& m, const Json& result) {
    const Json doc{{"schema", std::string(kSchema)}, {"manifest", manifest_json(m)}, {"result", result}};
    return doc.dump(2) + "\n";
}

}  // namespace ohc
