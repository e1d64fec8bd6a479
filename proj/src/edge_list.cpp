#include "ohc/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace ohc {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::size_t to_index(std::string_view tok, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(ErrorKind::Parse, line, "expected a non-negative integer, got '" + std::string(tok) + "'");
    return value;
}

}  // namespace

OrientedGraph parse_edge_list(std::string_view text) {
    std::optional<GraphBuilder> builder;
    std::optional<std::size_t> declared_arcs;
    std::size_t line_no = 0;
    std::size_t arcs = 0;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto toks = split_ws(line);
        if (toks.empty()) continue;

        if (!builder) {
            std::size_t n = 0;
            if (toks[0] == "n") {
                if (toks.size() != 2) throw ParseError(ErrorKind::Parse, line_no, "header must be 'n <count>'");
                n = to_index(toks[1], line_no);
            } else {
                if (toks.size() > 2) throw ParseError(ErrorKind::Parse, line_no, "header must be 'n <count>'");
                n = to_index(toks[0], line_no);
                if (toks.size() == 2) declared_arcs = to_index(toks[1], line_no);
            }
            if (n > kMaxVertices)
                throw ParseError(ErrorKind::TooLarge, line_no, "order " + std::to_string(n) + " exceeds cap");
            builder.emplace(n);
            continue;
        }

        if (toks.size() != 2) throw ParseError(ErrorKind::Parse, line_no, "expected 'u v'");
        const auto u = to_index(toks[0], line_no);
        const auto v = to_index(toks[1], line_no);
        if (u >= builder->order() || v >= builder->order())
            throw ParseError(ErrorKind::OutOfRange, line_no, "vertex id out of range");
        if (u == v) throw ParseError(ErrorKind::SelfLoop, line_no, "self-loop at " + std::to_string(u));
        if (builder->has_arc(v, u))
            throw ParseError(ErrorKind::TwoCycle, line_no,
                             "arc " + std::to_string(u) + " " + std::to_string(v) + " closes a 2-cycle");
        if (builder->has_arc(u, v))
            throw ParseError(ErrorKind::DuplicateArc, line_no,
                             "repeated arc " + std::to_string(u) + " " + std::to_string(v));
        builder->add_arc(u, v);
        ++arcs;
    }
    if (!builder) throw ParseError(ErrorKind::Parse, line_no == 0 ? 1 : line_no, "missing header");
    if (declared_arcs && *declared_arcs != arcs)
        throw ParseError(ErrorKind::Parse, 1,
                         "header declares " + std::to_string(*declared_arcs) + " arcs, found " + std::to_string(arcs));
    return std::move(*builder).build();
}

std::string emit_edge_list(const OrientedGraph& g) {
    std::string out = "n " + std::to_string(g.order()) + "\n";
    for (const Arc& a : g.arcs()) {
        out += std::to_string(a.from);
        out += ' ';
        out += std::to_string(a.to);
        out += '\n';
    }
    return out;
}

OrientedGraph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_edge_list(ss.str());
}

void write_edge_list(const std::filesystem::path& path, const OrientedGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << emit_edge_list(g);
}

}  // namespace ohc
