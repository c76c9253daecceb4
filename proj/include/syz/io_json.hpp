#pragma once

// Document formats shared by the library and the command-line tool:
// JSON schemas for polynomials, integer matrices, fibration graphs, and
// tropical spines, plus CSV raster export and DOT graph export.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "syz/amoeba.hpp"
#include "syz/gamma.hpp"
#include "syz/laurent.hpp"
#include "syz/monodromy.hpp"
#include "syz/spine.hpp"

namespace syz {

using Json = nlohmann::json;

/// Raised when a file cannot be opened; the CLI maps this to a usage
/// error, unlike malformed content which is a computation error.
struct FileError : std::runtime_error {
    explicit FileError(const std::string& what) : std::runtime_error(what) {}
};

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open file: " + path);
    return Json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write file: " + path);
    out << content;
}

// ---------------------------------------------------------------------------
// Polynomials: { "vars": n, "terms": [ { "exp": [...], "re": f, "im": f } ] }
// ---------------------------------------------------------------------------

inline Json laurent_to_json(const LaurentPolynomial& f) {
    Json terms = Json::array();
    for (const Term& t : f.terms()) {
        Json item;
        item["exp"] = t.exponent;
        item["re"] = t.coefficient.real();
        item["im"] = t.coefficient.imag();
        terms.push_back(std::move(item));
    }
    return Json{{"vars", f.num_vars()}, {"terms", std::move(terms)}};
}

inline LaurentPolynomial laurent_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("vars") || !doc.contains("terms"))
        throw std::runtime_error("polynomial document needs 'vars' and 'terms'");
    const int vars = doc.at("vars").get<int>();
    std::vector<Term> terms;
    for (const Json& item : doc.at("terms")) {
        Term t;
        t.exponent = item.at("exp").get<Exponent>();
        t.coefficient =
            Complex(item.at("re").get<double>(), item.value("im", 0.0));
        terms.push_back(std::move(t));
    }
    return LaurentPolynomial(vars, std::move(terms));
}

// ---------------------------------------------------------------------------
// Matrices: { "size": s, "rows": [[...], ...] }; lists: { "matrices": [...] }
// ---------------------------------------------------------------------------

inline Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.size; ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.size; ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return Json{{"size", m.size}, {"rows", std::move(rows)}};
}

inline IntMatrix matrix_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("size") || !doc.contains("rows"))
        throw std::runtime_error("matrix document needs 'size' and 'rows'");
    const int size = doc.at("size").get<int>();
    std::vector<std::int64_t> data;
    for (const Json& row : doc.at("rows"))
        for (const Json& entry : row) data.push_back(entry.get<std::int64_t>());
    return IntMatrix(size, std::move(data));
}

inline Json matrix_list_to_json(const std::vector<IntMatrix>& list) {
    Json matrices = Json::array();
    for (const IntMatrix& m : list) matrices.push_back(matrix_to_json(m));
    return Json{{"matrices", std::move(matrices)}};
}

inline std::vector<IntMatrix> matrix_list_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("matrices"))
        throw std::runtime_error("matrix list document needs 'matrices'");
    std::vector<IntMatrix> list;
    for (const Json& m : doc.at("matrices")) list.push_back(matrix_from_json(m));
    return list;
}

// ---------------------------------------------------------------------------
// Graphs: { "vertices": [{ "id", "kind" }], "edges": [{ "a", "b",
// "monodromy"? }] }.  Vertex ids are remapped densely on load in file
// order, so edge array indices equal the edge ids used by the rewrites.
// ---------------------------------------------------------------------------

inline Json graph_to_json(const FibrationGraph& g) {
    Json vertices = Json::array();
    for (const auto& [id, v] : g.vertices())
        vertices.push_back(Json{{"id", id}, {"kind", to_string(v.kind)}});
    Json edges = Json::array();
    for (const auto& [id, e] : g.edges()) {
        Json item{{"a", e.ends[0]}, {"b", e.ends[1]}};
        if (e.label) item["monodromy"] = matrix_to_json(*e.label);
        edges.push_back(std::move(item));
    }
    return Json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

inline FibrationGraph graph_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
        throw std::runtime_error("graph document needs 'vertices' and 'edges'");
    FibrationGraph g;
    std::map<std::int64_t, int> remap;
    for (const Json& v : doc.at("vertices")) {
        const std::string kind = v.at("kind").get<std::string>();
        VertexKind k;
        if (kind == "positive")
            k = VertexKind::Positive;
        else if (kind == "negative")
            k = VertexKind::Negative;
        else
            throw std::runtime_error("vertex kind must be 'positive' or 'negative'");
        const std::int64_t id = v.at("id").get<std::int64_t>();
        if (!remap.emplace(id, g.add_vertex(k)).second)
            throw std::runtime_error("duplicate vertex id in graph document");
    }
    for (const Json& e : doc.at("edges")) {
        const auto a = remap.find(e.at("a").get<std::int64_t>());
        const auto b = remap.find(e.at("b").get<std::int64_t>());
        if (a == remap.end() || b == remap.end())
            throw std::runtime_error("edge references unknown vertex id");
        std::optional<IntMatrix> label;
        if (e.contains("monodromy")) label = matrix_from_json(e.at("monodromy"));
        g.add_edge(a->second, b->second, std::move(label));
    }
    return g;
}

inline std::string graph_to_dot(const FibrationGraph& g) {
    std::ostringstream out;
    out << "graph fibration {\n";
    for (const auto& [id, v] : g.vertices())
        out << "  v" << id << " [shape="
            << (v.kind == VertexKind::Positive ? "circle" : "square")
            << ", label=\"" << (v.kind == VertexKind::Positive ? "+" : "-")
            << "\"];\n";
    for (const auto& [id, e] : g.edges())
        out << "  v" << e.ends[0] << " -- v" << e.ends[1] << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Spines: { "functions": [{ "grad": [a,b], "offset": c }], "vertices":
// [[x,y]], "edges": [{ "from", "to" | "ray_dir" }] }.  Line edges (from
// corner loci of fewer than three functions) carry an anchor instead.
// ---------------------------------------------------------------------------

inline Json spine_to_json(const TropicalSpine& s) {
    Json functions = Json::array();
    for (const SpineFunction& f : s.functions)
        functions.push_back(Json{{"grad", f.gradient},
                                 {"offset", f.offset.to_double()}});
    Json vertices = Json::array();
    for (const RationalPoint& p : s.vertices)
        vertices.push_back(Json::array({p.x.to_double(), p.y.to_double()}));
    Json edges = Json::array();
    for (const SpineEdge& e : s.edges) {
        Json item{{"weight", e.weight}, {"sides", Json::array({e.side_a, e.side_b})}};
        switch (e.kind) {
            case SpineEdge::Kind::Segment:
                item["from"] = e.from;
                item["to"] = e.to;
                break;
            case SpineEdge::Kind::Ray:
                item["from"] = e.from;
                item["ray_dir"] = e.direction;
                break;
            case SpineEdge::Kind::Line:
                item["anchor"] = Json::array(
                    {e.anchor.x.to_double(), e.anchor.y.to_double()});
                item["line_dir"] = e.direction;
                break;
        }
        edges.push_back(std::move(item));
    }
    return Json{{"functions", std::move(functions)},
                {"vertices", std::move(vertices)},
                {"edges", std::move(edges)}};
}

// ---------------------------------------------------------------------------
// Raster export: CSV with header x,y,member,hits at pixel centers,
// row-major from the low-y row.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.10g", v);
    return buffer;
}

}  // namespace detail

inline std::string raster_to_csv(const AmoebaRaster& r) {
    std::ostringstream out;
    out << "x,y,member,hits\n";
    const Window& w = r.window;
    for (int j = 0; j < w.resolution; ++j) {
        const double y = w.ymin + (j + 0.5) * w.pixel_height();
        for (int i = 0; i < w.resolution; ++i) {
            const double x = w.xmin + (i + 0.5) * w.pixel_width();
            const std::uint32_t hits =
                r.hits[static_cast<std::size_t>(j) *
                           static_cast<std::size_t>(w.resolution) +
                       static_cast<std::size_t>(i)];
            out << detail::format_double(x) << ',' << detail::format_double(y)
                << ',' << (hits > 0 ? 1 : 0) << ',' << hits << '\n';
        }
    }
    return out.str();
}

}  // namespace syz
