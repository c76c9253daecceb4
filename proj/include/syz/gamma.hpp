#pragma once

// Trivalent degeneration graphs: unit triangulations of dilated triangles,
// their dual graphs glued over the boundary of the 4-simplex, and the two
// local rewrites (flop and conifold transition).  Vertices carry an ordered
// incident-edge list; keeping that order is what makes a double flop
// restore the original attachment pattern exactly.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "syz/monodromy.hpp"

namespace syz {

enum class VertexKind { Positive, Negative };

inline const char* to_string(VertexKind k) {
    return k == VertexKind::Positive ? "positive" : "negative";
}

struct GraphVertex {
    int id = 0;
    VertexKind kind = VertexKind::Negative;
    std::vector<int> incident;  // ordered edge ids; loops appear twice
};

struct GraphEdge {
    int id = 0;
    std::array<int, 2> ends{};
    std::optional<IntMatrix> label;
};

class FibrationGraph {
  public:
    const std::map<int, GraphVertex>& vertices() const { return vertices_; }
    const std::map<int, GraphEdge>& edges() const { return edges_; }

    int add_vertex(VertexKind kind) {
        int id = next_vertex_id_++;
        vertices_[id] = GraphVertex{id, kind, {}};
        return id;
    }

    int add_edge(int u, int v, std::optional<IntMatrix> label = std::nullopt) {
        GraphVertex& vu = vertex_mut(u);
        GraphVertex& vv = vertex_mut(v);
        int id = next_edge_id_++;
        edges_[id] = GraphEdge{id, {u, v}, std::move(label)};
        vu.incident.push_back(id);
        vv.incident.push_back(id);
        return id;
    }

    const GraphVertex& vertex(int id) const {
        auto it = vertices_.find(id);
        if (it == vertices_.end()) throw std::invalid_argument("unknown vertex id");
        return it->second;
    }

    const GraphEdge& edge(int id) const {
        auto it = edges_.find(id);
        if (it == edges_.end()) throw std::invalid_argument("unknown edge id");
        return it->second;
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    std::size_t count(VertexKind kind) const {
        std::size_t n = 0;
        for (const auto& [id, v] : vertices_)
            if (v.kind == kind) ++n;
        return n;
    }

    bool is_trivalent() const {
        for (const auto& [id, v] : vertices_)
            if (v.incident.size() != 3) return false;
        return true;
    }

    bool is_connected() const {
        if (vertices_.empty()) return true;
        std::set<int> seen;
        std::vector<int> stack = {vertices_.begin()->first};
        seen.insert(stack[0]);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int eid : vertex(v).incident) {
                const GraphEdge& e = edge(eid);
                for (int w : e.ends)
                    if (seen.insert(w).second) stack.push_back(w);
            }
        }
        return seen.size() == vertices_.size();
    }

    /// Other endpoint of an edge as seen from vertex v.
    int far_end(int edge_id, int v) const {
        const GraphEdge& e = edge(edge_id);
        if (e.ends[0] == v) return e.ends[1];
        if (e.ends[1] == v) return e.ends[0];
        throw std::invalid_argument("edge is not incident to vertex");
    }

    bool is_loop(int edge_id) const {
        const GraphEdge& e = edge(edge_id);
        return e.ends[0] == e.ends[1];
    }

    void swap_all_kinds_and_dualize() {
        for (auto& [id, v] : vertices_)
            v.kind = v.kind == VertexKind::Positive ? VertexKind::Negative
                                                    : VertexKind::Positive;
        for (auto& [id, e] : edges_)
            if (e.label) e.label = mirror_dual(*e.label);
    }

    /// Flop across an interior edge: detach the two endpoints, re-pair the
    /// four arms crosswise, and join the two new vertices by a fresh edge.
    /// If the four arm labels are present, the new edge label is solved for
    /// and both new vertices must classify as their kinds, otherwise the
    /// move is rejected.
    void flop(int edge_id) {
        const GraphEdge e = edge(edge_id);
        int v1 = e.ends[0], v2 = e.ends[1];
        if (v1 == v2) throw std::invalid_argument("cannot flop a loop");
        std::vector<int> arms1 = arms(v1, edge_id);
        std::vector<int> arms2 = arms(v2, edge_id);
        if (arms1.size() != 2 || arms2.size() != 2)
            throw std::invalid_argument("flop requires trivalent endpoints");
        for (int a : {arms1[0], arms1[1], arms2[0], arms2[1]})
            if (is_loop(a)) throw std::invalid_argument("flop arms must not be loops");

        int a = arms1[0], b = arms1[1], c = arms2[0], d = arms2[1];
        VertexKind k1 = vertex(v1).kind, k2 = vertex(v2).kind;

        std::optional<IntMatrix> new_label = solve_flop_label(a, b, c, d, k1, k2);

        int v1p = add_vertex(k1);
        int v2p = add_vertex(k2);
        reattach(a, v1, v1p);
        reattach(c, v2, v1p);
        reattach(b, v1, v2p);
        reattach(d, v2, v2p);
        vertices_[v1p].incident = {a, c};
        vertices_[v2p].incident = {b, d};
        edges_.erase(edge_id);
        vertices_.erase(v1);
        vertices_.erase(v2);
        add_edge(v1p, v2p, std::move(new_label));
    }

    /// Conifold transition across an interior edge: delete both endpoints,
    /// fuse the two arms on each side into a single edge.  Any labels on
    /// the fused arms are dropped (no transport rule is validated here).
    void conifold(int edge_id) {
        const GraphEdge e = edge(edge_id);
        int v1 = e.ends[0], v2 = e.ends[1];
        if (v1 == v2) throw std::invalid_argument("cannot contract a loop");
        std::vector<int> arms1 = arms(v1, edge_id);
        std::vector<int> arms2 = arms(v2, edge_id);
        if (arms1.size() != 2 || arms2.size() != 2)
            throw std::invalid_argument("conifold requires trivalent endpoints");
        for (int arm : {arms1[0], arms1[1], arms2[0], arms2[1]}) {
            if (is_loop(arm)) throw std::invalid_argument("conifold arms must not be loops");
            int far = far_end(arm, edge_contains(arm, v1) ? v1 : v2);
            if (far == v1 || far == v2)
                throw std::invalid_argument("conifold arms must leave the contracted pair");
        }
        fuse(arms1[0], arms1[1], v1);
        fuse(arms2[0], arms2[1], v2);
        edges_.erase(edge_id);
        vertices_.erase(v1);
        vertices_.erase(v2);
    }

  private:
    GraphVertex& vertex_mut(int id) {
        auto it = vertices_.find(id);
        if (it == vertices_.end()) throw std::invalid_argument("unknown vertex id");
        return it->second;
    }

    bool edge_contains(int edge_id, int v) const {
        const GraphEdge& e = edge(edge_id);
        return e.ends[0] == v || e.ends[1] == v;
    }

    /// Incident edges of v with one occurrence of `except` removed,
    /// preserving stored order.
    std::vector<int> arms(int v, int except) const {
        std::vector<int> out;
        bool removed = false;
        for (int eid : vertex(v).incident) {
            if (!removed && eid == except) {
                removed = true;
                continue;
            }
            out.push_back(eid);
        }
        return out;
    }

    /// Replace endpoint `from` of an edge with `to` (first matching slot).
    void reattach(int edge_id, int from, int to) {
        GraphEdge& e = edges_.at(edge_id);
        if (e.ends[0] == from)
            e.ends[0] = to;
        else if (e.ends[1] == from)
            e.ends[1] = to;
        else
            throw std::logic_error("reattach: endpoint not found");
    }

    /// Replace arms p, q (both incident to the vanishing vertex v) by one
    /// edge joining their far endpoints, splicing into the far incidence
    /// lists in place so the rotation data stays put.
    void fuse(int p, int q, int v) {
        int fp = far_end(p, v);
        int fq = far_end(q, v);
        int id = next_edge_id_++;
        edges_[id] = GraphEdge{id, {fp, fq}, std::nullopt};
        replace_incident(fp, p, id);
        replace_incident(fq, q, id);
        edges_.erase(p);
        edges_.erase(q);
    }

    void replace_incident(int v, int old_edge, int new_edge) {
        for (int& eid : vertex_mut(v).incident)
            if (eid == old_edge) {
                eid = new_edge;
                return;
            }
        throw std::logic_error("incident edge not found");
    }

    /// Classification check for a labelled triple against a vertex kind,
    /// trying both orientations of the cyclic order.
    static bool labels_match_kind(const IntMatrix& m1, const IntMatrix& m2,
                                  const IntMatrix& m3, VertexKind kind) {
        TripleClass want = kind == VertexKind::Positive ? TripleClass::Positive
                                                        : TripleClass::Negative;
        if (classify_vertex({m1, m2, m3}) == want) return true;
        return classify_vertex({m3, m2, m1}) == want;
    }

    /// Label for the new flop edge, if the arm labels determine one.  When
    /// any arm is unlabelled the new edge is left unlabelled and no check
    /// runs; when all four are labelled, a candidate that validates both
    /// new vertices must exist or the move is rejected.
    std::optional<IntMatrix> solve_flop_label(int a, int b, int c, int d,
                                              VertexKind k1, VertexKind k2) const {
        const auto& la = edge(a).label;
        const auto& lb = edge(b).label;
        const auto& lc = edge(c).label;
        const auto& ld = edge(d).label;
        if (!la || !lb || !lc || !ld) return std::nullopt;
        std::vector<IntMatrix> candidates = {inverse(*la * *lc), inverse(*lc * *la),
                                             inverse(*lb * *ld), inverse(*ld * *lb)};
        for (const IntMatrix& cand : candidates) {
            if (labels_match_kind(*la, *lc, cand, k1) &&
                labels_match_kind(*lb, *ld, cand, k2))
                return cand;
        }
        throw std::domain_error("flop rejected: no edge label validates both new vertices");
    }

    std::map<int, GraphVertex> vertices_;
    std::map<int, GraphEdge> edges_;
    int next_vertex_id_ = 0;
    int next_edge_id_ = 0;
};

/// Signed vertex count: positive minus negative.  For these degeneration
/// graphs this equals the Euler characteristic of the total space.
inline long euler_characteristic(const FibrationGraph& g) {
    return static_cast<long>(g.count(VertexKind::Positive)) -
           static_cast<long>(g.count(VertexKind::Negative));
}

/// Mirror of the whole graph: every vertex kind flips and every label is
/// replaced by its transpose-inverse dual.
inline FibrationGraph mirror_graph(FibrationGraph g) {
    g.swap_all_kinds_and_dualize();
    return g;
}

/// Unit lattice triangle inside the d-fold dilated standard triangle.
struct UnitTriangle {
    int x = 0;
    int y = 0;
    bool up = true;  // up: {(x,y),(x+1,y),(x,y+1)}; down: {(x+1,y),(x,y+1),(x+1,y+1)}
};

/// The standard unit triangulation of d * (standard triangle), listed in a
/// fixed order: for each (y, x) the up triangle, then its down partner.
inline std::vector<UnitTriangle> triangulate_face(int d) {
    if (d < 1) throw std::invalid_argument("dilation factor must be positive");
    std::vector<UnitTriangle> tris;
    for (int y = 0; y < d; ++y)
        for (int x = 0; x + y < d; ++x) {
            tris.push_back({x, y, true});
            if (x + y < d - 1) tris.push_back({x, y, false});
        }
    return tris;
}

/// Dual graph of one triangulated face together with its boundary stubs.
/// Sides are numbered 0 (y = 0), 1 (x = 0), 2 (x + y = d); the segment
/// index runs 0..d-1 from the corner written first below:
///   side 0: from (0,0) toward (d,0)
///   side 1: from (0,0) toward (0,d)
///   side 2: from (d,0) toward (0,d)
struct FaceDual {
    FibrationGraph graph;
    // stubs[side][segment] = dual vertex id of the boundary triangle there
    std::array<std::vector<int>, 3> stubs;
};

inline FaceDual face_dual(int d) {
    FaceDual out;
    std::vector<UnitTriangle> tris = triangulate_face(d);
    std::map<std::pair<std::pair<int, int>, bool>, int> ids;
    for (const UnitTriangle& t : tris)
        ids[{{t.x, t.y}, t.up}] = out.graph.add_vertex(VertexKind::Negative);
    auto up_id = [&](int x, int y) { return ids.at({{x, y}, true}); };
    auto down_id = [&](int x, int y) { return ids.at({{x, y}, false}); };
    // Interior edges: every down triangle touches three up triangles.
    for (const UnitTriangle& t : tris) {
        if (t.up) continue;
        out.graph.add_edge(down_id(t.x, t.y), up_id(t.x + 1, t.y));  // shares x+1 column edge
        out.graph.add_edge(down_id(t.x, t.y), up_id(t.x, t.y + 1));  // shares y+1 row edge
        out.graph.add_edge(down_id(t.x, t.y), up_id(t.x, t.y));      // shares the diagonal
    }
    for (int t = 0; t < d; ++t) {
        out.stubs[0].push_back(up_id(t, 0));          // bottom side
        out.stubs[1].push_back(up_id(0, t));          // left side
        out.stubs[2].push_back(up_id(d - 1 - t, t));  // hypotenuse, from (d,0)
    }
    return out;
}

/// Degeneration graph of the degree-d hypersurface family built over the
/// boundary of the 4-simplex: one triangulated copy of the d-dilated
/// triangle per 2-face, glued three at a time along the simplex edges by
/// positive trivalent vertices.
inline FibrationGraph build_gamma_simplex(int d) {
    if (d < 1) throw std::invalid_argument("dilation factor must be positive");
    FibrationGraph g;
    // Faces of the 4-simplex: ordered vertex triples from {0..4}.
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            for (int k = j + 1; k < 5; ++k) faces.push_back({i, j, k});

    // stub_lists[{p,q}][segment] -> dual vertex ids from each incident face
    std::map<std::pair<int, int>, std::vector<std::vector<int>>> stub_lists;

    for (const std::array<int, 3>& f : faces) {
        FaceDual dual = face_dual(d);
        // Import the face-local graph, remembering the id offset mapping.
        std::map<int, int> remap;
        for (const auto& [id, v] : dual.graph.vertices()) remap[id] = g.add_vertex(v.kind);
        for (const auto& [id, e] : dual.graph.edges())
            g.add_edge(remap.at(e.ends[0]), remap.at(e.ends[1]));
        // Register boundary stubs under their simplex-edge keys.  Segment
        // indices count from the smaller simplex vertex, matching the
        // side orientations fixed in face_dual.
        const std::array<std::pair<int, int>, 3> side_edges = {
            std::pair<int, int>{f[0], f[1]}, {f[0], f[2]}, {f[1], f[2]}};
        for (int side = 0; side < 3; ++side) {
            auto& lists = stub_lists[side_edges[static_cast<std::size_t>(side)]];
            lists.resize(static_cast<std::size_t>(d));
            for (int t = 0; t < d; ++t)
                lists[static_cast<std::size_t>(t)].push_back(
                    remap.at(dual.stubs[static_cast<std::size_t>(side)][static_cast<std::size_t>(t)]));
        }
    }

    // Each simplex edge lies in exactly three faces; each of its d unit
    // segments becomes one positive vertex joining the three stubs.
    for (const auto& [key, lists] : stub_lists) {
        for (const std::vector<int>& stubs : lists) {
            if (stubs.size() != 3)
                throw std::logic_error("simplex edge does not meet exactly three faces");
            int p = g.add_vertex(VertexKind::Positive);
            for (int s : stubs) g.add_edge(p, s);
        }
    }
    return g;
}

}  // namespace syz
