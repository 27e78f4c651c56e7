#include "gridlab/grid_graph.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include <json.hpp>

namespace gridlab {

namespace {

void check_dims(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw bounds_error("grid dimensions must be at least 1x1, got " + std::to_string(rows) +
                           "x" + std::to_string(cols));
}

void check_vertex(const Vertex& v, int rows, int cols) {
    if (v.row < 1 || v.row > rows || v.col < 1 || v.col > cols)
        throw bounds_error("vertex (" + std::to_string(v.row) + "," + std::to_string(v.col) +
                           ") outside " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " grid");
}

}  // namespace

Edge make_edge(Vertex x, Vertex y) {
    if (x == y)
        throw loop_edge_error("loop edge at (" + std::to_string(x.row) + "," +
                              std::to_string(x.col) + ")");
    if (y < x) std::swap(x, y);
    return Edge{x, y};
}

EdgeClass classify_edge(const Edge& e) {
    Edge c = e.v < e.u ? Edge{e.v, e.u} : e;
    if (c.u.row == c.v.row) return EdgeClass::Horizontal;
    if (c.u.col == c.v.col) return EdgeClass::Vertical;
    // c.u.row < c.v.row here, so the column delta decides the slope
    return c.u.col < c.v.col ? EdgeClass::DiagonalDownhill : EdgeClass::DiagonalUphill;
}

bool is_diagonal(const Edge& e) {
    EdgeClass k = classify_edge(e);
    return k == EdgeClass::DiagonalUphill || k == EdgeClass::DiagonalDownhill;
}

GridLabelledGraph new_graph(int rows, int cols, std::vector<Edge> edges) {
    check_dims(rows, cols);
    for (Edge& e : edges) {
        e = make_edge(e.u, e.v);
        check_vertex(e.u, rows, cols);
        check_vertex(e.v, rows, cols);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return GridLabelledGraph{rows, cols, std::move(edges)};
}

bool has_edge(const GridLabelledGraph& g, const Edge& e) {
    return std::binary_search(g.edges.begin(), g.edges.end(), e);
}

Edge partial_transpose_edge(const Edge& e) {
    return make_edge(Vertex{e.v.row, e.u.col}, Vertex{e.u.row, e.v.col});
}

PartialTransposeResult partial_transpose(const GridLabelledGraph& g) {
    std::vector<Edge> mapped;
    mapped.reserve(g.edges.size());
    for (const Edge& e : g.edges) mapped.push_back(partial_transpose_edge(e));
    std::sort(mapped.begin(), mapped.end());
    size_t before = mapped.size();
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    bool merged = mapped.size() != before;
    return PartialTransposeResult{GridLabelledGraph{g.rows, g.cols, std::move(mapped)}, merged};
}

std::vector<int> degree_vector(const GridLabelledGraph& g) {
    std::vector<int> deg(static_cast<size_t>(g.rows) * g.cols, 0);
    for (const Edge& e : g.edges) {
        ++deg[vertex_index(e.u, g.cols)];
        ++deg[vertex_index(e.v, g.cols)];
    }
    return deg;
}

HvdParts hvd_decomposition(const GridLabelledGraph& g) {
    std::vector<Edge> h, v, d;
    for (const Edge& e : g.edges) {
        switch (classify_edge(e)) {
            case EdgeClass::Horizontal: h.push_back(e); break;
            case EdgeClass::Vertical: v.push_back(e); break;
            default: d.push_back(e); break;
        }
    }
    return HvdParts{GridLabelledGraph{g.rows, g.cols, std::move(h)},
                    GridLabelledGraph{g.rows, g.cols, std::move(v)},
                    GridLabelledGraph{g.rows, g.cols, std::move(d)}};
}

namespace {

// Band index of a diagonal edge along the axis: the smaller row (Axis::Row)
// or smaller column (Axis::Column) of its endpoints.
int stratum_of(const Edge& e, Axis axis) {
    if (axis == Axis::Row) return std::min(e.u.row, e.v.row);
    return std::min(e.u.col, e.v.col);
}

int stratum_span(const Edge& e, Axis axis) {
    if (axis == Axis::Row) return std::abs(e.u.row - e.v.row);
    return std::abs(e.u.col - e.v.col);
}

}  // namespace

bool is_stratified(const GridLabelledGraph& g, Axis axis) {
    for (const Edge& e : g.edges)
        if (is_diagonal(e) && stratum_span(e, axis) != 1) return false;
    return true;
}

std::vector<GridLabelledGraph> strata_decomposition(const GridLabelledGraph& g, Axis axis) {
    int bands = (axis == Axis::Row ? g.rows : g.cols) - 1;
    std::vector<std::vector<Edge>> parts(static_cast<size_t>(std::max(bands, 0)));
    for (const Edge& e : g.edges) {
        if (!is_diagonal(e)) continue;
        if (stratum_span(e, axis) != 1)
            throw not_stratified("diagonal edge spans non-adjacent " +
                                 std::string(axis == Axis::Row ? "rows" : "columns"));
        parts[static_cast<size_t>(stratum_of(e, axis)) - 1].push_back(e);
    }
    std::vector<GridLabelledGraph> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.push_back(GridLabelledGraph{g.rows, g.cols, std::move(p)});
    return out;
}

bool is_pair_symmetric(const GridLabelledGraph& g) {
    for (const Edge& e : g.edges)
        if (is_diagonal(e) && !has_edge(g, partial_transpose_edge(e))) return false;
    return true;
}

std::vector<GridLabelledGraph> dihedral_images(const GridLabelledGraph& g) {
    const int a = g.rows, b = g.cols;
    struct Transform {
        int rows, cols;
        std::function<Vertex(const Vertex&)> map;
    };
    const Transform transforms[8] = {
        {a, b, [](const Vertex& v) { return v; }},
        {b, a, [a](const Vertex& v) { return Vertex{v.col, a + 1 - v.row}; }},          // rot 90
        {a, b, [a, b](const Vertex& v) { return Vertex{a + 1 - v.row, b + 1 - v.col}; }},  // rot 180
        {b, a, [b](const Vertex& v) { return Vertex{b + 1 - v.col, v.row}; }},          // rot 270
        {a, b, [a](const Vertex& v) { return Vertex{a + 1 - v.row, v.col}; }},          // flip rows
        {a, b, [b](const Vertex& v) { return Vertex{v.row, b + 1 - v.col}; }},          // flip cols
        {b, a, [](const Vertex& v) { return Vertex{v.col, v.row}; }},                   // transpose
        {b, a, [a, b](const Vertex& v) { return Vertex{b + 1 - v.col, a + 1 - v.row}; }},  // anti-transpose
    };
    std::vector<GridLabelledGraph> images;
    for (const Transform& t : transforms) {
        std::vector<Edge> edges;
        edges.reserve(g.edges.size());
        for (const Edge& e : g.edges) edges.push_back(make_edge(t.map(e.u), t.map(e.v)));
        GridLabelledGraph img = new_graph(t.rows, t.cols, std::move(edges));
        if (std::find(images.begin(), images.end(), img) == images.end())
            images.push_back(std::move(img));
    }
    return images;
}

namespace {

void check_same_dims(const GridLabelledGraph& g, const GridLabelledGraph& h) {
    if (g.rows != h.rows || g.cols != h.cols)
        throw dimension_mismatch("graphs live on different grids: " + std::to_string(g.rows) +
                                 "x" + std::to_string(g.cols) + " vs " + std::to_string(h.rows) +
                                 "x" + std::to_string(h.cols));
}

}  // namespace

UnionResult graph_union(const GridLabelledGraph& g, const GridLabelledGraph& h) {
    check_same_dims(g, h);
    std::vector<Edge> merged;
    merged.reserve(g.edges.size() + h.edges.size());
    std::merge(g.edges.begin(), g.edges.end(), h.edges.begin(), h.edges.end(),
               std::back_inserter(merged));
    size_t before = merged.size();
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    bool overlapped = merged.size() != before;
    return UnionResult{GridLabelledGraph{g.rows, g.cols, std::move(merged)}, overlapped};
}

GridLabelledGraph graph_intersection(const GridLabelledGraph& g, const GridLabelledGraph& h) {
    check_same_dims(g, h);
    std::vector<Edge> common;
    std::set_intersection(g.edges.begin(), g.edges.end(), h.edges.begin(), h.edges.end(),
                          std::back_inserter(common));
    return GridLabelledGraph{g.rows, g.cols, std::move(common)};
}

GridLabelledGraph compact(const GridLabelledGraph& g) {
    if (g.edges.empty()) return GridLabelledGraph{1, 1, {}};
    std::vector<int> row_map(static_cast<size_t>(g.rows) + 1, 0);
    std::vector<int> col_map(static_cast<size_t>(g.cols) + 1, 0);
    for (const Edge& e : g.edges) {
        row_map[e.u.row] = row_map[e.v.row] = 1;
        col_map[e.u.col] = col_map[e.v.col] = 1;
    }
    int next = 0;
    for (int i = 1; i <= g.rows; ++i) row_map[i] = row_map[i] ? ++next : 0;
    int new_rows = next;
    next = 0;
    for (int j = 1; j <= g.cols; ++j) col_map[j] = col_map[j] ? ++next : 0;
    int new_cols = next;
    std::vector<Edge> edges;
    edges.reserve(g.edges.size());
    for (const Edge& e : g.edges)
        edges.push_back(make_edge(Vertex{row_map[e.u.row], col_map[e.u.col]},
                                  Vertex{row_map[e.v.row], col_map[e.v.col]}));
    return new_graph(new_rows, new_cols, std::move(edges));
}

std::string graph_to_json(const GridLabelledGraph& g) {
    nlohmann::ordered_json j;
    j["rows"] = g.rows;
    j["cols"] = g.cols;
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges) {
        auto je = nlohmann::ordered_json::array();
        je.push_back(nlohmann::ordered_json::array({e.u.row, e.u.col}));
        je.push_back(nlohmann::ordered_json::array({e.v.row, e.v.col}));
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j.dump();
}

GridLabelledGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("edges"))
        throw parse_error("graph JSON must be an object with rows, cols, edges");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer() ||
        !j["edges"].is_array())
        throw parse_error("graph JSON: rows/cols must be integers, edges an array");
    auto read_vertex = [](const nlohmann::json& jv) {
        if (!jv.is_array() || jv.size() != 2 || !jv[0].is_number_integer() ||
            !jv[1].is_number_integer())
            throw parse_error("graph JSON: vertex must be [row, col]");
        return Vertex{jv[0].get<int>(), jv[1].get<int>()};
    };
    std::vector<Edge> edges;
    for (const auto& je : j["edges"]) {
        if (!je.is_array() || je.size() != 2)
            throw parse_error("graph JSON: edge must be a pair of vertices");
        edges.push_back(make_edge(read_vertex(je[0]), read_vertex(je[1])));
    }
    return new_graph(j["rows"].get<int>(), j["cols"].get<int>(), std::move(edges));
}

std::vector<Edge> all_edges(int rows, int cols) {
    check_dims(rows, cols);
    std::vector<Vertex> verts;
    verts.reserve(static_cast<size_t>(rows) * cols);
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j) verts.push_back(Vertex{i, j});
    std::vector<Edge> edges;
    for (size_t x = 0; x < verts.size(); ++x)
        for (size_t y = x + 1; y < verts.size(); ++y) edges.push_back(Edge{verts[x], verts[y]});
    return edges;
}

std::vector<Edge> all_diagonal_edges(int rows, int cols) {
    std::vector<Edge> edges = all_edges(rows, cols);
    std::erase_if(edges, [](const Edge& e) { return !is_diagonal(e); });
    return edges;
}

}  // namespace gridlab
