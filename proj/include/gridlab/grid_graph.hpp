#pragma once

#include <compare>
#include <string>
#include <vector>

#include "gridlab/errors.hpp"

namespace gridlab {

// Grid point (row, col), 1-based on an a x b grid. Ordering is row-major
// lexicographic; it doubles as the canonical edge-endpoint order.
struct Vertex {
    int row = 0;
    int col = 0;
    auto operator<=>(const Vertex&) const = default;
};

// Undirected edge with endpoints stored in canonical order (u < v).
// Build through make_edge so the invariant holds.
struct Edge {
    Vertex u;
    Vertex v;
    auto operator<=>(const Edge&) const = default;
};

// Canonical representation of {x, y}; rejects loops.
Edge make_edge(Vertex x, Vertex y);

enum class EdgeClass { Horizontal, Vertical, DiagonalUphill, DiagonalDownhill };

// Total and exclusive; uphill iff the row and column deltas have opposite
// signs (the edge climbs from bottom-left to top-right).
EdgeClass classify_edge(const Edge& e);
bool is_diagonal(const Edge& e);

// Simple graph on the full rows x cols grid. Isolated vertices are implicit:
// the vertex set is always all rows*cols grid points. Edges are kept sorted
// and duplicate-free; construct through new_graph so the invariants hold.
struct GridLabelledGraph {
    int rows = 0;
    int cols = 0;
    std::vector<Edge> edges;

    auto operator<=>(const GridLabelledGraph&) const = default;
};

// Validates bounds, canonicalizes endpoint order, sorts and deduplicates
// (set semantics). Throws bounds_error / loop_edge_error.
GridLabelledGraph new_graph(int rows, int cols, std::vector<Edge> edges);

bool has_edge(const GridLabelledGraph& g, const Edge& e);

// Flat index of a vertex, (row-1)*cols + (col-1); matches the tensor-product
// basis order used by the linalg module.
inline int vertex_index(const Vertex& v, int cols) {
    return (v.row - 1) * cols + (v.col - 1);
}

// Image of {(i,j),(k,l)} under the partial transpose, {(k,j),(i,l)}.
// Horizontal and vertical edges are fixed points.
Edge partial_transpose_edge(const Edge& e);

struct PartialTransposeResult {
    GridLabelledGraph graph;
    // Set when two distinct input edges collapsed onto one image. The map is
    // injective on single edges, so this cannot actually happen; the flag is
    // kept so a collision would surface instead of silently vanishing.
    bool merged = false;
};

// Applies partial_transpose_edge to every edge; involution when no merge
// occurred. Degree bookkeeping elsewhere uses the pre-merge image multiset.
PartialTransposeResult partial_transpose(const GridLabelledGraph& g);

// Per-vertex degree, indexed by vertex_index. Sum = 2 * edge count.
std::vector<int> degree_vector(const GridLabelledGraph& g);

// Unique split into the horizontal-, vertical- and diagonal-edge subgraphs.
struct HvdParts {
    GridLabelledGraph horizontal;
    GridLabelledGraph vertical;
    GridLabelledGraph diagonal;
};
HvdParts hvd_decomposition(const GridLabelledGraph& g);

enum class Axis { Row, Column };

// True iff every diagonal edge connects adjacent rows (Axis::Row) or
// adjacent columns (Axis::Column). Horizontal/vertical edges are ignored;
// vacuously true without diagonal edges.
bool is_stratified(const GridLabelledGraph& g, Axis axis);

// Splits the diagonal part into strata: for Axis::Row, part i (1 <= i < rows)
// holds the diagonal edges between rows i and i+1. Parts keep the original
// grid dimensions. Throws not_stratified when some diagonal edge spans
// non-adjacent rows (resp. columns).
std::vector<GridLabelledGraph> strata_decomposition(const GridLabelledGraph& g, Axis axis);

// True iff every diagonal edge's partial-transpose counterpart is present,
// so the diagonal part splits into counterpart pairs. Vacuously true without
// diagonal edges.
bool is_pair_symmetric(const GridLabelledGraph& g);

// The images of g under the dihedral group acting on the grid (identity,
// three rotations, two axis flips, transpose, anti-transpose). Rotations by
// 90/270 degrees and the transposes swap the grid dimensions. Duplicates are
// removed, keeping first occurrence, so the list may hold fewer than 8.
std::vector<GridLabelledGraph> dihedral_images(const GridLabelledGraph& g);

struct UnionResult {
    GridLabelledGraph graph;
    bool overlapped = false;  // the inputs shared at least one edge
};

// Edge-set union / intersection. Throws dimension_mismatch when the grids
// differ. Union merges duplicates and reports the overlap instead of failing.
UnionResult graph_union(const GridLabelledGraph& g, const GridLabelledGraph& h);
GridLabelledGraph graph_intersection(const GridLabelledGraph& g, const GridLabelledGraph& h);

// Deletes every all-isolated row and column, re-indexing the rest in order.
// The empty graph compacts to a 1x1 empty graph by convention.
GridLabelledGraph compact(const GridLabelledGraph& g);

// Canonical interchange format: {"rows": a, "cols": b, "edges": [[[i,j],[k,l]], ...]},
// 1-indexed, edges sorted on output. The parser accepts unordered input.
std::string graph_to_json(const GridLabelledGraph& g);
GridLabelledGraph graph_from_json(const std::string& text);

// Edge universes for enumeration, in canonical sorted order.
std::vector<Edge> all_edges(int rows, int cols);
std::vector<Edge> all_diagonal_edges(int rows, int cols);

}  // namespace gridlab
