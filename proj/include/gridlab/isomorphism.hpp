#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gridlab/grid_graph.hpp"

namespace gridlab {

// Row and column relabelling of the grid. row_perm[i-1] is the image of
// row i (1-based values); likewise col_perm for columns.
struct LocalIso {
    std::vector<int> row_perm;
    std::vector<int> col_perm;
};

// Relabels every edge endpoint through the permutations. Throws
// dimension_mismatch when the permutation sizes do not match the grid,
// bounds_error when either is not a bijection of its range.
GridLabelledGraph apply_local_iso(const GridLabelledGraph& g, const LocalIso& iso);

// Searches for (row_perm, col_perm) with apply_local_iso(g, iso) == h.
// Different grid dimensions give nullopt immediately. Candidates are pruned
// by edge-class counts and per-row/per-column degree multisets before the
// permutation backtracking; the witness returned is the lexicographically
// first one.
std::optional<LocalIso> local_isomorphism(const GridLabelledGraph& g,
                                          const GridLabelledGraph& h);

// Lexicographically least edge list over all row/column permutations.
// Two graphs on equal dimensions are locally isomorphic iff their canonical
// forms are equal. Intended for desk-scale grids (cost grows as a! * b!).
GridLabelledGraph canonical_form(const GridLabelledGraph& g);

// Local isomorphism up to padding: compacts both graphs, zero-pads them to
// their common compact dimensions (appended empty rows and columns can be
// permuted anywhere), and compares canonical forms.
bool second_order_iso(const GridLabelledGraph& g, const GridLabelledGraph& h);

// Embeds a simple graph on n labelled vertices as a grid-labelled graph of
// type (1, n): vertex v at (1, v). Local isomorphisms of the images are
// exactly the graph isomorphisms of the inputs.
GridLabelledGraph embed_as_1xn(int n, const std::vector<std::pair<int, int>>& adjacency);

}  // namespace gridlab
