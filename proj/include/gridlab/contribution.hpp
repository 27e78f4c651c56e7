#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "gridlab/grid_graph.hpp"

namespace gridlab {

// Integer rows x cols matrix recording pre/post-transpose degree deltas.
// Any sum of edge contributions has every row and column summing to zero.
struct ContributionMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> cells;

    ContributionMatrix() = default;
    ContributionMatrix(int r, int c)
        : rows(r), cols(c), cells(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}

    int& at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }
    int at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
    bool is_zero() const {
        for (int x : cells)
            if (x != 0) return false;
        return true;
    }
    bool operator==(const ContributionMatrix&) const = default;
};

// Contribution of one diagonal edge {(i,j),(k,l)}: +1 at (i,j) and (k,l),
// -1 at (i,l) and (k,j). Throws non_diagonal_edge otherwise.
ContributionMatrix edge_contribution(const Edge& e, int rows, int cols);

// Entrywise sum over the diagonal edges (horizontal/vertical edges contribute
// nothing by definition). Zero matrix iff the graph meets the degree criterion.
ContributionMatrix graph_contribution(const GridLabelledGraph& g);

// One cell of a dash table: up-dash ('/') and down-dash ('\') counts.
struct TableCell {
    int up = 0;
    int down = 0;
    bool operator==(const TableCell&) const = default;
};

// Dash table (the game board). A k-edge graph's table holds 4k dashes.
struct ContributionTable {
    int rows = 0;
    int cols = 0;
    std::vector<TableCell> cells;

    ContributionTable() = default;
    ContributionTable(int r, int c)
        : rows(r), cols(c), cells(static_cast<size_t>(r) * static_cast<size_t>(c)) {}

    TableCell& at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }
    const TableCell& at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
    bool operator==(const ContributionTable&) const = default;
};

// Per diagonal edge: down dashes at its two endpoints, up dashes at the two
// partial-transpose image cells. Counts accumulate; unlike the contribution
// matrix, the table keeps multiplicities instead of cancelling.
ContributionTable table_of_graph(const GridLabelledGraph& g);

// True iff every cell has up == down (no unmatched dashes), which is the
// degree criterion read off the table.
bool dc_from_table(const ContributionTable& t);

enum class MoveKind { Cross, Lasso };

// One game move on the rectangle (r1,c1)-(r2,c2), 1-based, r1 < r2, c1 < c2.
// Cross removes down/up/down/up at TL/TR/BR/BL; Lasso removes up/down/up/down.
struct GameMove {
    MoveKind kind = MoveKind::Cross;
    int r1 = 0, c1 = 0, r2 = 0, c2 = 0;
    auto operator<=>(const GameMove&) const = default;
};

// Searches for a move sequence clearing the board (moves may repeat).
// Returns the sequence, or nullopt when the board is unclearable. Exact
// backtracking; prunes states where some row/column has unbalanced dash
// directions or a lone nonempty cell.
std::optional<std::vector<GameMove>> clearability(const ContributionTable& t);

// Searches for a grid-labelled graph whose table equals t, by finding a
// clearing made of pairwise-distinct moves and translating each Cross to a
// downhill edge, each Lasso to an uphill edge. Repeated moves are excluded
// because they would need a repeated edge, which simple graphs cannot have.
std::optional<GridLabelledGraph> table_validity(const ContributionTable& t);

// Text format: one line per row, cells separated by spaces, each cell
// "u,d" (up-count comma down-count), "0,0" for empty.
std::string table_to_text(const ContributionTable& t);
ContributionTable table_from_text(const std::string& text);

// Searches for a NONEMPTY subset of g's diagonal edges whose contributions
// sum to zero, i.e. a subgraph satisfying the degree criterion. The empty
// subset is excluded by decision; horizontal/vertical edges never take part.
std::optional<GridLabelledGraph> subgraph_dc(const GridLabelledGraph& g);

// One edge state: an edge on an explicitly given grid.
struct EdgeState {
    int rows = 0;
    int cols = 0;
    Edge edge;
};

// PPT-positive subset search over edge states. All states must share one
// grid (throws dimension_mismatch otherwise). Delegates to subgraph_dc --
// for Laplacian states PPT-positivity and the degree criterion coincide --
// then re-verifies the winner with the floating-point PPT eigenvalue test.
std::optional<GridLabelledGraph> subset_ppt_edge_states(const std::vector<EdgeState>& states);

}  // namespace gridlab
