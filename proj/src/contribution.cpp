#include "gridlab/contribution.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "gridlab/criteria.hpp"

namespace gridlab {

namespace {

void check_cell(const Vertex& v, int rows, int cols) {
    if (v.row < 1 || v.row > rows || v.col < 1 || v.col > cols)
        throw bounds_error("edge endpoint (" + std::to_string(v.row) + "," +
                           std::to_string(v.col) + ") outside " + std::to_string(rows) + "x" +
                           std::to_string(cols) + " grid");
}

}  // namespace

ContributionMatrix edge_contribution(const Edge& e, int rows, int cols) {
    if (!is_diagonal(e))
        throw non_diagonal_edge("contribution is defined for diagonal edges only");
    check_cell(e.u, rows, cols);
    check_cell(e.v, rows, cols);
    ContributionMatrix m(rows, cols);
    m.at(e.u.row - 1, e.u.col - 1) += 1;
    m.at(e.v.row - 1, e.v.col - 1) += 1;
    m.at(e.u.row - 1, e.v.col - 1) -= 1;
    m.at(e.v.row - 1, e.u.col - 1) -= 1;
    return m;
}

ContributionMatrix graph_contribution(const GridLabelledGraph& g) {
    ContributionMatrix sum(g.rows, g.cols);
    for (const Edge& e : g.edges) {
        if (!is_diagonal(e)) continue;
        sum.at(e.u.row - 1, e.u.col - 1) += 1;
        sum.at(e.v.row - 1, e.v.col - 1) += 1;
        sum.at(e.u.row - 1, e.v.col - 1) -= 1;
        sum.at(e.v.row - 1, e.u.col - 1) -= 1;
    }
    return sum;
}

ContributionTable table_of_graph(const GridLabelledGraph& g) {
    ContributionTable t(g.rows, g.cols);
    for (const Edge& e : g.edges) {
        if (!is_diagonal(e)) continue;
        t.at(e.u.row - 1, e.u.col - 1).down += 1;
        t.at(e.v.row - 1, e.v.col - 1).down += 1;
        t.at(e.u.row - 1, e.v.col - 1).up += 1;
        t.at(e.v.row - 1, e.u.col - 1).up += 1;
    }
    return t;
}

bool dc_from_table(const ContributionTable& t) {
    for (const TableCell& c : t.cells)
        if (c.up != c.down) return false;
    return true;
}

namespace {

// Backtracking game solver shared by clearability and table_validity.
// Branches only on moves whose top-left corner is the first nonempty cell in
// row-major order: every clearing can be replayed in any order (removals
// never enable a move), and some move of it must use that cell, necessarily
// as its top-left corner (all cells before it are empty).
struct GameSolver {
    int rows = 0;
    int cols = 0;
    std::vector<TableCell> board;
    bool distinct_moves = false;

    std::vector<GameMove> path;
    std::set<GameMove> used;
    std::unordered_set<std::string> dead;

    TableCell& at(int r, int c) { return board[static_cast<size_t>(r) * cols + c]; }

    bool feasible() const {
        long long total = 0;
        for (const TableCell& c : board) total += c.up + c.down;
        if (total % 4 != 0) return false;
        for (int r = 0; r < rows; ++r) {
            int up = 0, down = 0, nonempty = 0;
            for (int c = 0; c < cols; ++c) {
                const TableCell& cell = board[static_cast<size_t>(r) * cols + c];
                up += cell.up;
                down += cell.down;
                nonempty += (cell.up + cell.down) > 0;
            }
            if (up != down) return false;
            if (up + down > 0 && nonempty < 2) return false;
        }
        for (int c = 0; c < cols; ++c) {
            int up = 0, down = 0, nonempty = 0;
            for (int r = 0; r < rows; ++r) {
                const TableCell& cell = board[static_cast<size_t>(r) * cols + c];
                up += cell.up;
                down += cell.down;
                nonempty += (cell.up + cell.down) > 0;
            }
            if (up != down) return false;
            if (up + down > 0 && nonempty < 2) return false;
        }
        return true;
    }

    std::string board_key() const {
        std::string key;
        key.reserve(board.size() * 2);
        for (const TableCell& c : board) {
            key.push_back(static_cast<char>(c.up));
            key.push_back(static_cast<char>(c.down));
        }
        return key;
    }

    bool legal(const GameMove& mv) {
        int r1 = mv.r1 - 1, c1 = mv.c1 - 1, r2 = mv.r2 - 1, c2 = mv.c2 - 1;
        if (mv.kind == MoveKind::Cross)
            return at(r1, c1).down >= 1 && at(r1, c2).up >= 1 && at(r2, c2).down >= 1 &&
                   at(r2, c1).up >= 1;
        return at(r1, c1).up >= 1 && at(r1, c2).down >= 1 && at(r2, c2).up >= 1 &&
               at(r2, c1).down >= 1;
    }

    void apply(const GameMove& mv, int sign) {
        int r1 = mv.r1 - 1, c1 = mv.c1 - 1, r2 = mv.r2 - 1, c2 = mv.c2 - 1;
        if (mv.kind == MoveKind::Cross) {
            at(r1, c1).down -= sign;
            at(r1, c2).up -= sign;
            at(r2, c2).down -= sign;
            at(r2, c1).up -= sign;
        } else {
            at(r1, c1).up -= sign;
            at(r1, c2).down -= sign;
            at(r2, c2).up -= sign;
            at(r2, c1).down -= sign;
        }
    }

    int emptied_corners(const GameMove& mv) {
        int r1 = mv.r1 - 1, c1 = mv.c1 - 1, r2 = mv.r2 - 1, c2 = mv.c2 - 1;
        int n = 0;
        n += (at(r1, c1).up + at(r1, c1).down) == 1;
        n += (at(r1, c2).up + at(r1, c2).down) == 1;
        n += (at(r2, c1).up + at(r2, c1).down) == 1;
        n += (at(r2, c2).up + at(r2, c2).down) == 1;
        return n;
    }

    bool solve() {
        int fr = -1, fc = -1;
        for (int r = 0; r < rows && fr < 0; ++r)
            for (int c = 0; c < cols; ++c)
                if (at(r, c).up + at(r, c).down > 0) {
                    fr = r;
                    fc = c;
                    break;
                }
        if (fr < 0) return true;
        if (!feasible()) return false;
        if (!distinct_moves && dead.count(board_key())) return false;

        struct Candidate {
            GameMove mv;
            int area;
            int empties;
        };
        std::vector<Candidate> cands;
        for (int r2 = fr + 1; r2 < rows; ++r2)
            for (int c2 = fc + 1; c2 < cols; ++c2)
                for (MoveKind kind : {MoveKind::Cross, MoveKind::Lasso}) {
                    GameMove mv{kind, fr + 1, fc + 1, r2 + 1, c2 + 1};
                    if (!legal(mv)) continue;
                    if (distinct_moves && used.count(mv)) continue;
                    cands.push_back({mv, (r2 - fr + 1) * (c2 - fc + 1), emptied_corners(mv)});
                }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            if (a.area != b.area) return a.area < b.area;
            if (a.empties != b.empties) return a.empties > b.empties;
            return a.mv < b.mv;
        });
        for (const Candidate& cand : cands) {
            apply(cand.mv, +1);
            path.push_back(cand.mv);
            if (distinct_moves) used.insert(cand.mv);
            if (solve()) return true;
            if (distinct_moves) used.erase(cand.mv);
            path.pop_back();
            apply(cand.mv, -1);
        }
        if (!distinct_moves) dead.insert(board_key());
        return false;
    }
};

}  // namespace

std::optional<std::vector<GameMove>> clearability(const ContributionTable& t) {
    GameSolver solver;
    solver.rows = t.rows;
    solver.cols = t.cols;
    solver.board = t.cells;
    solver.distinct_moves = false;
    if (solver.solve()) return solver.path;
    return std::nullopt;
}

std::optional<GridLabelledGraph> table_validity(const ContributionTable& t) {
    GameSolver solver;
    solver.rows = t.rows;
    solver.cols = t.cols;
    solver.board = t.cells;
    solver.distinct_moves = true;
    if (!solver.solve()) return std::nullopt;
    std::vector<Edge> edges;
    edges.reserve(solver.path.size());
    for (const GameMove& mv : solver.path) {
        if (mv.kind == MoveKind::Cross)
            edges.push_back(make_edge(Vertex{mv.r1, mv.c1}, Vertex{mv.r2, mv.c2}));
        else
            edges.push_back(make_edge(Vertex{mv.r1, mv.c2}, Vertex{mv.r2, mv.c1}));
    }
    GridLabelledGraph witness = new_graph(t.rows, t.cols, std::move(edges));
    if (table_of_graph(witness) != t)
        throw error("internal: move translation does not reproduce the table");
    return witness;
}

std::string table_to_text(const ContributionTable& t) {
    std::string out;
    for (int r = 0; r < t.rows; ++r) {
        for (int c = 0; c < t.cols; ++c) {
            if (c) out += ' ';
            out += std::to_string(t.at(r, c).up) + "," + std::to_string(t.at(r, c).down);
        }
        out += '\n';
    }
    return out;
}

ContributionTable table_from_text(const std::string& text) {
    std::vector<std::vector<TableCell>> parsed;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream tokens(line);
        std::vector<TableCell> row;
        std::string tok;
        while (tokens >> tok) {
            int up = 0, down = 0;
            char trailing = 0;
            if (std::sscanf(tok.c_str(), "%d,%d%c", &up, &down, &trailing) != 2 || up < 0 ||
                down < 0)
                throw parse_error("bad table cell '" + tok + "' (expected u,d counts)");
            row.push_back(TableCell{up, down});
        }
        if (row.empty()) continue;  // tolerate blank lines
        parsed.push_back(std::move(row));
    }
    if (parsed.empty()) throw parse_error("table text has no rows");
    size_t cols = parsed.front().size();
    for (const auto& row : parsed)
        if (row.size() != cols) throw parse_error("table rows have differing cell counts");
    ContributionTable t(static_cast<int>(parsed.size()), static_cast<int>(cols));
    for (size_t r = 0; r < parsed.size(); ++r)
        for (size_t c = 0; c < cols; ++c) t.at(static_cast<int>(r), static_cast<int>(c)) = parsed[r][c];
    return t;
}

std::optional<GridLabelledGraph> subgraph_dc(const GridLabelledGraph& g) {
    std::vector<Edge> diag;
    for (const Edge& e : g.edges)
        if (is_diagonal(e)) diag.push_back(e);
    if (diag.empty()) return std::nullopt;

    ContributionMatrix sum(g.rows, g.cols);
    std::vector<Edge> chosen;
    auto add = [&](const Edge& e, int sign) {
        sum.at(e.u.row - 1, e.u.col - 1) += sign;
        sum.at(e.v.row - 1, e.v.col - 1) += sign;
        sum.at(e.u.row - 1, e.v.col - 1) -= sign;
        sum.at(e.v.row - 1, e.u.col - 1) -= sign;
    };
    // one remaining edge can cancel at most 2 units of any single row or column
    auto lines_feasible = [&](size_t remaining) {
        for (int r = 0; r < g.rows; ++r) {
            long long l1 = 0;
            for (int c = 0; c < g.cols; ++c) l1 += std::abs(sum.at(r, c));
            if (l1 > 2 * static_cast<long long>(remaining)) return false;
        }
        for (int c = 0; c < g.cols; ++c) {
            long long l1 = 0;
            for (int r = 0; r < g.rows; ++r) l1 += std::abs(sum.at(r, c));
            if (l1 > 2 * static_cast<long long>(remaining)) return false;
        }
        return true;
    };
    std::function<bool(size_t)> dfs = [&](size_t idx) -> bool {
        if (idx == diag.size()) return !chosen.empty() && sum.is_zero();
        if (!lines_feasible(diag.size() - idx)) return false;
        add(diag[idx], +1);
        chosen.push_back(diag[idx]);
        if (dfs(idx + 1)) return true;
        chosen.pop_back();
        add(diag[idx], -1);
        return dfs(idx + 1);
    };
    if (dfs(0)) return new_graph(g.rows, g.cols, chosen);
    return std::nullopt;
}

std::optional<GridLabelledGraph> subset_ppt_edge_states(const std::vector<EdgeState>& states) {
    if (states.empty()) return std::nullopt;
    int rows = states.front().rows;
    int cols = states.front().cols;
    std::vector<Edge> edges;
    edges.reserve(states.size());
    for (const EdgeState& s : states) {
        if (s.rows != rows || s.cols != cols)
            throw dimension_mismatch("edge states declared on mixed grid dimensions");
        edges.push_back(s.edge);
    }
    auto sub = subgraph_dc(new_graph(rows, cols, std::move(edges)));
    if (!sub) return std::nullopt;
    if (!ppt_test(*sub).passes)
        throw error("internal: degree-criterion subset failed the PPT eigenvalue re-check");
    return sub;
}

}  // namespace gridlab
