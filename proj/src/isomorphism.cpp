#include "gridlab/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

namespace gridlab {

namespace {

void check_permutation(const std::vector<int>& perm, int n, const char* which) {
    if (static_cast<int>(perm.size()) != n)
        throw dimension_mismatch(std::string(which) + " permutation has size " +
                                 std::to_string(perm.size()) + ", grid needs " +
                                 std::to_string(n));
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int x : perm) {
        if (x < 1 || x > n || seen[static_cast<size_t>(x)])
            throw bounds_error(std::string(which) + " permutation is not a bijection of 1.." +
                               std::to_string(n));
        seen[static_cast<size_t>(x)] = 1;
    }
}

// Degrees of the vertices in one row (resp. column), sorted; a local
// isomorphism can only map rows/columns with equal multisets onto each other.
std::vector<std::vector<int>> line_degree_multisets(const GridLabelledGraph& g, bool by_row) {
    int n = by_row ? g.rows : g.cols;
    int m = by_row ? g.cols : g.rows;
    std::vector<int> deg = degree_vector(g);
    std::vector<std::vector<int>> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> line(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j)
            line[static_cast<size_t>(j)] =
                by_row ? deg[static_cast<size_t>(i) * g.cols + j]
                       : deg[static_cast<size_t>(j) * g.cols + i];
        std::sort(line.begin(), line.end());
        out[static_cast<size_t>(i)] = std::move(line);
    }
    return out;
}

std::array<int, 3> class_counts(const GridLabelledGraph& g) {
    // horizontal, vertical, diagonal; the uphill/downhill split can flip
    // under row or column reversal, so only the total is invariant
    std::array<int, 3> counts{0, 0, 0};
    for (const Edge& e : g.edges) {
        switch (classify_edge(e)) {
            case EdgeClass::Horizontal: ++counts[0]; break;
            case EdgeClass::Vertical: ++counts[1]; break;
            default: ++counts[2]; break;
        }
    }
    return counts;
}

std::vector<Edge> transformed_edges(const GridLabelledGraph& g, const std::vector<int>& row_perm,
                                    const std::vector<int>& col_perm) {
    std::vector<Edge> edges;
    edges.reserve(g.edges.size());
    for (const Edge& e : g.edges)
        edges.push_back(make_edge(
            Vertex{row_perm[static_cast<size_t>(e.u.row) - 1],
                   col_perm[static_cast<size_t>(e.u.col) - 1]},
            Vertex{row_perm[static_cast<size_t>(e.v.row) - 1],
                   col_perm[static_cast<size_t>(e.v.col) - 1]}));
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Backtracks over assignments position -> image, restricted to images whose
// line invariant matches, invoking leaf() on each complete permutation.
// leaf returns true to stop the search.
bool permute_with_invariants(const std::vector<std::vector<int>>& from_inv,
                             const std::vector<std::vector<int>>& to_inv,
                             std::vector<int>& perm, std::vector<char>& used, size_t pos,
                             const std::function<bool()>& leaf) {
    size_t n = from_inv.size();
    if (pos == n) return leaf();
    for (int img = 1; img <= static_cast<int>(n); ++img) {
        if (used[static_cast<size_t>(img)]) continue;
        if (from_inv[pos] != to_inv[static_cast<size_t>(img) - 1]) continue;
        used[static_cast<size_t>(img)] = 1;
        perm[pos] = img;
        if (permute_with_invariants(from_inv, to_inv, perm, used, pos + 1, leaf)) return true;
        used[static_cast<size_t>(img)] = 0;
    }
    return false;
}

}  // namespace

GridLabelledGraph apply_local_iso(const GridLabelledGraph& g, const LocalIso& iso) {
    check_permutation(iso.row_perm, g.rows, "row");
    check_permutation(iso.col_perm, g.cols, "column");
    return GridLabelledGraph{g.rows, g.cols, transformed_edges(g, iso.row_perm, iso.col_perm)};
}

std::optional<LocalIso> local_isomorphism(const GridLabelledGraph& g,
                                          const GridLabelledGraph& h) {
    if (g.rows != h.rows || g.cols != h.cols) return std::nullopt;
    if (g.edges.size() != h.edges.size()) return std::nullopt;
    if (class_counts(g) != class_counts(h)) return std::nullopt;

    auto g_rows = line_degree_multisets(g, true);
    auto h_rows = line_degree_multisets(h, true);
    auto g_cols = line_degree_multisets(g, false);
    auto h_cols = line_degree_multisets(h, false);
    {
        auto sorted = [](std::vector<std::vector<int>> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        if (sorted(g_rows) != sorted(h_rows) || sorted(g_cols) != sorted(h_cols))
            return std::nullopt;
    }

    std::vector<int> row_perm(static_cast<size_t>(g.rows));
    std::vector<int> col_perm(static_cast<size_t>(g.cols));
    std::vector<char> row_used(static_cast<size_t>(g.rows) + 1, 0);
    std::vector<char> col_used(static_cast<size_t>(g.cols) + 1, 0);

    std::function<bool()> try_cols = [&]() {
        return transformed_edges(g, row_perm, col_perm) == h.edges;
    };
    std::function<bool()> try_rows = [&]() {
        return permute_with_invariants(g_cols, h_cols, col_perm, col_used, 0, try_cols);
    };
    if (permute_with_invariants(g_rows, h_rows, row_perm, row_used, 0, try_rows))
        return LocalIso{std::move(row_perm), std::move(col_perm)};
    return std::nullopt;
}

GridLabelledGraph canonical_form(const GridLabelledGraph& g) {
    std::vector<int> row_perm(static_cast<size_t>(g.rows));
    std::vector<int> col_perm(static_cast<size_t>(g.cols));
    std::iota(row_perm.begin(), row_perm.end(), 1);
    std::iota(col_perm.begin(), col_perm.end(), 1);

    std::vector<Edge> best = g.edges;
    bool have_best = false;
    std::vector<int> rp = row_perm;
    do {
        std::vector<int> cp = col_perm;
        do {
            std::vector<Edge> candidate = transformed_edges(g, rp, cp);
            if (!have_best || candidate < best) {
                best = std::move(candidate);
                have_best = true;
            }
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
    return GridLabelledGraph{g.rows, g.cols, std::move(best)};
}

bool second_order_iso(const GridLabelledGraph& g, const GridLabelledGraph& h) {
    GridLabelledGraph cg = compact(g);
    GridLabelledGraph ch = compact(h);
    int rows = std::max(cg.rows, ch.rows);
    int cols = std::max(cg.cols, ch.cols);
    GridLabelledGraph pg{rows, cols, cg.edges};
    GridLabelledGraph ph{rows, cols, ch.edges};
    return canonical_form(pg) == canonical_form(ph);
}

GridLabelledGraph embed_as_1xn(int n, const std::vector<std::pair<int, int>>& adjacency) {
    std::vector<Edge> edges;
    edges.reserve(adjacency.size());
    for (const auto& [u, v] : adjacency)
        edges.push_back(make_edge(Vertex{1, u}, Vertex{1, v}));
    return new_graph(1, n, std::move(edges));
}

}  // namespace gridlab
