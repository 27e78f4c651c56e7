#include "gridlab/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "gridlab/contribution.hpp"
#include "gridlab/isomorphism.hpp"

namespace gridlab {

const char* building_block_name(BuildingBlockId id) {
    switch (id) {
        case BuildingBlockId::B2: return "B2";
        case BuildingBlockId::B3: return "B3";
        case BuildingBlockId::B4: return "B4";
        case BuildingBlockId::B5: break;
    }
    return "B5";
}

GridLabelledGraph building_block(BuildingBlockId id) {
    auto e = [](int r1, int c1, int r2, int c2) {
        return make_edge(Vertex{r1, c1}, Vertex{r2, c2});
    };
    switch (id) {
        case BuildingBlockId::B2:
            return new_graph(3, 3, {e(1, 1, 2, 2), e(1, 2, 2, 1)});
        case BuildingBlockId::B3:
            return new_graph(3, 3, {e(1, 1, 2, 2), e(1, 2, 2, 3), e(2, 1, 1, 3)});
        case BuildingBlockId::B4:
            return new_graph(3, 3, {e(1, 1, 2, 3), e(2, 1, 3, 3), e(1, 2, 3, 1), e(1, 3, 3, 2)});
        case BuildingBlockId::B5: break;
    }
    return new_graph(
        3, 3, {e(1, 1, 3, 3), e(1, 2, 2, 1), e(1, 3, 2, 2), e(2, 2, 3, 1), e(2, 3, 3, 2)});
}

long long rook_edge_count(int rows, int cols) {
    long long a = rows, b = cols;
    return a * b * (a + b) / 2 - a * b;
}

long long diagonal_edge_count(int rows, int cols) {
    long long a = rows, b = cols;
    return 2 * (a * (a - 1) / 2) * (b * (b - 1) / 2);
}

long long choose_sat(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    constexpr long long kMax = std::numeric_limits<long long>::max();
    // 128-bit intermediates: the partial product C(n-k+i, i) can overflow a
    // long long one step before the division even when the result fits.
    unsigned __int128 result = 1;
    for (long long i = 1; i <= k; ++i) {
        result = result * static_cast<unsigned __int128>(n - k + i) /
                 static_cast<unsigned __int128>(i);
        // partial products are monotone in i, so saturation is final
        if (result > static_cast<unsigned __int128>(kMax)) return kMax;
    }
    return static_cast<long long>(result);
}

namespace {

// DFS over k-subsets of the edge universe in lexicographic order, keeping the
// running contribution matrix of the chosen diagonal edges. A single further
// edge changes any one row or column L1 weight by at most 2 and the total by
// at most 4, which gives the pruning bounds.
struct SubsetScan {
    int rows = 0;
    int cols = 0;
    const std::vector<Edge>* universe = nullptr;
    int k = 0;

    std::vector<int> contribution;
    std::vector<int> row_l1;
    std::vector<int> col_l1;
    int total_l1 = 0;
    std::vector<Edge> chosen;

    std::function<void(const std::vector<Edge>&)> emit;

    void init() {
        contribution.assign(static_cast<size_t>(rows) * cols, 0);
        row_l1.assign(static_cast<size_t>(rows), 0);
        col_l1.assign(static_cast<size_t>(cols), 0);
        total_l1 = 0;
        chosen.clear();
    }

    void bump(int r, int c, int delta) {
        int& cell = contribution[static_cast<size_t>(r) * cols + c];
        int before = std::abs(cell);
        cell += delta;
        int after = std::abs(cell);
        row_l1[r] += after - before;
        col_l1[c] += after - before;
        total_l1 += after - before;
    }

    void toggle(const Edge& e, int sign) {
        if (!is_diagonal(e)) return;
        bump(e.u.row - 1, e.u.col - 1, sign);
        bump(e.v.row - 1, e.v.col - 1, sign);
        bump(e.u.row - 1, e.v.col - 1, -sign);
        bump(e.v.row - 1, e.u.col - 1, -sign);
    }

    bool feasible(int remaining) const {
        if (total_l1 > 4 * remaining) return false;
        for (int v : row_l1)
            if (v > 2 * remaining) return false;
        for (int v : col_l1)
            if (v > 2 * remaining) return false;
        return true;
    }

    void scan(size_t idx) {
        int remaining = k - static_cast<int>(chosen.size());
        if (remaining == 0) {
            if (total_l1 == 0) emit(chosen);
            return;
        }
        if (universe->size() - idx < static_cast<size_t>(remaining)) return;
        if (!feasible(remaining)) return;
        toggle((*universe)[idx], +1);
        chosen.push_back((*universe)[idx]);
        scan(idx + 1);
        chosen.pop_back();
        toggle((*universe)[idx], -1);
        scan(idx + 1);
    }
};

std::vector<Edge> universe_of(int rows, int cols, bool diagonal_only) {
    return diagonal_only ? all_diagonal_edges(rows, cols) : all_edges(rows, cols);
}

void check_budget(size_t universe_size, int k, long long budget) {
    if (choose_sat(static_cast<long long>(universe_size), k) > budget)
        throw budget_exceeded("subset enumeration over " + std::to_string(universe_size) +
                              " edges choose " + std::to_string(k) + " exceeds the budget of " +
                              std::to_string(budget) + " subsets");
}

// Every DC k-subset of the universe, in lexicographic order. jobs > 1 splits
// the work by the index of the smallest chosen edge; per-task output is
// deterministic and tasks are concatenated in order, so the result does not
// depend on the worker count.
std::vector<std::vector<Edge>> dc_subsets(int rows, int cols, int k,
                                          const std::vector<Edge>& universe, int jobs) {
    std::vector<std::vector<Edge>> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    if (universe.size() < static_cast<size_t>(k)) return out;

    size_t tasks = universe.size() - static_cast<size_t>(k) + 1;
    std::vector<std::vector<std::vector<Edge>>> per_task(tasks);
    auto run_task = [&](size_t first) {
        SubsetScan scan;
        scan.rows = rows;
        scan.cols = cols;
        scan.universe = &universe;
        scan.k = k;
        scan.init();
        scan.emit = [&per_task, first](const std::vector<Edge>& edges) {
            per_task[first].push_back(edges);
        };
        scan.toggle(universe[first], +1);
        scan.chosen.push_back(universe[first]);
        scan.scan(first + 1);
    };

    int workers = std::max(1, jobs);
    if (workers == 1) {
        for (size_t t = 0; t < tasks; ++t) run_task(t);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    size_t t = next.fetch_add(1);
                    if (t >= tasks) break;
                    run_task(t);
                }
            });
        for (std::thread& th : pool) th.join();
    }
    for (std::vector<std::vector<Edge>>& chunk : per_task)
        for (std::vector<Edge>& edges : chunk) out.push_back(std::move(edges));
    return out;
}

// Remove every criss-cross: a diagonal edge whose partial-transpose image is
// also present. Such edges pair up disjointly, so one pass removes them all.
std::vector<Edge> strip_cross_pairs(const std::vector<Edge>& edges) {
    std::set<Edge> present(edges.begin(), edges.end());
    std::vector<Edge> kept;
    for (const Edge& e : edges) {
        if (is_diagonal(e) && present.count(partial_transpose_edge(e))) continue;
        kept.push_back(e);
    }
    return kept;
}

}  // namespace

std::vector<GridLabelledGraph> enumerate_dc(int rows, int cols, int k,
                                            const EnumerateOptions& opt) {
    std::vector<Edge> universe = universe_of(rows, cols, opt.diagonal_only);
    check_budget(universe.size(), k, opt.budget);
    std::vector<std::vector<Edge>> subsets = dc_subsets(rows, cols, k, universe, opt.jobs);

    std::vector<GridLabelledGraph> graphs;
    graphs.reserve(subsets.size());
    for (std::vector<Edge>& edges : subsets) {
        if (opt.strip_crosses) edges = strip_cross_pairs(edges);
        graphs.push_back(new_graph(rows, cols, std::move(edges)));
    }
    if (opt.dedupe) {
        std::set<GridLabelledGraph> forms;
        for (const GridLabelledGraph& g : graphs) forms.insert(canonical_form(g));
        graphs.assign(forms.begin(), forms.end());
    }
    return graphs;
}

namespace {

std::optional<long long> dc_diagonal_formula(int rows, int cols, int k) {
    long long a = rows, b = cols;
    if (k == 0) return 1;  // the empty graph balances trivially
    if (k == 1) return 0;  // a lone diagonal edge never does
    if (k == 2) return choose_sat(a, 2) * choose_sat(b, 2);
    if (rows != 2 && cols != 2) return std::nullopt;
    long long n = rows == 2 ? b : a;
    if (k == 3) return 2 * choose_sat(n, 3);
    if (k == 4) return 3 * choose_sat(n, 3) + 9 * choose_sat(n, 4);
    return std::nullopt;
}

long long orbit_count_of(int rows, int cols, const std::vector<std::vector<Edge>>& subsets) {
    std::set<GridLabelledGraph> forms;
    for (const std::vector<Edge>& edges : subsets)
        forms.insert(canonical_form(GridLabelledGraph{rows, cols, edges}));
    return static_cast<long long>(forms.size());
}

}  // namespace

CountReport count_dc_diagonal(int rows, int cols, int k, long long budget) {
    std::vector<Edge> universe = all_diagonal_edges(rows, cols);
    check_budget(universe.size(), k, budget);
    std::vector<std::vector<Edge>> subsets = dc_subsets(rows, cols, k, universe, 1);

    CountReport r;
    r.rows = rows;
    r.cols = cols;
    r.edges = k;
    r.raw_count = static_cast<long long>(subsets.size());
    r.orbit_count = orbit_count_of(rows, cols, subsets);
    r.formula_value = dc_diagonal_formula(rows, cols, k);
    r.agree = !r.formula_value || *r.raw_count == *r.formula_value;
    return r;
}

CountReport count_pk(int rows, int cols, int k, long long budget) {
    long long r_edges = rook_edge_count(rows, cols);
    long long value = choose_sat(r_edges, k);
    for (int i = 2; i <= k; ++i) {
        long long d_i;
        if (std::optional<long long> f = dc_diagonal_formula(rows, cols, i))
            d_i = *f;
        else
            d_i = *count_dc_diagonal(rows, cols, i, budget).raw_count;
        value += d_i * choose_sat(r_edges, k - i);
    }

    CountReport report;
    report.rows = rows;
    report.cols = cols;
    report.edges = k;
    report.formula_value = value;

    std::vector<Edge> universe = all_edges(rows, cols);
    if (choose_sat(static_cast<long long>(universe.size()), k) <= budget) {
        std::vector<std::vector<Edge>> subsets = dc_subsets(rows, cols, k, universe, 1);
        report.raw_count = static_cast<long long>(subsets.size());
        report.orbit_count = orbit_count_of(rows, cols, subsets);
    }
    report.agree = !report.raw_count || *report.raw_count == *report.formula_value;
    return report;
}

std::string count_report_to_json(const CountReport& r) {
    nlohmann::ordered_json j;
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["edges"] = r.edges;
    if (r.raw_count)
        j["rawCount"] = *r.raw_count;
    else
        j["rawCount"] = nullptr;
    if (r.orbit_count)
        j["orbitCount"] = *r.orbit_count;
    else
        j["orbitCount"] = nullptr;
    if (r.formula_value)
        j["formulaValue"] = *r.formula_value;
    else
        j["formulaValue"] = nullptr;
    j["agree"] = r.agree;
    return j.dump();
}

std::string rational_to_string(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational entanglement_fraction(int rows, int cols, int k, long long budget) {
    long long total = choose_sat(diagonal_edge_count(rows, cols), k);
    if (total == std::numeric_limits<long long>::max())
        throw budget_exceeded("diagonal subset count overflows exact arithmetic");
    long long dc = *count_dc_diagonal(rows, cols, k, budget).raw_count;
    if (total == 0) return {0, 1};  // no k-edge diagonal graphs at all
    long long num = total - dc;
    long long den = total;
    long long g = std::gcd(num, den);
    if (g > 0) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

namespace {

// Canonical form -> block id, over all dihedral images of the four blocks.
// On a fixed square grid, second-order local isomorphism coincides with
// canonical-form equality, so lookup replaces a backtracking match.
const std::map<GridLabelledGraph, BuildingBlockId>& block_signatures() {
    static const std::map<GridLabelledGraph, BuildingBlockId> signatures = [] {
        std::map<GridLabelledGraph, BuildingBlockId> m;
        for (BuildingBlockId id : {BuildingBlockId::B2, BuildingBlockId::B3, BuildingBlockId::B4,
                                   BuildingBlockId::B5})
            for (const GridLabelledGraph& image : dihedral_images(building_block(id)))
                m.emplace(canonical_form(image), id);
        return m;
    }();
    return signatures;
}

}  // namespace

std::optional<std::vector<BlockPlacement>> building_block_decomposition(
    const GridLabelledGraph& g) {
    if (g.rows != 3 || g.cols != 3) return std::nullopt;
    for (const Edge& e : g.edges)
        if (!is_diagonal(e)) return std::nullopt;

    const std::map<GridLabelledGraph, BuildingBlockId>& signatures = block_signatures();
    const std::vector<Edge>& edges = g.edges;
    size_t m = edges.size();
    std::vector<BlockPlacement> placements;
    std::unordered_set<std::uint32_t> dead;

    std::function<bool(std::uint32_t)> dfs = [&](std::uint32_t remaining) -> bool {
        if (remaining == 0) return true;
        if (dead.count(remaining)) return false;
        std::uint32_t low = remaining & (~remaining + 1);
        std::uint32_t rest = remaining ^ low;
        std::vector<std::uint32_t> subs;
        std::uint32_t s = rest;
        while (true) {
            int size = std::popcount(s) + 1;
            if (size >= 2 && size <= 5) subs.push_back(s);
            if (s == 0) break;
            s = (s - 1) & rest;
        }
        // biggest parts first, so B5/B4 are attempted before B3/B2
        std::stable_sort(subs.begin(), subs.end(), [](std::uint32_t x, std::uint32_t y) {
            return std::popcount(x) > std::popcount(y);
        });
        for (std::uint32_t sub : subs) {
            std::uint32_t mask = sub | low;
            std::vector<Edge> part_edges;
            for (size_t i = 0; i < m; ++i)
                if (mask >> i & 1) part_edges.push_back(edges[i]);
            GridLabelledGraph part{g.rows, g.cols, part_edges};
            auto it = signatures.find(canonical_form(part));
            if (it == signatures.end()) continue;
            placements.push_back({it->second, std::move(part)});
            if (dfs(remaining ^ mask)) return true;
            placements.pop_back();
        }
        dead.insert(remaining);
        return false;
    };

    std::uint32_t all = m == 0 ? 0 : (std::uint32_t{1} << m) - 1;
    if (!dfs(all)) return std::nullopt;
    return placements;
}

}  // namespace gridlab
