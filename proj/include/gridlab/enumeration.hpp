#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridlab/grid_graph.hpp"

namespace gridlab {

// The four 3x3 generators: criss-cross, tally, cross-hatch, skew-mesh.
enum class BuildingBlockId { B2, B3, B4, B5 };

const char* building_block_name(BuildingBlockId id);
GridLabelledGraph building_block(BuildingBlockId id);

// Edge count of the grid's rook graph (horizontal + vertical edges):
// a*b*(a+b)/2 - a*b.
long long rook_edge_count(int rows, int cols);

// Diagonal edge count 2*C(a,2)*C(b,2); together with the rook edges this
// exhausts the C(a*b, 2) pairs.
long long diagonal_edge_count(int rows, int cols);

// Binomial coefficient that saturates instead of overflowing.
long long choose_sat(long long n, long long k);

inline constexpr long long kDefaultBudget = 100000000;  // 10^8 subsets

struct EnumerateOptions {
    bool diagonal_only = false;
    bool dedupe = false;
    bool strip_crosses = false;
    int jobs = 1;
    long long budget = kDefaultBudget;
};

// All k-edge graphs on the grid satisfying the degree criterion, in a
// deterministic order independent of the worker count. diagonal_only
// restricts the edge universe; strip_crosses removes every criss-cross pair
// (a diagonal edge together with its partial-transpose image) before
// deduplication; dedupe keeps one canonical form per local-isomorphism
// orbit, sorted. Throws budget_exceeded when C(universe, k) > budget.
std::vector<GridLabelledGraph> enumerate_dc(int rows, int cols, int k,
                                            const EnumerateOptions& opt = {});

struct CountReport {
    int rows = 0;
    int cols = 0;
    int edges = 0;
    std::optional<long long> raw_count;
    std::optional<long long> orbit_count;
    std::optional<long long> formula_value;
    bool agree = true;  // raw == formula whenever both are present
};

// D_k(a,b): graphs with k edges, all diagonal, satisfying the degree
// criterion. Brute force always; formula when one exists (k <= 2, or
// k in {3,4} on a 2-row or 2-column grid). Throws budget_exceeded.
CountReport count_dc_diagonal(int rows, int cols, int k, long long budget = kDefaultBudget);

// P_k(a,b) = C(r,k) + sum_{i=2..k} D_i(a,b) * C(r,k-i): k-edge graphs of any
// class satisfying the degree criterion. The formula value is always
// computed (D_i by formula or brute force); the raw count is enumerated
// directly only when C(total edges, k) fits the budget.
CountReport count_pk(int rows, int cols, int k, long long budget = kDefaultBudget);

std::string count_report_to_json(const CountReport& r);

struct Rational {
    long long num = 0;
    long long den = 1;
};

std::string rational_to_string(const Rational& r);  // "p/q", reduced

// Fraction of k-diagonal-edge graphs failing the degree criterion,
// 1 - D_k(a,b) / C(Q(a,b), k), as an exact reduced rational.
Rational entanglement_fraction(int rows, int cols, int k, long long budget = kDefaultBudget);

struct BlockPlacement {
    BuildingBlockId id;
    GridLabelledGraph part;  // the matched edges, on the host grid
};

// Partition of a diagonal-only (3,3) graph's edges into parts each
// second-order locally isomorphic to a dihedral image of one of the four
// blocks, or nullopt when no such partition exists. Larger blocks are tried
// first so the smallest blocks land last.
std::optional<std::vector<BlockPlacement>> building_block_decomposition(
    const GridLabelledGraph& g);

}  // namespace gridlab
