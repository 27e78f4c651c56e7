#include "gridlab/criteria.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "gridlab/enumeration.hpp"
#include "gridlab/isomorphism.hpp"

namespace gridlab {

bool degree_criterion(const GridLabelledGraph& g) {
    std::vector<int> before(static_cast<size_t>(g.rows) * g.cols, 0);
    std::vector<int> after(before.size(), 0);
    for (const Edge& e : g.edges) {
        ++before[vertex_index(e.u, g.cols)];
        ++before[vertex_index(e.v, g.cols)];
        Edge image = partial_transpose_edge(e);
        ++after[vertex_index(image.u, g.cols)];
        ++after[vertex_index(image.v, g.cols)];
    }
    return before == after;
}

PptResult ppt_test(const GridLabelledGraph& g) {
    DensityMatrix rho = density(g);
    std::vector<double> eigs = sym_eigenvalues(partial_transpose_matrix(rho));
    return {eigs.front() >= -1e-9, eigs.front()};
}

DenseMatrix degree_structure_matrix(const GridLabelledGraph& g) {
    std::vector<int> deg = degree_vector(g);
    DenseMatrix m(g.rows, g.rows);
    for (int i = 0; i < g.rows; ++i)
        for (int k = 0; k < g.rows; ++k) {
            long long sum = 0;
            for (int p = 0; p < g.cols; ++p)
                sum += static_cast<long long>(deg[static_cast<size_t>(i) * g.cols + p]) *
                       deg[static_cast<size_t>(k) * g.cols + p];
            m.at(i, k) = static_cast<double>(sum);
        }
    return m;
}

GridLabelledGraph row_subgraph(const GridLabelledGraph& g, int i, int j) {
    if (i < 1 || i > g.rows || j < 1 || j > g.rows || i == j)
        throw bounds_error("row_subgraph needs two distinct row indices inside the grid");
    std::vector<Edge> edges;
    for (const Edge& e : g.edges) {
        if (e.u.row == i && e.v.row == j)
            edges.push_back(make_edge(Vertex{1, e.u.col}, Vertex{2, e.v.col}));
        else if (e.u.row == j && e.v.row == i)
            edges.push_back(make_edge(Vertex{1, e.v.col}, Vertex{2, e.u.col}));
    }
    return new_graph(2, g.cols, std::move(edges));
}

namespace {

// Position of the ordered row pair (i, j), i != j, in the enumeration
// (1,2),(1,3),...,(1,a),(2,1),(2,3),...,(a,a-1).
int pair_position(int i, int j, int rows) {
    return (i - 1) * (rows - 1) + (j > i ? j - 2 : j - 1);
}

}  // namespace

DenseMatrix adjacency_structure_matrix(const GridLabelledGraph& g) {
    for (const Edge& e : g.edges)
        if (!is_diagonal(e))
            throw non_diagonal_edge("adjacency structure matrix needs a diagonal-only graph");
    int a = g.rows;
    int n = a * (a - 1);
    std::vector<GridLabelledGraph> rowsubs(static_cast<size_t>(n));
    for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= a; ++j) {
            if (i == j) continue;
            rowsubs[pair_position(i, j, a)] = row_subgraph(g, i, j);
        }
    DenseMatrix m(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            m.at(p, q) =
                static_cast<double>(graph_intersection(rowsubs[p], rowsubs[q]).edges.size());
    return m;
}

StructureMatrices structure_matrices(const GridLabelledGraph& g) {
    return {degree_structure_matrix(g), adjacency_structure_matrix(g)};
}

double realignment_norm_structure(const GridLabelledGraph& g) {
    if (g.edges.empty()) throw empty_graph_error("realignment norm needs at least one edge");
    StructureMatrices sm = structure_matrices(g);  // throws on non-diagonal edges
    double sum = 0.0;
    for (double lambda : sym_eigenvalues(sm.degree_structure))
        if (lambda > 1e-9) sum += std::sqrt(lambda);
    for (double theta : sym_eigenvalues(sm.adjacency_structure))
        if (theta > 1e-9) sum += std::sqrt(theta);
    return sum / (2.0 * static_cast<double>(g.edges.size()));
}

RealignmentResult realignment_criterion(const GridLabelledGraph& g) {
    if (g.edges.empty()) throw empty_graph_error("realignment criterion needs at least one edge");
    bool diagonal_only = std::all_of(g.edges.begin(), g.edges.end(),
                                     [](const Edge& e) { return is_diagonal(e); });
    double norm;
    if (diagonal_only) {
        norm = realignment_norm_structure(g);
#ifndef NDEBUG
        double direct = ky_fan_norm(realign(density(g).matrix, g.cols));
        assert(std::abs(norm - direct) <= 1e-8);
#endif
    } else {
        norm = ky_fan_norm(realign(density(g).matrix, g.cols));
    }
    return {norm > 1.0 + 1e-9, norm};
}

namespace {

constexpr long long kDecompositionNodeCap = 500000;

// Certificates usable for one part of a decomposition. Parts are diagonal-only
// by construction, so the HV-only rule never applies to them.
bool part_certified(const GridLabelledGraph& part, const GridLabelledGraph& b2,
                    const GridLabelledGraph& b3) {
    if (part.edges.size() < 2) return false;  // one diagonal edge never balances
    if (!degree_criterion(part)) return false;
    GridLabelledGraph cp = compact(part);
    if (cp.rows <= 2 || cp.cols <= 2) return true;
    if (is_stratified(part, Axis::Row) || is_stratified(part, Axis::Column)) return true;
    if (is_pair_symmetric(part)) return true;
    if (part.edges.size() == b2.edges.size() && second_order_iso(part, b2)) return true;
    if (part.edges.size() == b3.edges.size() && second_order_iso(part, b3)) return true;
    return false;
}

struct DecompositionSearch {
    const GridLabelledGraph* host = nullptr;
    std::vector<Edge> diagonal;
    GridLabelledGraph b2;
    GridLabelledGraph b3;
    std::unordered_map<std::uint64_t, bool> part_memo;
    std::unordered_set<std::uint64_t> dead;
    long long nodes = 0;
    bool aborted = false;

    GridLabelledGraph graph_of(std::uint64_t mask) const {
        std::vector<Edge> edges;
        for (size_t i = 0; i < diagonal.size(); ++i)
            if (mask >> i & 1) edges.push_back(diagonal[i]);
        return new_graph(host->rows, host->cols, std::move(edges));
    }

    bool part_ok(std::uint64_t mask) {
        auto it = part_memo.find(mask);
        if (it != part_memo.end()) return it->second;
        bool ok = part_certified(graph_of(mask), b2, b3);
        part_memo.emplace(mask, ok);
        return ok;
    }

    bool run(std::uint64_t remaining, int parts_left) {
        if (remaining == 0) return true;
        if (parts_left == 0) return false;
        if (aborted || dead.count(remaining)) return false;
        if (++nodes > kDecompositionNodeCap) {
            aborted = true;
            return false;
        }
        std::uint64_t low = remaining & (~remaining + 1);
        std::uint64_t rest = remaining ^ low;
        // subsets of the rest, largest first; every part takes the first
        // remaining edge, which makes each partition appear exactly once
        std::vector<std::uint64_t> subs;
        std::uint64_t s = rest;
        while (true) {
            subs.push_back(s);
            if (s == 0) break;
            s = (s - 1) & rest;
        }
        std::stable_sort(subs.begin(), subs.end(), [](std::uint64_t x, std::uint64_t y) {
            return std::popcount(x) > std::popcount(y);
        });
        for (std::uint64_t sub : subs) {
            std::uint64_t part = sub | low;
            if (!part_ok(part)) continue;
            if (run(remaining ^ part, parts_left - 1)) return true;
        }
        dead.insert(remaining);
        return false;
    }
};

// Rule 6: can the diagonal edges be split into at most six separately
// certified parts? Sufficient condition only; resource exhaustion means "not
// found", never "entangled".
bool separable_decomposition_exists(const GridLabelledGraph& g,
                                    const std::vector<Edge>& diagonal) {
    if (diagonal.size() < 2 || diagonal.size() > 63) return false;
    DecompositionSearch search;
    search.host = &g;
    search.diagonal = diagonal;
    search.b2 = building_block(BuildingBlockId::B2);
    search.b3 = building_block(BuildingBlockId::B3);
    std::uint64_t all = diagonal.size() == 63 ? ~0ULL >> 1
                                              : (std::uint64_t{1} << diagonal.size()) - 1;
    return search.run(all, 6);
}

}  // namespace

SeparabilityVerdict separability_verdict(const GridLabelledGraph& g) {
    if (g.edges.empty()) throw empty_graph_error("separability verdict needs at least one edge");
    SeparabilityVerdict v;
    PptResult ppt = ppt_test(g);
    RealignmentResult realigned = realignment_criterion(g);
    v.min_ppt_eig = ppt.min_eigenvalue;
    v.realignment_norm = realigned.norm;

    if (!degree_criterion(g)) {
        v.status = VerdictStatus::Entangled;
        v.certificate = VerdictCertificate::DCViolation;
        return v;
    }
    std::vector<Edge> diagonal;
    for (const Edge& e : g.edges)
        if (is_diagonal(e)) diagonal.push_back(e);
    if (diagonal.empty()) {
        v.status = VerdictStatus::Separable;
        v.certificate = VerdictCertificate::HVOnly;
        return v;
    }
    GridLabelledGraph cp = compact(g);
    if (cp.rows <= 2 || cp.cols <= 2) {
        v.status = VerdictStatus::Separable;
        v.certificate = VerdictCertificate::TwoRowDC;
        return v;
    }
    GridLabelledGraph diag_part = new_graph(g.rows, g.cols, diagonal);
    if (is_stratified(diag_part, Axis::Row) || is_stratified(diag_part, Axis::Column)) {
        v.status = VerdictStatus::Separable;
        v.certificate = VerdictCertificate::StratifiedDC;
        return v;
    }
    if (is_pair_symmetric(g)) {
        v.status = VerdictStatus::Separable;
        v.certificate = VerdictCertificate::PairSymmetric;
        return v;
    }
    if (separable_decomposition_exists(g, diagonal)) {
        v.status = VerdictStatus::Separable;
        v.certificate = VerdictCertificate::SeparableDecomposition;
        return v;
    }
    if (realigned.entangled) {
        v.status = VerdictStatus::BoundEntangledCandidate;
        v.certificate = VerdictCertificate::PPTPlusRealignment;
        return v;
    }
    return v;  // Unknown / None
}

const char* status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Separable: return "Separable";
        case VerdictStatus::Entangled: return "Entangled";
        case VerdictStatus::BoundEntangledCandidate: return "BoundEntangledCandidate";
        case VerdictStatus::Unknown: break;
    }
    return "Unknown";
}

const char* certificate_name(VerdictCertificate c) {
    switch (c) {
        case VerdictCertificate::HVOnly: return "HVOnly";
        case VerdictCertificate::TwoRowDC: return "TwoRowDC";
        case VerdictCertificate::StratifiedDC: return "StratifiedDC";
        case VerdictCertificate::PairSymmetric: return "PairSymmetric";
        case VerdictCertificate::SeparableDecomposition: return "SeparableDecomposition";
        case VerdictCertificate::DCViolation: return "DCViolation";
        case VerdictCertificate::RealignmentViolation: return "RealignmentViolation";
        case VerdictCertificate::PPTPlusRealignment: return "PPTPlusRealignment";
        case VerdictCertificate::None: break;
    }
    return "None";
}

std::string verdict_to_json(const SeparabilityVerdict& v) {
    nlohmann::ordered_json j;
    j["status"] = status_name(v.status);
    j["certificate"] = certificate_name(v.certificate);
    if (v.min_ppt_eig)
        j["min_ppt_eig"] = *v.min_ppt_eig;
    else
        j["min_ppt_eig"] = nullptr;
    if (v.realignment_norm)
        j["realignment_norm"] = *v.realignment_norm;
    else
        j["realignment_norm"] = nullptr;
    return j.dump();
}

}  // namespace gridlab
