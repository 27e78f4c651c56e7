#pragma once

#include <optional>
#include <string>

#include "gridlab/grid_graph.hpp"
#include "gridlab/linalg.hpp"

namespace gridlab {

// True iff every vertex keeps its exact degree under the partial transpose.
// Pure integer arithmetic over the pre-merge edge images, so there is no
// tolerance to tune. For Laplacian states this is equivalent to the PPT test.
bool degree_criterion(const GridLabelledGraph& g);

struct PptResult {
    bool passes = false;
    double min_eigenvalue = 0.0;
};

// Smallest eigenvalue of the partially transposed density matrix; passes
// iff it is >= -1e-9. Throws empty_graph_error on an edgeless graph.
PptResult ppt_test(const GridLabelledGraph& g);

// D[i][k] = sum_p d((i+1,p)) * d((k+1,p)) over full vertex degrees; rows x rows.
DenseMatrix degree_structure_matrix(const GridLabelledGraph& g);

// Keeps the edges with one endpoint in row i and the other in row j, relabels
// row i -> 1 and row j -> 2. Result has type (2, cols). Throws bounds_error
// unless 1 <= i, j <= rows and i != j.
GridLabelledGraph row_subgraph(const GridLabelledGraph& g, int i, int j);

// A[(i,j)][(k,l)] = |E(R_ij) intersect E(R_kl)| over ordered row pairs in the
// order (1,2),(1,3),...,(2,1),(2,3),...; size a(a-1) x a(a-1). Defined for
// diagonal-only graphs; throws non_diagonal_edge otherwise.
DenseMatrix adjacency_structure_matrix(const GridLabelledGraph& g);

struct StructureMatrices {
    DenseMatrix degree_structure;
    DenseMatrix adjacency_structure;
};
StructureMatrices structure_matrices(const GridLabelledGraph& g);

// Realignment Ky Fan norm of a diagonal-only graph computed from the nonzero
// eigenvalues of the two structure matrices: (sum sqrt(lambda) + sum
// sqrt(theta)) / (2e). Throws non_diagonal_edge / empty_graph_error.
double realignment_norm_structure(const GridLabelledGraph& g);

struct RealignmentResult {
    bool entangled = false;
    double norm = 0.0;
};

// Ky Fan norm of the realigned density matrix; flags entanglement iff the
// norm exceeds 1 + 1e-9 (strict margin so states sitting exactly at 1 are
// not flagged). Diagonal-only graphs go through the structure formula, which
// debug builds cross-check against the direct computation.
RealignmentResult realignment_criterion(const GridLabelledGraph& g);

enum class VerdictStatus { Separable, Entangled, BoundEntangledCandidate, Unknown };

enum class VerdictCertificate {
    HVOnly,
    TwoRowDC,
    StratifiedDC,
    PairSymmetric,
    SeparableDecomposition,
    DCViolation,
    RealignmentViolation,
    PPTPlusRealignment,
    None,
};

struct SeparabilityVerdict {
    VerdictStatus status = VerdictStatus::Unknown;
    VerdictCertificate certificate = VerdictCertificate::None;
    std::optional<double> min_ppt_eig;
    std::optional<double> realignment_norm;
};

// Decision cascade, exact integer tests before floating-point ones:
//   1. degree criterion fails          -> Entangled / DCViolation
//   2. no diagonal edges               -> Separable / HVOnly
//   3. compacted grid has <= 2 rows or -> Separable / TwoRowDC
//      <= 2 columns
//   4. diagonal part row- or column-   -> Separable / StratifiedDC
//      stratified
//   5. pair-symmetric                  -> Separable / PairSymmetric
//   6. diagonal edges partition into   -> Separable / SeparableDecomposition
//      parts certified by 3-5 or matching the 2/3-edge building blocks
//   7. realignment norm > 1 + 1e-9     -> BoundEntangledCandidate / PPTPlusRealignment
//   8. otherwise                       -> Unknown / None
// The search in rule 6 is a sufficient condition: when its node budget runs
// out it falls through, never misclassifies. Throws empty_graph_error.
SeparabilityVerdict separability_verdict(const GridLabelledGraph& g);

const char* status_name(VerdictStatus s);
const char* certificate_name(VerdictCertificate c);

// {"status": ..., "certificate": ..., "min_ppt_eig": num|null, "realignment_norm": num|null}
std::string verdict_to_json(const SeparabilityVerdict& v);

}  // namespace gridlab
