#pragma once

#include <string>
#include <vector>

#include "gridlab/errors.hpp"
#include "gridlab/grid_graph.hpp"

namespace gridlab {

// Small dense real matrix, row-major. Sized for desk-scale spectra
// (everything here is well under 100x100).
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> entries;

    DenseMatrix() = default;
    DenseMatrix(int r, int c)
        : rows(r), cols(c), entries(static_cast<size_t>(r) * static_cast<size_t>(c), 0.0) {}

    double& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }

    bool operator==(const DenseMatrix&) const = default;
};

DenseMatrix transpose_of(const DenseMatrix& m);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// Combinatorial Laplacian L = D - A with vertex (i,j) at index
// (i-1)*cols + (j-1). Integer-valued, symmetric, zero row sums.
DenseMatrix laplacian(const GridLabelledGraph& g);

// Laplacian state of a graph: L / (2m) on the rows x cols bipartite split.
struct DensityMatrix {
    int dim_a = 0;  // grid rows, the A subsystem dimension
    int dim_b = 0;  // grid cols, the B subsystem dimension
    DenseMatrix matrix;
};

// Throws empty_graph_error when the graph has no edges (the state is
// undefined at m = 0). Trace is 1 up to rounding, and the matrix is PSD.
DensityMatrix density(const GridLabelledGraph& g);

// Blockwise transpose over the A index: out[(i,j),(k,l)] = in[(k,j),(i,l)]
// for the dim_a x dim_b tensor split. Involution; preserves trace.
DenseMatrix partial_transpose_matrix(const DensityMatrix& rho);
DenseMatrix partial_transpose_matrix(const DenseMatrix& m, int dim_a, int dim_b);

// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi sweeps
// iterated until the off-diagonal Frobenius norm drops below 1e-12.
// Throws not_symmetric when the input deviates by more than 1e-12.
std::vector<double> sym_eigenvalues(const DenseMatrix& m);

// Realignment: for a square matrix of n x n blocks, the output rows are the
// row-major vectorizations vec(M_IJ) stacked block column-major
// (M_11, M_21, ..., M_m1, M_12, ..., M_mm). Output is m^2 x n^2.
// Throws dimension_mismatch when the size is not divisible by n.
DenseMatrix realign(const DenseMatrix& m, int n);

// Sum of singular values: sum of sqrt(lambda) over the eigenvalues of M*M^T.
// Eigenvalues below 1e-9 count as zero; they are rounding noise for the
// O(1)-entry matrices this library produces.
double ky_fan_norm(const DenseMatrix& m);

// Plain-text export: first line "rows cols", then row-major entries with 17
// significant digits, one matrix row per line.
std::string matrix_to_text(const DenseMatrix& m);

// Exact export for matrices whose entries are integer multiples of 1/denom
// (Laplacian-derived data): each entry as a reduced fraction "p/q".
// Throws error when an entry is not such a multiple.
std::string matrix_to_text_exact(const DenseMatrix& m, long long denom);

}  // namespace gridlab
