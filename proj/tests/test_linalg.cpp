#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gridlab/criteria.hpp"
#include "gridlab/linalg.hpp"
#include "test_util.hpp"

using namespace gridlab;
using testutil::edge;

namespace {

DenseMatrix random_matrix(std::mt19937& rng, int rows, int cols) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    DenseMatrix m(rows, cols);
    for (double& x : m.entries) x = dist(rng);
    return m;
}

DenseMatrix symmetrized(DenseMatrix m) {
    for (int r = 0; r < m.rows; ++r)
        for (int c = r + 1; c < m.cols; ++c) {
            double avg = (m.at(r, c) + m.at(c, r)) / 2;
            m.at(r, c) = avg;
            m.at(c, r) = avg;
        }
    return m;
}

// Independent realignment oracle: walk the blocks in column-major order and
// copy out each one's row-major vectorization.
DenseMatrix realign_block_oracle(const DenseMatrix& m, int n) {
    int blocks = m.rows / n;
    DenseMatrix out(blocks * blocks, n * n);
    int row = 0;
    for (int bj = 0; bj < blocks; ++bj)
        for (int bi = 0; bi < blocks; ++bi) {
            int col = 0;
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) out.at(row, col++) = m.at(bi * n + j, bj * n + l);
            ++row;
        }
    return out;
}

// Alternate realignment that stacks the blocks row-major instead,
// R[(i-1)m+k, (j-1)n+l] = M[(i-1)n+j, (k-1)n+l]. Same rows, different order.
DenseMatrix realign_row_major(const DenseMatrix& m, int n) {
    int blocks = m.rows / n;
    DenseMatrix out(blocks * blocks, n * n);
    for (int i = 1; i <= blocks; ++i)
        for (int k = 1; k <= blocks; ++k)
            for (int j = 1; j <= n; ++j)
                for (int l = 1; l <= n; ++l)
                    out.at((i - 1) * blocks + (k - 1), (j - 1) * n + (l - 1)) =
                        m.at((i - 1) * n + (j - 1), (k - 1) * n + (l - 1));
    return out;
}

}  // namespace

TEST_CASE("laplacian of the single-edge graph") {
    DenseMatrix l = laplacian(new_graph(2, 2, {edge(1, 1, 2, 2)}));
    DenseMatrix want(4, 4);
    want.at(0, 0) = 1;
    want.at(3, 3) = 1;
    want.at(0, 3) = -1;
    want.at(3, 0) = -1;
    CHECK(l == want);

    CHECK(laplacian(new_graph(3, 3, {})) == DenseMatrix(9, 9));

    DenseMatrix cross = laplacian(new_graph(2, 2, {edge(1, 1, 2, 2), edge(1, 2, 2, 1)}));
    for (int i = 0; i < 4; ++i) CHECK(cross.at(i, i) == 1.0);
}

TEST_CASE("laplacian row sums vanish and diagonal matches degrees") {
    std::mt19937 rng(7201);
    for (int trial = 0; trial < 60; ++trial) {
        GridLabelledGraph g = testutil::random_graph(rng, 3, 3, trial % 9);
        DenseMatrix l = laplacian(g);
        std::vector<int> deg = degree_vector(g);
        for (int r = 0; r < l.rows; ++r) {
            double sum = 0;
            for (int c = 0; c < l.cols; ++c) {
                sum += l.at(r, c);
                CHECK(l.at(r, c) == l.at(c, r));
            }
            CHECK(sum == 0.0);
            CHECK(l.at(r, r) == static_cast<double>(deg[static_cast<size_t>(r)]));
        }
        // kernel contains the all-ones vector; spectrum is nonnegative
        std::vector<double> eigs = sym_eigenvalues(l);
        CHECK(eigs.front() >= -1e-10);
        CHECK(std::abs(eigs.front()) <= 1e-10);
    }
}

TEST_CASE("density normalizes the laplacian") {
    DensityMatrix rho = density(new_graph(2, 2, {edge(1, 1, 2, 2)}));
    CHECK(rho.dim_a == 2);
    CHECK(rho.dim_b == 2);
    CHECK(rho.matrix.at(0, 0) == 0.5);
    CHECK(rho.matrix.at(0, 3) == -0.5);
    CHECK(rho.matrix.at(3, 3) == 0.5);
    CHECK(rho.matrix.at(1, 1) == 0.0);

    CHECK_THROWS_AS(density(new_graph(2, 2, {})), empty_graph_error);

    std::mt19937 rng(7202);
    for (int trial = 0; trial < 60; ++trial) {
        GridLabelledGraph g = testutil::random_graph(rng, 2 + trial % 2, 3, 1 + trial % 8);
        DensityMatrix r = density(g);
        double trace = 0;
        for (int i = 0; i < r.matrix.rows; ++i) trace += r.matrix.at(i, i);
        CHECK(std::abs(trace - 1.0) <= 1e-12);
        CHECK(sym_eigenvalues(r.matrix).front() >= -1e-9);
    }
}

TEST_CASE("matrix partial transpose follows the block index map") {
    DensityMatrix rho = density(new_graph(2, 2, {edge(1, 1, 2, 2)}));
    DenseMatrix pt = partial_transpose_matrix(rho);

    // independent four-nested-loop oracle over the index identity
    DenseMatrix oracle(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    oracle.at(i * 2 + j, k * 2 + l) = rho.matrix.at(k * 2 + j, i * 2 + l);
    CHECK(pt == oracle);
    // the -1/2 entries move onto the anti-diagonal positions (0,1),(1,0) blocks
    CHECK(pt.at(0, 3) == 0.0);
    CHECK(pt.at(1, 2) == -0.5);
    CHECK(pt.at(2, 1) == -0.5);

    DenseMatrix diag(3, 3);
    diag.at(0, 0) = 1;
    diag.at(1, 1) = 2;
    diag.at(2, 2) = 3;
    CHECK(partial_transpose_matrix(diag, 3, 1) == diag);
    CHECK(partial_transpose_matrix(diag, 1, 3) == diag);

    GridLabelledGraph cross = new_graph(2, 2, {edge(1, 1, 2, 2), edge(1, 2, 2, 1)});
    CHECK(partial_transpose_matrix(density(cross)) == density(cross).matrix);
}

TEST_CASE("matrix partial transpose matches the graph-side identity") {
    // Gamma(L(G)) = L(Gamma(G)) + (D(G) - D(Gamma(G))), entrywise over 2m
    std::mt19937 rng(7203);
    for (int trial = 0; trial < 80; ++trial) {
        GridLabelledGraph g = testutil::random_graph(rng, 2 + trial % 2, 2 + trial % 3,
                                                     1 + trial % 7);
        if (g.edges.empty()) continue;
        GridLabelledGraph tg = partial_transpose(g).graph;
        double two_m = 2.0 * static_cast<double>(g.edges.size());

        DenseMatrix lhs = partial_transpose_matrix(density(g));
        DenseMatrix rhs = laplacian(tg);
        std::vector<int> dg = degree_vector(g);
        std::vector<int> dtg = degree_vector(tg);
        for (int v = 0; v < rhs.rows; ++v) rhs.at(v, v) += dg[v] - dtg[v];
        for (double& x : rhs.entries) x /= two_m;
        for (size_t i = 0; i < rhs.entries.size(); ++i)
            CHECK(lhs.entries[i] == doctest::Approx(rhs.entries[i]).epsilon(1e-12));

        // involution and trace preservation
        DenseMatrix back = partial_transpose_matrix(lhs, g.rows, g.cols);
        CHECK(back == density(g).matrix);
        double tr = 0;
        for (int i = 0; i < lhs.rows; ++i) tr += lhs.at(i, i);
        CHECK(std::abs(tr - 1.0) <= 1e-12);
    }
}

TEST_CASE("symmetric eigenvalues by jacobi iteration") {
    DenseMatrix eye(3, 3);
    for (int i = 0; i < 3; ++i) eye.at(i, i) = 1;
    std::vector<double> unit = sym_eigenvalues(eye);
    REQUIRE(unit.size() == 3);
    for (double x : unit) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));

    DenseMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    std::vector<double> pm = sym_eigenvalues(swap);
    CHECK(pm[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pm[1] == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> single =
        sym_eigenvalues(laplacian(new_graph(2, 2, {edge(1, 1, 2, 2)})));
    REQUIRE(single.size() == 4);
    CHECK(single[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(single[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(single[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(single[3] == doctest::Approx(2.0).epsilon(1e-12));

    DenseMatrix skew(2, 2);
    skew.at(0, 1) = 1;
    skew.at(1, 0) = -1;
    CHECK_THROWS_AS(sym_eigenvalues(skew), not_symmetric);
    CHECK_THROWS_AS(sym_eigenvalues(DenseMatrix(2, 3)), error);

    // trace and determinant-free checks on random symmetric matrices
    std::mt19937 rng(7204);
    for (int trial = 0; trial < 40; ++trial) {
        DenseMatrix m = symmetrized(random_matrix(rng, 6, 6));
        std::vector<double> eigs = sym_eigenvalues(m);
        CHECK(std::is_sorted(eigs.begin(), eigs.end()));
        double trace = 0, sum = 0;
        for (int i = 0; i < 6; ++i) trace += m.at(i, i);
        for (double x : eigs) sum += x;
        CHECK(sum == doctest::Approx(trace).epsilon(1e-9));
        // Frobenius norm equals the l2 norm of the spectrum
        double frob = 0, spec = 0;
        for (double x : m.entries) frob += x * x;
        for (double x : eigs) spec += x * x;
        CHECK(spec == doctest::Approx(frob).epsilon(1e-9));
    }
}

TEST_CASE("realignment stacks block vectorizations column-major") {
    DenseMatrix m(4, 4);
    for (int i = 0; i < 16; ++i) m.entries[static_cast<size_t>(i)] = i;
    DenseMatrix r = realign(m, 2);
    REQUIRE(r.rows == 4);
    REQUIRE(r.cols == 4);
    // rows are vec(M_11), vec(M_21), vec(M_12), vec(M_22)
    CHECK(r.entries == std::vector<double>{0, 1, 4, 5, 8, 9, 12, 13, 2, 3, 6, 7, 10, 11, 14, 15});

    CHECK(realign(DenseMatrix(6, 6), 2) == DenseMatrix(9, 4));
    CHECK_THROWS_AS(realign(DenseMatrix(4, 4), 3), dimension_mismatch);
    CHECK_THROWS_AS(realign(DenseMatrix(2, 3), 2), dimension_mismatch);

    std::mt19937 rng(7205);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + trial % 3;
        int blocks = 2 + (trial / 3) % 2;
        DenseMatrix x = random_matrix(rng, blocks * n, blocks * n);
        DenseMatrix direct = realign(x, n);
        CHECK(direct == realign_block_oracle(x, n));
        // the alternate row-major stacking permutes rows, so the Ky Fan norm
        // must agree even though the matrices differ
        DenseMatrix alt = realign_row_major(x, n);
        CHECK(ky_fan_norm(direct) == doctest::Approx(ky_fan_norm(alt)).epsilon(1e-9));
    }
}

TEST_CASE("ky fan norm sums the singular values") {
    DenseMatrix eye(2, 2);
    eye.at(0, 0) = 1;
    eye.at(1, 1) = 1;
    CHECK(ky_fan_norm(eye) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ky_fan_norm(DenseMatrix(3, 5)) == 0.0);

    DenseMatrix stretch(2, 2);
    stretch.at(0, 0) = 3;
    stretch.at(1, 1) = -4;
    CHECK(ky_fan_norm(stretch) == doctest::Approx(7.0).epsilon(1e-12));

    DenseMatrix nilpotent(2, 2);
    nilpotent.at(0, 1) = 2;
    CHECK(ky_fan_norm(nilpotent) == doctest::Approx(2.0).epsilon(1e-12));

    DenseMatrix realigned = realign(density(new_graph(2, 2, {edge(1, 1, 2, 2)})).matrix, 2);
    CHECK(ky_fan_norm(realigned) == doctest::Approx(2.0).epsilon(1e-9));

    std::mt19937 rng(7206);
    for (int trial = 0; trial < 40; ++trial) {
        DenseMatrix m = random_matrix(rng, 3 + trial % 3, 3 + (trial / 3) % 3);
        CHECK(ky_fan_norm(m) == doctest::Approx(ky_fan_norm(transpose_of(m))).epsilon(1e-9));
    }
}

TEST_CASE("matrix text export") {
    DenseMatrix m(2, 2);
    m.at(0, 0) = 0.5;
    m.at(0, 1) = -0.5;
    CHECK(matrix_to_text(m) == "2 2\n0.5 -0.5\n0 0\n");

    CHECK(matrix_to_text_exact(m, 2) == "2 2\n1/2 -1/2\n0/1 0/1\n");
    DenseMatrix l = laplacian(new_graph(2, 2, {edge(1, 1, 2, 2)}));
    CHECK(matrix_to_text_exact(l, 1) == "4 4\n1/1 0/1 0/1 -1/1\n0/1 0/1 0/1 0/1\n0/1 0/1 0/1 0/1\n-1/1 0/1 0/1 1/1\n");
    DenseMatrix bad(1, 1);
    bad.at(0, 0) = 0.3333;
    CHECK_THROWS_AS(matrix_to_text_exact(bad, 2), error);
}

TEST_CASE("structure formula agrees with direct realignment norms") {
    // diagonal-only random graphs on assorted grids
    std::mt19937 rng(7207);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 2 + trial % 3;
        int cols = 2 + (trial / 3) % 3;
        GridLabelledGraph g = testutil::random_graph(rng, rows, cols, 1 + trial % 6, true);
        if (g.edges.empty()) continue;
        double structure = realignment_norm_structure(g);
        double direct = ky_fan_norm(realign(density(g).matrix, g.cols));
        CHECK(structure == doctest::Approx(direct).epsilon(1e-8));
    }
}
