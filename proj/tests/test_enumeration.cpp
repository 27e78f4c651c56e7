#include <doctest.h>

#include <climits>
#include <set>
#include <string>
#include <vector>

#include "gridlab/contribution.hpp"
#include "gridlab/criteria.hpp"
#include "gridlab/enumeration.hpp"
#include "gridlab/isomorphism.hpp"
#include "test_util.hpp"

using namespace gridlab;
using testutil::edge;

namespace {

// independent brute-force D_k: walk all k-subsets of the diagonal edges and
// test the contribution sum directly
long long naive_dc_diagonal(int rows, int cols, int k) {
    std::vector<Edge> universe = all_diagonal_edges(rows, cols);
    int n = static_cast<int>(universe.size());
    if (k == 0) return 1;
    if (k > n) return 0;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    long long count = 0;
    while (true) {
        std::vector<Edge> subset;
        for (int i : idx) subset.push_back(universe[static_cast<size_t>(i)]);
        if (graph_contribution(new_graph(rows, cols, subset)).is_zero()) ++count;
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
    return count;
}

GridLabelledGraph rot180_b3() {
    return new_graph(3, 3, {edge(2, 2, 3, 3), edge(2, 1, 3, 2), edge(2, 3, 3, 1)});
}

}  // namespace

TEST_CASE("building blocks carry their exact edge sets") {
    GridLabelledGraph b2 = building_block(BuildingBlockId::B2);
    CHECK(b2 == new_graph(3, 3, {edge(1, 1, 2, 2), edge(1, 2, 2, 1)}));

    GridLabelledGraph b3 = building_block(BuildingBlockId::B3);
    CHECK(b3 == new_graph(3, 3, {edge(1, 1, 2, 2), edge(1, 2, 2, 3), edge(2, 1, 1, 3)}));

    GridLabelledGraph b4 = building_block(BuildingBlockId::B4);
    CHECK(b4 == new_graph(3, 3, {edge(1, 1, 2, 3), edge(2, 1, 3, 3), edge(1, 2, 3, 1),
                                 edge(1, 3, 3, 2)}));

    GridLabelledGraph b5 = building_block(BuildingBlockId::B5);
    CHECK(b5 == new_graph(3, 3, {edge(1, 1, 3, 3), edge(1, 2, 2, 1), edge(1, 3, 2, 2),
                                 edge(2, 2, 3, 1), edge(2, 3, 3, 2)}));

    for (BuildingBlockId id : {BuildingBlockId::B2, BuildingBlockId::B3, BuildingBlockId::B4,
                               BuildingBlockId::B5}) {
        CHECK(degree_criterion(building_block(id)));
        for (const Edge& e : building_block(id).edges) {
            EdgeClass c = classify_edge(e);
            CHECK((c == EdgeClass::DiagonalUphill || c == EdgeClass::DiagonalDownhill));
        }
    }
    CHECK(std::string(building_block_name(BuildingBlockId::B2)) == "B2");
    CHECK(std::string(building_block_name(BuildingBlockId::B5)) == "B5");
}

TEST_CASE("edge counts split the complete graph into rook and diagonal parts") {
    CHECK(rook_edge_count(3, 3) == 18);
    CHECK(diagonal_edge_count(3, 3) == 18);
    CHECK(rook_edge_count(2, 2) == 4);
    CHECK(diagonal_edge_count(2, 2) == 2);
    CHECK(diagonal_edge_count(2, 8) == 56);
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) {
            CHECK(rook_edge_count(a, b) ==
                  static_cast<long long>(all_edges(a, b).size() - all_diagonal_edges(a, b).size()));
            CHECK(diagonal_edge_count(a, b) ==
                  static_cast<long long>(all_diagonal_edges(a, b).size()));
            long long total = static_cast<long long>(a) * b;
            CHECK(rook_edge_count(a, b) + diagonal_edge_count(a, b) ==
                  total * (total - 1) / 2);
        }
}

TEST_CASE("saturating binomial coefficients") {
    CHECK(choose_sat(5, 2) == 10);
    CHECK(choose_sat(18, 4) == 3060);
    CHECK(choose_sat(18, 9) == 48620);
    CHECK(choose_sat(10, 0) == 1);
    CHECK(choose_sat(3, 5) == 0);
    CHECK(choose_sat(0, 0) == 1);
    CHECK(choose_sat(64, 32) == 1832624140942590534LL);
    CHECK(choose_sat(200, 100) == LLONG_MAX);
    CHECK(choose_sat(70, 35) == LLONG_MAX);
}

TEST_CASE("diagonal counts match brute force and the closed forms") {
    // 3x3 reference column, checked against the independent subset walk
    const long long expect[10] = {1, 0, 9, 12, 54, 90, 198, 252, 378, 362};
    for (int k = 0; k <= 9; ++k) {
        CountReport r = count_dc_diagonal(3, 3, k);
        REQUIRE(r.raw_count.has_value());
        CHECK(*r.raw_count == expect[k]);
        CHECK(*r.raw_count == naive_dc_diagonal(3, 3, k));
        CHECK(r.agree);
        if (k <= 2) {
            REQUIRE(r.formula_value.has_value());
            CHECK(*r.formula_value == expect[k]);
        } else {
            CHECK_FALSE(r.formula_value.has_value());  // no closed form off the 2-row case
        }
    }

    // closed forms on two-row grids
    for (int b = 2; b <= 6; ++b) {
        CountReport d3 = count_dc_diagonal(2, b, 3);
        REQUIRE(d3.formula_value.has_value());
        CHECK(*d3.formula_value == *d3.raw_count);
        CHECK(d3.agree);
        CountReport d4 = count_dc_diagonal(2, b, 4);
        REQUIRE(d4.formula_value.has_value());
        CHECK(*d4.formula_value == *d4.raw_count);
        CHECK(d4.agree);
    }
    CHECK(*count_dc_diagonal(2, 4, 3).formula_value == 8);
    CHECK(*count_dc_diagonal(2, 4, 4).formula_value == 21);
    CHECK(*count_dc_diagonal(4, 2, 3).formula_value == 8);  // symmetric in the axes

    for (int a = 2; a <= 3; ++a)
        for (int b = 2; b <= 3; ++b)
            for (int k = 0; k <= 2; ++k) {
                CountReport r = count_dc_diagonal(a, b, k);
                CHECK(*r.formula_value == naive_dc_diagonal(a, b, k));
            }
}

TEST_CASE("mixed-class counts follow the convolution formula") {
    CountReport p22 = count_pk(2, 2, 2);
    REQUIRE(p22.raw_count.has_value());
    REQUIRE(p22.formula_value.has_value());
    CHECK(*p22.raw_count == 7);
    CHECK(*p22.formula_value == 7);
    CHECK(p22.agree);

    CountReport p1 = count_pk(3, 3, 1);
    CHECK(*p1.formula_value == rook_edge_count(3, 3));

    CountReport p233 = count_pk(3, 3, 2);
    CHECK(*p233.formula_value == 162);
    CHECK(*p233.raw_count == 162);

    // over budget: the formula still comes out, the raw count is skipped
    CountReport big = count_pk(2, 3, 4, 100);
    REQUIRE(big.formula_value.has_value());
    CHECK(*big.formula_value == 255);
    CHECK_FALSE(big.raw_count.has_value());
    CHECK(big.agree);

    // independent recount of the same value over all C(15,4) subsets
    std::vector<Edge> universe = all_edges(2, 3);
    long long naive = 0;
    int n = static_cast<int>(universe.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    GridLabelledGraph g = new_graph(
                        2, 3, {universe[a], universe[b], universe[c], universe[d]});
                    naive += graph_contribution(g).is_zero();
                }
    CHECK(naive == 255);

    REQUIRE(p22.orbit_count.has_value());
    CHECK(*p22.orbit_count == 4);  // two parallel pairs, the L shape, the criss-cross
    CHECK(count_report_to_json(p22) ==
          "{\"rows\":2,\"cols\":2,\"edges\":2,\"rawCount\":7,\"orbitCount\":4,"
          "\"formulaValue\":7,\"agree\":true}");
}

TEST_CASE("enumeration is sound, complete, and deterministic") {
    for (int k = 1; k <= 3; ++k) {
        EnumerateOptions diag;
        diag.diagonal_only = true;
        std::vector<GridLabelledGraph> out = enumerate_dc(3, 3, k, diag);
        CHECK(static_cast<long long>(out.size()) == naive_dc_diagonal(3, 3, k));
        std::set<GridLabelledGraph> seen;
        for (const GridLabelledGraph& g : out) {
            CHECK(g.edges.size() == static_cast<size_t>(k));
            CHECK(degree_criterion(g));
            for (const Edge& e : g.edges) {
                EdgeClass c = classify_edge(e);
                CHECK((c == EdgeClass::DiagonalUphill || c == EdgeClass::DiagonalDownhill));
            }
            CHECK(seen.insert(g).second);  // pairwise distinct
        }

        // worker count never changes the output
        EnumerateOptions par = diag;
        par.jobs = 4;
        CHECK(enumerate_dc(3, 3, k, par) == out);
    }

    // unrestricted universe: 2-edge graphs keeping the criterion on 2x2
    std::vector<GridLabelledGraph> mixed = enumerate_dc(2, 2, 2, {});
    CHECK(mixed.size() == 7);

    EnumerateOptions tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(enumerate_dc(3, 3, 4, tiny), budget_exceeded);
    CHECK_THROWS_AS(count_dc_diagonal(3, 3, 9, 100), budget_exceeded);
}

TEST_CASE("orbit deduplication keeps one canonical form per class") {
    EnumerateOptions opt;
    opt.diagonal_only = true;
    opt.dedupe = true;
    std::vector<GridLabelledGraph> orbits = enumerate_dc(3, 3, 2, opt);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0] == canonical_form(building_block(BuildingBlockId::B2)));

    CountReport r = count_dc_diagonal(3, 3, 2);
    REQUIRE(r.orbit_count.has_value());
    CHECK(*r.orbit_count == 1);

    opt.dedupe = false;
    std::vector<GridLabelledGraph> raw = enumerate_dc(3, 3, 3, opt);
    opt.dedupe = true;
    std::vector<GridLabelledGraph> dd = enumerate_dc(3, 3, 3, opt);
    std::set<GridLabelledGraph> forms;
    for (const GridLabelledGraph& g : raw) forms.insert(canonical_form(g));
    CHECK(dd.size() == forms.size());
    for (size_t i = 0; i + 1 < dd.size(); ++i) {
        CHECK(dd[i] == canonical_form(dd[i]));
        CHECK_FALSE(local_isomorphism(dd[i], dd[i + 1]).has_value());
    }
}

TEST_CASE("cross stripping removes transpose-paired edges before dedupe") {
    // every two-edge survivor is a criss-cross, so stripping empties them all
    EnumerateOptions opt;
    opt.diagonal_only = true;
    opt.strip_crosses = true;
    opt.dedupe = true;
    std::vector<GridLabelledGraph> out = enumerate_dc(3, 3, 2, opt);
    REQUIRE(out.size() == 1);
    CHECK(out[0].edges.empty());

    // a three-edge survivor never contains a full cross pair plus one leftover
    opt.dedupe = false;
    for (const GridLabelledGraph& g : enumerate_dc(3, 3, 3, opt)) {
        for (const Edge& e : g.edges) {
            Edge image = partial_transpose_edge(e);
            for (const Edge& other : g.edges) CHECK(other != image);
        }
    }
}

TEST_CASE("entanglement fractions reduce exactly") {
    Rational f22 = entanglement_fraction(2, 2, 2);
    CHECK(f22.num == 0);
    CHECK(f22.den == 1);
    Rational f33 = entanglement_fraction(3, 3, 2);
    CHECK(f33.num == 16);
    CHECK(f33.den == 17);
    Rational f28 = entanglement_fraction(2, 8, 3);
    CHECK(f28.num == 493);
    CHECK(f28.den == 495);
    CHECK(rational_to_string(f33) == "16/17");
    CHECK(rational_to_string(Rational{0, 1}) == "0/1");
}

TEST_CASE("block decomposition recovers known partitions") {
    using Id = BuildingBlockId;

    std::optional<std::vector<BlockPlacement>> b5 =
        building_block_decomposition(building_block(Id::B5));
    REQUIRE(b5.has_value());
    REQUIRE(b5->size() == 1);
    CHECK((*b5)[0].id == Id::B5);
    CHECK((*b5)[0].part == building_block(Id::B5));

    // disjoint criss-cross + rotated tally: five edges, parts {B2, B3}
    UnionResult u = graph_union(building_block(Id::B2), rot180_b3());
    REQUIRE_FALSE(u.overlapped);
    REQUIRE(u.graph.edges.size() == 5);
    std::optional<std::vector<BlockPlacement>> parts = building_block_decomposition(u.graph);
    REQUIRE(parts.has_value());
    REQUIRE(parts->size() == 2);
    std::multiset<Id> ids;
    std::vector<Edge> covered;
    for (const BlockPlacement& p : *parts) {
        ids.insert(p.id);
        bool matches_an_image = false;
        for (const GridLabelledGraph& image : dihedral_images(building_block(p.id)))
            matches_an_image = matches_an_image || second_order_iso(p.part, image);
        CHECK(matches_an_image);
        covered.insert(covered.end(), p.part.edges.begin(), p.part.edges.end());
    }
    CHECK(ids == std::multiset<Id>{Id::B2, Id::B3});
    CHECK(new_graph(3, 3, covered) == u.graph);

    CHECK_FALSE(building_block_decomposition(new_graph(3, 3, {edge(1, 1, 2, 2)})).has_value());
    std::optional<std::vector<BlockPlacement>> empty =
        building_block_decomposition(new_graph(3, 3, {}));
    REQUIRE(empty.has_value());
    CHECK(empty->empty());

    // off-grid or mixed-class inputs are out of scope
    CHECK_FALSE(building_block_decomposition(new_graph(2, 2, {edge(1, 1, 2, 2), edge(1, 2, 2, 1)}))
                    .has_value());
    CHECK_FALSE(
        building_block_decomposition(new_graph(3, 3, {edge(1, 1, 1, 2)})).has_value());

    // every four-edge survivor splits as one skew-mesh or two criss-crosses
    EnumerateOptions opt;
    opt.diagonal_only = true;
    for (const GridLabelledGraph& g : enumerate_dc(3, 3, 4, opt)) {
        std::optional<std::vector<BlockPlacement>> dec = building_block_decomposition(g);
        REQUIRE(dec.has_value());
        std::multiset<Id> shape;
        for (const BlockPlacement& p : *dec) shape.insert(p.id);
        bool ok = shape == std::multiset<Id>{Id::B4} ||
                  shape == std::multiset<Id>{Id::B2, Id::B2};
        CHECK(ok);
    }
}
