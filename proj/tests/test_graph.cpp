#include <doctest.h>

#include "gtb/errors.hpp"
#include "gtb/graph.hpp"
#include "test_support.hpp"

using namespace gtb;

namespace {

ConnectivityMatrix path3() { return ConnectivityMatrix::from_edges(3, {{0, 1}, {1, 2}}); }

} // namespace

TEST_CASE("validate accepts identity and complete matrices") {
    CHECK_NOTHROW(validate(ConnectivityMatrix::identity(3)));
    CHECK_NOTHROW(validate(ConnectivityMatrix::complete(3)));
}

TEST_CASE("validate names the offending indices") {
    ConnectivityMatrix g = ConnectivityMatrix::identity(3);
    g.set(0, 0, false);
    CHECK_THROWS_AS(validate(g), MissingSelfLoop);
    try {
        validate(g);
    } catch (const MissingSelfLoop& e) {
        CHECK(e.arm == 0);
    }

    ConnectivityMatrix a = ConnectivityMatrix::identity(3);
    a.set(0, 1, true);  // no mirror entry
    CHECK_THROWS_AS(validate(a), AsymmetricMatrix);
    try {
        validate(a);
    } catch (const AsymmetricMatrix& e) {
        CHECK(e.i == 0);
        CHECK(e.j == 1);
    }
}

TEST_CASE("block-diagonal partition of the corner cases") {
    auto rested = block_diagonal_partition(ConnectivityMatrix::identity(3));
    REQUIRE(rested);
    CHECK(rested->blocks == std::vector<std::vector<int>>{{0}, {1}, {2}});

    auto restless = block_diagonal_partition(ConnectivityMatrix::complete(3));
    REQUIRE(restless);
    CHECK(restless->blocks == std::vector<std::vector<int>>{{0, 1, 2}});

    CHECK_FALSE(block_diagonal_partition(path3()));
}

TEST_CASE("open triangle search") {
    auto t = find_open_triangle(path3());
    REQUIRE(t);
    CHECK(*t == std::make_tuple(0, 1, 2));
    CHECK_FALSE(find_open_triangle(ConnectivityMatrix::complete(4)));
    CHECK_FALSE(find_open_triangle(ConnectivityMatrix::identity(4)));
}

TEST_CASE("minimal super-matrix is the component partition") {
    CHECK(minimal_super_matrix(ConnectivityMatrix::identity(3)).blocks ==
          std::vector<std::vector<int>>{{0}, {1}, {2}});
    CHECK(minimal_super_matrix(path3()).blocks == std::vector<std::vector<int>>{{0, 1, 2}});
    auto two_edges = ConnectivityMatrix::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(minimal_super_matrix(two_edges).blocks == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("exact maximal sub-matrix") {
    CHECK(maximal_sub_matrix(ConnectivityMatrix::complete(4), SubMatrixMode::Exact).blocks ==
          std::vector<std::vector<int>>{{0, 1, 2, 3}});

    // two minimum partitions exist; the canonical tie-break keeps {{0,1},{2}}
    CHECK(maximal_sub_matrix(path3(), SubMatrixMode::Exact).blocks ==
          std::vector<std::vector<int>>{{0, 1}, {2}});

    auto tri_iso = ConnectivityMatrix::from_edges(4, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(maximal_sub_matrix(tri_iso, SubMatrixMode::Exact).blocks ==
          std::vector<std::vector<int>>{{0, 1, 2}, {3}});

    CHECK_THROWS_AS(maximal_sub_matrix(ConnectivityMatrix::identity(11), SubMatrixMode::Exact),
                    InstanceTooLarge);
}

TEST_CASE("degree-one count") {
    CHECK(degree_one_count(ConnectivityMatrix::identity(5)) == 5);
    CHECK(degree_one_count(ConnectivityMatrix::complete(5)) == 0);
    CHECK(degree_one_count(path3()) == 0);  // degrees with self-loop: 2,3,2
}

TEST_CASE("dichotomy and construction invariants over all graphs with k <= 5") {
    for (int k = 1; k <= 5; ++k) {
        for (const auto& g : gtb_test::all_graphs(k)) {
            auto block = block_diagonal_partition(g);
            auto open = find_open_triangle(g);
            CHECK(static_cast<bool>(block) != static_cast<bool>(open));
            if (open) {
                auto [a, b, c] = *open;
                CHECK(g.at(a, b));
                CHECK(g.at(b, c));
                CHECK_FALSE(g.at(a, c));
            }

            // super-matrix equals union-find components and contains all edges
            auto super = minimal_super_matrix(g);
            CHECK(super.blocks == gtb_test::union_find_components(g));
            auto super_mat = super.to_matrix(k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    CHECK(static_cast<int>(g.at(i, j)) <= static_cast<int>(super_mat.at(i, j)));

            // exact sub-matrix: feasible, dominated by g, minimum block count
            auto sub = maximal_sub_matrix(g, SubMatrixMode::Exact);
            auto sub_mat = sub.to_matrix(k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    CHECK(static_cast<int>(sub_mat.at(i, j)) <= static_cast<int>(g.at(i, j)));
            CHECK(static_cast<int>(sub.blocks.size()) == gtb_test::min_clique_partition_blocks(g));

            // greedy: a feasible clique partition, never better than exact
            auto greedy = maximal_sub_matrix(g, SubMatrixMode::Greedy);
            std::vector<int> seen;
            for (const auto& b : greedy.blocks) {
                CHECK(gtb_test::all_pairs_adjacent(g, b));
                seen.insert(seen.end(), b.begin(), b.end());
            }
            std::sort(seen.begin(), seen.end());
            std::vector<int> expect(k);
            std::iota(expect.begin(), expect.end(), 0);
            CHECK(seen == expect);
            CHECK(greedy.blocks.size() >= sub.blocks.size());

            // every super-matrix block is connected, so no feasible refinement exists
            for (const auto& b : super.blocks) {
                if (b.size() < 2) continue;
                std::vector<char> reach(b.size(), 0);
                std::vector<std::size_t> stack{0};
                reach[0] = 1;
                while (!stack.empty()) {
                    const std::size_t v = stack.back();
                    stack.pop_back();
                    for (std::size_t u = 0; u < b.size(); ++u)
                        if (!reach[u] && g.at(b[v], b[u])) {
                            reach[u] = 1;
                            stack.push_back(u);
                        }
                }
                for (char r : reach) CHECK(r == 1);
            }
        }
    }
}

TEST_CASE("there are 34 non-isomorphic graphs on 5 nodes") {
    CHECK(gtb_test::non_isomorphic_graphs(5).size() == 34);
}
