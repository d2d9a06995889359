#ifndef GTB_GRAPH_HPP
#define GTB_GRAPH_HPP

#include <optional>
#include <tuple>
#include <vector>

namespace gtb {

// Symmetric binary connectivity matrix with unit diagonal. Entry (i,j)=1
// means a pull of arm i triggers the reward evolution of arm j. Arms are
// 0-based throughout the library.
class ConnectivityMatrix {
public:
    ConnectivityMatrix() = default;
    explicit ConnectivityMatrix(int k) : k_(k), adj_(static_cast<std::size_t>(k) * k, 0) {
        for (int i = 0; i < k; ++i) set(i, i, true);
    }

    static ConnectivityMatrix identity(int k) { return ConnectivityMatrix(k); }

    static ConnectivityMatrix complete(int k) {
        ConnectivityMatrix g(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) g.set(i, j, true);
        return g;
    }

    static ConnectivityMatrix from_edges(int k, const std::vector<std::pair<int, int>>& edges) {
        ConnectivityMatrix g(k);
        for (auto [a, b] : edges) {
            g.set(a, b, true);
            g.set(b, a, true);
        }
        return g;
    }

    static ConnectivityMatrix from_blocks(int k, const std::vector<std::vector<int>>& blocks) {
        ConnectivityMatrix g(k);
        for (const auto& block : blocks)
            for (int a : block)
                for (int b : block) g.set(a, b, true);
        return g;
    }

    int k() const { return k_; }
    bool at(int i, int j) const { return adj_[static_cast<std::size_t>(i) * k_ + j] != 0; }
    void set(int i, int j, bool v) { adj_[static_cast<std::size_t>(i) * k_ + j] = v ? 1 : 0; }

    // Column degree, self-loop included.
    int degree(int i) const {
        int d = 0;
        for (int j = 0; j < k_; ++j) d += at(j, i) ? 1 : 0;
        return d;
    }

    bool operator==(const ConnectivityMatrix& o) const { return k_ == o.k_ && adj_ == o.adj_; }

private:
    int k_ = 0;
    std::vector<unsigned char> adj_;
};

// Disjoint blocks covering {0..k-1}. Canonical form: every block sorted
// ascending, blocks ordered by their smallest element.
struct CliquePartition {
    std::vector<std::vector<int>> blocks;

    std::size_t size() const { return blocks.size(); }
    void canonicalize();
    // Index of the block containing each arm.
    std::vector<int> block_index(int k) const;
    // Block-diagonal matrix induced by the partition.
    ConnectivityMatrix to_matrix(int k) const;

    bool operator==(const CliquePartition& o) const { return blocks == o.blocks; }
};

// Throws AsymmetricMatrix / MissingSelfLoop naming the offending indices.
void validate(const ConnectivityMatrix& g);

// Clique partition iff every connected component of g is complete, else empty.
std::optional<CliquePartition> block_diagonal_partition(const ConnectivityMatrix& g);

// Some (v1,v2,v3) with edges (v1,v2),(v2,v3) and no edge (v1,v3); empty iff
// g is block-diagonal.
std::optional<std::tuple<int, int, int>> find_open_triangle(const ConnectivityMatrix& g);

// Connected components of g: the unique block-diagonal super-matrix with the
// most cliques.
CliquePartition minimal_super_matrix(const ConnectivityMatrix& g);

enum class SubMatrixMode { Exact, Greedy };

// Partition of the arms into cliques of g. Exact mode minimizes the number of
// blocks (ties go to the first partition in restricted-growth-string order)
// and refuses k beyond the cap. Greedy mode peels maximal cliques by
// highest-degree-first ordering; feasible but possibly suboptimal.
CliquePartition maximal_sub_matrix(const ConnectivityMatrix& g, SubMatrixMode mode,
                                   int exact_cap = 10);

// Number of arms with degree 1 (self-loop only).
int degree_one_count(const ConnectivityMatrix& g);

} // namespace gtb

#endif
