#include "gtb/graph.hpp"

#include <algorithm>
#include <numeric>

#include "gtb/errors.hpp"

namespace gtb {

void CliquePartition::canonicalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
}

std::vector<int> CliquePartition::block_index(int k) const {
    std::vector<int> idx(k, -1);
    for (std::size_t m = 0; m < blocks.size(); ++m)
        for (int a : blocks[m]) idx[a] = static_cast<int>(m);
    return idx;
}

ConnectivityMatrix CliquePartition::to_matrix(int k) const {
    return ConnectivityMatrix::from_blocks(k, blocks);
}

void validate(const ConnectivityMatrix& g) {
    const int k = g.k();
    for (int i = 0; i < k; ++i)
        if (!g.at(i, i)) throw MissingSelfLoop(i);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (g.at(i, j) != g.at(j, i)) throw AsymmetricMatrix(i, j);
}

namespace {

std::vector<int> component_labels(const ConnectivityMatrix& g) {
    const int k = g.k();
    std::vector<int> label(k, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < k; ++s) {
        if (label[s] >= 0) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < k; ++u) {
                if (u != v && g.at(v, u) && label[u] < 0) {
                    label[u] = next;
                    stack.push_back(u);
                }
            }
        }
        ++next;
    }
    return label;
}

CliquePartition partition_from_labels(const std::vector<int>& label, int groups) {
    CliquePartition p;
    p.blocks.assign(groups, {});
    for (int v = 0; v < static_cast<int>(label.size()); ++v) p.blocks[label[v]].push_back(v);
    p.canonicalize();
    return p;
}

} // namespace

CliquePartition minimal_super_matrix(const ConnectivityMatrix& g) {
    auto label = component_labels(g);
    int groups = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    return partition_from_labels(label, groups);
}

std::optional<CliquePartition> block_diagonal_partition(const ConnectivityMatrix& g) {
    auto comps = minimal_super_matrix(g);
    for (const auto& block : comps.blocks)
        for (std::size_t a = 0; a < block.size(); ++a)
            for (std::size_t b = a + 1; b < block.size(); ++b)
                if (!g.at(block[a], block[b])) return std::nullopt;
    return comps;
}

std::optional<std::tuple<int, int, int>> find_open_triangle(const ConnectivityMatrix& g) {
    const int k = g.k();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (b == a || !g.at(a, b)) continue;
            for (int c = a + 1; c < k; ++c) {
                if (c == b) continue;
                if (g.at(b, c) && !g.at(a, c)) return std::make_tuple(a, b, c);
            }
        }
    return std::nullopt;
}

int degree_one_count(const ConnectivityMatrix& g) {
    int n = 0;
    for (int i = 0; i < g.k(); ++i)
        if (g.degree(i) == 1) ++n;
    return n;
}

namespace {

// Exact minimum clique partition by DFS over restricted growth strings:
// arm v joins an existing block (if adjacent to all its members) or opens a
// new one. Branches with at least best-so-far blocks are cut. Visiting
// assignments in RGS order makes the first minimum found the canonical
// tie-break winner.
struct ExactSearch {
    const ConnectivityMatrix& g;
    int k;
    std::vector<std::vector<int>> blocks;
    std::vector<std::vector<int>> best;
    std::size_t best_count;

    explicit ExactSearch(const ConnectivityMatrix& g_)
        : g(g_), k(g_.k()), best_count(static_cast<std::size_t>(k) + 1) {
        blocks.reserve(k);
    }

    bool fits(const std::vector<int>& block, int v) const {
        for (int u : block)
            if (!g.at(u, v)) return false;
        return true;
    }

    void dfs(int v) {
        if (blocks.size() >= best_count) return;
        if (v == k) {
            best = blocks;
            best_count = blocks.size();
            return;
        }
        // index-based: the recursion grows and shrinks `blocks`
        for (std::size_t m = 0; m < blocks.size(); ++m) {
            if (fits(blocks[m], v)) {
                blocks[m].push_back(v);
                dfs(v + 1);
                blocks[m].pop_back();
            }
        }
        blocks.push_back({v});
        dfs(v + 1);
        blocks.pop_back();
    }
};

CliquePartition greedy_clique_partition(const ConnectivityMatrix& g) {
    const int k = g.k();
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<char> taken(k, 0);
    CliquePartition p;
    for (int seed : order) {
        if (taken[seed]) continue;
        std::vector<int> clique{seed};
        taken[seed] = 1;
        for (int v : order) {
            if (taken[v]) continue;
            bool ok = true;
            for (int u : clique)
                if (!g.at(u, v)) {
                    ok = false;
                    break;
                }
            if (ok) {
                clique.push_back(v);
                taken[v] = 1;
            }
        }
        p.blocks.push_back(std::move(clique));
    }
    p.canonicalize();
    return p;
}

} // namespace

CliquePartition maximal_sub_matrix(const ConnectivityMatrix& g, SubMatrixMode mode, int exact_cap) {
    if (mode == SubMatrixMode::Greedy) return greedy_clique_partition(g);
    if (g.k() > exact_cap)
        throw InstanceTooLarge("exact maximal sub-matrix on k=" + std::to_string(g.k()), g.k(),
                               exact_cap);
    ExactSearch search(g);
    search.dfs(0);
    CliquePartition p;
    p.blocks = std::move(search.best);
    p.canonicalize();
    return p;
}

} // namespace gtb
