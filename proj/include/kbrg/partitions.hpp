#pragma once

// Pair partitions of [2k], the permutation gamma*pi and the rooted walk
// tree obtained by collapsing the closed walk 1 -> 2 -> ... -> 2k -> 1 along
// the blocks of gamma*pi.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kbrg {

/// Perfect matching of {1, ..., 2k}. Pairs are stored (a, b) with a < b and
/// sorted by their first element.
struct PairPartition {
  int k = 0;
  std::vector<std::pair<int, int>> pairs;
  bool crossing = false;

  /// Partner of element i (1-based).
  int partner(int i) const;
};

/// Validates and canonicalizes; computes the crossing flag.
PairPartition make_pair_partition(int k, std::vector<std::pair<int, int>> pairs);

bool is_crossing(const std::vector<std::pair<int, int>>& pairs);

std::uint64_t catalan(int k);

/// NC_2(2k) in lexicographic order of the pair lists. 1 <= k <= 8.
std::vector<PairPartition> enumerate_nc2(int k);

/// All (2k-1)!! pair partitions, lexicographic. 1 <= k <= 6.
std::vector<PairPartition> enumerate_pair_partitions(int k);

/// Cycles of gamma o pi, gamma = (1 2 ... 2k), as ordered blocks: block 0
/// holds 1, each next block starts at the smallest element not yet used.
struct GammaPiStructure {
  std::vector<std::vector<int>> blocks;  // elements are 1-based, ascending
  std::vector<int> block_of;             // block_of[i-1] = block index of i

  std::size_t block_count() const { return blocks.size(); }
};

GammaPiStructure gamma_pi(const PairPartition& pi);

/// Graph on the blocks of gamma*pi. `walk` lists the 2k directed steps
/// block_of(t) -> block_of(t+1). For non-crossing pi this is a rooted tree
/// with k+1 vertices and k edges; otherwise `is_tree` is false and `edges`
/// is the collapsed multigraph skeleton.
struct WalkTree {
  int vertex_count = 0;
  int root = 0;
  std::vector<std::pair<int, int>> edges;  // undirected, (lo, hi), sorted, unique
  std::vector<std::pair<int, int>> walk;
  std::vector<int> edge_traversals;        // walk steps using each edge
  bool is_tree = false;

  /// Children lists when rooted at `root` (tree case only).
  std::vector<std::vector<int>> children() const;
  std::vector<int> degrees() const;
};

WalkTree walk_tree(const PairPartition& pi);

/// Golden-file line: "k; (a,b)(c,d)...; blocks={..}{..}; tree-edges=(u,v)..."
/// with 1-based block numbers.
std::string format_partition_line(const PairPartition& pi);

}  // namespace kbrg
