#include "kbrg/partitions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "kbrg/errors.hpp"

namespace kbrg {

int PairPartition::partner(int i) const {
  for (const auto& [a, b] : pairs) {
    if (a == i) return b;
    if (b == i) return a;
  }
  throw ParameterError("element " + std::to_string(i) + " not covered by the partition");
}

bool is_crossing(const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& [a, b] : pairs)
    for (const auto& [c, d] : pairs)
      if (a < c && c < b && b < d) return true;
  return false;
}

PairPartition make_pair_partition(int k, std::vector<std::pair<int, int>> pairs) {
  if (k < 1) throw ParameterError("pair partition needs k >= 1");
  if (pairs.size() != static_cast<std::size_t>(k)) throw ParameterError("pair partition of [2k] needs k pairs");
  std::vector<int> seen(static_cast<std::size_t>(2 * k) + 1, 0);
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
    if (a < 1 || b > 2 * k || a == b) throw ParameterError("pair entries must be distinct elements of [2k]");
    if (seen[static_cast<std::size_t>(a)]++ || seen[static_cast<std::size_t>(b)]++)
      throw ParameterError("pairs of a pair partition must be disjoint");
  }
  std::sort(pairs.begin(), pairs.end());
  PairPartition pi;
  pi.k = k;
  pi.crossing = is_crossing(pairs);
  pi.pairs = std::move(pairs);
  return pi;
}

std::uint64_t catalan(int k) {
  if (k < 0) throw ParameterError("Catalan index must be non-negative");
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
  return c;
}

namespace {

// Non-crossing matchings of the consecutive range [lo, hi] (even length):
// lo pairs with some j at odd distance, splitting into two independent ranges.
void nc_matchings(int lo, int hi, std::vector<std::pair<int, int>>& current,
                  const std::function<void()>& emit) {
  if (lo > hi) {
    emit();
    return;
  }
  for (int j = lo + 1; j <= hi; j += 2) {
    current.emplace_back(lo, j);
    nc_matchings(lo + 1, j - 1, current, [&] { nc_matchings(j + 1, hi, current, emit); });
    current.pop_back();
  }
}

void all_matchings(std::vector<int>& free_elems, std::vector<std::pair<int, int>>& current,
                   std::vector<std::vector<std::pair<int, int>>>& out) {
  if (free_elems.empty()) {
    out.push_back(current);
    return;
  }
  const int first = free_elems.front();
  for (std::size_t idx = 1; idx < free_elems.size(); ++idx) {
    const int other = free_elems[idx];
    std::vector<int> rest;
    for (std::size_t t = 1; t < free_elems.size(); ++t)
      if (t != idx) rest.push_back(free_elems[t]);
    current.emplace_back(first, other);
    all_matchings(rest, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<PairPartition> enumerate_nc2(int k) {
  if (k < 1 || k > 8) throw ParameterError("enumerate_nc2 supports 1 <= k <= 8 (got " + std::to_string(k) + ")");
  std::vector<PairPartition> out;
  std::vector<std::pair<int, int>> current;
  nc_matchings(1, 2 * k, current, [&] { out.push_back(make_pair_partition(k, current)); });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.pairs < b.pairs; });
  return out;
}

std::vector<PairPartition> enumerate_pair_partitions(int k) {
  if (k < 1 || k > 6)
    throw ParameterError("enumerate_pair_partitions supports 1 <= k <= 6 (got " + std::to_string(k) + ")");
  std::vector<int> elems(static_cast<std::size_t>(2 * k));
  std::iota(elems.begin(), elems.end(), 1);
  std::vector<std::vector<std::pair<int, int>>> raw;
  std::vector<std::pair<int, int>> current;
  all_matchings(elems, current, raw);
  std::vector<PairPartition> out;
  out.reserve(raw.size());
  for (auto& r : raw) out.push_back(make_pair_partition(k, std::move(r)));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.pairs < b.pairs; });
  return out;
}

GammaPiStructure gamma_pi(const PairPartition& pi) {
  const int len = 2 * pi.k;
  std::vector<int> partner(static_cast<std::size_t>(len) + 1, 0);
  for (const auto& [a, b] : pi.pairs) {
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  // gamma(pi(i)), with gamma the cyclic shift i -> i+1 mod 2k
  auto step = [&](int i) { return partner[static_cast<std::size_t>(i)] % len + 1; };

  GammaPiStructure g;
  g.block_of.assign(static_cast<std::size_t>(len), -1);
  for (int start = 1; start <= len; ++start) {
    if (g.block_of[static_cast<std::size_t>(start - 1)] >= 0) continue;
    const int id = static_cast<int>(g.blocks.size());
    std::vector<int> block;
    for (int i = start; g.block_of[static_cast<std::size_t>(i - 1)] < 0; i = step(i)) {
      g.block_of[static_cast<std::size_t>(i - 1)] = id;
      block.push_back(i);
    }
    std::sort(block.begin(), block.end());
    g.blocks.push_back(std::move(block));
  }
  return g;
}

std::vector<std::vector<int>> WalkTree::children() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(vertex_count));
  std::vector<int> parent(static_cast<std::size_t>(vertex_count), -2);
  std::vector<int> stack{root};
  parent[static_cast<std::size_t>(root)] = -1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (parent[static_cast<std::size_t>(v)] != -2) continue;
      parent[static_cast<std::size_t>(v)] = u;
      kids[static_cast<std::size_t>(u)].push_back(v);
      stack.push_back(v);
    }
  }
  for (auto& c : kids) std::sort(c.begin(), c.end());
  return kids;
}

std::vector<int> WalkTree::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& [u, v] : edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

WalkTree walk_tree(const PairPartition& pi) {
  const auto g = gamma_pi(pi);
  const int len = 2 * pi.k;
  WalkTree t;
  t.vertex_count = static_cast<int>(g.block_count());
  t.root = g.block_of[0];
  std::set<std::pair<int, int>> unique;
  for (int s = 1; s <= len; ++s) {
    const int from = g.block_of[static_cast<std::size_t>(s - 1)];
    const int to = g.block_of[static_cast<std::size_t>(s % len)];
    t.walk.emplace_back(from, to);
    if (from != to) unique.emplace(std::min(from, to), std::max(from, to));
  }
  t.edges.assign(unique.begin(), unique.end());
  t.edge_traversals.assign(t.edges.size(), 0);
  for (const auto& [from, to] : t.walk) {
    if (from == to) continue;
    const auto key = std::make_pair(std::min(from, to), std::max(from, to));
    const auto it = std::lower_bound(t.edges.begin(), t.edges.end(), key);
    ++t.edge_traversals[static_cast<std::size_t>(it - t.edges.begin())];
  }

  // connected + (edges == vertices - 1) + no self-loop steps => tree
  bool self_loop = std::any_of(t.walk.begin(), t.walk.end(), [](const auto& s) { return s.first == s.second; });
  std::vector<int> comp(static_cast<std::size_t>(t.vertex_count));
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return comp[static_cast<std::size_t>(x)] == x ? x : comp[static_cast<std::size_t>(x)] = find(comp[static_cast<std::size_t>(x)]);
  };
  int components = t.vertex_count;
  for (const auto& [u, v] : t.edges) {
    const int a = find(u);
    const int b = find(v);
    if (a != b) {
      comp[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  t.is_tree = !self_loop && components == 1 &&
              t.edges.size() + 1 == static_cast<std::size_t>(t.vertex_count);
  return t;
}

std::string format_partition_line(const PairPartition& pi) {
  std::ostringstream os;
  os << pi.k << "; ";
  for (const auto& [a, b] : pi.pairs) os << '(' << a << ',' << b << ')';
  const auto g = gamma_pi(pi);
  os << "; blocks=";
  for (const auto& block : g.blocks) {
    os << '{';
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? "," : "") << block[i];
    os << '}';
  }
  const auto tree = walk_tree(pi);
  os << "; tree-edges=";
  for (const auto& [u, v] : tree.edges) os << '(' << u + 1 << ',' << v + 1 << ')';
  return os.str();
}

}  // namespace kbrg
