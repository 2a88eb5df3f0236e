// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_GRAPH_HPP
#define ZFPF_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zfpf/errors.hpp"

namespace zfpf {

using Vertex = std::uint32_t;

/// A vertex subset as a strictly increasing list of vertex ids.
using VertexSet = std::vector<Vertex>;

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (Vertex v : s) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Opaque canonical byte string attached to a vertex. Instantiating models
/// must emit identical bytes for isomorphic local structures.
struct VertexLabel {
  std::string bytes;
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

/// Immutable, simple, undirected, vertex-labeled graph with sorted adjacency.
class DependencyGraph {
 public:
  DependencyGraph() = default;

  /// Builds a graph on `n` vertices. Duplicate edges are merged; self-loops
  /// and out-of-range endpoints are rejected. Missing labels default to empty.
  DependencyGraph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                  std::vector<VertexLabel> labels = {})
      : adjacency_(n), labels_(std::move(labels)) {
    if (labels_.empty()) labels_.resize(n);
    if (labels_.size() != n) throw InputError("label count does not match vertex count");
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw InputError("edge endpoint out of range");
      if (u == v) throw InputError("self-loop in dependency graph");
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
  }

  explicit DependencyGraph(std::size_t n) : adjacency_(n), labels_(n) {}

  std::size_t size() const noexcept { return adjacency_.size(); }
  bool empty() const noexcept { return adjacency_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  const VertexLabel& label(Vertex v) const { return labels_.at(v); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& nbrs : adjacency_) d = std::max(d, nbrs.size());
    return d;
  }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency_) twice += nbrs.size();
    return twice / 2;
  }

  friend bool operator==(const DependencyGraph&, const DependencyGraph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<VertexLabel> labels_;
};

namespace detail {

inline void check_subset(const DependencyGraph& g, std::span<const Vertex> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= g.size()) throw InputError("subset vertex out of range");
    if (i > 0 && s[i - 1] >= s[i]) throw InputError("subset must be sorted and duplicate-free");
  }
}

inline std::size_t position_in(std::span<const Vertex> s, Vertex v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v) return s.size();
  return static_cast<std::size_t>(it - s.begin());
}

}  // namespace detail

/// G[S] with vertices renumbered 0..|S|-1 in S-order; labels carried over.
inline DependencyGraph induced_subgraph(const DependencyGraph& g, std::span<const Vertex> s) {
  detail::check_subset(g, s);
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<VertexLabel> labels;
  labels.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    labels.push_back(g.label(s[i]));
    for (Vertex w : g.neighbors(s[i])) {
      if (w <= s[i]) continue;
      std::size_t j = detail::position_in(s, w);
      if (j < s.size()) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return DependencyGraph(s.size(), edges, std::move(labels));
}

/// True iff G[S] is connected (the empty set counts as connected). `s` must be sorted.
inline bool is_connected_subset(const DependencyGraph& g, std::span<const Vertex> s) {
  if (s.size() <= 1) return true;
  std::vector<char> seen(s.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(s[i])) {
      std::size_t j = detail::position_in(s, w);
      if (j < s.size() && !seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == s.size();
}

/// Empty graph counts as connected.
inline bool is_connected(const DependencyGraph& g) {
  if (g.size() <= 1) return true;
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.size();
}

/// Connected components, each sorted, ordered by smallest vertex.
inline std::vector<VertexSet> components(const DependencyGraph& g) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.size(), 0);
  for (Vertex root = 0; root < g.size(); ++root) {
    if (seen[root]) continue;
    VertexSet comp{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : g.neighbors(comp[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Prefix tree over sorted vertex lists. Each stored key carries an integer payload.
class SubsetTrie {
 public:
  SubsetTrie() : nodes_(1) {}

  /// Inserts `key`; returns false if it was already present.
  bool insert(std::span<const Vertex> key, std::size_t payload) {
    std::size_t node = 0;
    for (Vertex v : key) node = child_or_create(node, v);
    if (nodes_[node].payload) return false;
    nodes_[node].payload = payload;
    return true;
  }

  std::optional<std::size_t> find(std::span<const Vertex> key) const {
    std::size_t node = 0;
    for (Vertex v : key) {
      const auto& kids = nodes_[node].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), v,
                                 [](const auto& e, Vertex x) { return e.first < x; });
      if (it == kids.end() || it->first != v) return std::nullopt;
      node = it->second;
    }
    return nodes_[node].payload;
  }

  void set_payload(std::span<const Vertex> key, std::size_t payload) {
    std::size_t node = 0;
    for (Vertex v : key) node = child_or_create(node, v);
    nodes_[node].payload = payload;
  }

 private:
  struct Node {
    std::vector<std::pair<Vertex, std::size_t>> children;  // sorted by vertex
    std::optional<std::size_t> payload;
  };

  std::size_t child_or_create(std::size_t node, Vertex v) {
    auto& kids = nodes_[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), v,
                               [](const auto& e, Vertex x) { return e.first < x; });
    if (it != kids.end() && it->first == v) return it->second;
    std::size_t fresh = nodes_.size();
    nodes_[node].children.insert(it, {v, fresh});
    nodes_.emplace_back();
    return fresh;
  }

  std::vector<Node> nodes_;
};

/// All vertex subsets S with 1 <= |S| <= max_size and G[S] connected.
///
/// Each subset is filed under its smallest vertex (its root). Iteration order
/// is root ascending, then size ascending, then lexicographic; `id(S)` is the
/// position of S in that order.
class ConnectedSubsetIndex {
 public:
  std::size_t size() const noexcept { return subsets_.size(); }
  std::size_t max_size() const noexcept { return max_size_; }
  std::size_t vertex_count() const noexcept { return ranges_.size(); }

  const std::vector<VertexSet>& subsets() const noexcept { return subsets_; }
  const VertexSet& operator[](std::size_t id) const { return subsets_.at(id); }

  /// Subsets rooted at `root` of exactly `k` vertices.
  std::span<const VertexSet> rooted(Vertex root, std::size_t k) const {
    if (k == 0 || k > max_size_) return {};
    auto [lo, hi] = ranges_.at(root).at(k - 1);
    return std::span<const VertexSet>(subsets_).subspan(lo, hi - lo);
  }

  std::optional<std::size_t> id(std::span<const Vertex> s) const { return trie_.find(s); }
  bool contains(std::span<const Vertex> s) const { return id(s).has_value(); }

  /// Number of stored subsets of size k that contain v.
  std::size_t count_containing(Vertex v, std::size_t k) const {
    std::size_t c = 0;
    for (Vertex r = 0; r <= v && r < ranges_.size(); ++r)
      for (const auto& s : rooted(r, k))
        if (std::binary_search(s.begin(), s.end(), v)) ++c;
    return c;
  }

 private:
  friend ConnectedSubsetIndex enumerate_connected_subsets(const DependencyGraph&, std::size_t);

  std::size_t max_size_ = 0;
  std::vector<VertexSet> subsets_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ranges_;
  SubsetTrie trie_;
};

/// Builds the index by inductive extension: every rooted set of size j-1 is
/// grown by each neighbor larger than its root; the trie drops duplicates.
inline ConnectedSubsetIndex enumerate_connected_subsets(const DependencyGraph& g,
                                                        std::size_t max_size) {
  if (max_size == 0) throw DomainError("enumerate_connected_subsets: max size must be positive");
  ConnectedSubsetIndex idx;
  idx.max_size_ = max_size;
  idx.ranges_.resize(g.size());
  std::size_t placeholder = 0;
  std::vector<Vertex> frontier;
  for (Vertex root = 0; root < g.size(); ++root) {
    std::vector<VertexSet> level{VertexSet{root}};
    for (std::size_t k = 1; k <= max_size; ++k) {
      std::sort(level.begin(), level.end());
      std::size_t lo = idx.subsets_.size();
      for (auto& s : level) idx.subsets_.push_back(s);
      idx.ranges_[root].emplace_back(lo, idx.subsets_.size());
      if (k == max_size || level.empty()) {
        for (std::size_t rest = k + 1; rest <= max_size; ++rest)
          idx.ranges_[root].emplace_back(idx.subsets_.size(), idx.subsets_.size());
        break;
      }
      std::vector<VertexSet> next;
      for (const auto& s : level) {
        frontier.clear();
        for (Vertex w : s)
          for (Vertex u : g.neighbors(w))
            if (u > root && !std::binary_search(s.begin(), s.end(), u)) frontier.push_back(u);
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        for (Vertex u : frontier) {
          VertexSet t;
          t.reserve(s.size() + 1);
          auto pos = std::lower_bound(s.begin(), s.end(), u);
          t.insert(t.end(), s.begin(), pos);
          t.push_back(u);
          t.insert(t.end(), pos, s.end());
          if (idx.trie_.insert(t, placeholder)) next.push_back(std::move(t));
        }
      }
      level = std::move(next);
    }
  }
  for (std::size_t i = 0; i < idx.subsets_.size(); ++i) idx.trie_.set_payload(idx.subsets_[i], i);
  return idx;
}

}  // namespace zfpf

#endif  // ZFPF_GRAPH_HPP
