#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nodal_stab/error.hpp"
#include "nodal_stab/rational.hpp"

namespace nodal_stab {

using Id = Int;

/// An irreducible component of the special fibre, kept only through its
/// numerical decorations.
struct Component {
  Id id = 0;
  Int geometric_genus = 0;  // genus of the normalization
  Int internal_nodes = 0;   // self-nodes of this component

  Int arithmetic_genus() const { return geometric_genus + internal_nodes; }
  bool is_rational() const { return geometric_genus == 0 && internal_nodes == 0; }

  friend bool operator==(const Component&, const Component&) = default;
};

/// Unvalidated curve data, exactly as it arrives from a document.
struct CurveDescription {
  std::vector<Component> components;
  std::vector<std::pair<Id, Id>> edges;
};

struct CurveReport {
  std::size_t components = 0;
  std::size_t edges = 0;
  Int arithmetic_genus = 0;
  bool genus_at_least_two = false;  // reported, never enforced
};

namespace detail {

inline std::map<Id, std::size_t> index_components(const std::vector<Component>& comps) {
  std::map<Id, std::size_t> index;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& c = comps[k];
    if (c.id <= 0)
      throw Error(ErrorCode::InvalidComponent, "component ids must be positive, got " + std::to_string(c.id));
    if (c.geometric_genus < 0 || c.internal_nodes < 0)
      throw Error(ErrorCode::InvalidComponent, "negative genus or node count on component " + std::to_string(c.id));
    if (!index.emplace(c.id, k).second)
      throw Error(ErrorCode::DuplicateId, "component id " + std::to_string(c.id) + " appears twice");
  }
  return index;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace detail

/// Checks that the dual graph is a tree with simple edges.
/// Throws CycleDetected, Disconnected or MultiEdge (plus id-level errors).
inline CurveReport validate_curve(const CurveDescription& desc) {
  if (desc.components.empty()) throw Error(ErrorCode::EmptyCurve, "a curve needs at least one component");
  auto index = detail::index_components(desc.components);

  std::set<std::pair<Id, Id>> seen;
  for (auto [a, b] : desc.edges) {
    if (!index.count(a) || !index.count(b))
      throw Error(ErrorCode::UnknownComponent,
                  "edge {" + std::to_string(a) + "," + std::to_string(b) + "} references an unknown id");
    if (a == b) throw Error(ErrorCode::SelfLoop, "edge at component " + std::to_string(a) + " joins it to itself");
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
      throw Error(ErrorCode::MultiEdge,
                  "components " + std::to_string(a) + " and " + std::to_string(b) + " meet more than once");
  }

  detail::UnionFind uf(desc.components.size());
  for (auto [a, b] : desc.edges) {
    if (!uf.unite(index.at(a), index.at(b)))
      throw Error(ErrorCode::CycleDetected,
                  "edge {" + std::to_string(a) + "," + std::to_string(b) + "} closes a cycle");
  }
  if (desc.edges.size() + 1 != desc.components.size())
    throw Error(ErrorCode::Disconnected, "dual graph has " + std::to_string(desc.components.size() - desc.edges.size()) +
                                             " connected components");

  CurveReport report;
  report.components = desc.components.size();
  report.edges = desc.edges.size();
  for (const auto& c : desc.components) report.arithmetic_genus += c.arithmetic_genus();
  report.genus_at_least_two = report.arithmetic_genus >= 2;
  return report;
}

/// A validated tree-like curve. Components keep their input order; every
/// accessor taking a `std::size_t` uses that position.
class TreeLikeCurve {
 public:
  explicit TreeLikeCurve(CurveDescription desc) : desc_(std::move(desc)) {
    report_ = validate_curve(desc_);
    index_ = detail::index_components(desc_.components);
    adjacency_.resize(desc_.components.size());
    for (auto [a, b] : desc_.edges) {
      auto ia = index_.at(a), ib = index_.at(b);
      adjacency_[ia].push_back(ib);
      adjacency_[ib].push_back(ia);
    }
    for (auto& nbrs : adjacency_)
      std::sort(nbrs.begin(), nbrs.end(), [&](auto x, auto y) { return id(x) < id(y); });
  }

  std::size_t size() const { return desc_.components.size(); }
  const std::vector<Component>& components() const { return desc_.components; }
  const std::vector<std::pair<Id, Id>>& edges() const { return desc_.edges; }
  const CurveDescription& description() const { return desc_; }
  const CurveReport& report() const { return report_; }

  const Component& component(std::size_t k) const { return desc_.components.at(k); }
  Id id(std::size_t k) const { return desc_.components.at(k).id; }
  bool contains(Id id) const { return index_.count(id) != 0; }

  std::size_t index_of(Id id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorCode::IndexOutOfRange, "no component with id " + std::to_string(id));
    return it->second;
  }

  const std::vector<std::size_t>& neighbors(std::size_t k) const { return adjacency_.at(k); }
  bool adjacent(std::size_t a, std::size_t b) const {
    const auto& n = adjacency_.at(a);
    return std::find(n.begin(), n.end(), b) != n.end();
  }

  /// Component ids in ascending order.
  std::vector<Id> ids() const {
    std::vector<Id> out;
    for (const auto& [id, k] : index_) out.push_back(id);
    return out;
  }

 private:
  CurveDescription desc_;
  CurveReport report_;
  std::map<Id, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// p_a of the whole curve: the tree contributes nothing beyond the components.
inline Int arithmetic_genus(const TreeLikeCurve& c) {
  Int total = 0;
  for (const auto& comp : c.components()) total += comp.arithmetic_genus();
  return total;
}

/// A component ordering in which every component but the last has exactly
/// one neighbour of higher order. Order indices run 1..N.
struct Ordering {
  std::vector<Id> perm;                // perm[i-1] = id of the component with order index i
  std::map<Id, std::size_t> position;  // id -> order index
  std::vector<std::size_t> nu;         // nu[i-1] = order index of the unique higher neighbour; 0 for i = N
  std::vector<std::vector<Id>> G;      // G[i-1]: ids of G(i), ascending
  std::vector<std::vector<Id>> B;      // B[i-1]: ids of B(i), ascending

  std::size_t size() const { return perm.size(); }

  friend bool operator==(const Ordering&, const Ordering&) = default;
};

/// Builds the full ordering data (nu, G, B) from a permutation of the ids.
/// Throws OrderingMismatch if `perm` is not an admissible ordering of `c`.
inline Ordering make_ordering(const TreeLikeCurve& c, std::vector<Id> perm) {
  const std::size_t n = c.size();
  if (perm.size() != n) throw Error(ErrorCode::OrderingMismatch, "ordering length differs from component count");

  Ordering ord;
  std::vector<std::size_t> pos(n, 0);  // by curve index
  for (std::size_t i = 0; i < n; ++i) {
    if (!c.contains(perm[i]))
      throw Error(ErrorCode::OrderingMismatch, "ordering names unknown id " + std::to_string(perm[i]));
    auto k = c.index_of(perm[i]);
    if (pos[k] != 0) throw Error(ErrorCode::OrderingMismatch, "ordering repeats id " + std::to_string(perm[i]));
    pos[k] = i + 1;
    ord.position[perm[i]] = i + 1;
  }
  ord.perm = std::move(perm);
  ord.nu.assign(n, 0);
  ord.G.resize(n);
  ord.B.resize(n);

  for (std::size_t i = 1; i <= n; ++i) {
    auto k = c.index_of(ord.perm[i - 1]);
    if (i == n) {
      ord.G[i - 1] = c.ids();
      continue;
    }
    std::vector<std::size_t> higher;
    for (auto nb : c.neighbors(k))
      if (pos[nb] > i) higher.push_back(nb);
    if (higher.size() != 1)
      throw Error(ErrorCode::OrderingMismatch, "component " + std::to_string(ord.perm[i - 1]) + " at order index " +
                                                   std::to_string(i) + " has " + std::to_string(higher.size()) +
                                                   " higher neighbours");
    ord.nu[i - 1] = pos[higher.front()];

    // B(i): the piece of the curve minus Y_i that contains Y_nu(i).
    std::vector<bool> in_b(n, false);
    std::deque<std::size_t> queue{higher.front()};
    in_b[higher.front()] = true;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto nb : c.neighbors(v))
        if (nb != k && !in_b[nb]) {
          in_b[nb] = true;
          queue.push_back(nb);
        }
    }
    for (std::size_t v = 0; v < n; ++v) (in_b[v] ? ord.B : ord.G)[i - 1].push_back(c.id(v));
    std::sort(ord.G[i - 1].begin(), ord.G[i - 1].end());
    std::sort(ord.B[i - 1].begin(), ord.B[i - 1].end());
  }
  return ord;
}

/// Leaf-pruning ordering. Leaves are consumed first-in first-out: the initial
/// leaves in ascending id order, then each component as soon as pruning
/// turns it into a leaf.
inline Ordering prune_ordering(const TreeLikeCurve& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> degree(n);
  std::vector<std::size_t> initial;
  for (std::size_t k = 0; k < n; ++k) {
    degree[k] = c.neighbors(k).size();
    if (degree[k] <= 1) initial.push_back(k);
  }
  std::sort(initial.begin(), initial.end(), [&](auto a, auto b) { return c.id(a) < c.id(b); });

  std::deque<std::size_t> leaves(initial.begin(), initial.end());
  std::vector<bool> removed(n, false);
  std::vector<Id> perm;
  while (perm.size() + 1 < n) {
    auto v = leaves.front();
    leaves.pop_front();
    removed[v] = true;
    perm.push_back(c.id(v));
    for (auto nb : c.neighbors(v)) {
      if (removed[nb]) continue;
      if (--degree[nb] == 1) leaves.push_back(nb);
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!removed[k]) perm.push_back(c.id(k));
  return make_ordering(c, std::move(perm));
}

struct Decomposition {
  std::vector<Id> G;
  std::vector<Id> B;
  std::optional<std::pair<Id, Id>> boundary;  // the node {Y_i, Y_nu(i)}; empty for i = N
};

/// Splits the curve at order index i (1-based).
inline Decomposition decompose(const TreeLikeCurve& c, const Ordering& ord, std::size_t i) {
  if (i < 1 || i > ord.size() || ord.size() != c.size())
    throw Error(ErrorCode::IndexOutOfRange, "order index " + std::to_string(i) + " outside 1.." +
                                                std::to_string(c.size()));
  Decomposition d{ord.G[i - 1], ord.B[i - 1], std::nullopt};
  if (i < ord.size()) d.boundary = std::make_pair(ord.perm[i - 1], ord.perm[ord.nu[i - 1] - 1]);
  return d;
}

}  // namespace nodal_stab
