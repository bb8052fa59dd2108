#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amalgam/group_ops.hpp"
#include "amalgam/perm.hpp"
#include "amalgam/perm_group.hpp"

namespace amalgam {

// Cayley-graph scaffolding for a group with a chosen generating tuple: the
// element list in enumeration order, one BFS edge table, and for each element
// the (parent, generator) pair that discovered it.
struct CayleyGraph {
  std::vector<Perm> elements;                       // enumeration order
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  std::vector<Perm> gens;
  std::vector<std::uint32_t> bfs_order;             // element ids, identity first
  std::vector<std::vector<std::uint32_t>> edge;     // edge[e][k] = id of e * gens[k]
};

inline CayleyGraph cayley_graph(const PermGroup& g, const std::vector<Perm>& gens,
                                std::uint64_t cap = kElementCap) {
  CayleyGraph c;
  c.elements = g.elements(cap);
  c.gens = gens;
  for (std::uint32_t i = 0; i < c.elements.size(); ++i)
    c.index.emplace(c.elements[i], i);
  c.edge.assign(c.elements.size(), std::vector<std::uint32_t>(gens.size()));
  for (std::uint32_t e = 0; e < c.elements.size(); ++e)
    for (std::size_t k = 0; k < gens.size(); ++k)
      c.edge[e][k] = c.index.at(c.elements[e] * gens[k]);
  // BFS from the identity
  std::uint32_t id = c.index.at(Perm(g.degree()));
  std::vector<bool> seen(c.elements.size(), false);
  c.bfs_order = {id};
  seen[id] = true;
  for (std::size_t qi = 0; qi < c.bfs_order.size(); ++qi)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::uint32_t t = c.edge[c.bfs_order[qi]][k];
      if (!seen[t]) {
        seen[t] = true;
        c.bfs_order.push_back(t);
      }
    }
  if (c.bfs_order.size() != c.elements.size())
    throw std::invalid_argument("tuple does not generate the group");
  return c;
}

// First generating pair (then triple) in element-enumeration order, with the
// first component restricted to elements of maximal order for speed.
inline std::vector<Perm> find_generating_tuple(const PermGroup& g,
                                               std::uint64_t cap = kElementCap) {
  std::vector<Perm> elems = g.elements(cap);
  const std::uint64_t target = g.order();
  if (target == 1) return {};
  std::uint64_t maxord = 0;
  for (const Perm& e : elems) maxord = std::max(maxord, e.order());
  std::vector<const Perm*> firsts;
  for (const Perm& e : elems)
    if (e.order() == maxord) firsts.push_back(&e);
  auto generates = [&](const std::vector<Perm>& tup) {
    PermGroup h(g.degree(), tup);
    // Cheap rejection first: a proper subgroup of a transitive group of the
    // same degree is intransitive exactly when degree == order (regular case).
    return h.order() == target;
  };
  for (const Perm* a : firsts)
    for (const Perm& b : elems) {
      if (b.is_identity()) continue;
      if (generates({*a, b})) return {*a, b};
    }
  for (const Perm* a : firsts)
    for (const Perm& b : elems)
      for (const Perm& c : elems) {
        if (b.is_identity() || c.is_identity()) continue;
        if (generates({*a, b, c})) return {*a, b, c};
      }
  throw std::length_error("no generating pair or triple found");
}

// Checks whether gens -> images extends to an isomorphism, walking the Cayley
// graph of G once; aborts on the first violated edge.  On success returns the
// full element map phi (indexed like cay.elements).
inline std::optional<std::vector<Perm>> extend_generator_map(
    const CayleyGraph& cay, std::uint32_t image_degree,
    const std::vector<Perm>& images) {
  std::vector<Perm> phi(cay.elements.size());
  std::vector<bool> known(cay.elements.size(), false);
  std::uint32_t id = cay.index.at(Perm(cay.elements[0].degree()));
  phi[id] = Perm(image_degree);
  known[id] = true;
  for (std::uint32_t e : cay.bfs_order)
    for (std::size_t k = 0; k < cay.gens.size(); ++k) {
      std::uint32_t t = cay.edge[e][k];
      Perm v = phi[e] * images[k];
      if (known[t]) {
        if (phi[t] != v) return std::nullopt;
      } else {
        phi[t] = std::move(v);
        known[t] = true;
      }
    }
  // Injectivity: group orders already match, so distinctness suffices.
  std::unordered_set<Perm, PermHash> seen;
  for (const Perm& p : phi)
    if (!seen.insert(p).second) return std::nullopt;
  return phi;
}

struct GroupIso {
  std::vector<Perm> domain_gens;
  std::vector<Perm> image_gens;
};

// Searches for an isomorphism G -> H.  Pre-screens by order and element-order
// histogram, then tries images for a generating tuple of G: the first slot
// ranges over conjugacy class representatives of H (composing with an inner
// automorphism is free), the rest over all order-matching elements.
inline std::optional<GroupIso> isomorphic(const PermGroup& g, const PermGroup& h,
                                          std::uint64_t order_cap = 5000) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.order() > order_cap) throw std::length_error("isomorphic: order cap exceeded");
  if (order_histogram(g) != order_histogram(h)) return std::nullopt;
  if (g.order() == 1) return GroupIso{{}, {}};
  std::vector<Perm> tuple = find_generating_tuple(g);
  CayleyGraph cay = cayley_graph(g, tuple);
  std::vector<Perm> helems = h.elements(order_cap);
  std::vector<Perm> first_candidates;
  for (const auto& cls : conjugacy_classes(h))
    if (cls[0].order() == tuple[0].order()) first_candidates.push_back(cls[0]);
  std::vector<std::vector<const Perm*>> buckets(tuple.size());
  for (std::size_t k = 1; k < tuple.size(); ++k)
    for (const Perm& e : helems)
      if (e.order() == tuple[k].order()) buckets[k].push_back(&e);

  std::vector<Perm> images(tuple.size(), Perm(h.degree()));
  std::function<std::optional<GroupIso>(std::size_t)> rec =
      [&](std::size_t k) -> std::optional<GroupIso> {
    if (k == tuple.size()) {
      if (extend_generator_map(cay, h.degree(), images))
        return GroupIso{tuple, images};
      return std::nullopt;
    }
    if (k == 0) {
      for (const Perm& cand : first_candidates) {
        images[0] = cand;
        if (auto r = rec(1)) return r;
      }
      return std::nullopt;
    }
    for (const Perm* cand : buckets[k]) {
      // cheap invariant: order of the product with the previous image
      if ((tuple[k - 1] * tuple[k]).order() != (images[k - 1] * *cand).order())
        continue;
      images[k] = *cand;
      if (auto r = rec(k + 1)) return r;
    }
    return std::nullopt;
  };
  return rec(0);
}

// Re-verifies a claimed isomorphism independently of the search.
inline bool check_is_isomorphism(const PermGroup& g, const PermGroup& h,
                                 const std::vector<Perm>& domain_gens,
                                 const std::vector<Perm>& image_gens) {
  CayleyGraph cay = cayley_graph(g, domain_gens);
  if (!extend_generator_map(cay, h.degree(), image_gens)) return false;
  PermGroup img(h.degree(), image_gens);
  return img.order() == h.order() && is_subgroup_of(img, h);
}

// The full automorphism group of a small group, found by generator-image
// search, acting on the element list (so its degree is |G|).
struct AutomorphismGroup {
  std::vector<Perm> element_list;  // of G, enumeration order
  std::vector<Perm> all;           // every automorphism as a permutation of element indices
  PermGroup group;                 // generated by `all`, degree |G|
  PermGroup inner;                 // conjugations by the generators of G
};

inline AutomorphismGroup automorphisms(const PermGroup& g, std::uint64_t cap = 200) {
  if (g.order() > cap) throw std::length_error("automorphisms: order cap exceeded");
  AutomorphismGroup out;
  out.element_list = g.elements(cap);
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  for (std::uint32_t i = 0; i < out.element_list.size(); ++i)
    index.emplace(out.element_list[i], i);
  const std::uint32_t n = static_cast<std::uint32_t>(out.element_list.size());

  auto index_perm_of = [&](const std::vector<Perm>& phi_by_cayley,
                           const CayleyGraph& cay) {
    // phi is indexed like cay.elements == out.element_list
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t i = 0; i < n; ++i) img[i] = index.at(phi_by_cayley[i]);
    return Perm(std::move(img));
  };

  if (g.order() == 1) {
    out.group = PermGroup(1);
    out.inner = PermGroup(1);
    out.all = {Perm(1)};
    return out;
  }

  std::vector<Perm> tuple = find_generating_tuple(g, cap);
  CayleyGraph cay = cayley_graph(g, tuple, cap);
  std::vector<std::vector<const Perm*>> buckets(tuple.size());
  for (std::size_t k = 0; k < tuple.size(); ++k)
    for (const Perm& e : out.element_list)
      if (e.order() == tuple[k].order()) buckets[k].push_back(&e);

  std::vector<Perm> images(tuple.size(), Perm(g.degree()));
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == tuple.size()) {
      if (auto phi = extend_generator_map(cay, g.degree(), images))
        out.all.push_back(index_perm_of(*phi, cay));
      return;
    }
    for (const Perm* cand : buckets[k]) {
      if (k > 0 &&
          (tuple[k - 1] * tuple[k]).order() != (images[k - 1] * *cand).order())
        continue;
      images[k] = *cand;
      rec(k + 1);
    }
  };
  rec(0);
  out.group = reduce_to_group(n, out.all);

  std::vector<Perm> inner_gens;
  for (const Perm& x : g.generators()) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t i = 0; i < n; ++i)
      img[i] = index.at(out.element_list[i].conjugated_by(x));
    inner_gens.emplace_back(std::move(img));
  }
  out.inner = PermGroup(n, inner_gens);
  return out;
}

}  // namespace amalgam
