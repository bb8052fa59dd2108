#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "amalgam/gf3.hpp"
#include "amalgam/group_ops.hpp"
#include "amalgam/isomorphism.hpp"
#include "amalgam/perm.hpp"
#include "amalgam/perm_group.hpp"
#include "amalgam/report.hpp"
#include "amalgam/steiner.hpp"

namespace amalgam {

// A bipartite graph on labeled vertex classes.  Vertices are numbered left
// class first: left i is vertex i, right j is vertex nleft + j.
struct BipartiteGraph {
  std::vector<std::string> left_labels, right_labels;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (left, right)

  std::uint32_t nleft() const { return static_cast<std::uint32_t>(left_labels.size()); }
  std::uint32_t nright() const { return static_cast<std::uint32_t>(right_labels.size()); }
  std::uint32_t nverts() const { return nleft() + nright(); }

  std::vector<std::vector<std::uint32_t>> adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(nverts());
    for (auto [l, r] : edges) {
      adj[l].push_back(nleft() + r);
      adj[nleft() + r].push_back(l);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
  }

  bool connected() const {
    if (nverts() == 0) return true;
    auto adj = adjacency();
    std::vector<bool> seen(nverts(), false);
    std::vector<std::uint32_t> stack = {0};
    seen[0] = true;
    std::uint32_t count = 0;
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      ++count;
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    return count == nverts();
  }

  bool regular_of_degree(std::uint32_t k) const {
    std::vector<std::uint32_t> deg(nverts(), 0);
    for (auto [l, r] : edges) {
      ++deg[l];
      ++deg[nleft() + r];
    }
    for (auto d : deg)
      if (d != k) return false;
    return true;
  }

  // Length of a shortest cycle, or 0 for a forest.
  std::uint32_t girth() const {
    auto adj = adjacency();
    std::uint32_t best = 0;
    for (std::uint32_t src = 0; src < nverts(); ++src) {
      std::vector<std::int32_t> dist(nverts(), -1), parent(nverts(), -1);
      std::vector<std::uint32_t> queue = {src};
      dist[src] = 0;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::uint32_t v = queue[qi];
        for (auto w : adj[v]) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            parent[w] = static_cast<std::int32_t>(v);
            queue.push_back(w);
          } else if (static_cast<std::int32_t>(w) != parent[v]) {
            std::uint32_t len = static_cast<std::uint32_t>(dist[v] + dist[w] + 1);
            if (best == 0 || len < best) best = len;
          }
        }
      }
    }
    return best;
  }
};

// A group acting on a bipartite graph: one vertex permutation per group
// generator, verified to preserve the edge set and the bipartition classes.
struct GraphAction {
  PermGroup group;                 // the abstract group, in its own degree
  std::vector<Perm> vertex_gens;   // degree nverts(), aligned with group.generators()

  PermGroup vertex_group() const {
    std::uint32_t deg = vertex_gens.empty() ? 0 : vertex_gens[0].degree();
    return PermGroup(deg, vertex_gens);
  }
};

inline void validate_action(const BipartiteGraph& g, const GraphAction& act) {
  if (act.vertex_gens.size() != act.group.generators().size())
    throw std::invalid_argument("graph action: generator count mismatch");
  std::unordered_map<std::uint64_t, bool> edges;
  for (auto [l, r] : g.edges) edges[(std::uint64_t(l) << 32) | (g.nleft() + r)] = true;
  for (const Perm& vp : act.vertex_gens) {
    if (vp.degree() != g.nverts())
      throw std::invalid_argument("graph action: vertex permutation degree mismatch");
    for (std::uint32_t l = 0; l < g.nleft(); ++l)
      if (vp[l] >= g.nleft())
        throw std::invalid_argument("graph action: generator does not preserve classes");
    for (auto [l, r] : g.edges)
      if (!edges.count((std::uint64_t(vp[l]) << 32) | vp[g.nleft() + r]))
        throw std::invalid_argument("graph action: generator image is not an edge");
  }
}

// The coset graph of (G, X, Y): left vertices are right cosets of X, right
// vertices right cosets of Y, and Xg ~ Yh when the cosets intersect.  G acts
// by right translation.  Cosets are identified by their minimal
// representatives under the subgroup's stabilizer chain.
struct CosetGraphResult {
  BipartiteGraph graph;
  GraphAction action;
};

inline CosetGraphResult coset_graph(const PermGroup& g, const PermGroup& x,
                                    const PermGroup& y,
                                    std::uint64_t coset_cap = 100000) {
  auto enumerate_cosets = [&](const PermGroup& h) {
    std::vector<Perm> reps;
    std::unordered_map<Perm, std::uint32_t, PermHash> ids;
    Perm r0 = min_coset_rep(h, Perm(g.degree()));
    reps.push_back(r0);
    ids.emplace(r0, 0);
    for (std::size_t qi = 0; qi < reps.size(); ++qi) {
      if (reps.size() > coset_cap) throw std::length_error("coset_graph: coset cap exceeded");
      for (const Perm& s : g.generators()) {
        Perm c = min_coset_rep(h, reps[qi] * s);
        if (!ids.count(c)) {
          ids.emplace(c, static_cast<std::uint32_t>(reps.size()));
          reps.push_back(std::move(c));
        }
      }
    }
    return std::make_pair(reps, ids);
  };
  auto [xreps, xids] = enumerate_cosets(x);
  auto [yreps, yids] = enumerate_cosets(y);

  CosetGraphResult out;
  for (std::uint32_t i = 0; i < xreps.size(); ++i)
    out.graph.left_labels.push_back("X*" + std::to_string(i + 1));
  for (std::uint32_t j = 0; j < yreps.size(); ++j)
    out.graph.right_labels.push_back("Y*" + std::to_string(j + 1));

  // Right transversal of X over X∩Y: Y x g ranges exactly over the neighbor
  // cosets of Xg as x runs over it.
  PermGroup xy = subgroup_intersection(x, y);
  std::vector<Perm> transversal;
  {
    std::unordered_map<Perm, bool, PermHash> seen;
    x.for_each_element([&](const Perm& e) {
      Perm c = min_coset_rep(xy, e);
      if (!seen.count(c)) {
        seen.emplace(c, true);
        transversal.push_back(e);
      }
      return true;
    });
  }
  for (std::uint32_t i = 0; i < xreps.size(); ++i)
    for (const Perm& tr : transversal) {
      std::uint32_t j = yids.at(min_coset_rep(y, tr * xreps[i]));
      out.graph.edges.emplace_back(i, j);
    }
  std::sort(out.graph.edges.begin(), out.graph.edges.end());
  out.graph.edges.erase(std::unique(out.graph.edges.begin(), out.graph.edges.end()),
                        out.graph.edges.end());

  out.action.group = g;
  std::uint32_t nl = out.graph.nleft();
  for (const Perm& s : g.generators()) {
    std::vector<std::uint32_t> img(out.graph.nverts());
    for (std::uint32_t i = 0; i < xreps.size(); ++i)
      img[i] = xids.at(min_coset_rep(x, xreps[i] * s));
    for (std::uint32_t j = 0; j < yreps.size(); ++j)
      img[nl + j] = nl + yids.at(min_coset_rep(y, yreps[j] * s));
    out.action.vertex_gens.emplace_back(std::move(img));
  }
  validate_action(out.graph, out.action);
  return out;
}

// Incidence graph of the projective plane of order 3: 13 points against 13
// lines, a point joined to the lines through it.
inline BipartiteGraph gamma1(const ProjectivePlane& plane = ProjectivePlane()) {
  BipartiteGraph g;
  auto coord = [&](std::uint32_t i) {
    const auto& p = plane.points[i];
    return std::to_string(int(p[0])) + ":" + std::to_string(int(p[1])) + ":" +
           std::to_string(int(p[2]));
  };
  for (std::uint32_t i = 0; i < 13; ++i) g.left_labels.push_back("P(" + coord(i) + ")");
  for (std::uint32_t j = 0; j < 13; ++j) g.right_labels.push_back("L[" + coord(j) + "]");
  for (std::uint32_t i = 0; i < 13; ++i)
    for (std::uint32_t j = 0; j < 13; ++j)
      if (plane.incident(i, j)) g.edges.emplace_back(i, j);
  return g;
}

// The SL3(3) action on gamma1: points map by v -> v*M, lines by their point
// sets.
inline GraphAction gamma1_action(const Sl33& sl, const BipartiteGraph& g1) {
  GraphAction act;
  act.group = sl.point_action;
  for (const Mat3& m : sl.generator_matrices) {
    Perm pp = sl.point_perm(m);
    std::vector<std::uint32_t> img(26);
    for (std::uint32_t i = 0; i < 13; ++i) img[i] = pp[i];
    // a line maps to the unique line through the images of its points
    for (std::uint32_t j = 0; j < 13; ++j) {
      std::vector<std::uint32_t> mapped;
      for (std::uint32_t i = 0; i < 13; ++i)
        if (sl.plane.incident(i, j)) mapped.push_back(pp[i]);
      bool found = false;
      for (std::uint32_t j2 = 0; j2 < 13 && !found; ++j2) {
        bool all = true;
        for (auto mp : mapped) all &= sl.plane.incident(mp, j2);
        if (all) {
          img[13 + j] = 13 + j2;
          found = true;
        }
      }
      if (!found) throw std::logic_error("line image is not a line");
    }
    act.vertex_gens.emplace_back(std::move(img));
  }
  validate_action(g1, act);
  return act;
}

inline std::string triple_label(std::uint16_t mask) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 12; ++i)
    if (mask >> i & 1) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

// Triples against linked threes: a triple is joined to every linked three
// having it as a part.
inline BipartiteGraph gamma2(const SteinerSystem& s) {
  BipartiteGraph g;
  std::vector<std::uint16_t> triples = all_triples();
  std::vector<LinkedThree> linked = linked_threes(s);
  std::map<std::uint16_t, std::uint32_t> tid;
  for (std::uint32_t i = 0; i < triples.size(); ++i) {
    tid[triples[i]] = i;
    g.left_labels.push_back(triple_label(triples[i]));
  }
  for (std::uint32_t j = 0; j < linked.size(); ++j) {
    const auto& lt = linked[j];
    std::string lbl = triple_label(lt.parts[0]);
    for (int k = 1; k < 4; ++k) lbl += "|" + triple_label(lt.parts[k]);
    g.right_labels.push_back(lbl);
    for (int k = 0; k < 4; ++k) g.edges.emplace_back(tid.at(lt.parts[k]), j);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// A degree-12 group acting on gamma2 through its action on subsets.
inline GraphAction gamma2_action(const PermGroup& m12, const SteinerSystem& s,
                                 const BipartiteGraph& g2) {
  std::vector<std::uint16_t> triples = all_triples();
  std::vector<LinkedThree> linked = linked_threes(s);
  std::map<std::uint16_t, std::uint32_t> tid;
  for (std::uint32_t i = 0; i < triples.size(); ++i) tid[triples[i]] = i;
  std::map<std::array<std::uint16_t, 4>, std::uint32_t> lid;
  for (std::uint32_t j = 0; j < linked.size(); ++j) lid[linked[j].parts] = j;

  auto map_mask = [](std::uint16_t mask, const Perm& p) {
    std::uint16_t out = 0;
    for (int i = 0; i < 12; ++i)
      if (mask >> i & 1) out |= std::uint16_t(1) << p[i];
    return out;
  };

  GraphAction act;
  act.group = m12;
  std::uint32_t nl = g2.nleft();
  for (const Perm& p : m12.generators()) {
    std::vector<std::uint32_t> img(g2.nverts());
    for (std::uint32_t i = 0; i < triples.size(); ++i)
      img[i] = tid.at(map_mask(triples[i], p));
    for (std::uint32_t j = 0; j < linked.size(); ++j) {
      std::array<std::uint16_t, 4> parts;
      for (int k = 0; k < 4; ++k) parts[k] = map_mask(linked[j].parts[k], p);
      std::sort(parts.begin(), parts.end());
      img[nl + j] = nl + lid.at(parts);
    }
    act.vertex_gens.emplace_back(std::move(img));
  }
  validate_action(g2, act);
  return act;
}

inline std::vector<std::vector<std::uint32_t>> vertex_orbits(const BipartiteGraph& g,
                                                             const GraphAction& act) {
  PermGroup vg(g.nverts(), act.vertex_gens);
  return vg.orbits();
}

inline std::uint64_t edge_orbit_count(const BipartiteGraph& g, const GraphAction& act) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> eid;
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) eid[g.edges[e]] = e;
  std::vector<bool> seen(g.edges.size(), false);
  std::uint64_t orbits = 0;
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    if (seen[e]) continue;
    ++orbits;
    std::vector<std::uint32_t> stack = {e};
    seen[e] = true;
    while (!stack.empty()) {
      auto [l, r] = g.edges[stack.back()];
      stack.pop_back();
      for (const Perm& vp : act.vertex_gens) {
        std::uint32_t il = vp[l], ir = vp[g.nleft() + r] - g.nleft();
        std::uint32_t j = eid.at({il, ir});
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return orbits;
}

inline bool is_edge_transitive(const BipartiteGraph& g, const GraphAction& act) {
  return edge_orbit_count(g, act) == 1;
}

// Induced subgraph on the vertices fixed by every listed permutation.
inline BipartiteGraph fixed_subgraph(const BipartiteGraph& g,
                                     const std::vector<Perm>& fixing) {
  BipartiteGraph out;
  std::vector<std::int64_t> lmap(g.nleft(), -1), rmap(g.nright(), -1);
  for (std::uint32_t v = 0; v < g.nverts(); ++v) {
    bool fixed = true;
    for (const Perm& p : fixing) fixed &= (p[v] == v);
    if (!fixed) continue;
    if (v < g.nleft()) {
      lmap[v] = out.left_labels.size();
      out.left_labels.push_back(g.left_labels[v]);
    } else {
      rmap[v - g.nleft()] = out.right_labels.size();
      out.right_labels.push_back(g.right_labels[v - g.nleft()]);
    }
  }
  for (auto [l, r] : g.edges)
    if (lmap[l] >= 0 && rmap[r] >= 0)
      out.edges.emplace_back(static_cast<std::uint32_t>(lmap[l]),
                             static_cast<std::uint32_t>(rmap[r]));
  return out;
}

inline bool is_tree(const BipartiteGraph& g) {
  return g.nverts() >= 1 && g.connected() && g.edges.size() == g.nverts() - 1;
}

// Hypotheses of the edge-transitive classification: connectivity, edge
// transitivity with exactly two vertex orbits, AGL2(3) vertex stabilizers,
// and fixed trees for the nontrivial elements of O_3 of a stabilizer in each
// orbit.  The vertex action must be faithful for the stabilizer orders to be
// meaningful; both model graphs and the negative controls satisfy that.
inline CheckReport verify_theorem_b_hypotheses(const BipartiteGraph& g,
                                               const GraphAction& act,
                                               const PermGroup& agl_reference) {
  CheckReport rep("theorem-b-hypotheses");
  for (std::uint32_t v = 0; v < g.nverts(); ++v) {
    std::uint32_t deg = 0;
    for (auto [l, r] : g.edges) deg += (l == v) + (g.nleft() + r == v);
    if (deg <= 1) {
      rep.check("no vertex of degree at most one", false,
                g.nverts() ? "vertex " + std::to_string(v) : "");
      return rep;
    }
  }
  rep.check("graph connected", g.connected());
  rep.check("edge transitive", is_edge_transitive(g, act));
  auto orbits = vertex_orbits(g, act);
  rep.check("exactly two vertex orbits", orbits.size() == 2);
  if (orbits.size() != 2) return rep;

  for (int side = 0; side < 2; ++side) {
    std::uint32_t alpha = orbits[side][0];
    PermGroup vg(g.nverts(), act.vertex_gens, {alpha});
    PermGroup stab(g.nverts(), vg.stabilizer_prefix_gens(1));
    std::string tag = "orbit " + std::to_string(side + 1);
    rep.check(tag + ": |G_alpha| = 432", stab.order() == 432);
    if (stab.order() != 432) continue;
    rep.check(tag + ": G_alpha = AGL2(3)",
              isomorphic(stab, agl_reference).has_value());
    PermGroup o3 = o_p(stab, 3);
    rep.check(tag + ": |O3(G_alpha)| = 9", o3.order() == 9);
    bool all_trees = true;
    std::uint64_t checked = 0;
    o3.for_each_element([&](const Perm& z) {
      if (z.is_identity()) return true;
      ++checked;
      BipartiteGraph fg = fixed_subgraph(g, {z});
      if (!(is_tree(fg) && !fg.edges.empty())) all_trees = false;
      return true;
    });
    rep.check(tag + ": fixed subgraph of each nontrivial z in O3 is a tree with an edge",
              all_trees && checked == 8, std::to_string(checked) + " elements checked");
  }
  return rep;
}

// Graph isomorphism by iterated neighborhood-color refinement with
// individualization backtracking.  Colors start from the bipartition (both
// orientations are tried).  Returns the vertex bijection, verified edge by
// edge; a search exceeding the step cap reports Inconclusive, never
// NonIsomorphic.
struct GraphIsoResult {
  enum class Status { Isomorphic, NonIsomorphic, Inconclusive };
  Status status = Status::NonIsomorphic;
  std::vector<std::uint32_t> mapping;  // vertex of g1 -> vertex of g2
  std::uint64_t steps = 0;
};

namespace detail {

struct IsoSearch {
  const std::vector<std::vector<std::uint32_t>>&adj1, &adj2;
  std::uint64_t cap;
  std::uint64_t steps = 0;
  bool hit_cap = false;

  bool refine(std::vector<std::uint32_t>& c1, std::vector<std::uint32_t>& c2) {
    // Jointly refine both colorings until stable; returns false when the
    // color class sizes ever disagree.
    while (true) {
      steps += c1.size() + c2.size();
      if (steps > cap) {
        hit_cap = true;
        return false;
      }
      std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::uint32_t> sig;
      auto signature = [&](const std::vector<std::vector<std::uint32_t>>& adj,
                           const std::vector<std::uint32_t>& c, std::uint32_t v) {
        std::vector<std::uint32_t> ns;
        for (auto w : adj[v]) ns.push_back(c[w]);
        std::sort(ns.begin(), ns.end());
        return std::make_pair(c[v], std::move(ns));
      };
      std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> s1(c1.size()), s2(c2.size());
      for (std::uint32_t v = 0; v < c1.size(); ++v) s1[v] = signature(adj1, c1, v);
      for (std::uint32_t v = 0; v < c2.size(); ++v) s2[v] = signature(adj2, c2, v);
      std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::int64_t> counts;
      for (const auto& s : s1) ++counts[s];
      for (const auto& s : s2) --counts[s];
      for (const auto& [k, v] : counts)
        if (v != 0) return false;
      std::uint32_t next = 0;
      for (const auto& s : s1)
        if (!sig.count(s)) sig.emplace(s, next++);
      bool changed = false;
      std::vector<std::uint32_t> n1(c1.size()), n2(c2.size());
      for (std::uint32_t v = 0; v < c1.size(); ++v) {
        n1[v] = sig.at(s1[v]);
        if (n1[v] != c1[v]) changed = true;
      }
      for (std::uint32_t v = 0; v < c2.size(); ++v) n2[v] = sig.at(s2[v]);
      c1 = std::move(n1);
      c2 = std::move(n2);
      if (!changed) return true;
    }
  }

  bool search(std::vector<std::uint32_t> c1, std::vector<std::uint32_t> c2,
              std::vector<std::uint32_t>& mapping) {
    if (!refine(c1, c2)) return false;
    // find the smallest color class of size > 1
    std::map<std::uint32_t, std::vector<std::uint32_t>> classes1, classes2;
    for (std::uint32_t v = 0; v < c1.size(); ++v) classes1[c1[v]].push_back(v);
    for (std::uint32_t v = 0; v < c2.size(); ++v) classes2[c2[v]].push_back(v);
    std::uint32_t pick = 0xffffffff;
    std::size_t best = 0;
    for (const auto& [color, verts] : classes1)
      if (verts.size() > 1 && (pick == 0xffffffff || verts.size() < best)) {
        pick = color;
        best = verts.size();
      }
    if (pick == 0xffffffff) {
      // discrete: read off the bijection and verify
      mapping.assign(c1.size(), 0);
      for (const auto& [color, verts] : classes1)
        mapping[verts[0]] = classes2.at(color)[0];
      for (std::uint32_t v = 0; v < adj1.size(); ++v) {
        std::vector<std::uint32_t> im;
        for (auto w : adj1[v]) im.push_back(mapping[w]);
        std::sort(im.begin(), im.end());
        if (im != adj2[mapping[v]]) return false;
      }
      return true;
    }
    std::uint32_t u = classes1.at(pick)[0];
    std::uint32_t fresh = 0;
    for (auto c : c1) fresh = std::max(fresh, c + 1);
    for (std::uint32_t v2 : classes2.at(pick)) {
      std::vector<std::uint32_t> d1 = c1, d2 = c2;
      d1[u] = fresh;
      d2[v2] = fresh;
      if (search(std::move(d1), std::move(d2), mapping)) return true;
      if (hit_cap) return false;
    }
    return false;
  }
};

}  // namespace detail

inline GraphIsoResult graph_isomorphic(const BipartiteGraph& g1, const BipartiteGraph& g2,
                                       std::uint64_t step_cap = 100'000'000) {
  GraphIsoResult res;
  if (g1.nverts() != g2.nverts() || g1.edges.size() != g2.edges.size()) {
    res.status = GraphIsoResult::Status::NonIsomorphic;
    return res;
  }
  auto adj1 = g1.adjacency(), adj2 = g2.adjacency();
  // two attempts: classes aligned, classes swapped
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt == 0 &&
        (g1.nleft() != g2.nleft() || g1.nright() != g2.nright()))
      continue;
    if (attempt == 1 &&
        (g1.nleft() != g2.nright() || g1.nright() != g2.nleft()))
      continue;
    detail::IsoSearch s{adj1, adj2, step_cap};
    std::vector<std::uint32_t> c1(g1.nverts()), c2(g2.nverts());
    for (std::uint32_t v = 0; v < g1.nverts(); ++v) c1[v] = v < g1.nleft() ? 0 : 1;
    for (std::uint32_t v = 0; v < g2.nverts(); ++v)
      c2[v] = ((v < g2.nleft()) == (attempt == 0)) ? 0 : 1;
    std::vector<std::uint32_t> mapping;
    if (s.search(c1, c2, mapping)) {
      res.status = GraphIsoResult::Status::Isomorphic;
      res.mapping = std::move(mapping);
      res.steps += s.steps;
      return res;
    }
    res.steps += s.steps;
    if (s.hit_cap) {
      res.status = GraphIsoResult::Status::Inconclusive;
      return res;
    }
  }
  res.status = GraphIsoResult::Status::NonIsomorphic;
  return res;
}

}  // namespace amalgam
