#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amalgam/perm.hpp"
#include "amalgam/perm_group.hpp"

namespace amalgam {

inline constexpr std::uint64_t kElementCap = 1'000'000;

// Builds the subgroup generated by a list of elements, keeping only the ones
// that enlarge the group, in list order.
inline PermGroup reduce_to_group(std::uint32_t degree, const std::vector<Perm>& elems) {
  PermGroup g(degree);
  std::vector<Perm> gens;
  for (const Perm& e : elems) {
    if (e.is_identity() || g.contains(e)) continue;
    gens.push_back(e);
    g = PermGroup(degree, gens);
  }
  return g;
}

inline bool is_subgroup_of(const PermGroup& h, const PermGroup& g) {
  for (const Perm& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

inline bool same_group(const PermGroup& g, const PermGroup& h) {
  return g.degree() == h.degree() && g.order() == h.order() &&
         is_subgroup_of(h, g);
}

inline PermGroup centralizer(const PermGroup& g, const Perm& x,
                             std::uint64_t cap = kElementCap) {
  if (g.order() > cap) throw std::length_error("centralizer: element cap exceeded");
  std::vector<Perm> found;
  g.for_each_element([&](const Perm& e) {
    if (e * x == x * e) found.push_back(e);
    return true;
  });
  return reduce_to_group(g.degree(), found);
}

inline PermGroup center(const PermGroup& g, std::uint64_t cap = kElementCap) {
  if (g.order() > cap) throw std::length_error("center: element cap exceeded");
  std::vector<Perm> found;
  g.for_each_element([&](const Perm& e) {
    for (const Perm& s : g.generators())
      if (e * s != s * e) return true;
    found.push_back(e);
    return true;
  });
  return reduce_to_group(g.degree(), found);
}

// Centralizer of a whole subgroup: elements commuting with every generator.
inline PermGroup centralizer_of_subgroup(const PermGroup& g, const PermGroup& h,
                                         std::uint64_t cap = kElementCap) {
  if (g.order() > cap) throw std::length_error("centralizer: element cap exceeded");
  std::vector<Perm> found;
  g.for_each_element([&](const Perm& e) {
    for (const Perm& s : h.generators())
      if (e * s != s * e) return true;
    found.push_back(e);
    return true;
  });
  return reduce_to_group(g.degree(), found);
}

inline PermGroup normalizer(const PermGroup& g, const PermGroup& h,
                            std::uint64_t cap = kElementCap) {
  if (g.order() > cap) throw std::length_error("normalizer: element cap exceeded");
  std::vector<Perm> found;
  g.for_each_element([&](const Perm& e) {
    for (const Perm& s : h.generators())
      if (!h.contains(s.conjugated_by(e))) return true;
    found.push_back(e);
    return true;
  });
  return reduce_to_group(g.degree(), found);
}

inline PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds) {
  std::vector<Perm> gens;
  PermGroup n(g.degree());
  std::vector<Perm> work;
  for (const Perm& s : seeds) {
    if (s.is_identity() || n.contains(s)) continue;
    gens.push_back(s);
    n = PermGroup(g.degree(), gens);
    work.push_back(s);
  }
  while (!work.empty()) {
    Perm w = work.back();
    work.pop_back();
    for (const Perm& x : g.generators()) {
      Perm c = w.conjugated_by(x);
      if (!n.contains(c)) {
        gens.push_back(c);
        n = PermGroup(g.degree(), gens);
        work.push_back(c);
      }
    }
  }
  return n;
}

inline PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  const auto& gen = g.generators();
  for (std::size_t i = 0; i < gen.size(); ++i)
    for (std::size_t j = 0; j < gen.size(); ++j)
      if (i != j)
        comms.push_back(gen[i].inverse() * gen[j].inverse() * gen[i] * gen[j]);
  return normal_closure(g, comms);
}

// gamma_1 = G, gamma_{k+1} = [gamma_k, G]; stops once stable.
inline std::vector<PermGroup> lower_central_series(const PermGroup& g) {
  std::vector<PermGroup> series = {g};
  while (true) {
    const PermGroup& cur = series.back();
    std::vector<Perm> comms;
    for (const Perm& x : cur.generators())
      for (const Perm& y : g.generators())
        comms.push_back(x.inverse() * y.inverse() * x * y);
    PermGroup next = normal_closure(g, comms);
    if (next.order() == cur.order()) break;
    series.push_back(std::move(next));
    if (series.back().trivial()) break;
  }
  return series;
}

inline std::vector<PermGroup> derived_series(const PermGroup& g) {
  std::vector<PermGroup> series = {g};
  while (true) {
    PermGroup next = derived_subgroup(series.back());
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
    if (series.back().trivial()) break;
  }
  return series;
}

// Returns (nilpotent, class); class 0 is the trivial group.
inline std::pair<bool, int> nilpotency_class(const PermGroup& g) {
  auto series = lower_central_series(g);
  if (!series.back().trivial()) return {false, -1};
  return {true, static_cast<int>(series.size()) - 1};
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline bool is_p_group(const PermGroup& g, std::uint64_t p) {
  std::uint64_t n = g.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

// A Sylow p-subgroup, grown deterministically: starting from the trivial
// subgroup, repeatedly adjoin the first p-element of the normalizer that lies
// outside the current group.  Since the current group is normal in its
// normalizer the extension stays a p-group.
inline PermGroup sylow(const PermGroup& g, std::uint64_t p,
                       std::uint64_t cap = kElementCap) {
  std::uint64_t target = 1, n = g.order();
  while (n % p == 0) {
    n /= p;
    target *= p;
  }
  PermGroup s(g.degree());
  std::vector<Perm> gens;
  while (s.order() < target) {
    const PermGroup& norm = gens.empty() ? g : normalizer(g, s, cap);
    bool found = false;
    norm.for_each_element([&](const Perm& e) {
      std::uint64_t o = e.order();
      if (o <= 1) return true;
      while (o % p == 0) o /= p;
      if (o != 1) return true;
      if (s.contains(e)) return true;
      gens.push_back(e);
      found = true;
      return false;
    });
    if (!found) throw std::logic_error("sylow: no extending p-element found");
    s = PermGroup(g.degree(), gens);
  }
  return s;
}

inline PermGroup subgroup_intersection(const PermGroup& a, const PermGroup& b,
                                       std::uint64_t cap = kElementCap) {
  const PermGroup& small = a.order() <= b.order() ? a : b;
  const PermGroup& big = a.order() <= b.order() ? b : a;
  if (small.order() > cap) throw std::length_error("intersection: element cap exceeded");
  std::vector<Perm> found;
  small.for_each_element([&](const Perm& e) {
    if (big.contains(e)) found.push_back(e);
    return true;
  });
  return reduce_to_group(a.degree(), found);
}

// O_p(G): the intersection of the conjugates of one Sylow p-subgroup.  The
// orbit of the Sylow under conjugation is walked breadth-first; the running
// intersection usually collapses long before the orbit closes, and the walk
// stops as soon as it does.
inline PermGroup o_p(const PermGroup& g, std::uint64_t p,
                     std::uint64_t cap = kElementCap) {
  if (g.order() % p != 0) return PermGroup(g.degree());
  PermGroup s = sylow(g, p, cap);
  std::vector<Perm> inter = s.elements(cap);
  auto fingerprint = [](std::vector<Perm> els) {
    std::sort(els.begin(), els.end());
    std::size_t h = 1469598103934665603ull;
    for (const Perm& e : els) h = h * 1099511628211ull ^ e.hash();
    return h;
  };
  std::vector<std::vector<Perm>> queue = {s.generators()};
  std::unordered_set<std::size_t> seen = {fingerprint(inter)};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    if (inter.size() == 1) break;
    if (queue.size() > 100000) throw std::length_error("o_p: conjugate orbit too large");
    std::vector<Perm> base = queue[qi];
    for (const Perm& x : g.generators()) {
      std::vector<Perm> conj;
      conj.reserve(base.size());
      for (const Perm& s0 : base) conj.push_back(s0.conjugated_by(x));
      PermGroup k(g.degree(), conj);
      if (!seen.insert(fingerprint(k.elements(cap))).second) continue;
      queue.push_back(std::move(conj));
      std::erase_if(inter, [&](const Perm& e) { return !k.contains(e); });
      if (inter.size() == 1) break;
    }
  }
  std::erase_if(inter, [](const Perm& e) { return e.is_identity(); });
  return reduce_to_group(g.degree(), inter);
}

inline std::vector<std::vector<Perm>> conjugacy_classes(const PermGroup& g,
                                                        std::uint64_t cap = kElementCap) {
  std::vector<Perm> elems = g.elements(cap);
  std::unordered_set<Perm, PermHash> unseen(elems.begin(), elems.end());
  std::vector<std::vector<Perm>> classes;
  for (const Perm& e : elems) {
    if (!unseen.count(e)) continue;
    std::vector<Perm> cls = {e};
    unseen.erase(e);
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (const Perm& x : g.generators()) {
        Perm c = cls[i].conjugated_by(x);
        if (unseen.count(c)) {
          unseen.erase(c);
          cls.push_back(std::move(c));
        }
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline bool is_simple(const PermGroup& g, std::uint64_t cap = kElementCap) {
  if (g.order() == 1) return false;
  for (const auto& cls : conjugacy_classes(g, cap)) {
    if (cls[0].is_identity()) continue;
    if (normal_closure(g, {cls[0]}).order() != g.order()) return false;
  }
  return true;
}

inline std::uint64_t double_coset_count(const PermGroup& g, const PermGroup& a,
                                        const PermGroup& b,
                                        std::uint64_t cap = kElementCap,
                                        std::vector<std::uint64_t>* sizes = nullptr) {
  if (!is_subgroup_of(a, g) || !is_subgroup_of(b, g))
    throw std::invalid_argument("double_coset_count: not subgroups");
  std::vector<Perm> elems = g.elements(cap);
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  for (std::uint32_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::vector<Perm> amult, bmult;
  for (const Perm& x : a.generators()) {
    amult.push_back(x);
    amult.push_back(x.inverse());
  }
  for (const Perm& x : b.generators()) {
    bmult.push_back(x);
    bmult.push_back(x.inverse());
  }
  std::vector<bool> seen(elems.size(), false);
  std::uint64_t count = 0;
  for (std::uint32_t i = 0; i < elems.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    std::uint64_t size = 0;
    std::vector<std::uint32_t> stack = {i};
    seen[i] = true;
    while (!stack.empty()) {
      std::uint32_t e = stack.back();
      stack.pop_back();
      ++size;
      for (const Perm& x : amult) {
        std::uint32_t j = index.at(x * elems[e]);
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
      for (const Perm& x : bmult) {
        std::uint32_t j = index.at(elems[e] * x);
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    if (sizes) sizes->push_back(size);
  }
  return count;
}

inline std::map<std::uint64_t, std::uint64_t> order_histogram(
    const PermGroup& g, std::uint64_t cap = kElementCap) {
  if (g.order() > cap) throw std::length_error("order_histogram: cap exceeded");
  std::map<std::uint64_t, std::uint64_t> h;
  g.for_each_element([&](const Perm& e) {
    ++h[e.order()];
    return true;
  });
  return h;
}

// Certified fingerprints for the handful of small groups the structure
// checks must recognize.  Each entry is validated against an explicitly
// constructed copy in the test suite.
namespace fingerprints {
using Histogram = std::map<std::uint64_t, std::uint64_t>;

inline bool matches(const PermGroup& g, std::uint64_t order, const Histogram& hist,
                    std::uint64_t derived_order = 0) {
  if (g.order() != order) return false;
  if (order_histogram(g) != hist) return false;
  if (derived_order != 0 && derived_subgroup(g).order() != derived_order)
    return false;
  return true;
}
}  // namespace fingerprints

inline bool recognize_q8(const PermGroup& g) {
  return fingerprints::matches(g, 8, {{1, 1}, {2, 1}, {4, 6}});
}
inline bool recognize_sym3(const PermGroup& g) {
  return fingerprints::matches(g, 6, {{1, 1}, {2, 3}, {3, 2}});
}
inline bool recognize_gl23(const PermGroup& g) {
  return fingerprints::matches(g, 48, {{1, 1}, {2, 13}, {3, 8}, {4, 6}, {6, 8}, {8, 12}}, 24);
}
inline bool recognize_alt5(const PermGroup& g) {
  return fingerprints::matches(g, 60, {{1, 1}, {2, 15}, {3, 20}, {5, 24}});
}
inline bool recognize_psl27(const PermGroup& g) {
  return fingerprints::matches(g, 168, {{1, 1}, {2, 21}, {3, 56}, {4, 42}, {7, 48}}, 168);
}

inline bool is_abelian(const PermGroup& g) {
  const auto& gen = g.generators();
  for (std::size_t i = 0; i < gen.size(); ++i)
    for (std::size_t j = i + 1; j < gen.size(); ++j)
      if (gen[i] * gen[j] != gen[j] * gen[i]) return false;
  return true;
}

inline bool is_elementary_abelian(const PermGroup& g, std::uint64_t p) {
  if (!is_abelian(g)) return false;
  for (const Perm& x : g.generators())
    if (!x.is_identity() && x.order() != p) return false;
  return true;
}

inline bool has_exponent(const PermGroup& g, std::uint64_t e,
                         std::uint64_t cap = kElementCap) {
  if (g.order() > cap) throw std::length_error("has_exponent: cap exceeded");
  bool ok = true;
  g.for_each_element([&](const Perm& x) {
    if (e % x.order() != 0) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

// The quotient G/N realized as the right-multiplication action of G on the
// right cosets of N.  Faithful and regular as an action of G/N when N is
// normal; callers that need images of particular elements use image_of().
struct Quotient {
  PermGroup group;
  std::vector<Perm> coset_reps;  // canonical (minimal) coset representatives
  std::uint32_t source_degree = 0;
  std::vector<Perm> n_elements;
  std::unordered_map<Perm, std::uint32_t, PermHash> coset_id;

  Perm canonical(const Perm& g) const {
    Perm best = n_elements[0] * g;
    for (std::size_t i = 1; i < n_elements.size(); ++i) {
      Perm c = n_elements[i] * g;
      if (c < best) best = c;
    }
    return best;
  }

  Perm image_of(const Perm& g) const {
    std::vector<std::uint32_t> img(coset_reps.size());
    for (std::uint32_t i = 0; i < coset_reps.size(); ++i)
      img[i] = coset_id.at(canonical(coset_reps[i] * g));
    return Perm(std::move(img));
  }
};

inline Quotient quotient(const PermGroup& g, const PermGroup& n,
                         std::uint64_t cap = kElementCap) {
  for (const Perm& x : n.generators())
    for (const Perm& y : g.generators())
      if (!n.contains(x.conjugated_by(y)))
        throw std::invalid_argument("quotient: subgroup is not normal");
  Quotient q;
  q.source_degree = g.degree();
  q.n_elements = n.elements(cap);
  std::sort(q.n_elements.begin(), q.n_elements.end());
  if (g.order() / n.order() > cap)
    throw std::length_error("quotient: index exceeds cap");
  g.for_each_element([&](const Perm& e) {
    Perm c = q.canonical(e);
    if (!q.coset_id.count(c)) {
      q.coset_id.emplace(c, static_cast<std::uint32_t>(q.coset_reps.size()));
      q.coset_reps.push_back(std::move(c));
    }
    return true;
  });
  std::vector<Perm> qgens;
  for (const Perm& x : g.generators()) qgens.push_back(q.image_of(x));
  q.group = PermGroup(static_cast<std::uint32_t>(q.coset_reps.size()), qgens);
  return q;
}

// Right-multiplication action of G on the right cosets of H, for small
// indices; used for maximality tests.
inline PermGroup right_coset_action(const PermGroup& g, const PermGroup& h,
                                    std::uint64_t cap = kElementCap) {
  std::vector<Perm> reps;
  std::unordered_map<Perm, std::uint32_t, PermHash> ids;
  std::vector<Perm> h_elems = h.elements(cap);
  std::sort(h_elems.begin(), h_elems.end());
  auto canonical = [&](const Perm& x) {
    Perm best = h_elems[0] * x;
    for (std::size_t i = 1; i < h_elems.size(); ++i) {
      Perm c = h_elems[i] * x;
      if (c < best) best = c;
    }
    return best;
  };
  g.for_each_element([&](const Perm& e) {
    Perm c = canonical(e);
    if (!ids.count(c)) {
      ids.emplace(c, static_cast<std::uint32_t>(reps.size()));
      reps.push_back(std::move(c));
    }
    return true;
  });
  std::vector<Perm> gens;
  for (const Perm& x : g.generators()) {
    std::vector<std::uint32_t> img(reps.size());
    for (std::uint32_t i = 0; i < reps.size(); ++i)
      img[i] = ids.at(canonical(reps[i] * x));
    gens.emplace_back(std::move(img));
  }
  return PermGroup(static_cast<std::uint32_t>(reps.size()), gens);
}

// Primitivity of a transitive action, by minimal block closure.
inline bool is_primitive(const PermGroup& g) {
  std::uint32_t n = g.degree();
  if (n <= 2) return true;
  for (std::uint32_t j = 1; j < n; ++j) {
    std::vector<std::uint32_t> uf(n);
    std::iota(uf.begin(), uf.end(), 0u);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      while (uf[x] != x) {
        uf[x] = uf[uf[x]];
        x = uf[x];
      }
      return x;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack = {{0, j}};
    uf[find(j)] = find(0);
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      for (const Perm& s : g.generators()) {
        std::uint32_t a = find(s[x]), b = find(s[y]);
        if (a != b) {
          uf[b] = a;
          stack.push_back({s[x], s[y]});
        }
      }
    }
    std::uint32_t blocksize = 0;
    std::uint32_t root = find(0);
    for (std::uint32_t x = 0; x < n; ++x)
      if (find(x) == root) ++blocksize;
    if (blocksize != n) return false;  // proper block system found
  }
  return true;
}

// Canonical representative of the right coset H*g: the element whose base
// images under H's chain are lexicographically minimal.  Two elements lie in
// the same coset exactly when their canonical representatives coincide.
inline Perm min_coset_rep(const PermGroup& h, const Perm& g) {
  Perm r = g;
  for (std::size_t l = 0; l < h.chain().size(); ++l) {
    const auto& lv = h.chain()[l];
    std::uint32_t best = lv.orbit[0];
    for (std::uint32_t beta : lv.orbit)
      if (r[beta] < r[best]) best = beta;
    if (best != lv.base) r = h.transversal(l, best) * r;
  }
  return r;
}

}  // namespace amalgam
