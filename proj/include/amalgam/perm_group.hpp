#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "amalgam/perm.hpp"

namespace amalgam {

// A permutation group given by generators, with a lazily built stabilizer
// chain (base and strong generating set).  The chain is deterministic: base
// points are taken from the caller's hint first, then as the first moved
// point of the offending element, and orbits are grown breadth-first with
// generators in list order.  Transversals are stored as Schreier vectors and
// applied point-wise, so memory stays linear in the degree.
class PermGroup {
 public:
  struct Level {
    std::uint32_t base = 0;
    std::vector<Perm> gens, geninvs;
    std::vector<std::uint32_t> orbit;           // BFS discovery order
    std::vector<std::int64_t> from;             // predecessor point, -1 off-orbit
    std::vector<std::int32_t> via;              // generator index used
  };

  PermGroup() = default;
  explicit PermGroup(std::uint32_t degree, std::vector<Perm> gens = {},
                     std::vector<std::uint32_t> base_hint = {})
      : degree_(degree), hint_(std::move(base_hint)) {
    for (auto& g : gens) {
      if (g.degree() != degree_)
        throw std::invalid_argument("generator degree mismatch");
      if (!g.is_identity() &&
          std::find(gens_.begin(), gens_.end(), g) == gens_.end())
        gens_.push_back(std::move(g));
    }
  }

  std::uint32_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  bool trivial() const { return gens_.empty(); }

  std::uint64_t order() const {
    ensure_chain();
    std::uint64_t n = 1;
    for (const auto& lv : levels_) {
      if (n > std::numeric_limits<std::uint64_t>::max() / lv.orbit.size())
        throw std::overflow_error("group order overflows 64 bits");
      n *= lv.orbit.size();
    }
    return n;
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    ensure_chain();
    Perm h = g;
    for (const auto& lv : levels_) {
      std::uint32_t beta = h[lv.base];
      if (lv.from[beta] < 0 && beta != lv.base) return false;
      apply_inverse_transversal(lv, beta, h);
    }
    return h.is_identity();
  }

  const std::vector<Level>& chain() const {
    ensure_chain();
    return levels_;
  }

  std::vector<std::uint32_t> base() const {
    ensure_chain();
    std::vector<std::uint32_t> b;
    for (const auto& lv : levels_) b.push_back(lv.base);
    return b;
  }

  // Strong generators fixing the first `depth` base points; with a base hint
  // of [alpha] and depth 1 this generates the stabilizer of alpha.
  std::vector<Perm> stabilizer_prefix_gens(std::size_t depth) const {
    ensure_chain();
    if (depth >= levels_.size()) return {};
    return levels_[depth].gens;
  }

  // The transversal element carrying the level's base point to `point`.
  Perm transversal(std::size_t level, std::uint32_t point) const {
    ensure_chain();
    const Level& lv = levels_.at(level);
    if (point != lv.base && lv.from[point] < 0)
      throw std::invalid_argument("point is not in the basic orbit");
    Perm u(degree_);
    std::vector<std::int32_t> path = path_to(lv, point);
    for (auto it = path.rbegin(); it != path.rend(); ++it) u = u * lv.gens[*it];
    return u;
  }

  std::vector<std::uint32_t> orbit_of(std::uint32_t point) const {
    std::vector<std::uint32_t> orb = {point};
    std::vector<bool> seen(degree_, false);
    seen[point] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const Perm& g : gens_) {
        std::uint32_t im = g[orb[i]];
        if (!seen[im]) {
          seen[im] = true;
          orb.push_back(im);
        }
      }
    return orb;
  }

  std::vector<std::vector<std::uint32_t>> orbits() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(degree_, false);
    for (std::uint32_t p = 0; p < degree_; ++p) {
      if (seen[p]) continue;
      auto orb = orbit_of(p);
      for (auto q : orb) seen[q] = true;
      out.push_back(std::move(orb));
    }
    return out;
  }

  // Visits every element exactly once, ordered lexicographically by base
  // images; the callback returns false to stop early.
  void for_each_element(const std::function<bool(const Perm&)>& fn) const {
    ensure_chain();
    std::vector<std::vector<Perm>> trans(levels_.size());
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      std::vector<std::uint32_t> pts = levels_[l].orbit;
      std::sort(pts.begin(), pts.end());
      for (auto p : pts) trans[l].push_back(transversal(l, p));
    }
    Perm acc(degree_);
    walk(0, trans, acc, fn);
  }

  std::vector<Perm> elements(std::uint64_t cap = 1'000'000) const {
    if (order() > cap) throw std::length_error("element enumeration cap exceeded");
    std::vector<Perm> out;
    out.reserve(order());
    for_each_element([&](const Perm& p) {
      out.push_back(p);
      return true;
    });
    return out;
  }

 private:
  bool walk(std::size_t l, const std::vector<std::vector<Perm>>& trans,
            const Perm& acc, const std::function<bool(const Perm&)>& fn) const {
    if (l == levels_.size()) return fn(acc);
    for (const Perm& u : trans[l])
      if (!walk(l + 1, trans, u * acc, fn)) return false;
    return true;
  }

  static std::vector<std::int32_t> path_to(const Level& lv, std::uint32_t point) {
    std::vector<std::int32_t> path;
    std::uint32_t at = point;
    while (at != lv.base) {
      path.push_back(lv.via[at]);
      at = static_cast<std::uint32_t>(lv.from[at]);
    }
    return path;
  }

  // h := h * u_beta^{-1}, applied point-wise along the Schreier path.
  void apply_inverse_transversal(const Level& lv, std::uint32_t beta, Perm& h) const {
    std::vector<std::int32_t> path = path_to(lv, beta);
    for (std::int32_t gi : path) h = h * lv.geninvs[gi];
  }

  static void recompute_orbit(Level& lv, std::uint32_t degree) {
    lv.orbit.assign(1, lv.base);
    lv.from.assign(degree, -1);
    lv.via.assign(degree, -1);
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      std::uint32_t p = lv.orbit[i];
      for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
        std::uint32_t im = lv.gens[gi][p];
        if (im != lv.base && lv.from[im] < 0) {
          lv.from[im] = p;
          lv.via[im] = static_cast<std::int32_t>(gi);
          lv.orbit.push_back(im);
        }
      }
    }
  }

  void add_level(std::uint32_t base_pt) const {
    Level lv;
    lv.base = base_pt;
    levels_.push_back(std::move(lv));
  }

  void push_gen(std::size_t level, const Perm& g) const {
    levels_[level].gens.push_back(g);
    levels_[level].geninvs.push_back(g.inverse());
    recompute_orbit(levels_[level], degree_);
  }

  std::uint32_t first_moved(const Perm& g) const {
    for (std::uint32_t i = 0; i < degree_; ++i)
      if (g[i] != i) return i;
    throw std::logic_error("identity has no moved point");
  }

  // Deterministic Schreier-Sims.  Verifies each level by sifting all of its
  // Schreier generators; a non-trivial residue extends the deeper levels and
  // processing resumes there.
  void ensure_chain() const {
    if (chain_built_) return;
    chain_built_ = true;
    levels_.clear();
    if (gens_.empty()) return;
    for (auto h : hint_) add_level(h);
    for (const Perm& g : gens_) {
      bool fixes_all = true;
      for (const auto& lv : levels_)
        if (g[lv.base] != lv.base) {
          fixes_all = false;
          break;
        }
      if (fixes_all) add_level(first_moved(g));
    }
    // Distribute the input generators over their levels.
    for (const Perm& g : gens_)
      for (std::size_t l = 0; l < levels_.size(); ++l) {
        push_gen(l, g);
        if (g[levels_[l].base] != levels_[l].base) break;
      }
    std::size_t i = levels_.size();
    while (i-- > 0) {
    restart:
      Level& lv = levels_[i];
      for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi)
        for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
          std::uint32_t beta = lv.orbit[oi];
          // Schreier generator u_beta * s * u_{beta^s}^{-1}
          Perm g = transversal(i, beta) * lv.gens[gi];
          apply_inverse_transversal(lv, g[lv.base], g);
          if (g.is_identity()) continue;
          std::size_t j = i + 1;
          for (; j < levels_.size(); ++j) {
            std::uint32_t b2 = g[levels_[j].base];
            if (b2 != levels_[j].base && levels_[j].from[b2] < 0) break;
            apply_inverse_transversal(levels_[j], b2, g);
            if (g.is_identity()) break;
          }
          if (g.is_identity()) continue;
          if (j == levels_.size()) add_level(first_moved(g));
          for (std::size_t l = i + 1; l <= j; ++l) push_gen(l, g);
          i = j;
          goto restart;
        }
    }
  }

  std::uint32_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<std::uint32_t> hint_;
  mutable std::vector<Level> levels_;
  mutable bool chain_built_ = false;
};

}  // namespace amalgam
