#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalgam/group_ops.hpp"
#include "amalgam/isomorphism.hpp"
#include "amalgam/perm.hpp"
#include "amalgam/perm_group.hpp"
#include "amalgam/report.hpp"

namespace amalgam {

namespace detail {
inline Perm perm_comm(const Perm& v, const Perm& w) {
  return v.inverse() * w.inverse() * v * w;
}
}  // namespace detail

// Checks the two conclusions of the fixed-point-free order-3 automorphism
// lemma on a p-group Q: nilpotency class at most two, and
// [v,w^zeta] = [v^zeta,w] = [v,w]^(zeta^2) for all pairs.  The pair check is
// exhaustive up to 2^12 elements and sampled beyond that.  The preconditions
// (zeta an automorphism of order three without nontrivial fixed points) are
// errors, not findings, since they are the lemma's hypotheses.
inline CheckReport burnside_check(const PermGroup& q, const Perm& zeta,
                                  std::uint64_t exhaustive_cap = 4096) {
  for (const Perm& s : q.generators())
    if (!q.contains(s.conjugated_by(zeta)))
      throw std::invalid_argument("burnside_check: zeta does not normalize Q");
  auto apply = [&](const Perm& x) { return x.conjugated_by(zeta); };
  bool moves = false;
  for (const Perm& s : q.generators())
    if (apply(s) != s) moves = true;
  bool cube_trivial = true;
  for (const Perm& s : q.generators())
    if (apply(apply(apply(s))) != s) cube_trivial = false;
  if (!moves || !cube_trivial)
    throw std::invalid_argument("burnside_check: zeta does not have order 3 as an automorphism");
  std::uint64_t fixed = 0;
  q.for_each_element([&](const Perm& e) {
    if (!e.is_identity() && apply(e) == e) ++fixed;
    return true;
  });
  if (fixed != 0)
    throw std::invalid_argument("burnside_check: zeta has " + std::to_string(fixed) +
                                " nontrivial fixed points in Q");

  CheckReport rep("burnside-check");
  auto [nilp, cls] = nilpotency_class(q);
  rep.check("class at most 2", nilp && cls <= 2, "class " + std::to_string(cls));

  std::vector<Perm> elems = q.elements(kElementCap);
  bool identities = true;
  auto check_pair = [&](const Perm& v, const Perm& w) {
    Perm lhs = detail::perm_comm(v, apply(w));
    Perm mid = detail::perm_comm(apply(v), w);
    Perm rhs = apply(apply(detail::perm_comm(v, w)));
    return lhs == mid && mid == rhs;
  };
  if (elems.size() <= exhaustive_cap) {
    for (const Perm& v : elems)
      for (const Perm& w : elems)
        if (!check_pair(v, w)) identities = false;
    rep.check("[v,w^z] = [v^z,w] = [v,w]^(z^2) for all pairs", identities,
              std::to_string(elems.size() * elems.size()) + " pairs, exhaustive");
  } else {
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int i = 0; i < 4096; ++i)
      if (!check_pair(elems[pick(rng)], elems[pick(rng)])) identities = false;
    rep.check("[v,w^z] = [v^z,w] = [v,w]^(z^2) (sampled)", identities, "4096 pairs");
  }
  return rep;
}

// Same check with the automorphism given as an explicit element map.
inline CheckReport burnside_check(const PermGroup& q,
                                  const std::map<Perm, Perm>& zeta_map,
                                  std::uint64_t exhaustive_cap = 4096) {
  std::vector<Perm> elems = q.elements(kElementCap);
  for (const Perm& e : elems)
    if (!zeta_map.count(e))
      throw std::invalid_argument("burnside_check: element map does not cover Q");
  for (const Perm& a : elems)
    for (const Perm& b : elems)
      if (zeta_map.at(a * b) != zeta_map.at(a) * zeta_map.at(b))
        throw std::invalid_argument("burnside_check: element map is not an automorphism");
  // Realize the map as a conjugating permutation on the regular action of Q
  // over its own elements, then reuse the permutation route.
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  for (std::uint32_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::uint32_t n = static_cast<std::uint32_t>(elems.size());
  std::vector<Perm> regular_gens;
  for (const Perm& g : q.generators()) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t i = 0; i < n; ++i) img[i] = index.at(elems[i] * g);
    regular_gens.emplace_back(std::move(img));
  }
  std::vector<std::uint32_t> zimg(n);
  for (std::uint32_t i = 0; i < n; ++i) zimg[i] = index.at(zeta_map.at(elems[i]));
  return burnside_check(PermGroup(n, regular_gens), Perm(std::move(zimg)),
                        exhaustive_cap);
}

struct FeitThompsonResult {
  int branch = 0;         // 1, 2 or 3
  PermGroup witness;      // the normal subgroup N (trivial for branch 3)
  std::string detail;
};

namespace detail {

// Index-3 subgroups of the Sylow 3-part of the nilpotent group f that are
// normal in h, returned as candidate kernels for an S3 quotient.
inline std::vector<PermGroup> index3_normal_subgroups(const PermGroup& h,
                                                      const PermGroup& f) {
  std::vector<PermGroup> out;
  PermGroup p3 = sylow(f, 3);
  std::vector<Perm> rest_gens;  // Hall 3'-part of f (nilpotent: product of Sylows)
  for (auto prime : prime_factors(f.order()))
    if (prime != 3)
      for (const Perm& s : sylow(f, prime).generators()) rest_gens.push_back(s);
  // Frattini-style kernel: derived subgroup and cubes.
  std::vector<Perm> phi_gens;
  for (const Perm& s : derived_subgroup(p3).generators()) phi_gens.push_back(s);
  p3.for_each_element([&](const Perm& e) {
    Perm c = e * e * e;
    if (!c.is_identity()) phi_gens.push_back(c);
    return true;
  });
  PermGroup phi = reduce_to_group(f.degree(), phi_gens);
  Quotient v = quotient(p3, phi);
  std::uint64_t vorder = v.group.order();
  if (vorder % 3 != 0) return out;
  std::uint64_t target = vorder / 3;
  // Enumerate subgroups of the elementary abelian quotient generated by at
  // most two elements; that covers every hyperplane up to order 27.
  std::vector<Perm> velems = v.group.elements(1000);
  std::vector<std::size_t> seen;
  std::vector<std::vector<Perm>> hyperplane_gens;
  auto consider = [&](const std::vector<Perm>& gens) {
    PermGroup w(v.group.degree(), gens);
    if (w.order() != target) return;
    std::vector<Perm> els = w.elements(1000);
    std::sort(els.begin(), els.end());
    std::size_t fp = 1469598103934665603ull;
    for (const Perm& e : els) fp = fp * 1099511628211ull ^ e.hash();
    if (std::find(seen.begin(), seen.end(), fp) != seen.end()) return;
    seen.push_back(fp);
    hyperplane_gens.push_back(gens);
  };
  if (target == 1) consider(std::vector<Perm>{});
  for (const Perm& a : velems) {
    if (a.is_identity()) continue;
    consider({a});
    for (const Perm& b : velems) {
      if (b.is_identity()) continue;
      consider({a, b});
    }
  }
  std::vector<Perm> p3_elems = p3.elements(10000);
  for (const auto& wgens : hyperplane_gens) {
    std::vector<Perm> ngens = rest_gens;
    for (const Perm& s : phi.generators()) ngens.push_back(s);
    bool lifted_all = true;
    for (const Perm& w : wgens) {
      bool found = false;
      for (const Perm& cand : p3_elems)
        if (v.image_of(cand) == w) {
          ngens.push_back(cand);
          found = true;
          break;
        }
      if (!found) lifted_all = false;
    }
    if (!lifted_all) continue;
    PermGroup n = reduce_to_group(h.degree(), ngens);
    bool normal = true;
    for (const Perm& s : n.generators())
      for (const Perm& x : h.generators())
        if (!n.contains(s.conjugated_by(x))) normal = false;
    if (normal) out.push_back(std::move(n));
  }
  return out;
}

}  // namespace detail

// Classifies a group with a self-centralizing subgroup of order three into
// one of the three possible shapes: (1) a nilpotent normal N with quotient
// Sym(3) or C3, (2) a normal 2-subgroup N with quotient Alt(5), or (3) the
// simple group of order 168.  The witness N is verified before returning;
// failure to match any branch is a hard error.
inline FeitThompsonResult feit_thompson_branch(const PermGroup& h, const Perm& x,
                                               std::uint64_t cap = kElementCap) {
  PermGroup xgrp(h.degree(), {x});
  if (xgrp.order() != 3 || !h.contains(x))
    throw std::invalid_argument("feit_thompson_branch: X must be an order-3 subgroup of H");
  if (centralizer(h, x, cap).order() != 3)
    throw std::invalid_argument("feit_thompson_branch: X is not self-centralizing");

  // Fitting subgroup: product of the O_p over the primes dividing |H|.
  std::vector<Perm> fit_gens;
  for (auto p : prime_factors(h.order()))
    for (const Perm& s : o_p(h, p, cap).generators()) fit_gens.push_back(s);
  PermGroup fitting = reduce_to_group(h.degree(), fit_gens);
  auto [fit_nilp, fit_class] = nilpotency_class(fitting);
  if (!fit_nilp) throw std::logic_error("fitting subgroup is not nilpotent");

  auto finish_branch1 = [&](const PermGroup& n, const std::string& what) {
    return FeitThompsonResult{1, n, "H/N = " + what + ", |N| = " + std::to_string(n.order())};
  };
  std::uint64_t idx = h.order() / fitting.order();
  if (idx == 6) {
    Quotient qu = quotient(h, fitting, cap);
    if (recognize_sym3(qu.group)) return finish_branch1(fitting, "Sym(3)");
  } else if (idx == 3) {
    return finish_branch1(fitting, "C3");
  } else if (idx == 1 && h.order() == 3) {
    return finish_branch1(PermGroup(h.degree()), "C3");
  } else if (idx == 2) {
    for (const PermGroup& n : detail::index3_normal_subgroups(h, fitting)) {
      Quotient qu = quotient(h, n, cap);
      if (recognize_sym3(qu.group)) return finish_branch1(n, "Sym(3)");
    }
  }

  PermGroup o2 = o_p(h, 2, cap);
  if (h.order() == o2.order() * 60) {
    Quotient qu = quotient(h, o2, cap);
    if (recognize_alt5(qu.group))
      return FeitThompsonResult{2, o2, "H/N = Alt(5), |N| = " + std::to_string(o2.order())};
  }

  if (h.order() == 168 && is_simple(h, cap))
    return FeitThompsonResult{3, PermGroup(h.degree()), "H is simple of order 168"};

  throw std::logic_error("feit_thompson_branch: no branch matches (theorem violated)");
}

// For a p-group, checks [[a,b],c][[b,c],a][[c,a],b] in gamma_4(G) over all
// element triples (generator triples when the cube of the order is too big).
inline bool verify_triple_commutator_congruence(const PermGroup& g,
                                                std::uint64_t cap = kElementCap) {
  auto primes = prime_factors(g.order());
  if (g.order() > 1 && primes.size() != 1)
    throw std::invalid_argument("verify_triple_commutator_congruence: G is not a p-group");
  auto series = lower_central_series(g);
  const PermGroup& gamma4 =
      series.size() > 3 ? series[3] : PermGroup(g.degree());
  std::vector<Perm> pool;
  if (g.order() <= 128)
    pool = g.elements(cap);
  else
    pool = g.generators();
  for (const Perm& a : pool)
    for (const Perm& b : pool)
      for (const Perm& c : pool) {
        Perm prod = detail::perm_comm(detail::perm_comm(a, b), c) *
                    detail::perm_comm(detail::perm_comm(b, c), a) *
                    detail::perm_comm(detail::perm_comm(c, a), b);
        if (!(prod.is_identity() || gamma4.contains(prod))) return false;
      }
  return true;
}

// Verifies the stock facts about AGL2(3) on any group of order 432 claiming
// to be one: the shape of O_3, the complement at a central-mod-O_3
// involution, the extraspecial Sylow 3-subgroup, the index-4 normalizer, and
// the outer automorphism of that normalizer.
inline CheckReport verify_agl23_facts(const PermGroup& g, std::uint64_t aut_cap = 200) {
  if (g.order() != 432)
    throw std::invalid_argument("verify_agl23_facts: group must have order 432");
  CheckReport rep("agl23-facts");

  // (i) O_3 elementary abelian of order 9, unique, self-centralizing, with
  // GL2(3) quotient acting transitively on its 8 nontrivial elements.
  PermGroup o3 = o_p(g, 3);
  rep.check("(i) |O3| = 9", o3.order() == 9);
  rep.check("(i) O3 elementary abelian", is_elementary_abelian(o3, 3));
  bool unique_normal = true;
  if (o3.order() == 9) {
    std::vector<Perm> nontrivial;
    o3.for_each_element([&](const Perm& e) {
      if (!e.is_identity()) nontrivial.push_back(e);
      return true;
    });
    std::vector<std::size_t> seen;
    for (const Perm& v : nontrivial) {
      PermGroup c3(g.degree(), {v});
      std::vector<Perm> els = c3.elements(100);
      std::sort(els.begin(), els.end());
      std::size_t fp = 0;
      for (const Perm& e : els) fp = fp * 1099511628211ull ^ e.hash();
      if (std::find(seen.begin(), seen.end(), fp) != seen.end()) continue;
      seen.push_back(fp);
      bool normal = true;
      for (const Perm& s : g.generators())
        if (!c3.contains(v.conjugated_by(s))) normal = false;
      if (normal) unique_normal = false;  // a proper normal 3-subgroup below O3
    }
    // conjugation orbit on the nontrivial elements
    std::vector<Perm> orb = {nontrivial[0]};
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const Perm& s : g.generators()) {
        Perm c = orb[i].conjugated_by(s);
        if (std::find(orb.begin(), orb.end(), c) == orb.end()) orb.push_back(c);
      }
    rep.check("(i) G transitive on O3 nontrivial elements", orb.size() == 8);
    rep.check("(i) O3 self-centralizing",
              same_group(centralizer_of_subgroup(g, o3), o3));
    Quotient qu = quotient(g, o3);
    rep.check("(i) G/O3 = GL2(3)", recognize_gl23(qu.group));
    rep.check("(i) O3 unique nontrivial normal 3-subgroup", unique_normal);
  }

  // (ii) an involution central modulo O3 has a GL2(3) centralizer
  // complementing O3.
  Perm t(g.degree());
  bool found_t = false;
  g.for_each_element([&](const Perm& e) {
    if (e.order() != 2 || o3.contains(e)) return true;
    for (const Perm& s : g.generators())
      if (!o3.contains(detail::perm_comm(e, s))) return true;
    t = e;
    found_t = true;
    return false;
  });
  rep.check("(ii) involution central mod O3 exists", found_t);
  if (found_t) {
    PermGroup c = centralizer(g, t);
    rep.check("(ii) |C(t)| = 48", c.order() == 48);
    rep.check("(ii) C(t) complements O3",
              subgroup_intersection(c, o3).order() == 1 && c.order() * o3.order() == 432);
    rep.check("(ii) C(t) = GL2(3)", recognize_gl23(c));
  }

  // (iii) Sylow 3 extraspecial of order 27, exponent 3, C(S) = Z(S) of order 3.
  PermGroup s3 = sylow(g, 3);
  PermGroup zs = center(s3);
  rep.check("(iii) |S| = 27", s3.order() == 27);
  rep.check("(iii) |Z(S)| = 3", zs.order() == 3);
  rep.check("(iii) S' = Z(S)", same_group(derived_subgroup(s3), zs));
  rep.check("(iii) S has exponent 3", has_exponent(s3, 3));
  rep.check("(iii) C_G(S) = Z(S)", same_group(centralizer_of_subgroup(g, s3), zs));

  // (iv) Z = N_G(Z(S)) has index 4 and is maximal.
  PermGroup z = normalizer(g, zs);
  rep.check("(iv) |N(Z(S))| = 108", z.order() == 108);
  rep.check("(iv) C_Z(S) = Z(S)",
            same_group(centralizer_of_subgroup(z, s3), zs));
  if (z.order() == 108)
    rep.check("(iv) N(Z(S)) maximal", is_primitive(right_coset_action(g, z)));

  // (v) Inn(Z) = Z and |Aut(Z) : Inn(Z)| = 2.
  if (z.order() == 108) {
    rep.check("(v) Z(Z) trivial (so Inn(Z) = Z)", center(z).order() == 1);
    AutomorphismGroup az = automorphisms(z, aut_cap);
    rep.check("(v) |Aut(Z)| = 216", az.group.order() == 216,
              "found " + std::to_string(az.all.size()) + " automorphisms");
    rep.check("(v) |Inn(Z)| = 108", az.inner.order() == 108);
  }
  return rep;
}

// The two-quaternion configuration inside a completion: P = <p,q> and
// R = <r,s>^(pr) are Q8's normalized by K = <b,u> = Sym(3), everything sits
// inside the centralizer of t, PK and RK are GL2(3)'s, and the conjugation
// words u^(pr) = t, a^(pr) = b, (ut)^(pr) = u hold.
inline CheckReport verify_2q8_lemma(const PermGroup& g,
                                    const std::map<std::string, Perm>& labels) {
  for (const char* need : {"a", "b", "p", "q", "r", "s", "t", "u"})
    if (!labels.count(need))
      throw std::invalid_argument(std::string("verify_2q8_lemma: missing label ") + need);
  const Perm &a = labels.at("a"), &b = labels.at("b"), &p = labels.at("p"),
             &q = labels.at("q"), &r = labels.at("r"), &s = labels.at("s"),
             &t = labels.at("t"), &u = labels.at("u");
  Perm pr = p * r;
  Perm x = r.conjugated_by(pr), y = s.conjugated_by(pr);

  CheckReport rep("2q8-lemma");
  PermGroup pp(g.degree(), {p, q});
  PermGroup rr(g.degree(), {x, y});
  PermGroup k(g.degree(), {b, u});
  rep.check("P = <p,q> is Q8", recognize_q8(pp));
  rep.check("R = <r,s>^(pr) is Q8", recognize_q8(rr));
  rep.check("K = <b,u> is Sym(3)", recognize_sym3(k));
  auto normalizes = [&](const PermGroup& big, const PermGroup& n) {
    for (const Perm& kg : big.generators())
      for (const Perm& ng : n.generators())
        if (!n.contains(ng.conjugated_by(kg))) return false;
    return true;
  };
  rep.check("K normalizes P", normalizes(k, pp));
  rep.check("K normalizes R", normalizes(k, rr));
  bool central = true;
  for (const Perm& w : {p, q, x, y, b, u})
    if (w * t != t * w) central = false;
  rep.check("<P,R>K centralizes t", central);
  rep.check("PK = GL2(3)", recognize_gl23(PermGroup(g.degree(), {p, q, b, u})));
  rep.check("RK = GL2(3)", recognize_gl23(PermGroup(g.degree(), {x, y, b, u})));
  rep.check("u^(pr) = t", u.conjugated_by(pr) == t);
  rep.check("a^(pr) = b", a.conjugated_by(pr) == b);
  rep.check("(ut)^(pr) = u", (u * t).conjugated_by(pr) == u);
  return rep;
}

}  // namespace amalgam
