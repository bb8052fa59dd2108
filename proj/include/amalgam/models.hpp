#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "amalgam/perm.hpp"
#include "amalgam/perm_group.hpp"

namespace amalgam {

// Explicit permutation models of the small groups used as references and
// negative controls.  Point orderings are fixed so every construction is
// reproducible.

inline PermGroup make_cyclic(std::uint32_t n) {
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return PermGroup(n, {Perm(std::move(img))});
}

inline PermGroup make_sym(std::uint32_t n) {
  std::vector<std::uint32_t> cyc(n), swp(n);
  for (std::uint32_t i = 0; i < n; ++i) cyc[i] = (i + 1) % n, swp[i] = i;
  swp[0] = 1;
  swp[1] = 0;
  return PermGroup(n, {Perm(std::move(swp)), Perm(std::move(cyc))});
}

inline PermGroup make_alt5() {
  return PermGroup(5, {Perm::from_cycles("(1 2 3)", 5), Perm::from_cycles("(3 4 5)", 5)});
}

// Right regular representation of Q8 on {1,-1,i,-i,j,-j,k,-k}.
inline PermGroup make_q8() {
  return PermGroup(8, {Perm({2, 3, 1, 0, 7, 6, 4, 5}),
                       Perm({4, 5, 6, 7, 1, 0, 3, 2})});
}

namespace detail {

// Points of GF(3)^2 in lexicographic order (x,y) -> 3*x + y.
inline std::uint32_t gf9_index(int x, int y) {
  return static_cast<std::uint32_t>(((x % 3 + 3) % 3) * 3 + ((y % 3 + 3) % 3));
}

inline Perm gf9_linear(int m00, int m01, int m10, int m11) {
  std::vector<std::uint32_t> img(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      img[gf9_index(x, y)] = gf9_index(x * m00 + y * m10, x * m01 + y * m11);
  return Perm(std::move(img));
}

inline Perm gf9_translation(int dx, int dy) {
  std::vector<std::uint32_t> img(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) img[gf9_index(x, y)] = gf9_index(x + dx, y + dy);
  return Perm(std::move(img));
}

}  // namespace detail

// GL2(3) acting on the 8 nonzero row vectors of GF(3)^2, listed
// lexicographically: (0,1),(0,2),(1,0),(1,1),(1,2),(2,0),(2,1),(2,2).
inline PermGroup make_gl23() {
  auto idx = [](int x, int y) {
    x = (x % 3 + 3) % 3;
    y = (y % 3 + 3) % 3;
    return static_cast<std::uint32_t>(3 * x + y - 1);
  };
  auto lin = [&](int m00, int m01, int m10, int m11) {
    std::vector<std::uint32_t> img(8);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        if (x == 0 && y == 0) continue;
        img[idx(x, y)] = idx(x * m00 + y * m10, x * m01 + y * m11);
      }
    return Perm(std::move(img));
  };
  // order-4 rotation, transvection, determinant -1 diagonal
  return PermGroup(8, {lin(0, 2, 1, 0), lin(1, 1, 0, 1), lin(1, 0, 0, 2)});
}

// AGL2(3) = GF(3)^2 : GL2(3) acting on the 9 affine points.
inline PermGroup make_agl23() {
  using namespace detail;
  return PermGroup(9, {gf9_translation(1, 0), gf9_translation(0, 1),
                       gf9_linear(0, 2, 1, 0), gf9_linear(1, 1, 0, 1),
                       gf9_linear(1, 0, 0, 2)});
}

// PSL2(7) on the projective line over GF(7); points 0..6 then infinity = 7.
inline PermGroup make_psl27() {
  std::vector<std::uint32_t> shift(8), inv(8);
  for (std::uint32_t z = 0; z < 7; ++z) shift[z] = (z + 1) % 7;
  shift[7] = 7;
  inv[7] = 0;
  inv[0] = 7;
  for (std::uint32_t z = 1; z < 7; ++z) {
    std::uint32_t zi = 1;  // z^-1 mod 7
    while (z * zi % 7 != 1) ++zi;
    inv[z] = (7 - zi) % 7;  // -1/z
  }
  return PermGroup(8, {Perm(std::move(shift)), Perm(std::move(inv))});
}

// The extraspecial group of order 27 and exponent 3 (Heisenberg group over
// GF(3)), in its right regular representation on triples (a,b,c) with
// (a,b,c)*(d,e,f) = (a+d, b+e, c+f+a*e); point index a + 3b + 9c.
inline PermGroup make_extraspecial27() {
  auto idx = [](int a, int b, int c) {
    return static_cast<std::uint32_t>((a % 3 + 3) % 3 + 3 * ((b % 3 + 3) % 3) +
                                      9 * ((c % 3 + 3) % 3));
  };
  std::vector<std::uint32_t> mx(27), my(27);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        mx[idx(a, b, c)] = idx(a + 1, b, c);
        my[idx(a, b, c)] = idx(a, b + 1, c + a);
      }
  return PermGroup(27, {Perm(std::move(mx)), Perm(std::move(my))});
}

// C4 x C4 as translations of (Z/4)^2 together with the fixed-point-free
// order-3 linear map (x,y) -> (y, -x-y); the map normalizes the translation
// group, so conjugation by it is an automorphism without nontrivial fixed
// points.
struct C4x4WithZeta {
  PermGroup group;
  Perm zeta;
};

inline C4x4WithZeta make_c4xc4_with_zeta() {
  auto idx = [](int x, int y) {
    return static_cast<std::uint32_t>(((x % 4 + 4) % 4) * 4 + ((y % 4 + 4) % 4));
  };
  std::vector<std::uint32_t> t1(16), t2(16), z(16);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      t1[idx(x, y)] = idx(x + 1, y);
      t2[idx(x, y)] = idx(x, y + 1);
      z[idx(x, y)] = idx(y, -x - y);
    }
  return {PermGroup(16, {Perm(std::move(t1)), Perm(std::move(t2))}),
          Perm(std::move(z))};
}

// Same construction one prime down: C2 x C2 with the order-3 map cycling the
// three involutions.
inline C4x4WithZeta make_c2xc2_with_zeta() {
  auto idx = [](int x, int y) {
    return static_cast<std::uint32_t>(((x % 2 + 2) % 2) * 2 + ((y % 2 + 2) % 2));
  };
  std::vector<std::uint32_t> t1(4), t2(4), z(4);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      t1[idx(x, y)] = idx(x + 1, y);
      t2[idx(x, y)] = idx(x, y + 1);
      z[idx(x, y)] = idx(y, x + y);
    }
  return {PermGroup(4, {Perm(std::move(t1)), Perm(std::move(t2))}),
          Perm(std::move(z))};
}

// Direct product acting on the disjoint union of the two point sets.
inline PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  std::uint32_t n = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (const Perm& g : a.generators()) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t i = 0; i < a.degree(); ++i) img[i] = g[i];
    for (std::uint32_t i = a.degree(); i < n; ++i) img[i] = i;
    gens.emplace_back(std::move(img));
  }
  for (const Perm& g : b.generators()) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t i = 0; i < a.degree(); ++i) img[i] = i;
    for (std::uint32_t i = 0; i < b.degree(); ++i) img[a.degree() + i] = a.degree() + g[i];
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, gens);
}

}  // namespace amalgam
