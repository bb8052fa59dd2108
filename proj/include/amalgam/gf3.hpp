#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalgam/perm.hpp"
#include "amalgam/perm_group.hpp"
#include "amalgam/presentation.hpp"
#include "amalgam/report.hpp"
#include "amalgam/word.hpp"

namespace amalgam {

// 3x3 matrices over GF(3), stored row-major with entries 0,1,2.  Vectors are
// rows and matrices act on the right: v -> v*M.  That convention makes the
// lower-triangular generator below stabilize the projective point <(1,0,0)>.
struct Mat3 {
  std::array<std::uint8_t, 9> e{};

  static Mat3 identity() {
    Mat3 m;
    m.e = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }
  static Mat3 from_rows(std::initializer_list<int> vals) {
    Mat3 m;
    int i = 0;
    for (int v : vals) m.e[i++] = static_cast<std::uint8_t>(((v % 3) + 3) % 3);
    if (i != 9) throw std::invalid_argument("Mat3 needs 9 entries");
    return m;
  }

  std::uint8_t at(int r, int c) const { return e[3 * r + c]; }

  Mat3 operator*(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int s = 0;
        for (int k = 0; k < 3; ++k) s += at(i, k) * o.at(k, j);
        m.e[3 * i + j] = static_cast<std::uint8_t>(s % 3);
      }
    return m;
  }

  int det() const {
    int d = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
            at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
            at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    return ((d % 3) + 3) % 3;
  }

  Mat3 inverse() const {
    int d = det();
    if (d == 0) throw std::invalid_argument("singular matrix");
    int dinv = d;  // 1 and 2 are self-inverse mod 3
    Mat3 adj;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int a = at((j + 1) % 3, (i + 1) % 3) * at((j + 2) % 3, (i + 2) % 3) -
                at((j + 1) % 3, (i + 2) % 3) * at((j + 2) % 3, (i + 1) % 3);
        adj.e[3 * i + j] = static_cast<std::uint8_t>((((a * dinv) % 3) + 3) % 3);
      }
    return adj;
  }

  bool operator==(const Mat3& o) const { return e == o.e; }
  bool operator!=(const Mat3& o) const { return e != o.e; }

  // base-3 encoding, a perfect index into [0, 3^9)
  std::uint16_t encode() const {
    std::uint32_t v = 0;
    for (int i = 8; i >= 0; --i) v = v * 3 + e[i];
    return static_cast<std::uint16_t>(v);
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < 9; ++i) {
      if (i && i % 3 == 0) s += "; ";
      else if (i) s += " ";
      s += std::to_string(int(e[i]));
    }
    return s + "]";
  }
};

// The eight defining matrices; -1 is represented as 2.
inline Mat3 theta(const std::string& name) {
  if (name == "a") return Mat3::from_rows({1, 0, 0, 1, 1, 0, 0, 0, 1});
  if (name == "b") return Mat3::from_rows({1, 0, 0, 0, 1, 0, 0, 1, 1});
  if (name == "t") return Mat3::from_rows({1, 0, 0, 0, -1, 0, 0, 0, -1});
  if (name == "u") return Mat3::from_rows({-1, 0, 0, 0, -1, 0, 0, 0, 1});
  if (name == "p") return Mat3::from_rows({1, 0, 0, 0, 0, 1, 0, -1, 0});
  if (name == "q") return Mat3::from_rows({1, 0, 0, 0, -1, 1, 0, 1, 1});
  if (name == "r") return Mat3::from_rows({0, 1, 0, -1, 0, 0, 0, 0, 1});
  if (name == "s") return Mat3::from_rows({-1, 1, 0, 1, 1, 0, 0, 0, 1});
  throw std::invalid_argument("theta: unknown generator name " + name);
}

inline Mat3 evaluate_word(const Word& w, const std::vector<Mat3>& images) {
  Mat3 m = Mat3::identity();
  for (int l : w.letters) {
    const Mat3& g = images.at(static_cast<std::size_t>(std::abs(l)) - 1);
    m = m * (l > 0 ? g : g.inverse());
  }
  return m;
}

// Every relator of the given presentation must evaluate to the identity
// matrix under the generator-name -> theta assignment.
inline CheckReport verify_theta_relators(const Presentation& p) {
  std::vector<Mat3> images;
  for (const auto& name : p.generators) images.push_back(theta(name));
  CheckReport rep("theta-relators");
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    Mat3 m = evaluate_word(p.relators[i], images);
    rep.check(word_to_string(p.relators[i], p.generators), m == Mat3::identity(),
              m == Mat3::identity() ? "" : "evaluates to " + m.to_string());
  }
  return rep;
}

// The 13 points of the projective plane over GF(3): normalized row triples
// (first nonzero coordinate 1), ordered lexicographically.  Lines use the
// same coordinates read as dual vectors; incidence is a zero dot product.
struct ProjectivePlane {
  std::vector<std::array<std::uint8_t, 3>> points;  // 13 normalized triples

  ProjectivePlane() {
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z) {
          if (x == 0 && y == 0 && z == 0) continue;
          int first = x != 0 ? x : (y != 0 ? y : z);
          if (first != 1) continue;
          points.push_back({static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y),
                            static_cast<std::uint8_t>(z)});
        }
  }

  static std::array<std::uint8_t, 3> normalize(std::array<int, 3> v) {
    int first = 0;
    for (int c : v)
      if (c % 3 != 0) {
        first = ((c % 3) + 3) % 3;
        break;
      }
    if (first == 0) throw std::invalid_argument("zero vector has no projective class");
    int scale = first == 1 ? 1 : 2;
    std::array<std::uint8_t, 3> out;
    for (int i = 0; i < 3; ++i)
      out[i] = static_cast<std::uint8_t>((((v[i] * scale) % 3) + 3) % 3);
    return out;
  }

  std::uint32_t index_of(const std::array<std::uint8_t, 3>& pt) const {
    for (std::uint32_t i = 0; i < points.size(); ++i)
      if (points[i] == pt) return i;
    throw std::logic_error("projective point not found");
  }

  std::uint32_t act(std::uint32_t point, const Mat3& m) const {
    const auto& p = points[point];
    std::array<int, 3> v{};
    for (int j = 0; j < 3; ++j)
      v[j] = p[0] * m.at(0, j) + p[1] * m.at(1, j) + p[2] * m.at(2, j);
    return index_of(normalize(v));
  }

  bool incident(std::uint32_t point, std::uint32_t line) const {
    const auto& p = points[point];
    const auto& l = points[line];
    return (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % 3 == 0;
  }
};

// SL3(3) as the closure of the eight theta matrices, together with its
// permutation action on the 13 projective points.
struct Sl33 {
  std::vector<Mat3> elements;                       // closure, discovery order
  ProjectivePlane plane;
  std::vector<std::string> generator_names;         // a,b,t,u,p,q,r,s
  std::vector<Mat3> generator_matrices;
  std::vector<Perm> generator_point_perms;          // degree 13
  PermGroup point_action;

  Perm point_perm(const Mat3& m) const {
    std::vector<std::uint32_t> img(13);
    for (std::uint32_t i = 0; i < 13; ++i) img[i] = plane.act(i, m);
    return Perm(std::move(img));
  }
};

inline Sl33 generate_sl33() {
  Sl33 g;
  g.generator_names = {"a", "b", "t", "u", "p", "q", "r", "s"};
  for (const auto& n : g.generator_names) g.generator_matrices.push_back(theta(n));
  std::vector<std::int32_t> seen(19683, -1);
  g.elements.push_back(Mat3::identity());
  seen[Mat3::identity().encode()] = 0;
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (const Mat3& m : g.generator_matrices) {
      Mat3 next = g.elements[i] * m;
      if (seen[next.encode()] < 0) {
        seen[next.encode()] = static_cast<std::int32_t>(g.elements.size());
        g.elements.push_back(next);
      }
    }
  for (const Mat3& m : g.generator_matrices)
    g.generator_point_perms.push_back(g.point_perm(m));
  g.point_action = PermGroup(13, g.generator_point_perms);
  return g;
}

// The stabilizers of the point <(1,0,0)> and the line {z = 0} (which is the
// span of (1,0,0) and (0,1,0)), plus their intersection, as matrix lists and
// as degree-13 permutation groups.
struct Sl33Stabilizers {
  std::vector<Mat3> a1_matrices, b1_matrices, c1_matrices;
  PermGroup a1, b1, c1;  // degree 13
};

inline Sl33Stabilizers stabilizers(const Sl33& g) {
  Sl33Stabilizers s;
  std::uint32_t pt = g.plane.index_of({1, 0, 0});
  std::vector<std::uint32_t> line_pts;
  for (std::uint32_t i = 0; i < 13; ++i)
    if (g.plane.points[i][2] == 0) line_pts.push_back(i);
  std::vector<Perm> a1p, b1p, c1p;
  for (const Mat3& m : g.elements) {
    Perm p = g.point_perm(m);
    bool fixes_point = p[pt] == pt;
    bool fixes_line = true;
    for (auto lp : line_pts) {
      bool inside = false;
      for (auto lq : line_pts) inside |= (p[lp] == lq);
      fixes_line &= inside;
    }
    if (fixes_point) {
      s.a1_matrices.push_back(m);
      a1p.push_back(p);
    }
    if (fixes_line) {
      s.b1_matrices.push_back(m);
      b1p.push_back(p);
    }
    if (fixes_point && fixes_line) {
      s.c1_matrices.push_back(m);
      c1p.push_back(p);
    }
  }
  s.a1 = PermGroup(13, a1p);
  s.b1 = PermGroup(13, b1p);
  s.c1 = PermGroup(13, c1p);
  return s;
}

}  // namespace amalgam
