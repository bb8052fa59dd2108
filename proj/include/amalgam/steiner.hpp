#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalgam/group_ops.hpp"
#include "amalgam/perm.hpp"
#include "amalgam/perm_group.hpp"

namespace amalgam {

// The Steiner system S(12,6,5) on points 0..11 (blocks as 12-bit masks),
// built from the extended ternary Golay code: the blocks are the supports of
// the weight-6 codewords.  The generator matrix is the usual bordered
// circulant [I6 | A]; it is validated by the exhaustive Steiner check in
// build_steiner(), which is the actual source of truth.
struct SteinerSystem {
  std::vector<std::uint16_t> blocks;  // 132 sorted masks, popcount 6

  bool is_block(std::uint16_t mask) const {
    return std::binary_search(blocks.begin(), blocks.end(), mask);
  }

  std::vector<std::uint8_t> block_points(std::uint16_t mask) const {
    std::vector<std::uint8_t> pts;
    for (std::uint8_t i = 0; i < 12; ++i)
      if (mask >> i & 1) pts.push_back(i);
    return pts;
  }

  std::uint64_t blocks_through(std::uint16_t subset_mask) const {
    std::uint64_t n = 0;
    for (auto b : blocks)
      if ((b & subset_mask) == subset_mask) ++n;
    return n;
  }
};

inline constexpr std::array<std::array<int, 6>, 6> kGolayTail = {{
    {0, 1, 1, 1, 1, 1},
    {1, 0, 1, 2, 2, 1},
    {1, 1, 0, 1, 2, 2},
    {1, 2, 1, 0, 1, 2},
    {1, 2, 2, 1, 0, 1},
    {1, 1, 2, 2, 1, 0},
}};

inline SteinerSystem build_steiner() {
  std::array<std::array<int, 12>, 6> gen{};
  for (int i = 0; i < 6; ++i) {
    gen[i][i] = 1;
    for (int j = 0; j < 6; ++j) gen[i][6 + j] = kGolayTail[i][j];
  }
  std::vector<std::uint16_t> blocks;
  for (int code = 0; code < 729; ++code) {
    std::array<int, 12> v{};
    int c = code;
    for (int i = 0; i < 6; ++i, c /= 3)
      if (c % 3)
        for (int j = 0; j < 12; ++j) v[j] = (v[j] + (c % 3) * gen[i][j]) % 3;
    std::uint16_t mask = 0;
    int weight = 0;
    for (int j = 0; j < 12; ++j)
      if (v[j]) {
        mask |= std::uint16_t(1) << j;
        ++weight;
      }
    if (weight == 6) blocks.push_back(mask);
  }
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());

  SteinerSystem s;
  s.blocks = std::move(blocks);
  if (s.blocks.size() != 132)
    throw std::logic_error("Steiner construction failed: wrong block count");
  // Exhaustive Steiner property: every 5-subset lies in exactly one block.
  std::array<std::uint8_t, 4096> cover{};
  for (auto b : s.blocks) {
    auto pts = s.block_points(b);
    for (int omit = 0; omit < 6; ++omit)
      cover[b & ~(std::uint16_t(1) << pts[omit])] += 1;
  }
  for (std::uint32_t m = 0; m < 4096; ++m)
    if (std::popcount(m) == 5 && cover[m] != 1)
      throw std::logic_error("Steiner construction failed: 5-subset not covered exactly once");
  return s;
}

// A partition of the 12 points into four triples whose pairwise unions are
// all blocks.  Parts are stored as sorted masks, partitions sorted overall,
// fixing the vertex numbering of the triple/partition graph.
struct LinkedThree {
  std::array<std::uint16_t, 4> parts;

  bool operator==(const LinkedThree& o) const { return parts == o.parts; }
  bool operator<(const LinkedThree& o) const { return parts < o.parts; }
};

inline std::vector<LinkedThree> linked_threes(const SteinerSystem& s) {
  std::vector<LinkedThree> out;
  std::array<std::uint16_t, 4> parts{};
  std::function<void(std::uint16_t, int)> walk = [&](std::uint16_t used, int depth) {
    if (depth == 4) {
      LinkedThree lt;
      lt.parts = parts;
      std::sort(lt.parts.begin(), lt.parts.end());
      out.push_back(lt);
      return;
    }
    int first = std::countr_one(static_cast<unsigned>(used));
    for (int i = first + 1; i < 12; ++i) {
      if (used >> i & 1) continue;
      for (int j = i + 1; j < 12; ++j) {
        if (used >> j & 1) continue;
        std::uint16_t part = (std::uint16_t(1) << first) | (std::uint16_t(1) << i) |
                             (std::uint16_t(1) << j);
        bool ok = true;
        for (int k = 0; k < depth; ++k)
          if (!s.is_block(parts[k] | part)) ok = false;
        if (!ok) continue;
        parts[depth] = part;
        walk(used | part, depth + 1);
      }
    }
  };
  walk(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// All 3-subsets of the 12 points as masks, sorted; the 220 triple vertices.
inline std::vector<std::uint16_t> all_triples() {
  std::vector<std::uint16_t> out;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      for (int k = j + 1; k < 12; ++k)
        out.push_back((std::uint16_t(1) << i) | (std::uint16_t(1) << j) |
                      (std::uint16_t(1) << k));
  std::sort(out.begin(), out.end());
  return out;
}

struct DesignAutomorphisms {
  PermGroup group;          // degree 12
  std::uint64_t count = 0;  // automorphisms found by the backtrack search
};

// Finds every permutation of the 12 points mapping blocks to blocks.  Points
// are assigned in order; after each assignment the block through any five
// mapped points forces the image of its sixth point, and these consequences
// are chased to a fixpoint before branching again.  Completed assignments
// are verified block-by-block before being recorded.
inline DesignAutomorphisms automorphism_group(const SteinerSystem& s,
                                              std::uint64_t node_budget = 50'000'000) {
  std::vector<std::uint16_t> block_of(4096, 0);  // block through a 5-subset
  for (auto b : s.blocks) {
    auto pts = s.block_points(b);
    for (int omit = 0; omit < 6; ++omit)
      block_of[b & ~(std::uint16_t(1) << pts[omit])] = b;
  }
  std::vector<bool> is_block_mask(4096, false);
  for (auto b : s.blocks) is_block_mask[b] = true;

  std::array<std::int8_t, 12> img;
  img.fill(-1);
  std::vector<std::int8_t> assigned;
  std::uint16_t usedimg = 0;
  std::vector<Perm> found;
  std::uint64_t nodes = 0;

  // Assigns z -> w and chases forced images; records everything it assigned
  // in `added` (in order) and returns false on contradiction.
  auto assign_and_propagate = [&](int z, int w, std::vector<std::int8_t>& added) {
    if (++nodes > node_budget)
      throw std::length_error("design automorphism search budget exceeded");
    auto put = [&](int pz, int pw) {
      img[pz] = static_cast<std::int8_t>(pw);
      usedimg |= std::uint16_t(1) << pw;
      assigned.push_back(static_cast<std::int8_t>(pz));
      added.push_back(static_cast<std::int8_t>(pz));
    };
    put(z, w);
    std::size_t qhead = assigned.size() - 1;
    while (qhead < assigned.size()) {
      std::int8_t nz = assigned[qhead++];
      if (assigned.size() < 5) continue;
      std::vector<std::int8_t> others;
      for (std::int8_t a : assigned)
        if (a != nz) others.push_back(a);
      // all 4-subsets of the other assigned points
      std::size_t m = others.size();
      for (std::size_t i0 = 0; i0 < m; ++i0)
        for (std::size_t i1 = i0 + 1; i1 < m; ++i1)
          for (std::size_t i2 = i1 + 1; i2 < m; ++i2)
            for (std::size_t i3 = i2 + 1; i3 < m; ++i3) {
              std::uint16_t d5 = (std::uint16_t(1) << nz) | (std::uint16_t(1) << others[i0]) |
                                 (std::uint16_t(1) << others[i1]) |
                                 (std::uint16_t(1) << others[i2]) |
                                 (std::uint16_t(1) << others[i3]);
              std::uint16_t i5 = (std::uint16_t(1) << img[nz]) |
                                 (std::uint16_t(1) << img[others[i0]]) |
                                 (std::uint16_t(1) << img[others[i1]]) |
                                 (std::uint16_t(1) << img[others[i2]]) |
                                 (std::uint16_t(1) << img[others[i3]]);
              std::uint16_t db = block_of[d5];
              std::uint16_t ib = block_of[i5];
              if (ib == 0) return false;
              int z6 = std::countr_zero(static_cast<unsigned>(db & ~d5));
              int w6 = std::countr_zero(static_cast<unsigned>(ib & ~i5));
              if (img[z6] >= 0) {
                if (img[z6] != w6) return false;
              } else if (usedimg >> w6 & 1) {
                return false;
              } else {
                put(z6, w6);
              }
            }
    }
    return true;
  };

  auto rollback = [&](const std::vector<std::int8_t>& added) {
    for (auto it = added.rbegin(); it != added.rend(); ++it) {
      usedimg &= static_cast<std::uint16_t>(~(std::uint16_t(1) << img[*it]));
      img[*it] = -1;
      assigned.pop_back();
    }
  };

  std::function<void()> search = [&]() {
    if (assigned.size() == 12) {
      std::vector<std::uint32_t> images(12);
      for (int i = 0; i < 12; ++i) images[i] = static_cast<std::uint32_t>(img[i]);
      Perm p(std::move(images));
      for (auto b : s.blocks) {
        std::uint16_t mapped = 0;
        for (int i = 0; i < 12; ++i)
          if (b >> i & 1) mapped |= std::uint16_t(1) << p[i];
        if (!is_block_mask[mapped]) return;
      }
      found.push_back(std::move(p));
      return;
    }
    int z = 0;
    while (img[z] >= 0) ++z;
    for (int w = 0; w < 12; ++w) {
      if (usedimg >> w & 1) continue;
      std::vector<std::int8_t> added;
      if (assign_and_propagate(z, w, added)) search();
      rollback(added);
    }
  };
  search();

  DesignAutomorphisms result;
  result.count = found.size();
  result.group = reduce_to_group(12, found);
  return result;
}

}  // namespace amalgam
