#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalgam/perm.hpp"
#include "amalgam/presentation.hpp"
#include "amalgam/word.hpp"

namespace amalgam {

enum class Strategy { HltLookahead, Felsch };

inline std::string strategy_name(Strategy s) {
  return s == Strategy::HltLookahead ? "hlt" : "felsch";
}

inline Strategy strategy_from_name(const std::string& s) {
  if (s == "hlt") return Strategy::HltLookahead;
  if (s == "felsch") return Strategy::Felsch;
  throw std::invalid_argument("unknown strategy: " + s);
}

struct EnumerationLimits {
  std::int64_t max_cosets = 1'000'000;  // live + dead rows allowed before abort
  Strategy strategy = Strategy::HltLookahead;
};

struct EnumerationStats {
  std::uint64_t total_defined = 0;  // cosets ever created
  std::uint64_t max_rows = 0;       // peak live+dead rows
  std::uint64_t compactions = 0;
};

// Thrown when the row budget is exhausted without closing the table; this is
// the expected outcome for presentations of infinite groups.
struct LimitExceeded : std::runtime_error {
  EnumerationStats stats;
  explicit LimitExceeded(const EnumerationStats& s)
      : std::runtime_error("coset enumeration exceeded max_cosets (" +
                           std::to_string(s.max_rows) + " rows in use)"),
        stats(s) {}
};

// A closed coset table: rows are live cosets 1..live_count, columns alternate
// generator and inverse (col 2i is generator i+1, col 2i+1 its inverse).
// Entry 0 means undefined; closed tables (the only kind enumerate() returns)
// have none.
struct CosetTable {
  Presentation presentation;
  std::vector<Word> subgroup_words;
  Strategy strategy = Strategy::HltLookahead;
  std::int64_t max_cosets = 0;
  std::uint32_t live_count = 0;
  int ncols = 0;
  std::vector<std::uint32_t> rows;  // live_count * ncols entries
  EnumerationStats stats;

  static int column_of(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
  }

  std::uint32_t entry(std::uint32_t coset, int col) const {
    return rows[static_cast<std::size_t>(coset - 1) * ncols + col];
  }

  bool is_closed() const {
    for (auto e : rows)
      if (e == 0) return false;
    return true;
  }

  // Applies w letter by letter starting from coset c.
  std::uint32_t trace(std::uint32_t c, const Word& w) const {
    if (c < 1 || c > live_count)
      throw std::out_of_range("coset index out of range");
    for (int l : w.letters) {
      std::uint32_t d = entry(c, column_of(l));
      if (d == 0) throw std::logic_error("trace hit an undefined entry");
      c = d;
    }
    return c;
  }

  // Full invariant scan: totality, ragged-edge consistency, every relator
  // closing at every coset and every subgroup word fixing coset 1.
  void validate() const {
    if (rows.size() != static_cast<std::size_t>(live_count) * ncols)
      throw std::logic_error("coset table has wrong row storage size");
    for (std::uint32_t c = 1; c <= live_count; ++c)
      for (int x = 0; x < ncols; ++x) {
        std::uint32_t d = entry(c, x);
        if (d == 0) throw std::logic_error("coset table is not closed");
        if (d > live_count) throw std::logic_error("coset entry out of range");
        if (entry(d, x ^ 1) != c)
          throw std::logic_error("coset table is inconsistent");
      }
    for (const Word& r : presentation.relators)
      for (std::uint32_t c = 1; c <= live_count; ++c)
        if (trace(c, r) != c)
          throw std::logic_error("relator does not close in coset table");
    for (const Word& h : subgroup_words)
      if (trace(1, h) != 1)
        throw std::logic_error("subgroup word does not fix coset 1");
  }
};

// Renumbers cosets in breadth-first order from coset 1, scanning columns in
// declared order.  Tables of the same presentation and subgroup standardize
// identically whatever strategy produced them.
inline CosetTable standardize(const CosetTable& t) {
  if (!t.is_closed()) throw std::invalid_argument("cannot standardize a non-closed table");
  const std::uint32_t n = t.live_count;
  std::vector<std::uint32_t> old2new(n + 1, 0), new2old(n + 1, 0);
  std::uint32_t next = 1;
  old2new[1] = 1;
  new2old[1] = 1;
  std::vector<std::uint32_t> queue = {1};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::uint32_t c = queue[qi];
    for (int x = 0; x < t.ncols; ++x) {
      std::uint32_t d = t.entry(c, x);
      if (old2new[d] == 0) {
        old2new[d] = ++next;
        new2old[next] = d;
        queue.push_back(d);
      }
    }
  }
  if (next != n) throw std::logic_error("coset table is not transitive");
  CosetTable out = t;
  for (std::uint32_t c = 1; c <= n; ++c)
    for (int x = 0; x < t.ncols; ++x)
      out.rows[static_cast<std::size_t>(c - 1) * t.ncols + x] =
          old2new[t.entry(new2old[c], x)];
  return out;
}

// Reads off one permutation of {1..live_count} per generator.
inline std::vector<std::pair<std::string, Perm>> coset_action(const CosetTable& t) {
  if (!t.is_closed()) throw std::invalid_argument("coset action needs a closed table");
  std::vector<std::pair<std::string, Perm>> out;
  for (std::size_t g = 0; g < t.presentation.generators.size(); ++g) {
    std::vector<std::uint32_t> img(t.live_count);
    for (std::uint32_t c = 1; c <= t.live_count; ++c)
      img[c - 1] = t.entry(c, static_cast<int>(2 * g)) - 1;
    out.emplace_back(t.presentation.generators[g], Perm(std::move(img)));
  }
  return out;
}

}  // namespace amalgam
