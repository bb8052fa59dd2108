#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "amalgam/coset_table.hpp"
#include "amalgam/presentation.hpp"
#include "amalgam/word.hpp"

namespace amalgam {
namespace detail {

// Todd-Coxeter coset enumeration.
//
// The table carries one row per coset with 2g columns (generator, inverse
// alternating).  Coincidences are processed with a union-find whose
// representative is always the smallest equivalent coset, so coset 1 can
// never be replaced.  After every coincidence queue drain, live rows refer
// only to live cosets, which keeps the scan loops free of find() calls.
//
// HLT scans every relator at every live coset, filling gaps by definition,
// and falls back to a full lookahead pass plus compaction when the row
// budget runs out.  Felsch fills the first undefined entry of the
// lowest-numbered live coset and drives all consequences through a deduction
// stack over rotated relators.
class Enumerator {
 public:
  Enumerator(const Presentation& pres, const std::vector<Word>& subgroup,
             const EnumerationLimits& limits)
      : pres_(pres), subgroup_(subgroup), limits_(limits) {
    pres_.validate();
    ngens_ = static_cast<int>(pres_.generators.size());
    ncols_ = 2 * ngens_;
    felsch_ = limits_.strategy == Strategy::Felsch;
    if (limits_.max_cosets < 1)
      throw std::invalid_argument("max_cosets must be positive");
    maxrows_ = static_cast<std::uint32_t>(
        std::min<std::int64_t>(limits_.max_cosets, 0x7fffffff));
    for (const Word& r : pres_.relators) {
      if (!r.is_reduced())
        throw std::invalid_argument("relator is not freely reduced");
      if (!r.empty()) rels_.push_back(columns_of(r));
    }
    for (const Word& h : subgroup_) {
      if (h.max_generator() > ngens_)
        throw std::invalid_argument("subgroup word uses out-of-range generator");
      if (!h.empty()) subs_.push_back(columns_of(h));
    }
    std::stable_sort(rels_.begin(), rels_.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    build_rotations();
  }

  CosetTable run() {
    new_coset_unchecked();  // coset 1
    if (felsch_)
      run_felsch();
    else
      run_hlt();
    compact();
    CosetTable t;
    t.presentation = pres_;
    t.subgroup_words = subgroup_;
    t.strategy = limits_.strategy;
    t.max_cosets = limits_.max_cosets;
    t.live_count = nlive_;
    t.ncols = ncols_;
    t.rows.assign(tab_.begin() + ncols_, tab_.begin() + ncols_ * (1 + nlive_));
    t.stats = stats_;
    t = standardize(t);
    t.validate();
    return t;
  }

 private:
  struct NoSpace {};

  std::vector<int> columns_of(const Word& w) const {
    std::vector<int> cols;
    cols.reserve(w.letters.size());
    for (int l : w.letters) {
      if (std::abs(l) > ngens_)
        throw std::invalid_argument("word uses out-of-range generator");
      cols.push_back(CosetTable::column_of(l));
    }
    return cols;
  }

  void build_rotations() {
    edp_.assign(ncols_, {});
    std::vector<std::set<std::vector<int>>> seen(ncols_);
    for (const auto& r : rels_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::vector<int> rot(r.begin() + i, r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + i);
        if (seen[rot[0]].insert(rot).second) edp_[rot[0]].push_back(rot);
      }
  }

  std::uint32_t& at(std::uint32_t c, int x) { return tab_[static_cast<std::size_t>(c) * ncols_ + x]; }
  std::uint32_t get(std::uint32_t c, int x) const { return tab_[static_cast<std::size_t>(c) * ncols_ + x]; }
  bool alive(std::uint32_t c) const { return ufp_[c] == c; }

  std::uint32_t rep(std::uint32_t c) {
    while (ufp_[c] != c) {
      ufp_[c] = ufp_[ufp_[c]];
      c = ufp_[c];
    }
    return c;
  }

  std::uint32_t new_coset_unchecked() {
    ++nrows_;
    tab_.resize(static_cast<std::size_t>(nrows_ + 1) * ncols_, 0);
    ufp_.resize(nrows_ + 1);
    ufp_[nrows_] = nrows_;
    ++nlive_;
    ++stats_.total_defined;
    stats_.max_rows = std::max<std::uint64_t>(stats_.max_rows, nrows_);
    return nrows_;
  }

  std::uint32_t define(std::uint32_t a, int x) {
    if (nrows_ >= maxrows_) throw NoSpace{};
    std::uint32_t b = new_coset_unchecked();
    at(a, x) = b;
    at(b, x ^ 1) = a;
    dstack_.push_back({a, x});
    dstack_.push_back({b, x ^ 1});
    return b;
  }

  void merge(std::uint32_t a, std::uint32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    ufp_[b] = a;
    --nlive_;
    ++merges_;
    cqueue_.push_back(b);
  }

  // Transfers the rows of dead cosets onto their representatives.  Standard
  // queue processing; afterwards live rows only mention live cosets.
  void coincidence(std::uint32_t a, std::uint32_t b) {
    merge(a, b);
    while (!cqueue_.empty()) {
      std::uint32_t g = cqueue_.front();
      cqueue_.pop_front();
      touched_ = std::min(touched_, g);
      for (int x = 0; x < ncols_; ++x) {
        std::uint32_t d = get(g, x);
        if (d == 0) continue;
        at(g, x) = 0;
        if (get(d, x ^ 1) == g) at(d, x ^ 1) = 0;
        std::uint32_t m = rep(g);
        std::uint32_t n = rep(d);
        touched_ = std::min({touched_, m, n});
        if (std::uint32_t e = get(m, x); e != 0)
          merge(n, e);
        else if (std::uint32_t f = get(n, x ^ 1); f != 0)
          merge(m, f);
        else {
          at(m, x) = n;
          at(n, x ^ 1) = m;
          dstack_.push_back({m, x});
          dstack_.push_back({n, x ^ 1});
        }
      }
    }
  }

  // Two-sided scan of w at coset a.  With fill set, gaps of length >= 2 are
  // filled by new definitions (HLT); a gap of length 1 is closed as a
  // deduction either way.  Returns false if a coincidence was processed, in
  // which case the caller must rescan.
  bool scan(std::uint32_t a, const std::vector<int>& w, bool fill) {
    std::uint32_t fwd = a;
    std::size_t i = 0;
    const std::size_t n = w.size();
    while (true) {
      while (i < n) {
        std::uint32_t e = get(fwd, w[i]);
        if (e == 0) break;
        fwd = e;
        ++i;
      }
      if (i == n) {
        if (fwd != a) {
          coincidence(fwd, a);
          return false;
        }
        return true;
      }
      std::uint32_t bwd = a;
      std::size_t j = n;
      while (j > i) {
        std::uint32_t e = get(bwd, w[j - 1] ^ 1);
        if (e == 0) break;
        bwd = e;
        --j;
      }
      if (j == i) {
        if (fwd != bwd) {
          coincidence(fwd, bwd);
          return false;
        }
        return true;
      }
      if (j == i + 1) {
        at(fwd, w[i]) = bwd;
        at(bwd, w[i] ^ 1) = fwd;
        dstack_.push_back({fwd, w[i]});
        dstack_.push_back({bwd, w[i] ^ 1});
        return true;
      }
      if (!fill) return true;
      define(fwd, w[i]);  // extends the forward path; loop continues
    }
  }

  // Rescan until the word closes cleanly at (the representative of) a.
  // Terminates because every non-clean pass removes at least one coset.
  void scan_to_completion(std::uint32_t a, const std::vector<int>& w, bool fill) {
    while (true) {
      std::uint32_t c = rep(a);
      if (scan(c, w, fill)) return;
    }
  }

  void drain_deductions() {
    while (!dstack_.empty()) {
      auto [c, x] = dstack_.back();
      dstack_.pop_back();
      if (!alive(c)) continue;
      if (get(c, x) == 0) continue;
      for (const auto& rot : edp_[x]) scan_to_completion(c, rot, false);
    }
  }

  // Full relator pass without definitions, then dead-row compaction.
  // Returns the new index of the watched coset (0 if it died).  Throws
  // LimitExceeded when the pass cannot free a useful amount of space.
  std::uint32_t maintenance(std::uint32_t watch) {
    if (!felsch_) {
      for (std::uint32_t c = 1; c <= nrows_; ++c) {
        if (!alive(c)) continue;
        for (const auto& r : rels_) {
          scan_to_completion(c, r, false);
          if (!alive(c)) break;
        }
      }
      drain_deductions();
    }
    std::uint32_t freed = nrows_ - nlive_;
    std::uint32_t neww = compact_watching(watch);
    if (freed < maxrows_ / 16) throw LimitExceeded(stats_);
    return neww;
  }

  std::uint32_t compact_watching(std::uint32_t watch) {
    std::uint32_t watch_rep = watch ? rep(watch) : 0;
    std::vector<std::uint32_t> newidx(nrows_ + 1, 0);
    std::uint32_t next = 0;
    for (std::uint32_t c = 1; c <= nrows_; ++c)
      if (alive(c)) newidx[c] = ++next;
    for (std::uint32_t c = 1; c <= nrows_; ++c) {
      if (!alive(c)) continue;
      for (int x = 0; x < ncols_; ++x) {
        std::uint32_t d = get(c, x);
        tab_[static_cast<std::size_t>(newidx[c]) * ncols_ + x] = d ? newidx[d] : 0;
      }
    }
    nrows_ = next;
    tab_.resize(static_cast<std::size_t>(nrows_ + 1) * ncols_);
    ufp_.resize(nrows_ + 1);
    for (std::uint32_t c = 0; c <= nrows_; ++c) ufp_[c] = c;
    for (auto& [c, x] : dstack_) c = newidx[c];  // dead entries become 0
    std::erase_if(dstack_, [](const auto& d) { return d.first == 0; });
    ++stats_.compactions;
    touched_ = 1;
    return watch_rep ? newidx[watch_rep] : 0;
  }

  void run_hlt() {
    for (const auto& h : subs_) {
      while (true) {
        try {
          scan_to_completion(1, h, true);
          drain_deductions();
          break;
        } catch (NoSpace&) {
          maintenance(0);
        }
      }
    }
    std::uint32_t a = 1;
    while (a <= nrows_) {
      if (!alive(a)) {
        ++a;
        continue;
      }
      for (const auto& r : rels_) {
        while (true) {
          try {
            scan_to_completion(a, r, true);
            drain_deductions();
            break;
          } catch (NoSpace&) {
            a = maintenance(a);
            if (a == 0) break;
          }
        }
        if (a == 0 || !alive(a)) break;
      }
      if (a == 0) {
        a = 1;  // watched coset died during maintenance; rescan from the top
        continue;
      }
      if (alive(a)) {
        for (int x = 0; x < ncols_; ++x) {
          while (a != 0 && alive(a) && get(a, x) == 0) {
            try {
              define(a, x);
              drain_deductions();
            } catch (NoSpace&) {
              a = maintenance(a);  // a lookahead deduction may fill (a,x)
            }
          }
          if (a == 0 || !alive(a)) break;
        }
        if (a == 0) {
          a = 1;
          continue;
        }
      }
      ++a;
    }
    // Dead cosets past the scan pointer hold no obligations; merged cosets
    // inherit fully scanned rows.
  }

  void run_felsch() {
    for (const auto& h : subs_) {
      while (true) {
        try {
          scan_to_completion(1, h, true);
          break;
        } catch (NoSpace&) {
          maintenance(0);
        }
      }
      drain_deductions();
    }
    std::uint32_t a = 1;
    int x = 0;
    while (true) {
      // Find the first undefined entry at or after the pointer; coincidence
      // processing can only invalidate entries at or after touched_.
      if (touched_ <= a) {
        a = touched_;
        x = 0;
      }
      touched_ = 0xffffffff;
      while (a <= nrows_ && (!alive(a) || get(a, x) != 0)) {
        if (++x == ncols_) {
          x = 0;
          ++a;
        }
      }
      if (a > nrows_) return;  // table is closed
      while (true) {
        try {
          define(a, x);
          break;
        } catch (NoSpace&) {
          std::uint32_t w = maintenance(a);
          a = w ? w : 1;
          x = 0;
        }
      }
      drain_deductions();
    }
  }

  Presentation pres_;
  std::vector<Word> subgroup_;
  EnumerationLimits limits_;
  int ngens_ = 0;
  int ncols_ = 0;
  bool felsch_ = false;
  std::uint32_t maxrows_ = 0;

  std::vector<std::vector<int>> rels_, subs_;
  std::vector<std::vector<std::vector<int>>> edp_;

  std::vector<std::uint32_t> tab_;
  std::vector<std::uint32_t> ufp_;
  std::uint32_t nrows_ = 0;
  std::uint32_t nlive_ = 0;
  std::deque<std::uint32_t> cqueue_;
  std::vector<std::pair<std::uint32_t, int>> dstack_;
  std::uint64_t merges_ = 0;
  std::uint32_t touched_ = 0xffffffff;
  EnumerationStats stats_;

  void compact() { compact_watching(0); }
};

}  // namespace detail

// Enumerates the cosets of the subgroup generated by `subgroup` in the group
// presented by `p`.  Returns a closed, compacted, standardized table whose
// live_count is the index when it is finite and reachable within limits;
// throws LimitExceeded otherwise.
inline CosetTable enumerate(const Presentation& p, const std::vector<Word>& subgroup,
                            const EnumerationLimits& limits = {}) {
  return detail::Enumerator(p, subgroup, limits).run();
}

}  // namespace amalgam
