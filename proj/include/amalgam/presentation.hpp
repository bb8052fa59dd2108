#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "amalgam/word.hpp"

namespace amalgam {

// A finite presentation: an ordered generator list and a list of relator
// words, each understood as equal to the identity.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  bool operator==(const Presentation& o) const {
    return generators == o.generators && relators == o.relators;
  }
  bool operator!=(const Presentation& o) const { return !(*this == o); }

  int generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i) + 1;
    return 0;
  }

  void validate() const {
    if (generators.empty())
      throw std::invalid_argument("presentation has no generators");
    std::set<std::string> seen;
    for (const auto& g : generators)
      if (!seen.insert(g).second)
        throw std::invalid_argument("duplicate generator name: " + g);
    for (const auto& r : relators)
      if (r.max_generator() > static_cast<int>(generators.size()))
        throw std::invalid_argument("relator uses out-of-range generator");
  }
};

// Canonical serialized form: generators in declared order, one relator per
// rels clause, in stored order.  parse_presentation() round-trips this.
inline std::string presentation_to_string(const Presentation& p) {
  std::string out = "gens ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) out += ", ";
    out += p.generators[i];
  }
  out += ";\nrels ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i) out += ";\n     ";
    out += word_to_string(p.relators[i], p.generators);
  }
  out += ";\n";
  return out;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t presentation_hash(const Presentation& p) {
  return fnv1a64(presentation_to_string(p));
}

// Glues two presentations along generators of the same name.  The result has
// PX's generators followed by PY's non-shared ones, PX's relators followed by
// those PY relators not already present after reindexing.  This is the
// presentation of the free product amalgamated over the subgroup the shared
// generators carry.
inline Presentation amalgamated_presentation(
    const Presentation& px, const Presentation& py,
    const std::set<std::string>& shared) {
  px.validate();
  py.validate();
  for (const auto& name : shared) {
    if (px.generator_index(name) == 0)
      throw std::invalid_argument("shared generator missing from first presentation: " + name);
    if (py.generator_index(name) == 0)
      throw std::invalid_argument("shared generator missing from second presentation: " + name);
  }
  Presentation out;
  out.generators = px.generators;
  // Map PY generator indices into the combined list.
  std::vector<int> remap(py.generators.size() + 1, 0);
  for (std::size_t i = 0; i < py.generators.size(); ++i) {
    const std::string& name = py.generators[i];
    int idx = out.generator_index(name);
    if (idx != 0) {
      if (!shared.count(name))
        throw std::invalid_argument("non-shared generator name clash: " + name);
      remap[i + 1] = idx;
    } else {
      out.generators.push_back(name);
      remap[i + 1] = static_cast<int>(out.generators.size());
    }
  }
  out.relators = px.relators;
  std::set<Word> have(out.relators.begin(), out.relators.end());
  for (const Word& r : py.relators) {
    Word w;
    w.letters.reserve(r.letters.size());
    for (int l : r.letters) {
      int m = remap[std::abs(l)];
      w.letters.push_back(l > 0 ? m : -m);
    }
    if (have.insert(w).second) out.relators.push_back(w);
  }
  return out;
}

}  // namespace amalgam
