#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace amalgam {

// A permutation of {0,...,n-1}.  Composition is left-to-right: (p*q) means
// "apply p, then q", so point images satisfy x^(p*q) = (x^p)^q.  Cycle
// notation I/O is 1-based.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::uint32_t n) : img_(n) {
    for (std::uint32_t i = 0; i < n; ++i) img_[i] = i;
  }
  explicit Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
#ifndef NDEBUG
    std::vector<bool> seen(img_.size(), false);
    for (auto x : img_) {
      if (x >= img_.size() || seen[x])
        throw std::invalid_argument("image list is not a bijection");
      seen[x] = true;
    }
#endif
  }

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
  std::uint32_t operator[](std::uint32_t x) const { return img_[x]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm operator*(const Perm& o) const {
    if (degree() != o.degree())
      throw std::invalid_argument("degree mismatch in permutation product");
    Perm r;
    r.img_.resize(degree());
    for (std::uint32_t i = 0; i < degree(); ++i) r.img_[i] = o.img_[img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(degree());
    for (std::uint32_t i = 0; i < degree(); ++i) r.img_[img_[i]] = i;
    return r;
  }

  // p.conjugated_by(c) = c^-1 * p * c
  Perm conjugated_by(const Perm& c) const { return c.inverse() * (*this * c); }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  std::uint64_t order() const {
    std::uint64_t ord = 1;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      std::uint32_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = img_[j];
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  std::size_t hash() const {
    std::size_t h = 14695981039346656037ull;
    for (auto x : img_) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }

  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
      if (seen[i] || img_[i] == i) {
        seen[i] = true;
        continue;
      }
      out += '(';
      std::uint32_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) out += ' ';
        out += std::to_string(j + 1);
        first = false;
        j = img_[j];
      }
      out += ')';
    }
    if (out.empty()) out = "()";
    return out;
  }

  static Perm from_cycles(const std::string& text, std::uint32_t degree) {
    Perm r(degree);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(')
        throw std::invalid_argument("expected '(' in cycle notation");
      ++i;
      std::vector<std::uint32_t> cyc;
      skip_ws();
      while (i < text.size() && text[i] != ')') {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
          throw std::invalid_argument("expected point in cycle notation");
        std::uint32_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          v = v * 10 + (text[i++] - '0');
        if (v < 1 || v > degree)
          throw std::invalid_argument("cycle point out of range");
        cyc.push_back(v - 1);
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          skip_ws();
        }
      }
      if (i >= text.size()) throw std::invalid_argument("unterminated cycle");
      ++i;  // ')'
      for (std::size_t k = 0; k < cyc.size(); ++k)
        r.img_[cyc[k]] = cyc[(k + 1) % cyc.size()];
      skip_ws();
    }
    std::vector<bool> seen(degree, false);
    for (auto x : r.img_) {
      if (seen[x]) throw std::invalid_argument("cycles overlap");
      seen[x] = true;
    }
    return r;
  }

 private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const { return p.hash(); }
};

}  // namespace amalgam
