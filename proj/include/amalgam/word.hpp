#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace amalgam {

// A word over an inverse-closed alphabet.  Letters are nonzero ints:
// +k is generator k (1-based), -k is its inverse.  The empty word is the
// identity.  All operations below return freely reduced words; Word itself
// does not enforce reducedness so that raw letter sequences can be built
// and reduced explicitly.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return letters != o.letters; }
  bool operator<(const Word& o) const { return letters < o.letters; }

  bool is_reduced() const {
    for (std::size_t i = 0; i + 1 < letters.size(); ++i)
      if (letters[i] == -letters[i + 1]) return false;
    return true;
  }

  // Largest generator index used; 0 for the empty word.
  int max_generator() const {
    int m = 0;
    for (int l : letters) m = std::max(m, std::abs(l));
    return m;
  }
};

inline Word free_reduce(const Word& w) {
  Word r;
  r.letters.reserve(w.letters.size());
  for (int l : w.letters) {
    if (l == 0) throw std::invalid_argument("word contains letter 0");
    if (!r.letters.empty() && r.letters.back() == -l)
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  return r;
}

inline Word word_inverse(const Word& w) {
  Word r;
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(-*it);
  return r;
}

inline Word word_mul(const Word& a, const Word& b) {
  Word r = a;
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return free_reduce(r);
}

inline Word word_pow(const Word& w, long long n) {
  Word base = n < 0 ? word_inverse(w) : w;
  long long k = n < 0 ? -n : n;
  Word r;
  for (long long i = 0; i < k; ++i) r = word_mul(r, base);
  return r;
}

// x^y = y^-1 x y
inline Word word_conj(const Word& x, const Word& y) {
  return word_mul(word_mul(word_inverse(y), x), y);
}

// [x,y] = x^-1 y^-1 x y
inline Word word_comm(const Word& x, const Word& y) {
  return word_mul(word_mul(word_inverse(x), word_inverse(y)), word_mul(x, y));
}

inline Word gen_word(int gen) { return Word{{gen}}; }

// Expression trees for the presentation DSL.  Powers take an integer
// exponent, conjugation an arbitrary sub-expression; commutators and
// products are n-ary where convenient.
struct Expr {
  enum class Kind { Gen, One, Product, Power, Conj, Comm };
  Kind kind = Kind::One;
  int gen = 0;                // Kind::Gen
  long long exponent = 1;     // Kind::Power
  std::vector<Expr> args;     // operands

  static Expr one() { return Expr{}; }
  static Expr generator(int g) {
    Expr e;
    e.kind = Kind::Gen;
    e.gen = g;
    return e;
  }
  static Expr product(std::vector<Expr> xs) {
    Expr e;
    e.kind = Kind::Product;
    e.args = std::move(xs);
    return e;
  }
  static Expr power(Expr base, long long n) {
    Expr e;
    e.kind = Kind::Power;
    e.exponent = n;
    e.args.push_back(std::move(base));
    return e;
  }
  static Expr conj(Expr x, Expr y) {
    Expr e;
    e.kind = Kind::Conj;
    e.args.push_back(std::move(x));
    e.args.push_back(std::move(y));
    return e;
  }
  static Expr comm(Expr x, Expr y) {
    Expr e;
    e.kind = Kind::Comm;
    e.args.push_back(std::move(x));
    e.args.push_back(std::move(y));
    return e;
  }
  static Expr inverse(Expr x) { return power(std::move(x), -1); }
};

// Flattens an expression tree to a freely reduced word.
// w^-n = (w^-1)^n and w^g = g^-1 w g.
inline Word expand_sugar(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::One:
      return Word{};
    case Expr::Kind::Gen:
      return gen_word(e.gen);
    case Expr::Kind::Product: {
      Word r;
      for (const Expr& a : e.args) r = word_mul(r, expand_sugar(a));
      return r;
    }
    case Expr::Kind::Power:
      return word_pow(expand_sugar(e.args[0]), e.exponent);
    case Expr::Kind::Conj:
      return word_conj(expand_sugar(e.args[0]), expand_sugar(e.args[1]));
    case Expr::Kind::Comm:
      return word_comm(expand_sugar(e.args[0]), expand_sugar(e.args[1]));
  }
  throw std::logic_error("unreachable");
}

// Prints a word using the generator names, collapsing runs into powers and
// separating factors with spaces, e.g. {1,1,1,-2} -> "a^3 b^-1".
// parse_word() accepts this format back.
inline std::string word_to_string(const Word& w,
                                  const std::vector<std::string>& names) {
  if (w.letters.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    int l = w.letters[i];
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == l) ++j;
    long long run = static_cast<long long>(j - i);
    int g = std::abs(l);
    if (g < 1 || g > static_cast<int>(names.size()))
      throw std::out_of_range("generator index out of range in word");
    if (!out.empty()) out += ' ';
    out += names[g - 1];
    long long e = l > 0 ? run : -run;
    if (e != 1) {
      out += '^';
      out += std::to_string(e);
    }
    i = j;
  }
  return out;
}

}  // namespace amalgam
