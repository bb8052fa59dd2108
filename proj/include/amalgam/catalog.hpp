#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/parser.hpp"
#include "amalgam/presentation.hpp"
#include "amalgam/report.hpp"
#include "amalgam/word.hpp"

namespace amalgam {

// Built-in presentations.  Zstar presents the common subgroup of the two
// AGL2(3)'s, Xstar and Ystar the two full AGL2(3)'s, F their amalgamated
// product, and F1..F4 the four quotients of F by the candidate commutator
// relations.  Generators are declared with the shared a,b,t,u first so that
// amalgamated_presentation(Xstar, Ystar) reproduces F exactly.
struct CatalogEntry {
  std::string name;
  Presentation presentation;
  std::vector<Word> subgroup_words;
};

namespace catalog_sources {

inline const std::string z_rels =
    "a^3 = b^3 = [a,b]^3 = [a,[a,b]] = [b,[a,b]] = 1;\n"
    "     t^2 = u^2 = [t,u] = 1;\n"
    "     a^u = a; b^u = b^-1; a^t = a^-1; b^t = b;\n";

inline const std::string x_rels =
    "p^4 = q^4 = 1; p^2 = q^2 = t;\n"
    "     q^p = q^-1; a^p = [a^-1,b]; [a,b]^q = [b,a]a;\n"
    "     p^u = p^-1; p^b = pq; q^b = p; p^(b^2) = q;\n";

inline const std::string y_rels =
    "r^4 = s^4 = 1; r^2 = s^2 = u;\n"
    "     s^r = s^-1; [a^-1,b]^r = b; [a,b]^s = b^-1[b,a];\n"
    "     r^t = r^-1; s^t = sr; r^a = rs; s^a = r; r^(a^2) = s;\n";

inline std::string zstar() { return "gens a, b, t, u;\nrels " + z_rels; }

inline std::string xstar() {
  return "gens a, b, t, u, p, q;\nrels " + z_rels + "     " + x_rels;
}

inline std::string ystar() {
  return "gens a, b, t, u, r, s;\nrels " + z_rels + "     " + y_rels;
}

inline std::string f() {
  return "gens a, b, t, u, p, q, r, s;\nrels " + z_rels + "     " + x_rels +
         "     " + y_rels;
}

inline const std::string c3test = "gens a;\nrels a^3;\n";

}  // namespace catalog_sources

namespace detail {

// The two candidate relator words of the quotient construction, written over
// F's generators: with x = r^(pr) and y = s^(pr),
//   w1 = [x,q][p,y]   and   w2 = [q,x][xy,pq].
inline std::pair<Word, Word> quotient_relator_words(const Presentation& f) {
  Word p = gen_word(f.generator_index("p"));
  Word q = gen_word(f.generator_index("q"));
  Word r = gen_word(f.generator_index("r"));
  Word s = gen_word(f.generator_index("s"));
  Word pr = word_mul(p, r);
  Word x = word_conj(r, pr);
  Word y = word_conj(s, pr);
  Word w1 = word_mul(word_comm(x, q), word_comm(p, y));
  Word w2 = word_mul(word_comm(q, x), word_comm(word_mul(x, y), word_mul(p, q)));
  return {w1, w2};
}

inline std::vector<Word> letter_words(const Presentation& p,
                                      std::initializer_list<const char*> names) {
  std::vector<Word> ws;
  for (const char* n : names) {
    int idx = p.generator_index(n);
    if (idx == 0) throw std::logic_error("catalog subgroup word uses unknown generator");
    ws.push_back(gen_word(idx));
  }
  return ws;
}

}  // namespace detail

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "Zstar", "Xstar", "Ystar", "F", "F1", "F2", "F3", "F4", "C3test", "AGL23"};
  return names;
}

inline CatalogEntry catalog(const std::string& name) {
  using namespace catalog_sources;
  CatalogEntry e;
  e.name = name;
  if (name == "Zstar") {
    e.presentation = parse_presentation(zstar());
  } else if (name == "Xstar") {
    e.presentation = parse_presentation(xstar());
  } else if (name == "Ystar") {
    e.presentation = parse_presentation(ystar());
  } else if (name == "F") {
    e.presentation = parse_presentation(f());
  } else if (name == "F1" || name == "F2" || name == "F3" || name == "F4") {
    e.presentation = parse_presentation(f());
    auto [w1, w2] = detail::quotient_relator_words(e.presentation);
    Word t = gen_word(e.presentation.generator_index("t"));
    // Fi adjoins {w1 = rhs1, w2 = rhs2} with rhs in {1, t} per index.
    bool t1 = (name == "F2" || name == "F4");
    bool t2 = (name == "F3" || name == "F4");
    e.presentation.relators.push_back(t1 ? word_mul(w1, word_inverse(t)) : w1);
    e.presentation.relators.push_back(t2 ? word_mul(w2, word_inverse(t)) : w2);
    // The Xstar generator set embeds in each quotient; enumerating over it
    // gives the smallest faithful coset action when the quotient is one of
    // the two nontrivial ones.
    e.subgroup_words = detail::letter_words(e.presentation, {"a", "b", "t", "u", "p", "q"});
  } else if (name == "C3test") {
    e.presentation = parse_presentation(c3test);
  } else if (name == "AGL23") {
    // The point-stabilizer presentation is a presentation of AGL2(3); the
    // stored subgroup generates the centralizer of t, of index 9, so the
    // coset action is the natural action on the affine plane.
    e.presentation = parse_presentation(xstar());
    e.subgroup_words = detail::letter_words(e.presentation, {"p", "q", "b", "u"});
  } else {
    throw std::invalid_argument("unknown catalog name: " + name);
  }
  return e;
}

// Expands both sides of the two standard commutator expansions over free
// symbols a,b,c and checks they agree as free words:
//   [a,bc] = [a,c][a,b]^c     and     [ab,c] = [a,c]^b[b,c].
inline CheckReport verify_free_identities() {
  CheckReport rep("free-identities");
  Expr a = Expr::generator(1), b = Expr::generator(2), c = Expr::generator(3);
  {
    Word lhs = expand_sugar(Expr::comm(a, Expr::product({b, c})));
    Word rhs = word_mul(expand_sugar(Expr::comm(a, c)),
                        expand_sugar(Expr::conj(Expr::comm(a, b), c)));
    rep.check("[a,bc] = [a,c][a,b]^c", lhs == rhs);
  }
  {
    Word lhs = expand_sugar(Expr::comm(Expr::product({a, b}), c));
    Word rhs = word_mul(expand_sugar(Expr::conj(Expr::comm(a, c), b)),
                        expand_sugar(Expr::comm(b, c)));
    rep.check("[ab,c] = [a,c]^b[b,c]", lhs == rhs);
  }
  return rep;
}

}  // namespace amalgam
