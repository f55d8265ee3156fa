#pragma once

// Built-in groups: small presentations used throughout the tests and
// available to the command-line tools by name.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "pcgroup/pcp.hpp"

namespace pcg::corpus {

inline PcGroup elementary_abelian(unsigned p, std::size_t n) {
  PcGroup g(p, n);
  if (n > 0) {
    g.set_weights(std::vector<unsigned>(n, 1));
    std::vector<Definition> defs(n);
    for (std::size_t i = 0; i < n; ++i) defs[i] = {Definition::Kind::image, i, 0};
    g.set_definitions(std::move(defs));
  }
  return g;
}

// C_{p^k}: a chain of power tails a_i^p = a_{i+1}.
inline PcGroup cyclic(unsigned p, std::size_t k) {
  PcGroup g(p, k);
  std::vector<unsigned> weights;
  std::vector<Definition> defs(k);
  for (std::size_t i = 0; i < k; ++i) {
    weights.push_back(static_cast<unsigned>(i + 1));
    if (i + 1 < k) {
      g.set_power_tail(i, g.generator(i + 1));
      defs[i + 1] = {Definition::Kind::power, i, 0};
    }
  }
  defs[0] = {Definition::Kind::image, 0, 0};
  g.set_weights(std::move(weights));
  g.set_definitions(std::move(defs));
  return g;
}

// Extraspecial of order p^3 and exponent p (p odd): [a2, a1] = a3 central.
inline PcGroup heisenberg(unsigned p) {
  PcGroup g(p, 3);
  g.set_comm_tail(1, 0, g.generator(2));
  g.set_weights({1, 1, 2});
  g.set_definitions({{Definition::Kind::image, 0, 0},
                     {Definition::Kind::image, 1, 0},
                     {Definition::Kind::commutator, 0, 1}});
  return g;
}

// Modular group of order p^3: a2^p = [a2, a1] = a3, so exponent p^2.
inline PcGroup modular(unsigned p) {
  PcGroup g(p, 3);
  g.set_power_tail(1, g.generator(2));
  g.set_comm_tail(1, 0, g.generator(2));
  g.set_weights({1, 1, 2});
  g.set_definitions({{Definition::Kind::image, 0, 0},
                     {Definition::Kind::image, 1, 0},
                     {Definition::Kind::power, 1, 0}});
  return g;
}

// C9 x C3 as generators (order 9, order 3, and the cube a1^3).
inline PcGroup c9xc3() {
  PcGroup g(3, 3);
  g.set_power_tail(0, g.generator(2));
  g.set_weights({1, 1, 2});
  g.set_definitions({{Definition::Kind::image, 0, 0},
                     {Definition::Kind::image, 1, 0},
                     {Definition::Kind::power, 0, 0}});
  return g;
}

inline PcGroup quaternion8() {
  PcGroup g(2, 3);
  g.set_power_tail(0, g.generator(2));
  g.set_power_tail(1, g.generator(2));
  g.set_comm_tail(1, 0, g.generator(2));
  g.set_weights({1, 1, 2});
  g.set_definitions({{Definition::Kind::image, 0, 0},
                     {Definition::Kind::image, 1, 0},
                     {Definition::Kind::commutator, 0, 1}});
  return g;
}

inline PcGroup dihedral8() {
  PcGroup g(2, 3);
  g.set_power_tail(1, g.generator(2));
  g.set_comm_tail(1, 0, g.generator(2));
  g.set_weights({1, 1, 2});
  g.set_definitions({{Definition::Kind::image, 0, 0},
                     {Definition::Kind::image, 1, 0},
                     {Definition::Kind::power, 1, 0}});
  return g;
}

// A Sylow 2-subgroup of the symmetric group on 8 points, order 2^7:
// the iterated wreath product C2 wr C2 wr C2 on one branch of depth 3.
//   a1 swaps the two halves {1..4} and {5..8}
//   a2 swaps the pairs inside {1..4}, a3 swaps 1 and 2
// and the deeper generators are the listed commutators and products.
inline PcGroup sylow2_s8() {
  PcGroup g(2, 7);
  g.set_comm_tail(1, 0, g.generator(3));  // [a2, a1] = a4
  g.set_comm_tail(2, 0, g.generator(4));  // [a3, a1] = a5
  g.set_comm_tail(2, 1, g.generator(5));  // [a3, a2] = a6
  g.set_comm_tail(3, 2, g.generator(5));  // [a4, a3] = a6
  g.set_comm_tail(4, 1, g.generator(5));  // [a5, a2] = a6
  g.set_comm_tail(4, 3, g.generator(6));  // [a5, a4] = a7
  g.set_comm_tail(5, 0, g.generator(6));  // [a6, a1] = a7
  g.set_weights({1, 1, 1, 2, 2, 2, 3});
  g.set_definitions({{Definition::Kind::image, 0, 0},
                     {Definition::Kind::image, 1, 0},
                     {Definition::Kind::image, 2, 0},
                     {Definition::Kind::commutator, 0, 1},
                     {Definition::Kind::commutator, 0, 2},
                     {Definition::Kind::commutator, 1, 2},
                     {Definition::Kind::commutator, 0, 5}});
  return g;
}

inline PcGroup builtin(const std::string& name) {
  if (name == "sylow2_s8") return sylow2_s8();
  if (name == "heisenberg3") return heisenberg(3);
  if (name == "heisenberg5") return heisenberg(5);
  if (name == "heisenberg7") return heisenberg(7);
  if (name == "modular3") return modular(3);
  if (name == "modular5") return modular(5);
  if (name == "c27") return cyclic(3, 3);
  if (name == "c9xc3") return c9xc3();
  if (name == "q8") return quaternion8();
  if (name == "d8") return dihedral8();
  throw std::invalid_argument("unknown builtin group: " + name);
}

// --------------------------------------------------------------------------
// Finitely presented example groups A-E.  All five have |G'/G''| = p^3 with
// G'' nontrivial.  A and B carry extra generators centralizing the derived
// subgroup, C is two-generated of order 5^6, D is a 3-group variant, and E
// has derived subgroup of exponent 25.

namespace detail {

inline FreeFactor fp_gen(std::size_t i, long long e = 1) {
  FreeFactor f;
  f.generator = static_cast<int>(i);
  f.exponent = e;
  return f;
}

// left-normed commutator of single generators, [g_0, g_1, ...]^e
inline FreeFactor fp_comm(const std::vector<std::size_t>& gens, long long e = 1) {
  FreeFactor f;
  f.generator = -1;
  f.exponent = e;
  for (std::size_t i : gens) f.args.push_back(FreeWord{{fp_gen(i)}});
  return f;
}

inline FreeWord fp_word(std::vector<FreeFactor> factors) {
  return FreeWord{std::move(factors)};
}

}  // namespace detail

// order 5^9; three extra generators centralizing <a, b>', with two of the
// cross commutators landing on deep commutators of the pair
inline FpPresentation example_a() {
  using namespace detail;
  FpPresentation pres;
  pres.name = "exampleA";
  pres.prime = 5;
  pres.generators = {"a", "b", "u1", "u2", "u3"};
  const std::size_t a = 0, b = 1, u1 = 2, u2 = 3, u3 = 4;
  pres.relators = {
      fp_word({fp_gen(a, 5)}),
      fp_word({fp_gen(b, 5)}),
      fp_word({fp_gen(u1, 5)}),
      fp_word({fp_gen(u2, 5)}),
      fp_word({fp_gen(u3, 5)}),
      fp_word({fp_comm({b, a, b})}),
      fp_word({fp_comm({b, a, a, a, a})}),
      fp_word({fp_comm({b, a, a, a, b}), fp_comm({a, u1})}),
      fp_word({fp_comm({a, u2})}),
      fp_word({fp_comm({a, u3})}),
      fp_word({fp_comm({b, u1})}),
      fp_word({fp_comm({b, a, a, a}), fp_comm({b, u2})}),
      fp_word({fp_comm({b, u3})}),
      fp_word({fp_comm({u1, u2})}),
      fp_word({fp_comm({u1, u3})}),
      fp_word({fp_comm({b, a, a, a, b}), fp_comm({u2, u3})}),
  };
  return pres;
}

// order 5^13; u1 of order 125 and u2, u3 of order 25, u3 central modulo
// its commutator with u2
inline FpPresentation example_b() {
  using namespace detail;
  FpPresentation pres;
  pres.name = "exampleB";
  pres.prime = 5;
  pres.generators = {"a", "b", "u1", "u2", "u3"};
  const std::size_t a = 0, b = 1, u1 = 2, u2 = 3, u3 = 4;
  pres.relators = {
      fp_word({fp_gen(a, 5)}),
      fp_word({fp_gen(b, 5)}),
      fp_word({fp_gen(u1, 125)}),
      fp_word({fp_gen(u2, 25)}),
      fp_word({fp_gen(u3, 25)}),
      fp_word({fp_comm({b, a, b})}),
      fp_word({fp_comm({b, a, a, a, a})}),
      fp_word({fp_comm({b, a, a, a, b}), fp_comm({a, u1})}),
      fp_word({fp_comm({a, u2})}),
      fp_word({fp_comm({b, u1})}),
      fp_word({fp_comm({b, u2})}),
      fp_word({fp_comm({u1, u2})}),
      fp_word({fp_comm({u3, a})}),
      fp_word({fp_comm({u3, b})}),
      fp_word({fp_comm({u3, u1})}),
      fp_word({fp_comm({b, a, a, a, b}), fp_comm({u3, u2})}),
  };
  return pres;
}

// order 5^6, two-generated; the smallest member of the family for p = 5
inline FpPresentation example_c() {
  using namespace detail;
  FpPresentation pres;
  pres.name = "exampleC";
  pres.prime = 5;
  pres.generators = {"a", "b"};
  const std::size_t a = 0, b = 1;
  pres.relators = {
      fp_word({fp_gen(a, 5)}),
      fp_word({fp_gen(b, 5)}),
      fp_word({fp_comm({b, a, b})}),
      fp_word({fp_comm({b, a, a, a, a})}),
  };
  return pres;
}

// order 3^8, two-generated 3-group with derived subgroup of exponent 3
inline FpPresentation example_d() {
  using namespace detail;
  FpPresentation pres;
  pres.name = "exampleD";
  pres.prime = 3;
  pres.generators = {"a", "b"};
  const std::size_t a = 0, b = 1;
  pres.relators = {
      fp_word({fp_gen(a, 9)}),
      fp_word({fp_gen(b, 9)}),
      fp_word({fp_comm({a, b}, 3)}),
      fp_word({fp_comm({b, a, b})}),
      fp_word({fp_comm({b, a, a, a, a})}),
  };
  return pres;
}

// order 5^8, two-generated with derived subgroup of exponent 25:
// [b,a]^5 = [b,a,a,a,b], stored as a relator with the right side inverted
inline FpPresentation example_e() {
  using namespace detail;
  FpPresentation pres;
  pres.name = "exampleE";
  pres.prime = 5;
  pres.generators = {"a", "b"};
  const std::size_t a = 0, b = 1;
  pres.relators = {
      fp_word({fp_gen(a, 25)}),
      fp_word({fp_gen(b, 25)}),
      fp_word({fp_comm({b, a}, 5), fp_comm({b, a, a, a, b}, -1)}),
      fp_word({fp_comm({b, a, b})}),
      fp_word({fp_comm({b, a, a, a, a})}),
  };
  return pres;
}

inline FpPresentation example_presentation(char which) {
  switch (which) {
    case 'A': case 'a': return example_a();
    case 'B': case 'b': return example_b();
    case 'C': case 'c': return example_c();
    case 'D': case 'd': return example_d();
    case 'E': case 'e': return example_e();
  }
  throw std::invalid_argument(std::string("unknown example: ") + which);
}

}  // namespace pcg::corpus
