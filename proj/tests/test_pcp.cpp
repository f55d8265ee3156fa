#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pcgroup/corpus.hpp"
#include "pcgroup/pcp.hpp"

using namespace pcg;

namespace {

NormalWord random_word(const PcGroup& g, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> d(0, g.prime() - 1);
  NormalWord w(g.ngens());
  for (auto& e : w) e = d(rng);
  return w;
}

std::vector<PcGroup> sample_groups() {
  return {corpus::heisenberg(3), corpus::heisenberg(5), corpus::modular(3),
          corpus::c9xc3(),       corpus::sylow2_s8(),   corpus::quaternion8()};
}

FreeWord gen_word(int k, long long e = 1) {
  FreeWord w;
  w.factors.push_back({k, e, {}});
  return w;
}

FreeWord comm_word(FreeWord a, FreeWord b, long long e = 1) {
  FreeWord w;
  w.factors.push_back({-1, e, {std::move(a), std::move(b)}});
  return w;
}

}  // namespace

TEST_CASE("construction rejects malformed tails") {
  PcGroup g(3, 3);
  REQUIRE_THROWS_AS(g.set_comm_tail(1, 0, g.generator(1)), std::invalid_argument);
  REQUIRE_THROWS_AS(g.set_comm_tail(1, 0, g.generator(0)), std::invalid_argument);
  REQUIRE_THROWS_AS(g.set_power_tail(0, g.generator(0)), std::invalid_argument);
  REQUIRE_THROWS_AS(g.set_power_tail(2, NormalWord{0, 1, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(g.set_comm_tail(0, 1, g.generator(2)), std::out_of_range);
  REQUIRE_THROWS_AS(g.set_power_tail(1, NormalWord{0, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(g.set_power_tail(1, NormalWord{0, 0, 5}), std::invalid_argument);
  REQUIRE_THROWS_AS(PcGroup(4, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(PcGroup(1, 2), std::invalid_argument);
  // valid tail accepted
  g.set_comm_tail(1, 0, g.generator(2));
  REQUIRE(g.comm_tail(1, 0) == g.generator(2));
}

TEST_CASE("pinned products") {
  SECTION("swap pays a commutator tail") {
    const auto g = corpus::heisenberg(3);
    REQUIRE(g.multiply(g.generator(1), g.generator(0)) == NormalWord{1, 1, 1});
    REQUIRE(g.multiply(g.generator(0), g.generator(1)) == NormalWord{1, 1, 0});
    REQUIRE(g.commutator(g.generator(1), g.generator(0)) == g.generator(2));
    REQUIRE(g.commutator(g.generator(0), g.generator(1)) == NormalWord{0, 0, 2});
  }
  SECTION("overflow pays a power tail") {
    const auto c = corpus::cyclic(3, 3);
    REQUIRE(c.power(c.generator(0), 3) == c.generator(1));
    REQUIRE(c.power(c.generator(0), 9) == c.generator(2));
    REQUIRE(c.power(c.generator(0), 27) == c.identity());
    REQUIRE(c.power(c.generator(0), 4) == NormalWord{1, 1, 0});
    REQUIRE(c.invert(c.generator(0)) == NormalWord{2, 2, 2});
    REQUIRE(c.multiply(NormalWord{2, 2, 2}, c.generator(0)) == c.identity());
  }
  SECTION("doubling powers walk a chain") {
    const auto c = corpus::cyclic(2, 5);
    REQUIRE(c.power(c.generator(0), 16) == c.generator(4));
    REQUIRE(c.power(c.generator(0), 31) == NormalWord{1, 1, 1, 1, 1});
  }
}

TEST_CASE("group axioms hold on random words") {
  std::mt19937 rng(7001);
  for (const auto& g : sample_groups()) {
    const NormalWord id = g.identity();
    for (int t = 0; t < 100; ++t) {
      const auto x = random_word(g, rng), y = random_word(g, rng), z = random_word(g, rng);
      REQUIRE(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
      REQUIRE(g.multiply(x, id) == x);
      REQUIRE(g.multiply(id, x) == x);
      REQUIRE(g.multiply(x, g.invert(x)) == id);
      REQUIRE(g.multiply(g.invert(x), x) == id);
      REQUIRE(g.invert(g.multiply(x, y)) == g.multiply(g.invert(y), g.invert(x)));
    }
  }
}

TEST_CASE("xy equals yx times commutator") {
  std::mt19937 rng(7002);
  for (const auto& g : sample_groups()) {
    for (int t = 0; t < 50; ++t) {
      const auto x = random_word(g, rng), y = random_word(g, rng);
      REQUIRE(g.multiply(x, y) == g.multiply(g.multiply(y, x), g.commutator(x, y)));
      REQUIRE(g.invert(g.commutator(x, y)) == g.commutator(y, x));
    }
  }
}

TEST_CASE("Hall-Witt identity") {
  std::mt19937 rng(7003);
  for (const auto& g : {corpus::heisenberg(5), corpus::sylow2_s8(), corpus::modular(3), corpus::cyclic(5, 3)}) {
    for (int t = 0; t < 30; ++t) {
      const auto x = random_word(g, rng), y = random_word(g, rng), z = random_word(g, rng);
      const auto a = g.conjugate(g.commutator(g.commutator(x, g.invert(y)), z), y);
      const auto b = g.conjugate(g.commutator(g.commutator(y, g.invert(z)), x), z);
      const auto c = g.conjugate(g.commutator(g.commutator(z, g.invert(x)), y), x);
      REQUIRE(g.multiply(g.multiply(a, b), c) == g.identity());
    }
  }
}

TEST_CASE("builtin groups are consistent") {
  for (const char* name : {"sylow2_s8", "heisenberg3", "heisenberg5", "modular3", "modular5", "c27", "c9xc3",
                           "q8", "d8"}) {
    INFO(name);
    REQUIRE(corpus::builtin(name).is_consistent());
  }
  REQUIRE(corpus::elementary_abelian(7, 4).is_consistent());
  REQUIRE(corpus::cyclic(2, 6).is_consistent());
}

TEST_CASE("a corrupted chain is flagged with a residual witness") {
  PcGroup g(3, 3);
  g.set_power_tail(0, g.generator(1));
  g.set_power_tail(1, g.generator(2));
  g.set_comm_tail(1, 0, g.generator(2));  // C27 with a fabricated commutator
  REQUIRE_FALSE(g.is_consistent());
  const auto violations = g.consistency_violations();
  REQUIRE_FALSE(violations.empty());
  for (const auto& v : violations) {
    REQUIRE(v.lhs != v.rhs);
    REQUIRE_FALSE(is_identity(v.residual));
    for (std::size_t k = 0; k < 3; ++k) REQUIRE(v.residual[k] == fp_sub(3, v.lhs[k], v.rhs[k]));
  }
  bool found = false;
  for (const auto& v : violations)
    if (v.relation == "a1^p*a1 vs a1*a1^p") {
      found = true;
      REQUIRE(v.residual == NormalWord{0, 0, 1});
    }
  REQUIRE(found);
}

TEST_CASE("collector agrees with rightmost rewriting on whole tables") {
  for (const char* name : {"heisenberg3", "modular3", "c27", "c9xc3", "q8", "d8", "heisenberg5", "sylow2_s8"}) {
    INFO(name);
    const auto g = corpus::builtin(name);
    const auto t = oracle::GroupTable::build(g, /*use_rewriter=*/true);
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b)
        REQUIRE(t.elements[t.mul[a][b]] == g.multiply(t.elements[a], t.elements[b]));
  }
}

TEST_CASE("Heisenberg matches the unitriangular matrix model") {
  const unsigned p = 3;
  const auto g = corpus::heisenberg(p);
  const oracle::Mat3 x{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
  const oracle::Mat3 y{{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}};
  auto inv = [&](const oracle::Mat3& m) { return oracle::mat_pow(p, m, p - 1); };  // exponent p group
  const auto z = oracle::mat_mul(p, oracle::mat_mul(p, inv(y), inv(x)), oracle::mat_mul(p, y, x));
  const std::array<oracle::Mat3, 3> images{x, y, z};

  auto phi = [&](const NormalWord& w) {
    auto m = oracle::mat_identity();
    for (std::size_t i = 0; i < 3; ++i) m = oracle::mat_mul(p, m, oracle::mat_pow(p, images[i], w[i]));
    return m;
  };

  const auto table = oracle::GroupTable::build(g, false);
  std::set<oracle::Mat3> seen;
  for (const auto& w : table.elements) seen.insert(phi(w));
  REQUIRE(seen.size() == 27);
  for (const auto& u : table.elements)
    for (const auto& v : table.elements)
      REQUIRE(phi(g.multiply(u, v)) == oracle::mat_mul(p, phi(u), phi(v)));
}

TEST_CASE("wreath tower matches its permutation model") {
  const auto g = corpus::sylow2_s8();
  using oracle::Perm;
  const std::array<Perm, 7> images{{
      {4, 5, 6, 7, 0, 1, 2, 3},  // swap the two halves
      {2, 3, 0, 1, 4, 5, 6, 7},  // swap pairs in the left half
      {1, 0, 2, 3, 4, 5, 6, 7},  // swap the first two points
      {2, 3, 0, 1, 6, 7, 4, 5},
      {1, 0, 2, 3, 5, 4, 6, 7},
      {1, 0, 3, 2, 4, 5, 6, 7},
      {1, 0, 3, 2, 5, 4, 7, 6},
  }};
  auto phi = [&](const NormalWord& w) {
    Perm m = oracle::perm_identity();
    for (std::size_t i = 0; i < 7; ++i)
      if (w[i]) m = oracle::perm_mul(m, images[i]);
    return m;
  };

  // defining relations hold in the model
  for (std::size_t i = 0; i < 7; ++i)
    REQUIRE(oracle::perm_mul(images[i], images[i]) == phi(g.power_tail(i)));
  for (std::size_t j = 1; j < 7; ++j)
    for (std::size_t i = 0; i < j; ++i)
      REQUIRE(oracle::perm_comm(images[j], images[i]) == phi(g.comm_tail(j, i)));

  // the 128 normal words hit 128 distinct permutations, and products agree
  const auto table = oracle::GroupTable::build(g, false);
  std::set<Perm> seen;
  for (const auto& w : table.elements) seen.insert(phi(w));
  REQUIRE(seen.size() == 128);
  for (const auto& u : table.elements)
    for (const auto& v : table.elements)
      REQUIRE(phi(g.multiply(u, v)) == oracle::perm_mul(phi(u), phi(v)));
}

TEST_CASE("free word evaluation") {
  const auto g = corpus::heisenberg(3);
  const std::vector<NormalWord> images{g.generator(0), g.generator(1)};

  REQUIRE(g.evaluate(comm_word(gen_word(1), gen_word(0)), images) == g.generator(2));
  REQUIRE(g.evaluate(gen_word(0, -1), images) == g.invert(g.generator(0)));
  REQUIRE(g.evaluate(gen_word(1, 3), images) == g.identity());

  // left-normed: [b, a, a] = [[b, a], a], central already so trivial
  FreeWord ln;
  ln.factors.push_back({-1, 1, {gen_word(1), gen_word(0), gen_word(0)}});
  REQUIRE(g.evaluate(ln, images) == g.identity());

  // a * [b,a]^2 * b^-1
  FreeWord w;
  w.factors.push_back({0, 1, {}});
  w.factors.push_back({-1, 2, {gen_word(1), gen_word(0)}});
  w.factors.push_back({1, -1, {}});
  const auto expect =
      g.multiply(g.generator(0), g.multiply(g.power(g.generator(2), 2), g.invert(g.generator(1))));
  REQUIRE(g.evaluate(w, images) == expect);

  REQUIRE_THROWS_AS(g.evaluate(gen_word(5), images), std::invalid_argument);

  // relation handling: w1 = w2 enters as w1 * w2^-1
  const FreeWord rel = comm_word(gen_word(1), gen_word(0));
  FreeWord diff = rel;
  for (auto& f : inverse(gen_word(1, 2)).factors) diff.factors.push_back(f);
  REQUIRE(g.evaluate(diff, images) ==
          g.multiply(g.generator(2), g.invert(g.power(g.generator(1), 2))));
}

TEST_CASE("negative powers") {
  std::mt19937 rng(7004);
  const auto g = corpus::sylow2_s8();
  for (int t = 0; t < 20; ++t) {
    const auto x = random_word(g, rng);
    REQUIRE(g.power(x, -1) == g.invert(x));
    REQUIRE(g.power(x, -3) == g.invert(g.power(x, 3)));
    REQUIRE(g.multiply(g.power(x, 5), g.power(x, -5)) == g.identity());
  }
}
