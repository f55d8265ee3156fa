#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pcgroup/corpus.hpp"
#include "pcgroup/subgroup.hpp"

using namespace pcg;

namespace {

NormalWord random_word(const PcGroup& g, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> d(0, g.prime() - 1);
  NormalWord w(g.ngens());
  for (auto& e : w) e = d(rng);
  return w;
}

std::vector<NormalWord> random_gens(const PcGroup& g, std::mt19937& rng, int count) {
  std::vector<NormalWord> gens;
  for (int k = 0; k < count; ++k) gens.push_back(random_word(g, rng));
  return gens;
}

std::set<std::size_t> elements_of(const oracle::GroupTable& t, const InducedSequence& h) {
  std::set<std::size_t> s;
  enumerate_subgroup(h, [&](const NormalWord& x) { s.insert(t.at(x)); });
  return s;
}

std::set<std::size_t> indices_of(const oracle::GroupTable& t, const std::vector<NormalWord>& words) {
  std::set<std::size_t> s;
  for (const auto& w : words) s.insert(t.at(w));
  return s;
}

struct Tabled {
  PcGroup g;
  oracle::GroupTable t;
  explicit Tabled(PcGroup grp) : g(std::move(grp)), t(oracle::GroupTable::build(g, false)) {}
};

}  // namespace

TEST_CASE("closure pinned cases") {
  const auto g = corpus::heisenberg(3);
  const auto h1 = InducedSequence::closure(g, {g.generator(0)});
  REQUIRE(h1.order_log() == 1);
  REQUIRE(h1.contains(g.power(g.generator(0), 2)));
  REQUIRE_FALSE(h1.contains(g.generator(1)));

  // two generators force the commutator in
  const auto h2 = InducedSequence::closure(g, {g.generator(0), g.generator(1)});
  REQUIRE(h2.order_log() == 3);

  const auto w = corpus::sylow2_s8();
  const auto h3 = InducedSequence::closure(w, {w.generator(1), w.generator(2)});
  REQUIRE(h3.order_log() == 3);
  REQUIRE(h3.pivots() == std::vector<std::size_t>{1, 2, 5});
}

TEST_CASE("closure result is canonical") {
  std::mt19937 rng(8101);
  for (const auto& g : {corpus::sylow2_s8(), corpus::heisenberg(5), corpus::modular(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto gens = random_gens(g, rng, 3);
      const auto h = InducedSequence::closure(g, gens);
      std::shuffle(gens.begin(), gens.end(), rng);
      REQUIRE(InducedSequence::closure(g, gens) == h);
      // redundant extra generators change nothing
      gens.push_back(g.multiply(gens[0], g.power(gens[1], 2)));
      REQUIRE(InducedSequence::closure(g, gens) == h);
      // canonical members: leading exponent 1, zeros at other pivots
      for (std::size_t k = 0; k < h.members().size(); ++k) {
        REQUIRE(h.members()[k][h.pivots()[k]] == 1);
        for (std::size_t l = 0; l < h.members().size(); ++l)
          if (l != k) REQUIRE(h.members()[k][h.pivots()[l]] == 0);
      }
    }
  }
}

TEST_CASE("sift witnesses reconstruct the element") {
  std::mt19937 rng(8102);
  for (const auto& g : {corpus::sylow2_s8(), corpus::heisenberg(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto h = InducedSequence::closure(g, random_gens(g, rng, 2));
      const auto x = random_word(g, rng);
      const auto s = h.sift(x);
      NormalWord rebuilt = g.identity();
      for (std::size_t k = 0; k < h.members().size(); ++k)
        rebuilt = g.multiply(rebuilt, g.power(h.members()[k], s.exponents[k]));
      rebuilt = g.multiply(rebuilt, s.residual);
      REQUIRE(rebuilt == x);
      REQUIRE(h.contains(x) == is_identity(s.residual));
    }
  }
}

TEST_CASE("closure matches table closure") {
  std::mt19937 rng(8103);
  for (const auto& grp : {corpus::sylow2_s8(), corpus::heisenberg(3), corpus::c9xc3(), corpus::quaternion8()}) {
    const Tabled tb(grp);
    for (int trial = 0; trial < 10; ++trial) {
      const auto gens = random_gens(tb.g, rng, 2);
      const auto h = InducedSequence::closure(tb.g, gens);
      REQUIRE(elements_of(tb.t, h) == oracle::table_closure(tb.t, indices_of(tb.t, gens)));
    }
  }
}

TEST_CASE("normal closure matches table") {
  std::mt19937 rng(8104);
  const Tabled tb(corpus::sylow2_s8());
  for (int trial = 0; trial < 10; ++trial) {
    const auto gens = random_gens(tb.g, rng, 1);
    const auto h = normal_closure(tb.g, gens);
    REQUIRE(elements_of(tb.t, h) == oracle::table_normal_closure(tb.t, indices_of(tb.t, gens)));
    REQUIRE(is_normal_in_group(h));
  }
}

TEST_CASE("commutator subgroup matches table") {
  std::mt19937 rng(8105);
  for (const auto& grp : {corpus::sylow2_s8(), corpus::heisenberg(5), corpus::modular(3)}) {
    const Tabled tb(grp);
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = InducedSequence::closure(tb.g, random_gens(tb.g, rng, 2));
      const auto b = InducedSequence::closure(tb.g, random_gens(tb.g, rng, 2));
      const auto c = commutator_subgroup(a, b);
      REQUIRE(elements_of(tb.t, c) ==
              oracle::table_commutator_subgroup(tb.t, elements_of(tb.t, a), elements_of(tb.t, b)));
    }
  }
}

TEST_CASE("series match table computations") {
  for (const auto& grp : {corpus::sylow2_s8(), corpus::heisenberg(3), corpus::modular(3), corpus::c9xc3(),
                          corpus::quaternion8(), corpus::dihedral8(), corpus::heisenberg(5)}) {
    const Tabled tb(grp);
    const auto check = [&](const std::vector<InducedSequence>& eng, const std::vector<std::set<std::size_t>>& tab) {
      REQUIRE(eng.size() == tab.size());
      for (std::size_t k = 0; k < eng.size(); ++k) REQUIRE(elements_of(tb.t, eng[k]) == tab[k]);
    };
    check(lower_central_series(tb.g), oracle::table_lower_central(tb.t));
    check(derived_series(tb.g), oracle::table_derived_series(tb.t));
    check(lower_exponent_p_central_series(tb.g), oracle::table_exp_p_series(tb.t));
    REQUIRE(elements_of(tb.t, frattini_subgroup(tb.g)) == oracle::table_frattini(tb.t));
  }
}

TEST_CASE("wreath tower series pinned") {
  const auto w = corpus::sylow2_s8();
  const auto lcs = lower_central_series(w);
  std::vector<std::size_t> sizes;
  for (const auto& s : lcs) sizes.push_back(s.order_log());
  REQUIRE(sizes == std::vector<std::size_t>{7, 4, 2, 1, 0});
  REQUIRE(nilpotency_class(w) == 4);
  REQUIRE(exponent_p_class(w) == 4);

  const auto ds = derived_series(w);
  REQUIRE(ds.size() == 4);
  REQUIRE(ds[1].order_log() == 4);
  REQUIRE(ds[2].order_log() == 1);
  REQUIRE(ds[2].members() == std::vector<NormalWord>{w.generator(6)});

  REQUIRE(frattini_subgroup(w) == ds[1]);
  REQUIRE(lcs[1] == ds[1]);
}

TEST_CASE("centralizer: lifting, enumeration, and table agree") {
  std::mt19937 rng(8106);
  for (const auto& grp : {corpus::sylow2_s8(), corpus::heisenberg(3), corpus::modular(3), corpus::heisenberg(5)}) {
    const Tabled tb(grp);
    const auto whole = whole_group(tb.g);
    for (int trial = 0; trial < 6; ++trial) {
      const auto targets = random_gens(tb.g, rng, trial % 2 + 1);
      const auto lifted = centralizer(tb.g, targets, whole);
      const auto brute = centralizer_brute(tb.g, targets, whole);
      REQUIRE(lifted == brute);
      REQUIRE(elements_of(tb.t, lifted) ==
              oracle::table_centralizer(tb.t, indices_of(tb.t, targets), oracle::table_whole(tb.t)));
    }
  }
}

TEST_CASE("center pinned cases") {
  const auto w = corpus::sylow2_s8();
  REQUIRE(center(w).members() == std::vector<NormalWord>{w.generator(6)});
  REQUIRE(center(corpus::heisenberg(3)).members() == std::vector<NormalWord>{corpus::heisenberg(3).generator(2)});
  REQUIRE(center(corpus::c9xc3()).order_log() == 3);

  // the center of the derived subgroup, lifted inside it
  const auto der = derived_series(w)[1];
  const auto z = centralizer(w, der.members(), der);
  REQUIRE(z.order_log() == 2);
  REQUIRE(z.pivots() == std::vector<std::size_t>{5, 6});
  REQUIRE(z == centralizer_brute(w, der.members(), der));
}

TEST_CASE("elementary abelian sections") {
  const auto w = corpus::sylow2_s8();
  const auto whole = whole_group(w);
  const auto phi = frattini_subgroup(w);
  const auto der2 = derived_series(w)[2];
  REQUIRE(is_elementary_abelian_section(whole, phi));
  REQUIRE(is_elementary_abelian_section(derived_series(w)[1], der2));
  REQUIRE_FALSE(is_elementary_abelian_section(whole, der2));
  REQUIRE_FALSE(is_elementary_abelian_section(whole, trivial_subgroup(w)));

  const auto ea = corpus::elementary_abelian(3, 4);
  REQUIRE(is_elementary_abelian_section(whole_group(ea), trivial_subgroup(ea)));
}

TEST_CASE("section coordinates mod the Frattini subgroup") {
  std::mt19937 rng(8107);
  const auto w = corpus::sylow2_s8();
  const auto phi = frattini_subgroup(w);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_word(w, rng), y = random_word(w, rng);
    const auto cx = section_coordinates(phi, x), cy = section_coordinates(phi, y);
    const auto cxy = section_coordinates(phi, w.multiply(x, y));
    for (std::size_t i = 0; i < w.ngens(); ++i) REQUIRE(cxy[i] == fp_add(2, cx[i], cy[i]));
    // the representative lies in the same coset
    REQUIRE(phi.contains(w.multiply(w.invert(section_representative(phi, x)), x)));
    // coordinates vanish exactly on the subgroup
    REQUIRE(is_identity(section_coordinates(phi, x)) == phi.contains(x));
  }
}

TEST_CASE("element orders and exponent") {
  for (const auto& grp : {corpus::sylow2_s8(), corpus::heisenberg(3), corpus::modular(3), corpus::c9xc3(),
                          corpus::quaternion8(), corpus::heisenberg(5)}) {
    const Tabled tb(grp);
    std::map<unsigned, std::uint64_t> expected;
    for (std::size_t x = 0; x < tb.t.size(); ++x) ++expected[oracle::table_order_log(tb.t, x)];
    REQUIRE(element_order_histogram(whole_group(tb.g)) == expected);
  }
  REQUIRE(element_order_histogram(whole_group(corpus::heisenberg(3))) ==
          std::map<unsigned, std::uint64_t>{{0, 1}, {1, 26}});
  REQUIRE(element_order_histogram(whole_group(corpus::modular(3))) ==
          std::map<unsigned, std::uint64_t>{{0, 1}, {1, 8}, {2, 18}});
  REQUIRE(exponent_log(whole_group(corpus::cyclic(3, 3))) == 3);
  REQUIRE(exponent_log(whole_group(corpus::heisenberg(5))) == 1);
}

TEST_CASE("abelianization invariants") {
  for (const auto& grp : {corpus::sylow2_s8(), corpus::modular(3), corpus::c9xc3(), corpus::cyclic(3, 3),
                          corpus::heisenberg(5), corpus::quaternion8()}) {
    const Tabled tb(grp);
    REQUIRE(abelianization_invariants(whole_group(tb.g)) ==
            oracle::table_abelian_invariants(tb.t, oracle::table_whole(tb.t)));
  }
  const auto w = corpus::sylow2_s8();
  REQUIRE(abelianization_invariants(whole_group(w)) == std::vector<unsigned>{1, 1, 1});
  REQUIRE(abelianization_invariants(derived_series(w)[1]) == std::vector<unsigned>{1, 1, 1});
  REQUIRE(abelianization_invariants(whole_group(corpus::c9xc3())) == std::vector<unsigned>{2, 1});
  REQUIRE(invariants_label(3, {2, 1}) == "3^2 x 3");

  // subgroup invariants against the table on the same subgroup
  std::mt19937 rng(8108);
  const Tabled tb(corpus::sylow2_s8());
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = InducedSequence::closure(tb.g, random_gens(tb.g, rng, 2));
    REQUIRE(abelianization_invariants(h) == oracle::table_abelian_invariants(tb.t, elements_of(tb.t, h)));
  }
}

TEST_CASE("agemo by enumeration") {
  const auto m = corpus::modular(3);
  REQUIRE(agemo_exact(whole_group(m)).members() == std::vector<NormalWord>{m.generator(2)});
  const auto w = corpus::sylow2_s8();
  const Tabled tb(corpus::sylow2_s8());
  std::set<std::size_t> squares;
  for (std::size_t x = 0; x < tb.t.size(); ++x) squares.insert(oracle::table_pow(tb.t, x, 2));
  REQUIRE(elements_of(tb.t, agemo_exact(whole_group(tb.g))) == oracle::table_closure(tb.t, squares));
}

TEST_CASE("collection formula residual lands in its subgroup") {
  std::mt19937 rng(8109);
  for (const auto& g : {corpus::heisenberg(5), corpus::sylow2_s8(), corpus::modular(3), corpus::heisenberg(3)}) {
    for (int trial = 0; trial < 15; ++trial) {
      const auto x = random_word(g, rng), y = random_word(g, rng);
      const auto rep = collection_formula_check(g, x, y);
      INFO(to_string(rep.residual));
      REQUIRE(rep.inside);
    }
  }
  // abelian groups satisfy the rule on the nose
  const auto c = corpus::cyclic(5, 2);
  std::mt19937 rng2(8110);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rep = collection_formula_check(c, random_word(c, rng2), random_word(c, rng2));
    REQUIRE(is_identity(rep.residual));
    REQUIRE(rep.inside);
  }
}

TEST_CASE("enumeration refuses oversized subgroups") {
  const auto big = corpus::elementary_abelian(2, 23);
  REQUIRE_THROWS_AS(element_order_histogram(whole_group(big)), ResourceLimitError);
}
