#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcgroup/pcp.hpp"
#include "pcgroup/subgroup.hpp"

// Structure checks for finite p-groups whose derived quotient G'/G'' has
// order p^3 while G'' is nontrivial.  Everything here reports through
// CheckList items carrying a witness string; the constructive procedures
// (generator reduction, standard pairs, normalized generating sets, the
// central factorization G = HU) re-verify their own postconditions and
// throw VerificationError when a claimed consequence fails to hold.

namespace pcg {

enum class CheckStatus { pass, fail, not_applicable, skipped, refused };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not-applicable";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::refused: return "refused";
  }
  return "?";
}

struct CheckItem {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::string witness;
};

class CheckList {
 public:
  explicit CheckList(std::string title) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  const std::vector<CheckItem>& items() const { return items_; }

  void add(std::string name, CheckStatus status, std::string witness = {}) {
    items_.push_back({std::move(name), status, std::move(witness)});
  }
  void require(std::string name, bool holds, std::string witness = {}) {
    add(std::move(name), holds ? CheckStatus::pass : CheckStatus::fail,
        std::move(witness));
  }

  // no failures; refusals and skips do not count against the list
  bool ok() const {
    return std::none_of(items_.begin(), items_.end(), [](const CheckItem& it) {
      return it.status == CheckStatus::fail;
    });
  }
  bool refused() const {
    return std::any_of(items_.begin(), items_.end(), [](const CheckItem& it) {
      return it.status == CheckStatus::refused;
    });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(items_.begin(), items_.end(), [](const CheckItem& it) {
          return it.status == CheckStatus::fail;
        }));
  }
  const CheckItem* find(const std::string& name) const {
    for (const CheckItem& it : items_)
      if (it.name == name) return &it;
    return nullptr;
  }

 private:
  std::string title_;
  std::vector<CheckItem> items_;
};

inline std::string to_text(const CheckList& c) {
  std::ostringstream out;
  out << c.title() << "\n";
  for (const CheckItem& it : c.items()) {
    out << "  [" << to_string(it.status) << "] " << it.name;
    if (!it.witness.empty()) out << " -- " << it.witness;
    out << "\n";
  }
  return out.str();
}

// A verified consequence failed on an in-scope group.
struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what)
      : std::runtime_error(what) {}
};

// The input lies outside the scope of the statement being checked.
struct HypothesisError : std::domain_error {
  explicit HypothesisError(const std::string& what)
      : std::domain_error(what) {}
};

namespace detail {

inline std::string pow_str(unsigned p, std::size_t log) {
  if (log == 0) return "1";
  if (log == 1) return std::to_string(p);
  return std::to_string(p) + "^" + std::to_string(log);
}

// gamma_k of a precomputed lower central series; terms past the end are
// trivial.  `series[0]` is the group itself.
inline const InducedSequence& term(const std::vector<InducedSequence>& series,
                                   std::size_t k,
                                   const InducedSequence& trivial) {
  return k - 1 < series.size() ? series[k - 1] : trivial;
}

inline NormalWord left_normed(const PcGroup& g,
                              const std::vector<NormalWord>& args) {
  NormalWord acc = args.at(0);
  for (std::size_t i = 1; i < args.size(); ++i)
    acc = g.commutator(acc, args[i]);
  return acc;
}

// least e in [0, p) with x * y^-e in L
inline std::optional<unsigned> log_mod(const InducedSequence& L,
                                       const NormalWord& x,
                                       const NormalWord& y) {
  const PcGroup& g = L.group();
  for (unsigned e = 0; e < g.prime(); ++e)
    if (L.contains(g.multiply(x, g.power(y, -static_cast<long long>(e)))))
      return e;
  return std::nullopt;
}

// lexicographically least (e1, e2) with x * (y1^e1 y2^e2)^-1 in L
inline std::optional<std::array<unsigned, 2>> log2_mod(const InducedSequence& L,
                                                       const NormalWord& x,
                                                       const NormalWord& y1,
                                                       const NormalWord& y2) {
  const PcGroup& g = L.group();
  for (unsigned e1 = 0; e1 < g.prime(); ++e1)
    for (unsigned e2 = 0; e2 < g.prime(); ++e2) {
      NormalWord rhs = g.multiply(g.power(y1, e1), g.power(y2, e2));
      if (L.contains(g.multiply(x, g.invert(rhs)))) return {{e1, e2}};
    }
  return std::nullopt;
}

// exact exponent with x = z^e for a central z; nullopt if x is not a power
inline std::optional<unsigned> central_log(const PcGroup& g,
                                           const NormalWord& x,
                                           const NormalWord& z) {
  NormalWord acc = g.identity();
  for (unsigned e = 0; e < g.prime(); ++e) {
    if (x == acc) return e;
    acc = g.multiply(acc, z);
  }
  return std::nullopt;
}

// Frattini subgroup of an arbitrary induced sequence: closure of member
// p-th powers and pairwise commutators, conjugation-closed inside h.
inline InducedSequence frattini_of(const InducedSequence& h) {
  const PcGroup& g = h.group();
  std::vector<NormalWord> gens;
  for (const NormalWord& x : h.members()) {
    gens.push_back(g.power(x, g.prime()));
    for (const NormalWord& y : h.members()) gens.push_back(g.commutator(x, y));
  }
  return InducedSequence::closure(g, gens, h.members());
}

// members of h whose pivots fall outside phi: cosets of these elements are
// a basis of h modulo phi whenever phi contains the Frattini subgroup of h
inline std::vector<NormalWord> transversal_basis(const InducedSequence& h,
                                                 const InducedSequence& phi) {
  std::vector<NormalWord> basis;
  for (std::size_t k = 0; k < h.members().size(); ++k) {
    const std::size_t pivot = h.pivots()[k];
    if (!std::binary_search(phi.pivots().begin(), phi.pivots().end(), pivot))
      basis.push_back(h.members()[k]);
  }
  return basis;
}

// odometer over exponent tuples in [0, p)^len, rightmost digit fastest
inline bool next_tuple(std::vector<unsigned>& e, unsigned p) {
  for (std::size_t i = e.size(); i-- > 0;) {
    if (++e[i] < p) return true;
    e[i] = 0;
  }
  return false;
}

inline NormalWord tuple_element(const PcGroup& g,
                                const std::vector<NormalWord>& basis,
                                const std::vector<unsigned>& e) {
  NormalWord x = g.identity();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (e[i] != 0) x = g.multiply(x, g.power(basis[i], e[i]));
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// hypothesis gate

struct HypothesisReport {
  unsigned prime = 0;
  std::size_t order_log = 0;
  std::size_t derived_quotient_log = 0;  // log_p |G'/G''|
  std::size_t lower_quotient_log = 0;    // log_p |G'/gamma_3|
  bool second_derived_trivial = true;
  bool odd = false;
  bool satisfied = false;  // p odd, |G'/G''| = p^3, G'' != 1

  std::string describe() const {
    std::ostringstream out;
    out << "p = " << prime << ", |G| = " << detail::pow_str(prime, order_log)
        << ", |G'/G''| = " << detail::pow_str(prime, derived_quotient_log)
        << ", G'' " << (second_derived_trivial ? "= 1" : "!= 1");
    return out.str();
  }
};

inline HypothesisReport hypothesis_check(const PcGroup& g) {
  HypothesisReport r;
  r.prime = g.prime();
  r.order_log = g.ngens();
  r.odd = g.prime() % 2 == 1;

  const InducedSequence triv = trivial_subgroup(g);
  const auto der = derived_series(g);
  const auto lcs = lower_central_series(g);
  const std::size_t gp = detail::term(der, 2, triv).order_log();
  const std::size_t gpp = detail::term(der, 3, triv).order_log();
  r.derived_quotient_log = gp - gpp;
  r.second_derived_trivial = gpp == 0;
  r.lower_quotient_log =
      detail::term(lcs, 2, triv).order_log() - detail::term(lcs, 3, triv).order_log();
  r.satisfied = r.odd && r.derived_quotient_log == 3 && !r.second_derived_trivial;
  return r;
}

namespace detail {

// shared scope gate for the checklist verifiers: appends refusal items and
// returns false when the group lies outside the theorem's scope
inline bool gate(CheckList& c, const PcGroup& g, const HypothesisReport& hyp) {
  if (g.prime() == 2) {
    c.add("p >= 3", CheckStatus::refused, "theorem requires p >= 3");
    return false;
  }
  if (!hyp.satisfied) {
    c.add("hypotheses", CheckStatus::refused,
          "hypotheses fail: " + hyp.describe());
    return false;
  }
  c.add("hypotheses", CheckStatus::pass, hyp.describe());
  return true;
}

// throwing variant for the constructive procedures
inline void gate_or_throw(const PcGroup& g) {
  if (g.prime() == 2) throw HypothesisError("theorem requires p >= 3");
  const HypothesisReport hyp = hypothesis_check(g);
  if (!hyp.satisfied)
    throw HypothesisError("hypotheses fail: " + hyp.describe());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// the main structure theorem: for p odd, |G'/G''| = p^3, G'' != 1 force
// |G'/gamma_3| = p, G'' = gamma_5 of order p, and class exactly 5

inline CheckList verify_theorem_1(const PcGroup& g) {
  CheckList c("theorem1");
  if (!detail::gate(c, g, hypothesis_check(g))) return c;

  const unsigned p = g.prime();
  const InducedSequence triv = trivial_subgroup(g);
  const auto lcs = lower_central_series(g);
  const auto der = derived_series(g);
  const InducedSequence& g2 = detail::term(lcs, 2, triv);
  const InducedSequence& g3 = detail::term(lcs, 3, triv);
  const InducedSequence& g4 = detail::term(lcs, 4, triv);
  const InducedSequence& g5 = detail::term(lcs, 5, triv);
  const InducedSequence& g6 = detail::term(lcs, 6, triv);
  const InducedSequence& gpp = detail::term(der, 3, triv);

  c.require("|G'/gamma_3| = p", g2.order_log() - g3.order_log() == 1,
            "|G'/gamma_3| = " +
                detail::pow_str(p, g2.order_log() - g3.order_log()));
  c.require("G'' = gamma_5", gpp == g5,
            "|G''| = " + detail::pow_str(p, gpp.order_log()) +
                ", |gamma_5| = " + detail::pow_str(p, g5.order_log()));
  c.require("[G', gamma_3] <= gamma_5",
            g5.contains(commutator_subgroup(g2, g3)));
  c.require("|gamma_5| = p", g5.order_log() == 1,
            "|gamma_5| = " + detail::pow_str(p, g5.order_log()));
  c.require("class exactly 5", !g5.trivial() && g6.trivial(),
            "|gamma_6| = " + detail::pow_str(p, g6.order_log()));

  const std::size_t logs[] = {g.ngens(), g2.order_log(), g3.order_log(),
                              g4.order_log(), g5.order_log()};
  c.require("G > G' > gamma_3 > gamma_4 > gamma_5",
            logs[0] > logs[1] && logs[1] > logs[2] && logs[2] > logs[3] &&
                logs[3] > logs[4],
            "orders " + detail::pow_str(p, logs[0]) + " > " +
                detail::pow_str(p, logs[1]) + " > " +
                detail::pow_str(p, logs[2]) + " > " +
                detail::pow_str(p, logs[3]) + " > " +
                detail::pow_str(p, logs[4]));
  c.require("gamma_5 >= G'' > 1", g5.contains(gpp) && !gpp.trivial());
  return c;
}

// ---------------------------------------------------------------------------
// classical bounds: G'' != 1 forces |G'/G''| >= p^3 (any p); for p odd,
// equality forces |G''| = p

inline CheckList verify_hall_bounds(const PcGroup& g) {
  CheckList c("hall");
  const unsigned p = g.prime();
  const InducedSequence triv = trivial_subgroup(g);
  const auto der = derived_series(g);
  const InducedSequence& gp = detail::term(der, 2, triv);
  const InducedSequence& gpp = detail::term(der, 3, triv);

  if (gpp.trivial()) {
    c.add("|G'/G''| >= p^3", CheckStatus::not_applicable,
          "G'' = 1; the bound is vacuous");
    c.add("|G''| = p", CheckStatus::not_applicable, "G'' = 1");
    return c;
  }

  const std::size_t quotient_log = gp.order_log() - gpp.order_log();
  c.require("|G'/G''| >= p^3", quotient_log >= 3,
            "|G'/G''| = " + detail::pow_str(p, quotient_log));
  if (p % 2 == 1 && quotient_log == 3) {
    c.require("|G''| = p", gpp.order_log() == 1,
              "|G''| = " + detail::pow_str(p, gpp.order_log()));
  } else {
    c.add("|G''| = p", CheckStatus::not_applicable,
          p % 2 == 0 ? "p = 2" : "|G'/G''| > p^3");
  }
  return c;
}

// ---------------------------------------------------------------------------
// transfer of the lower central series: if H <= G satisfies
// G' = H' gamma_3(G), then gamma_i(H) = gamma_i(G) for all i >= 2 and H is
// normal in G.  Holds for any nilpotent G; no oddness assumption.

inline CheckList verify_transfer_lemma(const PcGroup& g,
                                       const std::vector<NormalWord>& h_gens) {
  CheckList c("transfer");
  const unsigned p = g.prime();
  const InducedSequence triv = trivial_subgroup(g);
  const InducedSequence h = InducedSequence::closure(g, h_gens);
  const auto lcs_g = lower_central_series(g);
  const InducedSequence& g2 = detail::term(lcs_g, 2, triv);
  const InducedSequence& g3 = detail::term(lcs_g, 3, triv);

  const InducedSequence hd = commutator_subgroup(h, h);
  const InducedSequence hd_g3 = join(hd, g3);
  if (!(hd_g3 == g2)) {
    c.add("G' = H' gamma_3(G)", CheckStatus::not_applicable,
          "precondition fails: |H' gamma_3(G)| = " +
              detail::pow_str(p, hd_g3.order_log()) +
              ", |G'| = " + detail::pow_str(p, g2.order_log()));
    return c;
  }
  c.add("G' = H' gamma_3(G)", CheckStatus::pass,
        "|G'| = " + detail::pow_str(p, g2.order_log()));
  c.require("H normal in G", is_normal_in_group(h),
            "|H| = " + detail::pow_str(p, h.order_log()));

  const auto lcs_h = lower_central_series(h);
  const std::size_t depth = std::max(lcs_g.size(), lcs_h.size());
  for (std::size_t k = 2; k <= depth; ++k) {
    const InducedSequence& a = detail::term(lcs_g, k, triv);
    const InducedSequence& b = detail::term(lcs_h, k, triv);
    c.require("gamma_" + std::to_string(k) + "(H) = gamma_" +
                  std::to_string(k) + "(G)",
              a == b,
              detail::pow_str(p, b.order_log()) + " vs " +
                  detail::pow_str(p, a.order_log()));
  }
  return c;
}

// ---------------------------------------------------------------------------
// generator reduction: when G'/gamma_3 is cyclic of order p, two generators
// suffice for a subgroup H with gamma_i(H) = gamma_i(G) (i >= 2); when it is
// elementary abelian of order p^2, three suffice.  Holds for any p.

struct GeneratorReduction {
  std::vector<NormalWord> generators;
  InducedSequence subgroup;
};

inline GeneratorReduction reduce_generators(const PcGroup& g) {
  const unsigned p = g.prime();
  const InducedSequence triv = trivial_subgroup(g);
  const auto lcs = lower_central_series(g);
  const InducedSequence& g2 = detail::term(lcs, 2, triv);
  const InducedSequence& g3 = detail::term(lcs, 3, triv);
  const std::size_t gap = g2.order_log() - g3.order_log();
  if (gap == 0)
    throw HypothesisError("G' = gamma_3: no generating pair controls G'");

  // commutators of pc generators span G'/gamma_3, so the scans below are
  // exhaustive; pairs are visited in lexicographic order for determinism
  std::vector<NormalWord> gens;
  if (gap == 1) {
    for (std::size_t i = 0; i < g.ngens() && gens.empty(); ++i)
      for (std::size_t j = i + 1; j < g.ngens() && gens.empty(); ++j)
        if (!g3.contains(g.commutator(g.generator(j), g.generator(i))))
          gens = {g.generator(i), g.generator(j)};
    if (gens.empty())
      throw std::logic_error("no generator pair spans G'/gamma_3");
  } else if (gap == 2 && is_elementary_abelian_section(g2, g3)) {
    std::optional<std::array<std::size_t, 2>> first, second;
    NormalWord c1 = g.identity(), c2 = g.identity();
    for (std::size_t i = 0; i < g.ngens() && !second; ++i)
      for (std::size_t j = i + 1; j < g.ngens() && !second; ++j) {
        NormalWord c = g.commutator(g.generator(j), g.generator(i));
        if (!first) {
          if (!g3.contains(c)) {
            first = {{i, j}};
            c1 = c;
          }
        } else if (!join(g3, InducedSequence::closure(g, {c1})).contains(c)) {
          second = {{i, j}};
          c2 = c;
        }
      }
    if (!second)
      throw std::logic_error("generator commutators span less than G'/gamma_3");

    const NormalWord a = g.generator((*first)[0]), b = g.generator((*first)[1]);
    const NormalWord cc = g.generator((*second)[0]), d = g.generator((*second)[1]);

    // cross commutators between the two spanning pairs decide the shape
    const std::array<std::pair<NormalWord, NormalWord>, 4> cross = {
        {{a, cc}, {a, d}, {b, cc}, {b, d}}};
    std::optional<std::size_t> live;
    for (std::size_t t = 0; t < cross.size() && !live; ++t)
      if (!g3.contains(g.commutator(cross[t].first, cross[t].second))) live = t;

    if (!live) {
      gens = {a, g.multiply(b, cc), d};
    } else {
      const NormalWord w =
          g.commutator(cross[*live].first, cross[*live].second);
      // w = c1^alpha c2^beta modulo gamma_3
      std::optional<std::array<unsigned, 2>> coords =
          detail::log2_mod(g3, w, c1, c2);
      if (!coords)
        throw std::logic_error("cross commutator escapes <c1, c2> gamma_3");
      const NormalWord& x = cross[*live].first;   // a or b
      const NormalWord& y = cross[*live].second;  // cc or d
      if ((*coords)[0] != 0) {
        // [x, y] covers the (a, b) direction; y's partner restores (cc, d)
        gens = {x, y, *live % 2 == 0 ? d : cc};
      } else {
        // [x, y] covers only the (cc, d) direction; keep x's partner
        gens = {x, x == a ? b : a, y};
      }
    }
  } else {
    throw HypothesisError(
        "G'/gamma_3 is neither cyclic of order p nor elementary abelian of "
        "order p^2 (order " +
        detail::pow_str(p, gap) + ")");
  }

  GeneratorReduction out{gens, InducedSequence::closure(g, gens)};

  // postconditions: H is normal and shares the lower central series from
  // gamma_2 on
  if (!is_normal_in_group(out.subgroup))
    throw VerificationError("reduced subgroup is not normal");
  const auto lcs_h = lower_central_series(out.subgroup);
  const std::size_t depth = std::max(lcs.size(), lcs_h.size());
  for (std::size_t k = 2; k <= depth; ++k)
    if (!(detail::term(lcs, k, triv) == detail::term(lcs_h, k, triv)))
      throw VerificationError("gamma_" + std::to_string(k) +
                              " differs between G and the reduced subgroup");
  return out;
}

// ---------------------------------------------------------------------------
// standard generating pairs of two-generated groups in scope: (a, b) with
//   [b,a] generating gamma_2/gamma_3,
//   [b,a,a] generating gamma_3/gamma_4 and [b,a,b] in gamma_4,
//   [b,a,a,a] generating gamma_4/gamma_5 and [b,a,a,b] in gamma_5,
//   [b,a,a,a,b] generating gamma_5 and [b,a,a,a,a] = 1.
// Whether a pair qualifies depends only on its cosets modulo the Frattini
// subgroup, so scanning coset representatives is exhaustive.

struct StandardPair {
  NormalWord a;
  NormalWord b;
};

namespace detail {

inline bool standard_pair_ok(const PcGroup& g, const InducedSequence& g3,
                             const InducedSequence& g4,
                             const InducedSequence& g5,
                             const InducedSequence& g6, const NormalWord& a,
                             const NormalWord& b) {
  const NormalWord c = g.commutator(b, a);
  if (g3.contains(c)) return false;
  const NormalWord caa = g.commutator(c, a);
  if (g4.contains(caa) || !g4.contains(g.commutator(c, b))) return false;
  const NormalWord caaa = g.commutator(caa, a);
  if (g5.contains(caaa) || !g5.contains(g.commutator(caa, b))) return false;
  const NormalWord caaab = g.commutator(caaa, b);
  if (g6.contains(caaab) || !g6.contains(g.commutator(caaa, a))) return false;
  return true;
}

// search inside a two-generated subgroup h whose lower central series has
// successive quotients of order p down to gamma_5
inline StandardPair standard_pair_in(const PcGroup& g,
                                     const InducedSequence& h) {
  const unsigned p = g.prime();
  const InducedSequence triv = trivial_subgroup(g);
  const auto lcs = lower_central_series(h);
  const InducedSequence& g3 = term(lcs, 3, triv);
  const InducedSequence& g4 = term(lcs, 4, triv);
  const InducedSequence& g5 = term(lcs, 5, triv);
  const InducedSequence& g6 = term(lcs, 6, triv);
  for (std::size_t k = 2; k <= 5; ++k) {
    const std::size_t layer =
        term(lcs, k, triv).order_log() - term(lcs, k + 1, triv).order_log();
    if (layer != 1)
      throw VerificationError("|gamma_" + std::to_string(k) + "/gamma_" +
                              std::to_string(k + 1) + "| = " +
                              pow_str(p, layer) + ", expected p");
  }

  const InducedSequence phi = frattini_of(h);
  const std::vector<NormalWord> basis = transversal_basis(h, phi);
  if (basis.size() != 2)
    throw HypothesisError("subgroup has generating rank " +
                          std::to_string(basis.size()) + ", expected 2");

  // coset representatives x = basis[0]^e0 basis[1]^e1; a pair qualifies only
  // if the exponent matrix is invertible, i.e. the pair generates
  std::vector<unsigned> ea(2, 0);
  while (next_tuple(ea, p)) {
    const NormalWord a = tuple_element(g, basis, ea);
    std::vector<unsigned> eb(2, 0);
    while (next_tuple(eb, p)) {
      if ((static_cast<unsigned long long>(ea[0]) * eb[1] +
           static_cast<unsigned long long>(p - 1) * ea[1] * eb[0]) %
              p ==
          0)
        continue;
      const NormalWord b = tuple_element(g, basis, eb);
      if (standard_pair_ok(g, g3, g4, g5, g6, a, b)) return {a, b};
    }
  }
  throw VerificationError(
      "no standard generating pair exists among coset representatives");
}

}  // namespace detail

inline StandardPair standard_pair(const PcGroup& g) {
  detail::gate_or_throw(g);
  return detail::standard_pair_in(g, whole_group(g));
}

// ---------------------------------------------------------------------------
// normalized generating sets {a, b, u_1, ..., u_r}: (a, b) is a standard
// pair of a two-generated normal subgroup carrying the lower central series,
// and each u_i satisfies [u_i, a] in gamma_5, [u_i, b] in gamma_4,
// [u_i, u_j] in gamma_5, and u_i centralizes G'.

struct NormalizedGenerators {
  NormalWord a;
  NormalWord b;
  std::vector<NormalWord> us;
};

inline NormalizedGenerators normalize_generating_set(const PcGroup& g) {
  detail::gate_or_throw(g);
  const unsigned p = g.prime();

  GeneratorReduction red = reduce_generators(g);
  if (red.generators.size() != 2)
    throw VerificationError("generator reduction returned " +
                            std::to_string(red.generators.size()) +
                            " generators; the hypotheses force 2");
  const StandardPair sp = detail::standard_pair_in(g, red.subgroup);
  const NormalWord a = sp.a;
  const NormalWord b = sp.b;

  // complete {a, b} to a minimal generating set of G using pc generators
  const InducedSequence phi = frattini_subgroup(g);
  std::vector<std::size_t> free_slots;
  for (std::size_t i = 0; i < g.ngens(); ++i)
    if (!std::binary_search(phi.pivots().begin(), phi.pivots().end(), i))
      free_slots.push_back(i);
  auto coords = [&](const NormalWord& x) {
    const std::vector<Residue> full = section_coordinates(phi, x);
    std::vector<Residue> row;
    row.reserve(free_slots.size());
    for (std::size_t s : free_slots) row.push_back(full[s]);
    return row;
  };

  FpMatrix m(p, 0, free_slots.size());
  m.append_row(coords(a));
  m.append_row(coords(b));
  if (echelonize(m).rank != 2)
    throw VerificationError(
        "standard pair is dependent modulo the Frattini subgroup");

  std::vector<NormalWord> us;
  std::size_t rank = 2;
  for (std::size_t i = 0; i < g.ngens() && rank < free_slots.size(); ++i) {
    FpMatrix probe = m;
    probe.append_row(coords(g.generator(i)));
    const std::size_t r = echelonize(probe).rank;
    if (r > rank) {
      us.push_back(g.generator(i));
      m.append_row(coords(g.generator(i)));
      rank = r;
    }
  }
  if (rank != free_slots.size())
    throw std::logic_error("pc generators fail to span G modulo Frattini");

  const InducedSequence triv = trivial_subgroup(g);
  const auto lcs = lower_central_series(g);
  const InducedSequence& g2 = detail::term(lcs, 2, triv);
  const InducedSequence& g3 = detail::term(lcs, 3, triv);
  const InducedSequence& g4 = detail::term(lcs, 4, triv);
  const InducedSequence& g5 = detail::term(lcs, 5, triv);
  const NormalWord c = g.commutator(b, a);
  const NormalWord caa = g.commutator(c, a);
  const NormalWord caaa = g.commutator(caa, a);

  // first pass: replace u by u b^-alpha a^beta so that [u, a] and [u, b]
  // land in gamma_3 (alpha, beta read off modulo gamma_3 against [b, a])
  for (NormalWord& u : us) {
    const auto alpha = detail::log_mod(g3, g.commutator(u, a), c);
    const auto beta = detail::log_mod(g3, g.commutator(u, b), c);
    if (!alpha || !beta)
      throw VerificationError("[u, a] or [u, b] escapes <[b,a]> gamma_3");
    u = g.multiply(u, g.multiply(g.power(b, -static_cast<long long>(*alpha)),
                                 g.power(a, static_cast<long long>(*beta))));
    if (!g3.contains(g.commutator(u, a)) || !g3.contains(g.commutator(u, b)))
      throw VerificationError(
          "first normalization pass left a commutator outside gamma_3");
  }

  // second pass: replace u by u [b,a]^-alpha [b,a,a]^-beta so that [u, a]
  // lands in gamma_5
  for (NormalWord& u : us) {
    const auto co = detail::log2_mod(g5, g.commutator(u, a), caa, caaa);
    if (!co)
      throw VerificationError("[u, a] escapes <[b,a,a], [b,a,a,a]> gamma_5");
    u = g.multiply(u,
                   g.multiply(g.power(c, -static_cast<long long>((*co)[0])),
                              g.power(caa, -static_cast<long long>((*co)[1]))));
    if (!g5.contains(g.commutator(u, a)))
      throw VerificationError(
          "second normalization pass left [u, a] outside gamma_5");
  }

  // the substitutions only mixed in a, b, and G'-elements, so minimality
  // is preserved; re-check it and the remaining commutator conditions
  FpMatrix final_m(p, 0, free_slots.size());
  final_m.append_row(coords(a));
  final_m.append_row(coords(b));
  for (const NormalWord& u : us) final_m.append_row(coords(u));
  if (echelonize(final_m).rank != free_slots.size())
    throw VerificationError("normalized set is no longer minimal generating");

  for (std::size_t i = 0; i < us.size(); ++i) {
    if (!g4.contains(g.commutator(us[i], b)))
      throw VerificationError("[u, b] escapes gamma_4 after normalization");
    for (std::size_t j = i + 1; j < us.size(); ++j)
      if (!g5.contains(g.commutator(us[i], us[j])))
        throw VerificationError("[u_i, u_j] escapes gamma_5");
    for (const NormalWord& x : g2.members())
      if (!is_identity(g.commutator(us[i], x)))
        throw VerificationError("u does not centralize G'");
  }

  return {a, b, us};
}

// ---------------------------------------------------------------------------
// central factorization G = HU with H of at most 5 generators carrying the
// lower central series, [H, U] = 1, and U' of order at most p

inline CheckList verify_decomposition(const PcGroup& g,
                                      const std::vector<NormalWord>& h_gens,
                                      const std::vector<NormalWord>& u_gens) {
  CheckList c("decomposition");
  const unsigned p = g.prime();
  const InducedSequence triv = trivial_subgroup(g);
  const InducedSequence h = InducedSequence::closure(g, h_gens);
  const InducedSequence u = InducedSequence::closure(g, u_gens);
  const auto lcs = lower_central_series(g);
  const InducedSequence& g5 = detail::term(lcs, 5, triv);

  c.require("H has at most 5 generators", h_gens.size() <= 5,
            std::to_string(h_gens.size()) + " generators");
  c.require("H normal in G", is_normal_in_group(h),
            "|H| = " + detail::pow_str(p, h.order_log()));
  c.require("U normal in G", is_normal_in_group(u),
            "|U| = " + detail::pow_str(p, u.order_log()));

  const auto lcs_h = lower_central_series(h);
  bool series_equal = true;
  std::string mismatch;
  const std::size_t depth = std::max(lcs.size(), lcs_h.size());
  for (std::size_t k = 2; k <= depth && series_equal; ++k)
    if (!(detail::term(lcs, k, triv) == detail::term(lcs_h, k, triv))) {
      series_equal = false;
      mismatch = "gamma_" + std::to_string(k) + " differs";
    }
  c.require("gamma_i(H) = gamma_i(G) for i >= 2", series_equal, mismatch);

  const InducedSequence ud = commutator_subgroup(u, u);
  c.require("U' <= gamma_5", g5.contains(ud),
            "|U'| = " + detail::pow_str(p, ud.order_log()));

  bool commute = true;
  for (const NormalWord& x : h.members())
    for (const NormalWord& y : u.members())
      commute = commute && is_identity(g.commutator(x, y));
  c.require("[H, U] = 1", commute);

  const InducedSequence hu = join(h, u);
  c.require("G = HU", hu.order_log() == g.ngens(),
            "|<H, U>| = " + detail::pow_str(p, hu.order_log()));

  // |H| |U| = |G| |H meet U|, with the intersection counted directly
  try {
    const InducedSequence& small = h.order_log() <= u.order_log() ? h : u;
    const InducedSequence& big = h.order_log() <= u.order_log() ? u : h;
    std::size_t meet_count = 0;
    enumerate_subgroup(small, [&](const NormalWord& x) {
      if (big.contains(x)) ++meet_count;
    });
    std::size_t meet_log = 0;
    while (meet_count > 1 && meet_count % p == 0) {
      meet_count /= p;
      ++meet_log;
    }
    const bool exact = meet_count == 1;
    c.require("|H| |U| = |G| |H meet U|",
              exact && h.order_log() + u.order_log() == g.ngens() + meet_log,
              "|H meet U| = " + detail::pow_str(p, meet_log));
  } catch (const ResourceLimitError& e) {
    c.add("|H| |U| = |G| |H meet U|", CheckStatus::skipped, e.what());
  }
  return c;
}

struct Decomposition {
  std::vector<NormalWord> h_generators;
  std::vector<NormalWord> u_generators;
  InducedSequence h;
  InducedSequence u;
  CheckList checks;
};

namespace detail {

// Walk us[first..] into a chain: after the call there is a length k >= 1
// with [us[i+1], us[i]] = z for i < k - 1 (0-based), everything past
// position i + 1 centralizing us[i], and us[k..] centralizing us[k - 1].
// Entries are only permuted, scaled, or multiplied by later chain members.
inline std::size_t build_chain(const PcGroup& g, std::vector<NormalWord>& us,
                               const NormalWord& z) {
  std::size_t idx = 0;
  while (idx + 1 < us.size()) {
    std::optional<std::size_t> next;
    for (std::size_t j = idx + 1; j < us.size() && !next; ++j)
      if (!is_identity(g.commutator(us[j], us[idx]))) next = j;
    if (!next) break;
    std::rotate(us.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
                us.begin() + static_cast<std::ptrdiff_t>(*next),
                us.begin() + static_cast<std::ptrdiff_t>(*next) + 1);
    const auto beta = central_log(g, g.commutator(us[idx + 1], us[idx]), z);
    if (!beta || *beta == 0)
      throw VerificationError("[u_j, u_i] is not a power of the central "
                              "generator");
    us[idx + 1] = g.power(us[idx + 1], fp_inv(g.prime(), *beta));
    for (std::size_t l = idx + 2; l < us.size(); ++l) {
      const auto bl = central_log(g, g.commutator(us[l], us[idx]), z);
      if (!bl)
        throw VerificationError("[u_l, u_i] is not a power of the central "
                                "generator");
      if (*bl != 0)
        us[l] = g.multiply(us[l],
                           g.power(us[idx + 1], -static_cast<long long>(*bl)));
    }
    ++idx;
  }
  return us.empty() ? 0 : idx + 1;
}

struct StagedFactors {
  std::vector<NormalWord> h_gens;
  std::vector<NormalWord> u_gens;
};

// Input: every u centralizes a, and (a, b) is a standard pair whose
// subgroup carries the series.  Output: generator lists for H and U.
inline StagedFactors stage_two(const PcGroup& g, const NormalWord& a,
                               const NormalWord& b,
                               std::vector<NormalWord> us,
                               const NormalWord& caaa, const NormalWord& z) {
  const unsigned p = g.prime();
  // gamma_4 = <caaa> x <z>, so [u, b] splits as caaa^delta z^gamma exactly
  auto split = [&](const NormalWord& x) -> std::array<unsigned, 2> {
    for (unsigned d = 0; d < p; ++d)
      for (unsigned e = 0; e < p; ++e)
        if (x == g.multiply(g.power(caaa, d), g.power(z, e))) return {d, e};
    throw VerificationError("[u, b] escapes gamma_4");
  };

  std::vector<std::array<unsigned, 2>> parts;
  parts.reserve(us.size());
  for (const NormalWord& u : us) parts.push_back(split(g.commutator(u, b)));

  const bool any_delta = std::any_of(parts.begin(), parts.end(),
                                     [](const auto& de) { return de[0] != 0; });
  if (!any_delta) {
    // kill the z-parts with caaa, which centralizes a and maps to z under b
    for (std::size_t i = 0; i < us.size(); ++i)
      if (parts[i][1] != 0)
        us[i] = g.multiply(
            us[i], g.power(caaa, -static_cast<long long>(parts[i][1])));
    for (const NormalWord& u : us)
      if (!is_identity(g.commutator(u, a)) || !is_identity(g.commutator(u, b)))
        throw VerificationError("u fails to centralize <a, b> after the "
                                "gamma_4 adjustment");
    return {{a, b}, std::move(us)};
  }

  // bring a u with nonzero caaa-part to the front and make [u_1, b] = caaa
  std::size_t lead = 0;
  while (parts[lead][0] == 0) ++lead;
  std::rotate(us.begin(), us.begin() + static_cast<std::ptrdiff_t>(lead),
              us.begin() + static_cast<std::ptrdiff_t>(lead) + 1);
  us[0] = g.power(us[0], fp_inv(p, parts[lead][0]));
  {
    const auto de = split(g.commutator(us[0], b));
    if (de[0] != 1)
      throw VerificationError("scaling failed to normalize [u_1, b]");
    if (de[1] != 0)
      us[0] = g.multiply(us[0], g.power(caaa, -static_cast<long long>(de[1])));
  }
  if (!(g.commutator(us[0], b) == caaa) || !is_identity(g.commutator(us[0], a)))
    throw VerificationError("[u_1, b] != [b,a,a,a] after normalization");

  // strip the caaa-part of every later u with u_1, then the z-part with caaa
  for (std::size_t i = 1; i < us.size(); ++i) {
    const auto de = split(g.commutator(us[i], b));
    if (de[0] != 0)
      us[i] =
          g.multiply(us[i], g.power(us[0], -static_cast<long long>(de[0])));
    const auto rest = split(g.commutator(us[i], b));
    if (rest[0] != 0)
      throw VerificationError("caaa-part of [u_i, b] survived elimination");
    if (rest[1] != 0)
      us[i] =
          g.multiply(us[i], g.power(caaa, -static_cast<long long>(rest[1])));
    if (!is_identity(g.commutator(us[i], b)) ||
        !is_identity(g.commutator(us[i], a)))
      throw VerificationError("u_i fails to centralize <a, b>");
  }

  // if the tail also centralizes u_1, it is the complement
  const bool tail_central =
      std::all_of(us.begin() + 1, us.end(), [&](const NormalWord& v) {
        return is_identity(g.commutator(v, us[0]));
      });
  if (tail_central) {
    std::vector<NormalWord> tail(us.begin() + 1, us.end());
    return {{a, b, us[0]}, std::move(tail)};
  }

  // otherwise chain from u_1; its later links centralize both a and b
  const std::size_t k = build_chain(g, us, z);
  std::vector<NormalWord> h_gens{a, b};
  std::vector<NormalWord> u_gens;
  if (k % 2 == 0) {
    NormalWord odd = g.identity(), even = g.identity();
    for (std::size_t i = 0; i < k; i += 2) odd = g.multiply(odd, us[i]);
    for (std::size_t i = 1; i < k; i += 2) even = g.multiply(even, us[i]);
    h_gens.push_back(odd);
    h_gens.push_back(even);
    for (std::size_t i = 1; i + 1 < k; ++i) u_gens.push_back(us[i]);
    for (std::size_t i = k; i < us.size(); ++i) u_gens.push_back(us[i]);
  } else {
    NormalWord odd = g.identity();
    for (std::size_t i = 0; i < k; i += 2) odd = g.multiply(odd, us[i]);
    h_gens.push_back(odd);
    u_gens.assign(us.begin() + 1, us.end());
  }
  return {std::move(h_gens), std::move(u_gens)};
}

}  // namespace detail

inline Decomposition central_decomposition(const PcGroup& g) {
  detail::gate_or_throw(g);
  const NormalizedGenerators ng = normalize_generating_set(g);

  const InducedSequence triv = trivial_subgroup(g);
  const auto lcs = lower_central_series(g);
  const InducedSequence& g5 = detail::term(lcs, 5, triv);
  NormalWord a = ng.a;
  const NormalWord b = ng.b;
  const NormalWord c = g.commutator(b, a);
  const NormalWord caa = g.commutator(c, a);
  const NormalWord caaa = g.commutator(caa, a);
  const NormalWord z = g.commutator(caaa, b);
  if (is_identity(z) || g5.order_log() != 1 || !g5.contains(z))
    throw VerificationError("[b,a,a,a,b] does not generate the last lower "
                            "central term");

  std::vector<NormalWord> us = ng.us;
  detail::StagedFactors factors{{a, b}, {}};
  if (!us.empty()) {
    // stage one: push every [u, a] from gamma_5 = <z> down to 1, or fold an
    // odd chain into a single generator commuting with everything else
    std::vector<unsigned> alphas;
    alphas.reserve(us.size());
    for (const NormalWord& u : us) {
      const auto al = detail::central_log(g, g.commutator(u, a), z);
      if (!al) throw VerificationError("[u, a] is not a power of z");
      alphas.push_back(*al);
    }
    const auto nz = std::find_if(alphas.begin(), alphas.end(),
                                 [](unsigned x) { return x != 0; });
    if (nz == alphas.end()) {
      factors = detail::stage_two(g, a, b, us, caaa, z);
    } else {
      const std::size_t lead = static_cast<std::size_t>(nz - alphas.begin());
      std::rotate(us.begin(), us.begin() + static_cast<std::ptrdiff_t>(lead),
                  us.begin() + static_cast<std::ptrdiff_t>(lead) + 1);
      us[0] = g.power(us[0], fp_inv(g.prime(), alphas[lead]));
      if (!(g.commutator(us[0], a) == z))
        throw VerificationError("scaling failed to normalize [u_1, a]");
      for (std::size_t i = 1; i < us.size(); ++i) {
        const auto al = detail::central_log(g, g.commutator(us[i], a), z);
        if (!al) throw VerificationError("[u_i, a] is not a power of z");
        if (*al != 0)
          us[i] =
              g.multiply(us[i], g.power(us[0], -static_cast<long long>(*al)));
        if (!is_identity(g.commutator(us[i], a)))
          throw VerificationError("u_i fails to centralize a");
      }
      const std::size_t k = detail::build_chain(g, us, z);
      if (k % 2 == 0) {
        // absorbing the even chain links into a restores [u, a] = 1 for all u
        for (std::size_t i = 1; i < k; i += 2) a = g.multiply(a, us[i]);
        for (const NormalWord& u : us)
          if (!is_identity(g.commutator(u, a)))
            throw VerificationError("chain absorption left [u, a] != 1");
        factors = detail::stage_two(g, a, b, us, caaa, z);
      } else {
        // fold the odd chain; the rest centralizes both a and the fold
        NormalWord fold = g.identity();
        for (std::size_t i = 0; i < k; i += 2) fold = g.multiply(fold, us[i]);
        std::vector<NormalWord> rest(us.begin() + 1, us.end());
        for (const NormalWord& v : rest) {
          if (!is_identity(g.commutator(v, a)) ||
              !is_identity(g.commutator(v, fold)))
            throw VerificationError("odd chain fold is not centralized");
        }
        factors = detail::stage_two(g, a, b, rest, caaa, z);
        factors.h_gens.push_back(fold);
      }
    }
  }
  if (factors.u_gens.empty()) factors.u_gens = center(g).members();

  Decomposition out{factors.h_gens, factors.u_gens,
                    InducedSequence::closure(g, factors.h_gens),
                    InducedSequence::closure(g, factors.u_gens),
                    verify_decomposition(g, factors.h_gens, factors.u_gens)};
  if (!out.checks.ok()) {
    for (const CheckItem& it : out.checks.items())
      if (it.status == CheckStatus::fail)
        throw VerificationError("factorization postcondition failed: " +
                                it.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// minimality of the factorization: dropping any one of the five normalized
// generators leaves no subgroup that can play the role of H

inline CheckList verify_minimality(const PcGroup& g) {
  CheckList c("minimality");
  if (!detail::gate(c, g, hypothesis_check(g))) return c;
  const unsigned p = g.prime();

  const NormalizedGenerators ng = normalize_generating_set(g);
  std::vector<NormalWord> gens{ng.a, ng.b};
  gens.insert(gens.end(), ng.us.begin(), ng.us.end());
  if (gens.size() != 5) {
    c.add("five-generator factorization", CheckStatus::not_applicable,
          "normalized generating set has " + std::to_string(gens.size()) +
              " elements");
    return c;
  }

  const InducedSequence triv = trivial_subgroup(g);
  const auto lcs = lower_central_series(g);
  const InducedSequence& g5 = detail::term(lcs, 5, triv);
  const InducedSequence whole = whole_group(g);
  const std::vector<std::string> labels = {"a", "b", "u1", "u2", "u3"};

  for (std::size_t drop = 0; drop < gens.size(); ++drop) {
    std::vector<NormalWord> sub;
    std::string label = "{";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i == drop) continue;
      sub.push_back(gens[i]);
      label += (label.size() > 1 ? ", " : "") + labels[i];
    }
    label += "}";

    const InducedSequence h = InducedSequence::closure(g, sub);
    std::string reason;
    if (!is_normal_in_group(h)) {
      reason = "H not normal";
    } else {
      const auto lcs_h = lower_central_series(h);
      const std::size_t depth = std::max(lcs.size(), lcs_h.size());
      for (std::size_t k = 2; k <= depth && reason.empty(); ++k)
        if (!(detail::term(lcs, k, triv) == detail::term(lcs_h, k, triv)))
          reason = "gamma_" + std::to_string(k) + "(H) != gamma_" +
                   std::to_string(k) + "(G)";
      if (reason.empty()) {
        // the centralizer is the largest candidate complement
        const InducedSequence u = centralizer(g, sub, whole);
        if (join(h, u).order_log() != g.ngens())
          reason = "no centralizing complement covers G";
        else if (!g5.contains(commutator_subgroup(u, u)))
          reason = "|U'| > p for the maximal complement, |U'| = " +
                   detail::pow_str(p, commutator_subgroup(u, u).order_log());
      }
    }
    if (reason.empty())
      c.add("4-subset " + label + " admits no factorization", CheckStatus::fail,
            "subset generates a valid H with complement");
    else
      c.add("4-subset " + label + " admits no factorization", CheckStatus::pass,
            reason);
  }
  return c;
}

// ---------------------------------------------------------------------------
// isomorphism type of G': in scope, G' is X x C_p with X one of the two
// nonabelian groups of order p^3, distinguished by the exponent of G'

enum class DerivedType { x_type, y_type };

inline const char* to_string(DerivedType t) {
  return t == DerivedType::x_type ? "X-type (exponent p)"
                                  : "Y-type (exponent p^2)";
}

struct Classification {
  std::optional<DerivedType> type;
  CheckList checks{"classify"};
};

inline Classification classify_derived_subgroup(const PcGroup& g) {
  Classification out;
  if (!detail::gate(out.checks, g, hypothesis_check(g))) return out;
  const unsigned p = g.prime();

  const InducedSequence triv = trivial_subgroup(g);
  const auto der = derived_series(g);
  const InducedSequence& gp = detail::term(der, 2, triv);
  const InducedSequence& gpp = detail::term(der, 3, triv);

  out.checks.require("|G'| = p^4", gp.order_log() == 4,
                     "|G'| = " + detail::pow_str(p, gp.order_log()));
  out.checks.require("G' nonabelian", !gpp.trivial(),
                     "|G''| = " + detail::pow_str(p, gpp.order_log()));
  out.checks.require("|G''| = p", gpp.order_log() == 1);
  out.checks.require(
      "G'/G'' elementary abelian of rank 3",
      gp.order_log() - gpp.order_log() == 3 &&
          is_elementary_abelian_section(gp, gpp));

  const InducedSequence zg = centralizer(g, gp.members(), gp);
  out.checks.require(
      "Z(G') = C_p x C_p",
      zg.order_log() == 2 && exponent_log(zg) == 1,
      "order " + detail::pow_str(p, zg.order_log()) + ", exponent " +
          detail::pow_str(p, exponent_log(zg)));

  if (!out.checks.ok()) {
    out.checks.add("isomorphism type", CheckStatus::fail,
                   "unexpected isomorphism type of G'");
    return out;
  }

  const std::size_t e = exponent_log(gp);
  out.checks.add("exponent of G'", CheckStatus::pass,
                 "exp(G') = " + detail::pow_str(p, e));
  if (e == 1) {
    out.type = DerivedType::x_type;
  } else if (e == 2) {
    out.type = DerivedType::y_type;
  } else {
    out.checks.add("isomorphism type", CheckStatus::fail,
                   "unexpected isomorphism type: exp(G') = " +
                       detail::pow_str(p, e));
    return out;
  }
  out.checks.add("isomorphism type", CheckStatus::pass, to_string(*out.type));
  return out;
}

// ---------------------------------------------------------------------------
// power-centrality: X-type with p >= 5 forces G^p <= Z(G); Y-type forces
// G^(p^2) <= Z(G)

inline CheckList verify_power_central(const PcGroup& g) {
  CheckList c("power-central");
  const Classification cls = classify_derived_subgroup(g);
  if (!cls.type) {
    if (cls.checks.refused()) {
      c.add("classification", CheckStatus::refused,
            "out of scope: " + cls.checks.items().front().witness);
    } else {
      c.add("classification", CheckStatus::fail,
            "G' has an unexpected isomorphism type");
    }
    return c;
  }

  const unsigned p = g.prime();
  unsigned height = 0;
  if (*cls.type == DerivedType::x_type) {
    if (p < 5) {
      c.add("G^p <= Z(G)", CheckStatus::not_applicable,
            "exponent-p type requires p >= 5; p = " + std::to_string(p));
      return c;
    }
    height = 1;
  } else {
    height = 2;
  }

  const std::string name =
      height == 1 ? "G^p <= Z(G)" : "G^(p^2) <= Z(G)";
  try {
    const InducedSequence whole = whole_group(g);
    const InducedSequence powers = agemo_exact(whole, height);
    const InducedSequence z = center(g);
    c.require(name, z.contains(powers),
              "power subgroup order " +
                  detail::pow_str(p, powers.order_log()) + ", |Z(G)| = " +
                  detail::pow_str(p, z.order_log()));
  } catch (const ResourceLimitError& e) {
    c.add(name, CheckStatus::skipped, e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// invariant comparison for telling subgroups apart

struct InvariantComparison {
  bool distinguished = false;
  std::string invariant;  // the first invariant that separates, if any
  std::string left;
  std::string right;
  std::vector<std::string> notes;

  std::string summary() const {
    if (distinguished)
      return "distinguished by " + invariant + ": " + left + " vs " + right;
    std::string s = "indistinguishable by implemented invariants";
    for (const std::string& n : notes) s += "; " + n;
    return s;
  }
};

namespace detail {

inline std::string histogram_label(unsigned p,
                                   const std::map<unsigned, std::uint64_t>& h) {
  std::string out = "{";
  for (const auto& [log, count] : h) {
    if (out.size() > 1) out += ", ";
    out += pow_str(p, log) + ": " + std::to_string(count);
  }
  return out + "}";
}

}  // namespace detail

inline InvariantComparison compare_invariants(const InducedSequence& x,
                                              const InducedSequence& y) {
  InvariantComparison out;
  const unsigned px = x.group().prime();
  const unsigned py = y.group().prime();

  if (px != py || x.order_log() != y.order_log()) {
    out.distinguished = true;
    out.invariant = "order";
    out.left = detail::pow_str(px, x.order_log());
    out.right = detail::pow_str(py, y.order_log());
    return out;
  }

  const auto abx = abelianization_invariants(x);
  const auto aby = abelianization_invariants(y);
  if (abx != aby) {
    out.distinguished = true;
    out.invariant = "abelianization invariants";
    out.left = invariants_label(px, abx);
    out.right = invariants_label(py, aby);
    return out;
  }

  try {
    const auto hx = element_order_histogram(x);
    const auto hy = element_order_histogram(y);
    if (hx != hy) {
      out.distinguished = true;
      out.invariant = "element-order histogram";
      out.left = detail::histogram_label(px, hx);
      out.right = detail::histogram_label(py, hy);
      return out;
    }
  } catch (const ResourceLimitError& e) {
    out.notes.push_back(std::string("element-order histogram skipped: ") +
                        e.what());
  }

  const InducedSequence zx = centralizer(x.group(), x.members(), x);
  const InducedSequence zy = centralizer(y.group(), y.members(), y);
  const auto zabx = abelianization_invariants(zx);
  const auto zaby = abelianization_invariants(zy);
  if (zx.order_log() != zy.order_log() || zabx != zaby) {
    out.distinguished = true;
    out.invariant = "center invariants";
    out.left = detail::pow_str(px, zx.order_log()) + " " +
               invariants_label(px, zabx);
    out.right = detail::pow_str(py, zy.order_log()) + " " +
                invariants_label(py, zaby);
    return out;
  }

  return out;
}

}  // namespace pcg
