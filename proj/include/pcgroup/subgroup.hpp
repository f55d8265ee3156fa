#pragma once

// Subgroups as induced generating sequences.
//
// A subgroup H is stored as members m_1, ..., m_r in normal form with
// strictly increasing leading indices (the pivots), leading exponent 1, and
// back-substituted so member k has exponent 0 at every other pivot.  Every
// element of H is then uniquely m_1^e1 * ... * m_r^er with 0 <= e < p, so
// |H| = p^r, membership is sifting, and equal subgroups compare equal as
// member lists.
//
// Closure relies on the filtration G_t = <a_t, ..., a_n>: every G_t is
// normal with [G, G_t] <= G_{t+1} and x^p deeper than x, so power and
// commutator obligations always sift strictly below their sources and the
// pivot set grows at most n times.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pcgroup/gfp.hpp"
#include "pcgroup/limits.hpp"
#include "pcgroup/pcp.hpp"
#include "pcgroup/word.hpp"

namespace pcg {

class InducedSequence {
 public:
  explicit InducedSequence(const PcGroup& g) : g_(&g) {}

  // Sift-and-add closure of the given generators; with conjugators, also
  // closed under commutation with them (their normal closure effect).
  static InducedSequence closure(const PcGroup& g, const std::vector<NormalWord>& gens,
                                 const std::vector<NormalWord>& conjugators = {}) {
    InducedSequence s(g);
    std::vector<NormalWord> work(gens.rbegin(), gens.rend());
    while (!work.empty()) {
      NormalWord x = std::move(work.back());
      work.pop_back();
      NormalWord r = s.sift(x).residual;
      const std::size_t i = leading_index(r);
      if (i == npos) continue;
      r = g.power(r, fp_inv(g.prime(), r[i]));
      for (const NormalWord& m : s.members_) {
        work.push_back(g.commutator(r, m));
        work.push_back(g.commutator(m, r));
      }
      work.push_back(g.power(r, g.prime()));
      for (const NormalWord& c : conjugators) work.push_back(g.commutator(r, c));
      s.insert_member(std::move(r), i);
    }
    s.canonicalize();
    return s;
  }

  const PcGroup& group() const { return *g_; }
  const std::vector<NormalWord>& members() const { return members_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::size_t order_log() const { return members_.size(); }
  bool trivial() const { return members_.empty(); }

  std::optional<std::uint64_t> order_u64() const {
    std::uint64_t o = 1;
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (o > UINT64_MAX / g_->prime()) return std::nullopt;
      o *= g_->prime();
    }
    return o;
  }

  struct Sifted {
    NormalWord residual;              // identity iff the input lay inside
    std::vector<unsigned> exponents;  // x = m_1^e1 * ... * m_r^er * residual
  };

  Sifted sift(const NormalWord& x) const {
    Sifted out{x, std::vector<unsigned>(members_.size(), 0)};
    while (true) {
      const std::size_t i = leading_index(out.residual);
      if (i == npos) return out;
      const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), i);
      if (it == pivots_.end() || *it != i) return out;
      const std::size_t k = static_cast<std::size_t>(it - pivots_.begin());
      const unsigned e = out.residual[i];
      out.exponents[k] = e;
      out.residual = g_->multiply(g_->power(members_[k], -static_cast<long long>(e)), out.residual);
    }
  }

  bool contains(const NormalWord& x) const { return is_identity(sift(x).residual); }

  bool contains(const InducedSequence& other) const {
    for (const NormalWord& m : other.members_)
      if (!contains(m)) return false;
    return true;
  }

  friend bool operator==(const InducedSequence& a, const InducedSequence& b) {
    return a.members_ == b.members_;
  }

 private:
  void insert_member(NormalWord m, std::size_t pivot) {
    const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    const std::size_t k = static_cast<std::size_t>(it - pivots_.begin());
    pivots_.insert(it, pivot);
    members_.insert(members_.begin() + static_cast<std::ptrdiff_t>(k), std::move(m));
    if (members_.size() > g_->ngens()) throw std::logic_error("more members than pivots available");
  }

  // clear each member's exponents at the deeper pivots; right-multiplying by
  // deeper members never disturbs coordinates below their own pivot
  void canonicalize() {
    for (std::size_t k = 0; k < members_.size(); ++k)
      for (std::size_t l = k + 1; l < members_.size(); ++l) {
        const unsigned e = members_[k][pivots_[l]];
        if (e != 0) members_[k] = g_->multiply(members_[k], g_->power(members_[l], -static_cast<long long>(e)));
      }
  }

  const PcGroup* g_;
  std::vector<NormalWord> members_;
  std::vector<std::size_t> pivots_;
};

inline InducedSequence trivial_subgroup(const PcGroup& g) { return InducedSequence(g); }

inline InducedSequence whole_group(const PcGroup& g) {
  std::vector<NormalWord> gens;
  for (std::size_t i = 0; i < g.ngens(); ++i) gens.push_back(g.generator(i));
  return InducedSequence::closure(g, gens);
}

inline InducedSequence join(const InducedSequence& a, const InducedSequence& b) {
  std::vector<NormalWord> gens = a.members();
  gens.insert(gens.end(), b.members().begin(), b.members().end());
  return InducedSequence::closure(a.group(), gens);
}

inline InducedSequence normal_closure(const PcGroup& g, const std::vector<NormalWord>& gens) {
  std::vector<NormalWord> conj;
  for (std::size_t i = 0; i < g.ngens(); ++i) conj.push_back(g.generator(i));
  return InducedSequence::closure(g, gens, conj);
}

// [A, B], normalized inside <A, B>.
inline InducedSequence commutator_subgroup(const InducedSequence& a, const InducedSequence& b) {
  const PcGroup& g = a.group();
  std::vector<NormalWord> gens;
  for (const NormalWord& x : a.members())
    for (const NormalWord& y : b.members()) gens.push_back(g.commutator(x, y));
  std::vector<NormalWord> conj = a.members();
  conj.insert(conj.end(), b.members().begin(), b.members().end());
  return InducedSequence::closure(g, gens, conj);
}

inline bool is_normal_in_group(const InducedSequence& h) {
  const PcGroup& g = h.group();
  for (const NormalWord& m : h.members())
    for (std::size_t i = 0; i < g.ngens(); ++i)
      if (!h.contains(g.commutator(m, g.generator(i)))) return false;
  return true;
}

// gamma_1 = H, gamma_{k+1} = [gamma_k, H]; ends at the first trivial term.
inline std::vector<InducedSequence> lower_central_series(const InducedSequence& h) {
  std::vector<InducedSequence> series{h};
  while (!series.back().trivial()) {
    InducedSequence next = commutator_subgroup(series.back(), h);
    if (next.order_log() >= series.back().order_log() && !series.back().trivial())
      throw std::logic_error("lower central series failed to descend");
    series.push_back(std::move(next));
  }
  return series;
}

inline std::vector<InducedSequence> lower_central_series(const PcGroup& g) {
  return lower_central_series(whole_group(g));
}

inline unsigned nilpotency_class(const PcGroup& g) {
  return static_cast<unsigned>(lower_central_series(g).size() - 1);
}

inline std::vector<InducedSequence> derived_series(const InducedSequence& h) {
  std::vector<InducedSequence> series{h};
  while (!series.back().trivial()) {
    InducedSequence next = commutator_subgroup(series.back(), series.back());
    if (next.order_log() >= series.back().order_log() && !series.back().trivial())
      throw std::logic_error("derived series failed to descend");
    series.push_back(std::move(next));
  }
  return series;
}

inline std::vector<InducedSequence> derived_series(const PcGroup& g) {
  return derived_series(whole_group(g));
}

// P_1 = H, P_{k+1} = [P_k, H] * P_k^p.
inline std::vector<InducedSequence> lower_exponent_p_central_series(const InducedSequence& h) {
  const PcGroup& g = h.group();
  std::vector<InducedSequence> series{h};
  while (!series.back().trivial()) {
    std::vector<NormalWord> gens;
    for (const NormalWord& m : series.back().members()) {
      gens.push_back(g.power(m, g.prime()));
      for (const NormalWord& t : h.members()) gens.push_back(g.commutator(m, t));
    }
    InducedSequence next = InducedSequence::closure(g, gens, h.members());
    if (next.order_log() >= series.back().order_log() && !series.back().trivial())
      throw std::logic_error("exponent-p central series failed to descend");
    series.push_back(std::move(next));
  }
  return series;
}

inline std::vector<InducedSequence> lower_exponent_p_central_series(const PcGroup& g) {
  return lower_exponent_p_central_series(whole_group(g));
}

inline unsigned exponent_p_class(const PcGroup& g) {
  return static_cast<unsigned>(lower_exponent_p_central_series(g).size() - 1);
}

// Phi(G) = G' * G^p: generator powers and commutators, normalized.
inline InducedSequence frattini_subgroup(const PcGroup& g) {
  std::vector<NormalWord> gens;
  for (std::size_t i = 0; i < g.ngens(); ++i) {
    gens.push_back(g.power(g.generator(i), g.prime()));
    for (std::size_t j = i + 1; j < g.ngens(); ++j)
      gens.push_back(g.commutator(g.generator(j), g.generator(i)));
  }
  return normal_closure(g, gens);
}

// ---------------------------------------------------------------------------
// Enumeration

// Walk all |H| elements with prefix-product caching; fn(element).
template <typename Fn>
void enumerate_subgroup(const InducedSequence& h, Fn&& fn) {
  const PcGroup& g = h.group();
  const std::size_t r = h.order_log();
  double total = 1;
  for (std::size_t k = 0; k < r; ++k) total *= g.prime();
  if (total > static_cast<double>(max_enumeration()))
    throw ResourceLimitError("enumeration of " + std::to_string(g.prime()) + "^" + std::to_string(r) +
                             " elements exceeds PCGROUP_MAX_ENUM");
  if (r == 0) {
    fn(g.identity());
    return;
  }
  std::vector<unsigned> exps(r, 0);
  // prefix[k] = m_1^e1 ... m_k^ek
  std::vector<NormalWord> prefix(r + 1);
  prefix[0] = g.identity();
  for (std::size_t k = 0; k < r; ++k) prefix[k + 1] = prefix[k];
  while (true) {
    fn(prefix[r]);
    std::size_t t = r;
    while (t > 0 && exps[t - 1] + 1 == g.prime()) {
      exps[t - 1] = 0;
      --t;
    }
    if (t == 0) return;
    ++exps[t - 1];
    // slots t-1 .. r-1 changed (deeper ones reset to 0)
    prefix[t] = g.multiply(prefix[t - 1], g.power(h.members()[t - 1], exps[t - 1]));
    for (std::size_t k = t; k < r; ++k) prefix[k + 1] = prefix[k];
  }
}

// Smallest k with x^(p^k) = 1; the order of x is p^k.
inline unsigned element_order_log(const PcGroup& g, NormalWord x) {
  unsigned k = 0;
  while (!is_identity(x)) {
    x = g.power(x, g.prime());
    ++k;
    if (k > g.ngens()) throw std::logic_error("element order exceeds group order");
  }
  return k;
}

// order exponent k -> number of elements of order p^k
inline std::map<unsigned, std::uint64_t> element_order_histogram(const InducedSequence& h) {
  std::map<unsigned, std::uint64_t> hist;
  enumerate_subgroup(h, [&](const NormalWord& x) { ++hist[element_order_log(h.group(), x)]; });
  return hist;
}

inline unsigned exponent_log(const InducedSequence& h) {
  const auto hist = element_order_histogram(h);
  return hist.empty() ? 0 : hist.rbegin()->first;
}

// <x^(p^height) : x in H>, by enumeration (exact, in contrast with closing
// over member powers only, which can be too small in nonabelian sections).
inline InducedSequence agemo_exact(const InducedSequence& h, unsigned height = 1) {
  const PcGroup& g = h.group();
  std::vector<NormalWord> gens;
  InducedSequence probe(g);
  enumerate_subgroup(h, [&](const NormalWord& x) {
    NormalWord y = x;
    for (unsigned t = 0; t < height; ++t) y = g.power(y, g.prime());
    if (!probe.contains(y)) {
      gens.push_back(y);
      probe = InducedSequence::closure(g, gens);
    }
  });
  return probe;
}

inline InducedSequence centralizer_brute(const PcGroup& g, const std::vector<NormalWord>& targets,
                                         const InducedSequence& within) {
  std::vector<NormalWord> found;
  InducedSequence probe(g);
  std::uint64_t count = 0;
  enumerate_subgroup(within, [&](const NormalWord& x) {
    for (const NormalWord& s : targets)
      if (!is_identity(g.commutator(x, s))) return;
    ++count;
    if (!probe.contains(x)) {
      found.push_back(x);
      probe = InducedSequence::closure(g, found);
    }
  });
  if (probe.order_u64() != std::optional<std::uint64_t>{count})
    throw std::logic_error("centralizer enumeration does not form a subgroup");
  return probe;
}

// ---------------------------------------------------------------------------
// Centralizer by lifting along the lower exponent-p central series

namespace detail {

// coordinates in the layer N_j / N_{j+1}: sift through N_j, then reduce the
// witness exponents modulo the rows contributed by N_{j+1}'s members
inline std::vector<Residue> layer_coordinates(const InducedSequence& nj, const EchelonForm& deeper,
                                              const NormalWord& y) {
  auto s = nj.sift(y);
  if (!is_identity(s.residual)) throw std::logic_error("element escapes its series layer");
  std::vector<Residue> v(s.exponents.begin(), s.exponents.end());
  const unsigned p = nj.group().prime();
  for (std::size_t t = 0; t < deeper.rank; ++t) {
    const std::size_t c = deeper.pivot_cols[t];
    const Residue e = v[c];
    if (e == 0) continue;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = fp_sub(p, v[k], fp_mul(p, e, deeper.rref.at(t, k)));
  }
  return v;
}

}  // namespace detail

// Elements of `within` commuting with every target.  Descends the ambient
// lower exponent-p central series: at each layer the map
// x -> ([x, s] mod deeper)_s is a homomorphism because the layer is central,
// so the surviving subgroup is the kernel of a matrix.
inline InducedSequence centralizer(const PcGroup& g, const std::vector<NormalWord>& targets,
                                   const InducedSequence& within) {
  const auto series = lower_exponent_p_central_series(g);
  InducedSequence k = within;
  for (std::size_t j = 0; j + 1 < series.size(); ++j) {
    if (k.trivial()) break;
    const InducedSequence& nj = series[j];
    const InducedSequence& deeper = series[j + 1];
    FpMatrix wit(g.prime(), 0, nj.order_log());
    for (const NormalWord& m : deeper.members()) {
      auto s = nj.sift(m);
      if (!is_identity(s.residual)) throw std::logic_error("series terms fail to nest");
      wit.append_row(std::vector<Residue>(s.exponents.begin(), s.exponents.end()));
    }
    const EchelonForm ech = echelonize(wit);

    const std::size_t r = k.order_log();
    FpMatrix rows(g.prime(), r, nj.order_log() * targets.size());
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < targets.size(); ++b) {
        const auto v = detail::layer_coordinates(nj, ech, g.commutator(k.members()[a], targets[b]));
        for (std::size_t c = 0; c < v.size(); ++c) rows.set(a, b * nj.order_log() + c, v[c]);
      }
    const auto sol = solve(rows.transposed(), std::vector<Residue>(rows.cols(), 0));
    if (!sol) throw std::logic_error("homogeneous system reported inconsistent");
    std::vector<NormalWord> gens;
    for (const auto& c : sol->nullspace) {
      NormalWord x = g.identity();
      for (std::size_t a = 0; a < r; ++a)
        if (c[a] != 0) x = g.multiply(x, g.power(k.members()[a], c[a]));
      gens.push_back(std::move(x));
    }
    k = InducedSequence::closure(g, gens);
    if (k.order_log() != sol->nullspace.size())
      throw std::logic_error("kernel closure has unexpected order");
  }
  return k;
}

inline InducedSequence center(const PcGroup& g) {
  std::vector<NormalWord> gens;
  for (std::size_t i = 0; i < g.ngens(); ++i) gens.push_back(g.generator(i));
  return centralizer(g, gens, whole_group(g));
}

// ---------------------------------------------------------------------------
// Sections and invariants

// True when b <= a and a/b is elementary abelian (so in particular b is
// normal in a).
inline bool is_elementary_abelian_section(const InducedSequence& a, const InducedSequence& b) {
  const PcGroup& g = a.group();
  if (!a.contains(b)) return false;
  for (const NormalWord& x : a.members()) {
    if (!b.contains(g.power(x, g.prime()))) return false;
    for (const NormalWord& y : a.members())
      if (!b.contains(g.commutator(x, y))) return false;
  }
  return true;
}

// Exponents at the generator slots not covered by sub's pivots; constant on
// cosets of sub whenever G/sub is elementary abelian with the non-pivot
// generators as a basis (e.g. sub >= Phi(G)).
inline NormalWord section_coordinates(const InducedSequence& sub, const NormalWord& x) {
  const PcGroup& g = sub.group();
  NormalWord coords(g.ngens(), 0);
  NormalWord r = x;
  while (true) {
    const std::size_t i = leading_index(r);
    if (i == npos) return coords;
    const auto& piv = sub.pivots();
    const auto it = std::lower_bound(piv.begin(), piv.end(), i);
    if (it != piv.end() && *it == i) {
      const std::size_t k = static_cast<std::size_t>(it - piv.begin());
      r = g.multiply(g.power(sub.members()[k], -static_cast<long long>(r[i])), r);
    } else {
      coords[i] = r[i];
      r = g.multiply(g.power(g.generator(i), -static_cast<long long>(r[i])), r);
    }
  }
}

inline NormalWord section_representative(const InducedSequence& sub, const NormalWord& x) {
  const PcGroup& g = sub.group();
  const NormalWord coords = section_coordinates(sub, x);
  NormalWord rep = g.identity();
  for (std::size_t i = 0; i < g.ngens(); ++i)
    if (coords[i] != 0) rep = g.multiply(rep, g.generator_power(i, coords[i]));
  return rep;
}

// Cyclic factor exponents of H/H', largest first: {3, 1, 1} reads p^3 x p x p.
inline std::vector<unsigned> abelianization_invariants(const InducedSequence& h) {
  const PcGroup& g = h.group();
  const InducedSequence der = commutator_subgroup(h, h);
  // m_k = log_p |(H/H')^(p^k)|; parts >= k+1 in the partition: m_k - m_{k+1}
  std::vector<std::size_t> m;
  std::vector<NormalWord> powers = h.members();
  while (true) {
    std::vector<NormalWord> gens = powers;
    gens.insert(gens.end(), der.members().begin(), der.members().end());
    const InducedSequence u = InducedSequence::closure(g, gens);
    m.push_back(u.order_log() - der.order_log());
    if (m.back() == 0) break;
    if (m.size() > g.ngens() + 1) throw std::logic_error("abelianization ranks failed to reach zero");
    for (NormalWord& x : powers) x = g.power(x, g.prime());
  }
  std::vector<std::size_t> cnt;  // cnt[k] = number of parts >= k+1
  for (std::size_t k = 0; k + 1 < m.size(); ++k) cnt.push_back(m[k] - m[k + 1]);
  std::vector<unsigned> parts;
  for (std::size_t j = cnt.size(); j-- > 0;) {
    const std::size_t exact = cnt[j] - (j + 1 < cnt.size() ? cnt[j + 1] : 0);
    for (std::size_t c = 0; c < exact; ++c) parts.push_back(static_cast<unsigned>(j + 1));
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

inline std::string invariants_label(unsigned p, const std::vector<unsigned>& parts) {
  if (parts.empty()) return "1";
  std::string out;
  for (unsigned e : parts) {
    if (!out.empty()) out += " x ";
    out += std::to_string(p);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The residual of the p-th power collection rule

struct CollectionFormulaReport {
  NormalWord residual;             // [x^p, y] * ([x, y]^p)^-1
  bool inside = false;             // residual in agemo(N') * gamma_p(N), N = <x, [x,y]>
  std::size_t target_order_log = 0;
};

inline CollectionFormulaReport collection_formula_check(const PcGroup& g, const NormalWord& x,
                                                        const NormalWord& y) {
  CollectionFormulaReport rep;
  const NormalWord c = g.commutator(x, y);
  rep.residual = g.multiply(g.commutator(g.power(x, g.prime()), y), g.invert(g.power(c, g.prime())));
  const InducedSequence n = InducedSequence::closure(g, {x, c});
  const InducedSequence nder = commutator_subgroup(n, n);
  const auto series = lower_central_series(n);
  const InducedSequence gamma_p =
      series.size() > g.prime() - 1 ? series[g.prime() - 1] : trivial_subgroup(g);
  const InducedSequence target = join(agemo_exact(nder), gamma_p);
  rep.inside = target.contains(rep.residual);
  rep.target_order_log = target.order_log();
  return rep;
}

}  // namespace pcg
