// Nilpotent quotients of finitely presented groups at a prime p.
//
// The driver builds the quotient tower G_1, G_2, ... where G_c is the
// largest quotient of the input with exponent-p class <= c.  One step
// from G_c to G_{c+1}:
//
//   1. cover: append one central elementary generator to the tail of
//      every power/commutator relation that is not the definition of an
//      existing generator (p_cover).
//   2. constrain: collect the consistency relations of the cover
//      restricted to inherited generators, and evaluate the input
//      relators under the lifted images.  Both land in the span of the
//      new generators; each one is a linear condition on that layer.
//   3. eliminate: solve the conditions, substitute pivots away, keep
//      the free tail generators as the new top layer.
//
// Stage invariants, relied on throughout: every generator of weight
// >= 2 carries a definition; new generators always receive weight
// class+1; dropping the top weight layer of G_{c+1} reproduces G_c
// exactly (see truncate_to_class).

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcgroup/gfp.hpp"
#include "pcgroup/limits.hpp"
#include "pcgroup/pcp.hpp"
#include "pcgroup/word.hpp"

namespace pcg {

struct CoverResult {
  PcGroup cover;
  std::size_t base = 0;            // generators inherited from the input group
  std::vector<Definition> slots;   // originating relation of each appended generator
};

// Central extension of g by one elementary abelian generator per
// non-definition relation.  Inconsistent as a presentation until the
// consistency conditions are enforced; collection still terminates.
inline CoverResult p_cover(const PcGroup& g) {
  const unsigned p = g.prime();
  const std::size_t n = g.ngens();
  if (n == 0) return {PcGroup(p, 0), 0, {}};
  const auto& weights = g.weights();
  const auto& defs = g.definitions();
  if (weights.size() != n || defs.size() != n)
    throw std::logic_error("p_cover: input lacks weights or definitions");
  unsigned cls = 0;
  for (unsigned w : weights) cls = std::max(cls, w);
  for (std::size_t k = 0; k < n; ++k)
    if (weights[k] >= 2 && defs[k].kind == Definition::Kind::none)
      throw std::logic_error("p_cover: generator of weight >= 2 lacks a definition");

  std::vector<char> power_def(n, 0);
  std::vector<std::vector<char>> comm_def(n);
  for (std::size_t j = 0; j < n; ++j) comm_def[j].assign(j, 0);
  for (const Definition& d : defs) {
    if (d.kind == Definition::Kind::power) power_def[d.i] = 1;
    if (d.kind == Definition::Kind::commutator) comm_def[d.j][d.i] = 1;
  }

  std::vector<Definition> slots;
  for (std::size_t i = 0; i < n; ++i)
    if (!power_def[i]) slots.push_back({Definition::Kind::power, i, 0});
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!comm_def[j][i]) slots.push_back({Definition::Kind::commutator, i, j});

  const std::size_t t = slots.size();
  const std::size_t cap = 8 * max_generators();
  if (n + t > cap)
    throw ResourceLimitError("p_cover: " + std::to_string(n + t) + " generators exceeds the cover budget of " +
                             std::to_string(cap) + " (raise PCGROUP_MAX_GENS)");

  PcGroup cover(p, n + t);
  const auto pad = [&](NormalWord w) {
    w.resize(n + t, 0);
    return w;
  };
  for (std::size_t i = 0; i < n; ++i) cover.set_power_tail(i, pad(g.power_tail(i)));
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) cover.set_comm_tail(j, i, pad(g.comm_tail(j, i)));
  for (std::size_t k = 0; k < t; ++k) {
    const Definition& s = slots[k];
    NormalWord tail = s.kind == Definition::Kind::power ? pad(g.power_tail(s.i)) : pad(g.comm_tail(s.j, s.i));
    tail[n + k] = 1;
    if (s.kind == Definition::Kind::power)
      cover.set_power_tail(s.i, tail);
    else
      cover.set_comm_tail(s.j, s.i, tail);
  }
  // Appended generators are central of order p: their tails stay empty.
  std::vector<unsigned> cw = weights;
  cw.resize(n + t, cls + 1);
  std::vector<Definition> cd = defs;
  cd.resize(n + t);
  cover.set_weights(std::move(cw));
  cover.set_definitions(std::move(cd));
  std::vector<std::string> names;
  names.reserve(n + t);
  for (std::size_t i = 0; i < n + t; ++i) names.push_back(i < n ? g.generator_name(i) : default_generator_name(i));
  cover.set_generator_names(std::move(names));
  return {std::move(cover), n, std::move(slots)};
}

struct QuotientStep {
  PcGroup group;
  std::vector<NormalWord> images;  // fp generator -> element of group
  std::size_t added = 0;           // surviving new generators
};

namespace detail {

// Reduce the tail-layer component of a cover word modulo the pivot rows
// of ech (columns index the appended generators), then rebuild the word
// over the surviving generators.  keep[f] maps a free tail column to its
// index in the result group; npos marks eliminated columns.
inline NormalWord substitute_tails(const NormalWord& w, std::size_t base, const EchelonForm& ech,
                                   const std::vector<std::size_t>& keep, std::size_t out_n, unsigned p) {
  NormalWord out(out_n, 0);
  for (std::size_t i = 0; i < base; ++i) out[i] = w[i];
  std::vector<unsigned> v(w.begin() + static_cast<std::ptrdiff_t>(base), w.end());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
    const std::size_t c = ech.pivot_cols[r];
    const unsigned e = v[c];
    if (e == 0) continue;
    v[c] = 0;
    // pivot column c carries t_c = prod_f t_f^(-R[r][f]) over free columns f
    for (std::size_t f = 0; f < v.size(); ++f)
      if (keep[f] != npos) v[f] = fp_sub(p, v[f], fp_mul(p, e, ech.rref.at(r, f)));
  }
  for (std::size_t f = 0; f < v.size(); ++f) {
    if (v[f] == 0) continue;
    if (keep[f] == npos) throw std::logic_error("substitute_tails: residue on an eliminated column");
    out[keep[f]] = v[f];
  }
  return out;
}

}  // namespace detail

// One step of the tower: cover g, enforce consistency and the relators
// under the lifted images, eliminate, and return the extended group.
// added == 0 means g was already the largest quotient of its class.
inline QuotientStep extend_class(const PcGroup& g, const std::vector<NormalWord>& images,
                                 const std::vector<FreeWord>& relators) {
  const unsigned p = g.prime();
  CoverResult cr = p_cover(g);
  const std::size_t base = cr.base;
  const std::size_t t = cr.slots.size();
  if (t == 0) return {g, images, 0};
  const PcGroup& cover = cr.cover;

  FpMatrix rows(p, 0, t);
  const auto push_constraint = [&](const NormalWord& word, const char* what) {
    std::vector<unsigned> row(t, 0);
    for (std::size_t k = 0; k < base; ++k)
      if (word[k] != 0) throw std::logic_error(std::string(what) + ": constraint escapes the central layer");
    for (std::size_t k = 0; k < t; ++k) row[k] = word[base + k];
    rows.append_row(row);
  };
  for (const ConsistencyViolation& v : cover.consistency_violations(npos, base))
    push_constraint(v.residual, "consistency");

  std::vector<NormalWord> lifted;
  lifted.reserve(images.size());
  for (const NormalWord& im : images) {
    NormalWord w = im;
    w.resize(base + t, 0);
    lifted.push_back(std::move(w));
  }
  for (const FreeWord& r : relators) push_constraint(cover.evaluate(r, lifted), "relator");

  const EchelonForm ech = echelonize(rows);
  std::vector<std::size_t> keep(t, npos);
  std::vector<std::size_t> survivors;
  {
    std::vector<char> pivot(t, 0);
    for (std::size_t c : ech.pivot_cols) pivot[c] = 1;
    for (std::size_t f = 0; f < t; ++f)
      if (!pivot[f]) {
        keep[f] = base + survivors.size();
        survivors.push_back(f);
      }
  }
  const std::size_t s = survivors.size();
  if (s == 0) return {g, images, 0};
  const std::size_t out_n = base + s;
  if (out_n > max_generators())
    throw ResourceLimitError("quotient needs " + std::to_string(out_n) + " generators; limit is " +
                             std::to_string(max_generators()) + " (raise PCGROUP_MAX_GENS)");

  PcGroup out(p, out_n);
  const auto reduce = [&](const NormalWord& w) { return detail::substitute_tails(w, base, ech, keep, out_n, p); };
  for (std::size_t i = 0; i < base; ++i) out.set_power_tail(i, reduce(cover.power_tail(i)));
  for (std::size_t j = 1; j < base; ++j)
    for (std::size_t i = 0; i < j; ++i) out.set_comm_tail(j, i, reduce(cover.comm_tail(j, i)));

  unsigned cls = 0;
  for (unsigned w : g.weights()) cls = std::max(cls, w);
  std::vector<unsigned> weights = g.weights();
  weights.resize(out_n, cls + 1);
  std::vector<Definition> defs = g.definitions();
  defs.resize(out_n);
  for (std::size_t k = 0; k < s; ++k) defs[base + k] = cr.slots[survivors[k]];
  out.set_weights(std::move(weights));
  out.set_definitions(std::move(defs));
  std::vector<std::string> names;
  names.reserve(out_n);
  for (std::size_t i = 0; i < out_n; ++i) names.push_back(i < base ? g.generator_name(i) : default_generator_name(i));
  out.set_generator_names(std::move(names));

  std::vector<NormalWord> out_images;
  out_images.reserve(images.size());
  for (const NormalWord& im : images) {
    NormalWord w = im;
    w.resize(out_n, 0);
    out_images.push_back(std::move(w));
  }
  return {std::move(out), std::move(out_images), s};
}

// Largest elementary abelian quotient: one generator per fp generator,
// relators contribute their exponent sums as linear conditions.
inline QuotientStep class_one_quotient(const FpPresentation& in) {
  const unsigned p = in.prime;
  const std::size_t d = in.generators.size();
  PcGroup free_layer(p, d);
  std::vector<NormalWord> gens;
  gens.reserve(d);
  for (std::size_t i = 0; i < d; ++i) gens.push_back(free_layer.generator(i));
  FpMatrix rows(p, 0, d);
  for (const FreeWord& r : in.relators) rows.append_row(free_layer.evaluate(r, gens));
  const EchelonForm ech = echelonize(rows);

  std::vector<std::size_t> keep(d, npos);
  std::vector<std::size_t> survivors;
  std::vector<char> pivot(d, 0);
  for (std::size_t c : ech.pivot_cols) pivot[c] = 1;
  for (std::size_t f = 0; f < d; ++f)
    if (!pivot[f]) {
      keep[f] = survivors.size();
      survivors.push_back(f);
    }
  const std::size_t s = survivors.size();

  PcGroup out(p, s);
  if (s > 0) {
    out.set_weights(std::vector<unsigned>(s, 1));
    std::vector<Definition> defs(s);
    std::vector<std::string> names(s);
    for (std::size_t k = 0; k < s; ++k) {
      defs[k] = {Definition::Kind::image, survivors[k], 0};
      names[k] = survivors[k] < in.generators.size() ? in.generators[survivors[k]]
                                                     : default_generator_name(survivors[k]);
    }
    out.set_definitions(std::move(defs));
    out.set_generator_names(std::move(names));
  }

  std::vector<NormalWord> images(d, out.identity());
  for (std::size_t f = 0; f < d; ++f)
    if (keep[f] != npos) images[f] = out.generator(keep[f]);
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
    const std::size_t c = ech.pivot_cols[r];
    NormalWord w = out.identity();
    for (std::size_t f = 0; f < d; ++f)
      if (keep[f] != npos) w[keep[f]] = fp_neg(p, ech.rref.at(r, f));
    images[c] = std::move(w);
  }
  return {std::move(out), std::move(images), s};
}

struct QuotientResult {
  PcGroup group;
  std::vector<NormalWord> images;  // fp generator -> element of group
  unsigned achieved_class = 0;
  bool stabilized = false;  // a further class step would add nothing
};

// Quotient tower driver.  Stops at max_class or as soon as a step adds
// no generators, whichever comes first.
inline QuotientResult p_quotient(const FpPresentation& in, unsigned max_class) {
  if (!is_prime(in.prime)) throw std::invalid_argument("p_quotient: prime required");
  if (max_class == 0) throw std::invalid_argument("p_quotient: max_class must be positive");
  if (in.generators.size() > max_generators())
    throw ResourceLimitError("p_quotient: " + std::to_string(in.generators.size()) +
                             " generators; limit is " + std::to_string(max_generators()));
  unsigned cap = max_class;
  if (in.max_class) cap = std::min(cap, *in.max_class);
  if (cap == 0) throw std::invalid_argument("p_quotient: presentation caps the class at 0");

  QuotientStep step = class_one_quotient(in);
  QuotientResult res{std::move(step.group), std::move(step.images), step.added > 0 ? 1u : 0u, false};
  if (res.achieved_class == 0) {
    res.stabilized = true;
    return res;
  }
  while (res.achieved_class < cap) {
    QuotientStep next = extend_class(res.group, res.images, in.relators);
    if (next.added == 0) {
      res.stabilized = true;
      return res;
    }
    res.group = std::move(next.group);
    res.images = std::move(next.images);
    res.achieved_class += 1;
  }
  return res;
}

// Drop every generator of weight > cls; tails project coordinatewise.
// Inverse of the growth step: truncating G_{c+1} to class c gives G_c.
inline PcGroup truncate_to_class(const PcGroup& g, unsigned cls) {
  const std::size_t n = g.ngens();
  const auto& weights = g.weights();
  if (weights.size() != n) throw std::logic_error("truncate_to_class: input lacks weights");
  std::size_t m = 0;
  while (m < n && weights[m] <= cls) ++m;
  for (std::size_t k = m; k < n; ++k)
    if (weights[k] <= cls) throw std::logic_error("truncate_to_class: weights not sorted");
  PcGroup out(g.prime(), m);
  const auto cut = [&](NormalWord w) {
    w.resize(m);
    return w;
  };
  for (std::size_t i = 0; i < m; ++i) out.set_power_tail(i, cut(g.power_tail(i)));
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) out.set_comm_tail(j, i, cut(g.comm_tail(j, i)));
  if (m > 0) {
    out.set_weights(std::vector<unsigned>(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(m)));
    const auto& defs = g.definitions();
    if (defs.size() == n)
      out.set_definitions(std::vector<Definition>(defs.begin(), defs.begin() + static_cast<std::ptrdiff_t>(m)));
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t i = 0; i < m; ++i) names.push_back(g.generator_name(i));
    out.set_generator_names(std::move(names));
  }
  return out;
}

}  // namespace pcg
