#pragma once

// Power-commutator presentations and collection from the left.
//
// A presentation on n generators over the prime p fixes
//   a_i^p      = power tail, supported strictly above i
//   [a_j, a_i] = commutator tail (j > i), supported strictly above j
// with the convention [x, y] = x^-1 y^-1 x y, so x y = y x [x, y].
//
// Products of normal words are renormalized by collection from the left:
// the collected prefix grows on the left while pending letters wait on a
// stack, and each step either absorbs the next letter into the prefix or
// swaps it below the highest occupied slot, paying with a commutator tail.
// Exponent overflow at slot i pays with the power tail of a_i.  A consistent
// presentation has exactly p^n distinct normal words.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcgroup/gfp.hpp"
#include "pcgroup/word.hpp"

namespace pcg {

struct CollectionLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kCollectStepLimit = 100'000'000;

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// How a generator entered the presentation; filled in by the quotient
// machinery and carried along for serialization.
struct Definition {
  enum class Kind { none, image, power, commutator };
  Kind kind = Kind::none;
  std::size_t i = 0;  // image: source fp generator; power: a_i^p; commutator: [a_j, a_i]
  std::size_t j = 0;  // commutator only, j > i
  friend bool operator==(const Definition&, const Definition&) = default;
};

struct ConsistencyViolation {
  std::string relation;
  NormalWord lhs;
  NormalWord rhs;
  NormalWord residual;  // lhs - rhs coordinatewise; nonzero somewhere
};

class PcGroup {
 public:
  PcGroup(unsigned p, std::size_t n) : p_(p), n_(n), power_(n), comm_(n) {
    if (!is_prime(p) || p > 65536) throw std::invalid_argument("PcGroup: p must be a prime below 2^16");
    for (std::size_t j = 0; j < n; ++j) comm_[j].assign(j, {});
  }

  unsigned prime() const { return p_; }
  std::size_t ngens() const { return n_; }

  // --- tails ---

  void set_power_tail(std::size_t i, const NormalWord& w) {
    require_index(i);
    check_word(w);
    if (leading_index(w) <= i) throw std::invalid_argument("power tail must be supported strictly above its generator");
    power_[i] = to_letters(w);
  }

  void set_comm_tail(std::size_t j, std::size_t i, const NormalWord& w) {
    require_pair(j, i);
    check_word(w);
    if (leading_index(w) <= j) throw std::invalid_argument("commutator tail must be supported strictly above the higher generator");
    comm_[j][i] = to_letters(w);
  }

  NormalWord power_tail(std::size_t i) const {
    require_index(i);
    return to_dense(power_[i], n_);
  }

  NormalWord comm_tail(std::size_t j, std::size_t i) const {
    require_pair(j, i);
    return to_dense(comm_[j][i], n_);
  }

  bool power_tail_trivial(std::size_t i) const {
    require_index(i);
    return power_[i].empty();
  }

  bool comm_tail_trivial(std::size_t j, std::size_t i) const {
    require_pair(j, i);
    return comm_[j][i].empty();
  }

  const LetterWord& power_letters(std::size_t i) const {
    require_index(i);
    return power_[i];
  }

  const LetterWord& comm_letters(std::size_t j, std::size_t i) const {
    require_pair(j, i);
    return comm_[j][i];
  }

  // --- metadata ---

  const std::vector<unsigned>& weights() const { return weights_; }
  void set_weights(std::vector<unsigned> w) {
    if (!w.empty() && w.size() != n_) throw std::invalid_argument("weights: wrong length");
    weights_ = std::move(w);
  }

  const std::vector<Definition>& definitions() const { return definitions_; }
  void set_definitions(std::vector<Definition> d) {
    if (!d.empty() && d.size() != n_) throw std::invalid_argument("definitions: wrong length");
    definitions_ = std::move(d);
  }

  const std::vector<std::string>& generator_names() const { return names_; }
  void set_generator_names(std::vector<std::string> names) {
    if (!names.empty() && names.size() != n_) throw std::invalid_argument("names: wrong length");
    names_ = std::move(names);
  }
  std::string generator_name(std::size_t i) const {
    require_index(i);
    return i < names_.size() ? names_[i] : default_generator_name(i);
  }

  // --- elements ---

  NormalWord identity() const { return NormalWord(n_, 0); }

  NormalWord generator(std::size_t i) const {
    require_index(i);
    NormalWord w(n_, 0);
    w[i] = 1;
    return w;
  }

  NormalWord generator_power(std::size_t i, unsigned e) const {
    require_index(i);
    NormalWord w(n_, 0);
    w[i] = e % p_;
    return w;
  }

  NormalWord multiply(const NormalWord& u, const NormalWord& v) const {
    check_word(u);
    check_word(v);
    NormalWord col = u;
    std::vector<Letter> stack;
    push_reversed(stack, to_letters(v));
    collect(col, stack);
    return col;
  }

  NormalWord invert(const NormalWord& u) const {
    check_word(u);
    NormalWord t = u;
    NormalWord v = identity();
    for (std::size_t guard = 0; guard <= n_; ++guard) {
      const std::size_t i = leading_index(t);
      if (i == npos) return v;
      // a_i^(p-e) kills the leading slot and only disturbs higher ones
      const NormalWord c = generator_power(i, p_ - t[i]);
      t = multiply(c, t);
      v = multiply(c, v);
    }
    throw std::logic_error("invert: leading index failed to increase");
  }

  NormalWord power(const NormalWord& u, long long e) const {
    NormalWord base = e < 0 ? invert(u) : u;
    unsigned long long m = e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
    NormalWord acc = identity();
    while (m != 0) {
      if (m & 1) acc = multiply(acc, base);
      m >>= 1;
      if (m != 0) base = multiply(base, base);
    }
    return acc;
  }

  NormalWord commutator(const NormalWord& x, const NormalWord& y) const {
    return multiply(invert(multiply(y, x)), multiply(x, y));
  }

  NormalWord conjugate(const NormalWord& x, const NormalWord& y) const {
    return multiply(invert(y), multiply(x, y));
  }

  // Evaluate a free word under a map sending fp generator k to images[k].
  NormalWord evaluate(const FreeWord& w, const std::vector<NormalWord>& images) const {
    NormalWord acc = identity();
    for (const FreeFactor& f : w.factors) {
      NormalWord base;
      if (f.generator >= 0) {
        if (static_cast<std::size_t>(f.generator) >= images.size())
          throw std::invalid_argument("evaluate: generator has no image");
        base = images[static_cast<std::size_t>(f.generator)];
      } else {
        if (f.args.size() < 2) throw std::invalid_argument("evaluate: commutator needs two arguments");
        base = evaluate(f.args[0], images);
        for (std::size_t k = 1; k < f.args.size(); ++k)
          base = commutator(base, evaluate(f.args[k], images));
      }
      acc = multiply(acc, f.exponent == 1 ? base : power(base, f.exponent));
    }
    return acc;
  }

  // --- consistency ---

  // Every product of defining relations that must agree in a consistent
  // presentation, reported with the two collected sides and their
  // coordinatewise difference.  Indices below max_index only.
  std::vector<ConsistencyViolation> consistency_violations(std::size_t limit = npos,
                                                           std::size_t max_index = npos) const {
    std::vector<ConsistencyViolation> out;
    const std::size_t m = max_index == npos ? n_ : std::min(max_index, n_);
    auto record = [&](std::string rel, NormalWord lhs, NormalWord rhs) {
      if (lhs == rhs) return false;
      NormalWord d(n_, 0);
      for (std::size_t k = 0; k < n_; ++k) d[k] = fp_sub(p_, lhs[k], rhs[k]);
      out.push_back({std::move(rel), std::move(lhs), std::move(rhs), std::move(d)});
      return out.size() >= limit;
    };
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          NormalWord lhs = multiply(multiply(generator(k), generator(j)), generator(i));
          NormalWord rhs = multiply(generator(k), multiply(generator(j), generator(i)));
          if (record("(" + generator_name(k) + "*" + generator_name(j) + ")*" + generator_name(i) +
                         " vs " + generator_name(k) + "*(" + generator_name(j) + "*" + generator_name(i) + ")",
                     std::move(lhs), std::move(rhs)))
            return out;
        }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        NormalWord lhs = multiply(power_tail(j), generator(i));
        NormalWord rhs = multiply(generator_power(j, p_ - 1), multiply(generator(j), generator(i)));
        if (record(generator_name(j) + "^p*" + generator_name(i) + " vs " + generator_name(j) + "^(p-1)*(" +
                       generator_name(j) + "*" + generator_name(i) + ")",
                   std::move(lhs), std::move(rhs)))
          return out;
        lhs = multiply(generator(j), power_tail(i));
        rhs = multiply(multiply(generator(j), generator(i)), generator_power(i, p_ - 1));
        if (record(generator_name(j) + "*" + generator_name(i) + "^p vs (" + generator_name(j) + "*" +
                       generator_name(i) + ")*" + generator_name(i) + "^(p-1)",
                   std::move(lhs), std::move(rhs)))
          return out;
      }
    for (std::size_t i = 0; i < m; ++i) {
      NormalWord lhs = multiply(power_tail(i), generator(i));
      NormalWord rhs = multiply(generator(i), power_tail(i));
      if (record(generator_name(i) + "^p*" + generator_name(i) + " vs " + generator_name(i) + "*" +
                     generator_name(i) + "^p",
                 std::move(lhs), std::move(rhs)))
        return out;
    }
    return out;
  }

  bool is_consistent() const { return consistency_violations(1).empty(); }

  // --- order ---

  std::optional<std::uint64_t> order_u64() const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (o > UINT64_MAX / p_) return std::nullopt;
      o *= p_;
    }
    return o;
  }

  std::string order_label() const { return std::to_string(p_) + "^" + std::to_string(n_); }

  friend bool operator==(const PcGroup& a, const PcGroup& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.power_ == b.power_ && a.comm_ == b.comm_ &&
           a.weights_ == b.weights_ && a.definitions_ == b.definitions_;
  }

 private:
  void require_index(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("generator index out of range");
  }
  void require_pair(std::size_t j, std::size_t i) const {
    if (j >= n_ || i >= j) throw std::out_of_range("commutator tail needs n > j > i");
  }
  void check_word(const NormalWord& w) const {
    if (w.size() != n_) throw std::invalid_argument("word has wrong length");
    for (unsigned e : w)
      if (e >= p_) throw std::invalid_argument("word exponent out of range");
  }

  static void push_reversed(std::vector<Letter>& stack, const LetterWord& w) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back(*it);
  }

  void collect(NormalWord& col, std::vector<Letter>& stack) const {
    std::uint64_t steps = 0;
    while (!stack.empty()) {
      if (++steps > kCollectStepLimit)
        throw CollectionLimitError("collection exceeded " + std::to_string(kCollectStepLimit) + " steps");
      const Letter top = stack.back();
      stack.pop_back();
      const std::size_t g = top.gen;
      const unsigned e = top.exp;

      std::size_t h = npos;
      for (std::size_t k = col.size(); k-- > g + 1;)
        if (col[k] != 0) {
          h = k;
          break;
        }

      if (h == npos) {
        col[g] += e;
        while (col[g] >= p_) {
          col[g] -= p_;
          push_reversed(stack, power_[g]);
        }
        continue;
      }

      // If every occupied slot in (g, h] commutes with a_g the letter slides
      // straight into its slot; valid only when no power tail is owed.
      bool clear = true;
      for (std::size_t k = g + 1; k <= h; ++k)
        if (col[k] != 0 && !comm_[k][g].empty()) {
          clear = false;
          break;
        }
      if (clear && col[g] + e < p_) {
        col[g] += e;
        continue;
      }

      // a_h a_g = a_g a_h [a_h, a_g]: peel one a_h, requeue in order
      col[h] -= 1;
      if (e > 1) stack.push_back({g, e - 1});
      push_reversed(stack, comm_[h][g]);
      stack.push_back({h, 1});
      stack.push_back({g, 1});
    }
  }

  unsigned p_;
  std::size_t n_;
  std::vector<LetterWord> power_;
  std::vector<std::vector<LetterWord>> comm_;  // comm_[j][i], i < j
  std::vector<unsigned> weights_;
  std::vector<Definition> definitions_;
  std::vector<std::string> names_;
};

}  // namespace pcg
