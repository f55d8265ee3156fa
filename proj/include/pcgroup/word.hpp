#pragma once

// Words over an ordered generator list a1 < a2 < ... < an.
//
// A NormalWord is the exponent vector of a1^e1 * ... * an^en with every
// exponent reduced into [0, p); the presentation giving those words meaning
// lives in PcGroup.  A FreeWord is an unreduced input word: a product of
// generator powers and bracketed commutators, as read from a presentation.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pcg {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

using NormalWord = std::vector<unsigned>;

struct Letter {
  std::size_t gen;
  unsigned exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// ascending generator indices, exponents in [1, p)
using LetterWord = std::vector<Letter>;

inline bool is_identity(const NormalWord& w) {
  for (unsigned e : w)
    if (e != 0) return false;
  return true;
}

inline std::size_t leading_index(const NormalWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) return i;
  return npos;
}

inline std::size_t trailing_index(const NormalWord& w) {
  for (std::size_t i = w.size(); i-- > 0;)
    if (w[i] != 0) return i;
  return npos;
}

inline LetterWord to_letters(const NormalWord& w) {
  LetterWord out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) out.push_back({i, w[i]});
  return out;
}

inline NormalWord to_dense(const LetterWord& w, std::size_t n) {
  NormalWord out(n, 0);
  for (const Letter& l : w) out[l.gen] = l.exp;
  return out;
}

inline std::string default_generator_name(std::size_t i) { return "a" + std::to_string(i + 1); }

inline std::string to_string(const NormalWord& w, const std::vector<std::string>& names = {}) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += i < names.size() ? names[i] : default_generator_name(i);
    if (w[i] != 1) out += '^' + std::to_string(w[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Free words

struct FreeWord;

struct FreeFactor {
  // generator >= 0: that generator raised to exponent.
  // generator == -1: left-normed commutator [args[0], args[1], ...] raised
  // to exponent; at least two arguments.
  int generator = -1;
  long long exponent = 1;
  std::vector<FreeWord> args;

  friend bool operator==(const FreeFactor&, const FreeFactor&) = default;
};

struct FreeWord {
  std::vector<FreeFactor> factors;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

inline FreeWord inverse(const FreeWord& w) {
  FreeWord r;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    FreeFactor f = *it;
    f.exponent = -f.exponent;
    r.factors.push_back(std::move(f));
  }
  return r;
}

// A finitely presented group as read from an input file: relators are words
// that must die in the quotient.
struct FpPresentation {
  std::string name;
  unsigned prime = 0;
  std::vector<std::string> generators;
  std::vector<FreeWord> relators;
  std::optional<unsigned> max_class;

  friend bool operator==(const FpPresentation&, const FpPresentation&) = default;
};

}  // namespace pcg
