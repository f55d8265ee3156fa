#pragma once

// Dense matrices and Gaussian elimination over GF(p), p prime.
//
// Matrices here stay small: dimensions are bounded by the number of pc
// generators in play plus a handful of tails, well under a few hundred.
// Everything is value-semantic and deterministic.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pcg {

// A residue is always kept reduced into [0, p).  p <= 2^16, so products of
// two residues fit in an unsigned without overflow.
using Residue = unsigned;

inline Residue fp_add(unsigned p, Residue a, Residue b) { return (a + b) % p; }
inline Residue fp_sub(unsigned p, Residue a, Residue b) { return (a + p - b) % p; }
inline Residue fp_mul(unsigned p, Residue a, Residue b) { return (a * b) % p; }
inline Residue fp_neg(unsigned p, Residue a) { return a == 0 ? 0 : p - a; }

inline Residue fp_inv(unsigned p, Residue a) {
  if (a % p == 0) throw std::domain_error("fp_inv: zero is not invertible");
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    const long long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  return static_cast<Residue>(t < 0 ? t + p : t);
}

inline Residue fp_pow(unsigned p, Residue a, unsigned long long e) {
  Residue acc = 1 % p;
  a %= p;
  for (; e != 0; e >>= 1) {
    if (e & 1) acc = fp_mul(p, acc, a);
    a = fp_mul(p, a, a);
  }
  return acc;
}

class FpMatrix {
 public:
  FpMatrix(unsigned p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (p < 2 || p > 65536) throw std::invalid_argument("FpMatrix: modulus out of range");
  }

  static FpMatrix from_rows(unsigned p, const std::vector<std::vector<Residue>>& rows) {
    FpMatrix m(p, rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw std::invalid_argument("from_rows: ragged rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
  }

  unsigned p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Residue at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v) { a_[r * cols_ + c] = v % p_; }

  void append_row(const std::vector<Residue>& row) {
    if (row.size() != cols_) throw std::invalid_argument("append_row: wrong width");
    for (Residue v : row) a_.push_back(v % p_);
    ++rows_;
  }

  std::vector<Residue> row(std::size_t r) const {
    return {a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  FpMatrix transposed() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
  }

  std::vector<Residue> apply(const std::vector<Residue>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: wrong length");
    std::vector<Residue> y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      unsigned long long acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<unsigned long long>(at(r, c)) * (x[c] % p_);
      y[r] = static_cast<Residue>(acc % p_);
    }
    return y;
  }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

  void swap_rows(std::size_t r1, std::size_t r2) {
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap(a_[r1 * cols_ + c], a_[r2 * cols_ + c]);
  }
  void scale_row(std::size_t r, Residue k) {
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, fp_mul(p_, at(r, c), k));
  }
  // row r1 -= k * row r2
  void subtract_multiple(std::size_t r1, Residue k, std::size_t r2) {
    for (std::size_t c = 0; c < cols_; ++c)
      set(r1, c, fp_sub(p_, at(r1, c), fp_mul(p_, k, at(r2, c))));
  }

 private:
  unsigned p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> a_;
};

struct EchelonForm {
  FpMatrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // strictly increasing; pivot i sits at rref(i, pivot_cols[i])
};

// Reduced row echelon form.  The pivot in each column is the first nonzero
// entry scanning top to bottom, so the result is the same on every run.
inline EchelonForm echelonize(FpMatrix m) {
  const unsigned p = m.p();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t src = lead;
    while (src < m.rows() && m.at(src, col) == 0) ++src;
    if (src == m.rows()) continue;
    m.swap_rows(lead, src);
    m.scale_row(lead, fp_inv(p, m.at(lead, col)));
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != lead && m.at(r, col) != 0) m.subtract_multiple(r, m.at(r, col), lead);
    pivots.push_back(col);
    ++lead;
  }
  const std::size_t rank = pivots.size();
  return {std::move(m), rank, std::move(pivots)};
}

struct LinearSolution {
  std::vector<Residue> particular;              // free coordinates set to zero
  std::vector<std::vector<Residue>> nullspace;  // one basis vector per free column
};

// Solve a x = b.  Empty optional means the system is inconsistent.
inline std::optional<LinearSolution> solve(const FpMatrix& a, const std::vector<Residue>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: length of b must match row count");
  FpMatrix aug(a.p(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.set(r, c, a.at(r, c));
    aug.set(r, a.cols(), b[r]);
  }
  const EchelonForm ech = echelonize(std::move(aug));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == a.cols()) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(a.cols(), 0);
  for (std::size_t i = 0; i < ech.rank; ++i)
    sol.particular[ech.pivot_cols[i]] = ech.rref.at(i, a.cols());

  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Residue> v(a.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < ech.rank; ++i)
      v[ech.pivot_cols[i]] = fp_neg(a.p(), ech.rref.at(i, f));
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

}  // namespace pcg
