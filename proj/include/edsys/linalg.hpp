#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "edsys/exterior.hpp"

namespace edsys {

/// Dense rectangular matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<Rational>& row);
  std::vector<Rational> row(std::size_t r) const;
  RationalMatrix transpose() const;

  bool operator==(const RationalMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rank. Rows are scaled to integers and reduced by fraction-free
/// (Bareiss) elimination, so every intermediate is an exact minor.
std::size_t rank(const RationalMatrix& m);

/// Rank of the matrix reduced modulo the prime p (p < 2^62).
/// Throws LinalgError if some denominator is divisible by p.
std::size_t rank_mod_p(const RationalMatrix& m, std::uint64_t p);

/// Deterministic random source. Bounded draws use rejection sampling on the
/// raw 64-bit engine output so streams are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// A random prime in [lo, hi) drawn from rng.
std::uint64_t random_prime(Rng& rng, std::uint64_t lo, std::uint64_t hi);
bool is_prime(std::uint64_t n);

struct PinConstraint {
  std::size_t index;
  Rational value;
};

struct Infeasible {};

struct SampleOptions {
  /// Free components are drawn uniformly from [-range, range].
  std::int64_t range = 10;
  /// Resamples allowed when the vector is zero or rejected by `generic`.
  int max_retries = 16;
  std::function<bool(const TangentVector&)> generic;
};

class DegenerateSample : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

/// Samples v with M v = 0 and v[pin.index] = pin.value, as a particular
/// solution plus a random integer combination of a nullspace basis of the
/// pinned system. Returns nullopt when the pinned system is inconsistent;
/// throws DegenerateSample after exhausting retries.
std::optional<TangentVector> solve_sample(const RationalMatrix& m,
                                          const std::vector<PinConstraint>& pins, Rng& rng,
                                          const SampleOptions& options = {});

/// Multi-prime agreement check of an exact rank.
struct ModularCheck {
  std::size_t exact_rank = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> modular_ranks;
  int agreeing = 0;
  int attempts = 0;
};

/// Compares rank(m) with rank_mod_p for three random primes in
/// [2^20, 2^31). Draws a fresh triple when fewer than two agree, up to
/// `max_attempts` times, then throws LinalgError.
ModularCheck crosscheck_rank(const RationalMatrix& m, std::size_t exact_rank, Rng& rng,
                             int max_attempts = 4);

/// Sparse vector keyed by column.
using SparseVector = std::map<std::size_t, Rational>;

/// Incrementally built row-echelon basis of a subspace of Q^dim, for large
/// sparse problems (ideal membership). Each stored row has a distinct pivot
/// column with value 1.
class SparseEchelon {
 public:
  /// Adds v to the span; returns true when the rank grew.
  bool insert(SparseVector v);
  /// Remainder of v after eliminating every pivot column. Two vectors are
  /// congruent modulo the span iff their remainders are equal.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<std::size_t, SparseVector> rows_;
};

}  // namespace edsys
