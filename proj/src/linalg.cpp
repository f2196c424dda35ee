#include "edsys/linalg.hpp"

#include <algorithm>

namespace edsys {

void RationalMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw LinalgError("row length does not match matrix width");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Rational> RationalMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<long>(r * cols_),
          data_.begin() + static_cast<long>((r + 1) * cols_)};
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

namespace {

std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer lcm = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m(r, c);
      rows[r][c] = q.get_num() * (lcm / q.get_den());
    }
  }
  return rows;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t nrows = a.size();
  const std::size_t ncols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && a[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(a[piv], a[r]);
    const Integer& p = a[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const Integer f = a[i][c];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        a[i][j] = a[i][j] * p - f * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = p;
    ++r;
  }
  return r;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 reduce_mod(const Integer& z, u64 p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_ui();
}

}  // namespace

std::size_t rank_mod_p(const RationalMatrix& m, std::uint64_t p) {
  if (p < 2) throw LinalgError("modulus must be a prime");
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  std::vector<u64> a(nrows * ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      const Rational& q = m(r, c);
      const u64 den = reduce_mod(q.get_den(), p);
      if (den == 0) throw LinalgError("denominator divisible by p = " + std::to_string(p));
      a[r * ncols + c] = mulmod(reduce_mod(q.get_num(), p), powmod(den, p - 2, p), p);
    }
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && a[piv * ncols + c] == 0) ++piv;
    if (piv == nrows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < ncols; ++j) std::swap(a[piv * ncols + j], a[r * ncols + j]);
    }
    const u64 inv = powmod(a[r * ncols + c], p - 2, p);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const u64 f = mulmod(a[i * ncols + c], inv, p);
      if (f == 0) continue;
      for (std::size_t j = c; j < ncols; ++j) {
        const u64 sub = mulmod(f, a[r * ncols + j], p);
        u64& x = a[i * ncols + j];
        x = x >= sub ? x - sub : x + p - sub;
      }
    }
    ++r;
  }
  return r;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw LinalgError("empty sampling range");
  const u64 span = static_cast<u64>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % span;
  u64 x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (u64 w : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  for (;;) {
    const auto c = static_cast<u64>(rng.uniform(static_cast<std::int64_t>(lo),
                                                static_cast<std::int64_t>(hi - 1)));
    if (is_prime(c)) return c;
  }
}

std::optional<TangentVector> solve_sample(const RationalMatrix& m,
                                          const std::vector<PinConstraint>& pins, Rng& rng,
                                          const SampleOptions& options) {
  const std::size_t n = m.cols();
  for (std::size_t i = 0; i < pins.size(); ++i) {
    if (pins[i].index >= n) throw LinalgError("pin references a missing column");
    for (std::size_t j = 0; j < i; ++j) {
      if (pins[j].index == pins[i].index) throw LinalgError("duplicate pin column");
    }
  }

  // Augmented system [M | 0 ; e_pin | value], brought to reduced row echelon form.
  const std::size_t width = n + 1;
  std::vector<std::vector<Rational>> a;
  a.reserve(m.rows() + pins.size());
  for (const auto& pin : pins) {
    std::vector<Rational> row(width);
    row[pin.index] = 1;
    row[n] = pin.value;
    a.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Rational> row(width);
    for (std::size_t c = 0; c < n; ++c) row[c] = m(r, c);
    a.push_back(std::move(row));
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < width; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < width; ++j) {
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < a.size(); ++i) {
    if (a[i][n] != 0) return std::nullopt;
  }

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    TangentVector v{std::vector<Rational>(n)};
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_pivot[c]) v[c] = rng.uniform(-options.range, options.range);
    }
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      Rational x = a[i][n];
      for (std::size_t c = pivot_cols[i] + 1; c < n; ++c) {
        if (!is_pivot[c] && a[i][c] != 0) x -= a[i][c] * v[c];
      }
      v[pivot_cols[i]] = x;
    }
    const bool nonzero =
        std::any_of(v.components.begin(), v.components.end(), [](const Rational& q) { return q != 0; });
    if (nonzero && (!options.generic || options.generic(v))) return v;
  }
  throw DegenerateSample("no generic sample after " + std::to_string(options.max_retries + 1) +
                         " draws");
}

ModularCheck crosscheck_rank(const RationalMatrix& m, std::size_t exact_rank, Rng& rng,
                             int max_attempts) {
  ModularCheck out;
  out.exact_rank = exact_rank;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    out.attempts = attempt + 1;
    out.primes.clear();
    out.modular_ranks.clear();
    out.agreeing = 0;
    while (out.primes.size() < 3) {
      const u64 p = random_prime(rng, 1ULL << 20, 1ULL << 31);
      if (std::find(out.primes.begin(), out.primes.end(), p) != out.primes.end()) continue;
      std::size_t rp = 0;
      try {
        rp = rank_mod_p(m, p);
      } catch (const LinalgError&) {
        continue;  // p divides a denominator; draw another
      }
      out.primes.push_back(p);
      out.modular_ranks.push_back(rp);
      if (rp == exact_rank) ++out.agreeing;
    }
    if (out.agreeing >= 2) return out;
  }
  throw LinalgError("modular rank check failed: exact rank " + std::to_string(exact_rank) +
                    " confirmed by fewer than 2 of 3 primes after " +
                    std::to_string(max_attempts) + " attempts");
}

SparseVector SparseEchelon::reduce(SparseVector v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const Rational f = it->second;
    const std::size_t col = it->first;
    for (const auto& [c, x] : row->second) {
      auto [slot, inserted] = v.try_emplace(c, 0);
      slot->second -= f * x;
      if (slot->second == 0 && c != col) v.erase(slot);
    }
    // The pivot entry is now zero; resume after it.
    it = v.erase(v.find(col));
  }
  return v;
}

bool SparseEchelon::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::size_t pivot = v.begin()->first;
  const Rational inv = 1 / v.begin()->second;
  for (auto& [c, x] : v) x *= inv;
  rows_.emplace(pivot, std::move(v));
  return true;
}

}  // namespace edsys
