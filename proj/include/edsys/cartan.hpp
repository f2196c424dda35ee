#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edsys/eds.hpp"
#include "edsys/linalg.hpp"

namespace edsys {

/// Ordered integral-element vectors V_1..V_k at a point.
struct Flag {
  Point point;
  std::vector<TangentVector> vectors;
};

struct CharacterTable {
  std::size_t N = 0;
  std::size_t n = 0;
  /// s_0 .. s_{n-1}
  std::vector<long> s;
  /// s_n, the gauge freedom.
  long gauge = 0;
  bool cartan_ok = false;
  std::size_t trials = 1;
  std::vector<std::uint64_t> seeds;
  bool agreement = true;
  /// Polar ranks c_0 .. c_{n-1}.
  std::vector<std::size_t> polar_ranks;
  /// Number of polar ranks confirmed by the multi-prime check.
  std::size_t modular_checks = 0;

  /// Compares the character data only (not trial metadata).
  bool same_characters(const CharacterTable& other) const {
    return N == other.N && n == other.n && s == other.s && gauge == other.gauge &&
           cartan_ok == other.cartan_ok;
  }
};

enum class PointSampling { integers, primes };

struct CharacterOptions {
  std::int64_t range = 10;
  PointSampling sampling = PointSampling::integers;
  bool modular_check = false;
  /// Vector samples per step before restarting with a fresh point.
  int vector_retries = 16;
  /// Fresh points tried before giving up.
  int restarts = 8;
};

class CartanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The independence condition failed: no integral vector extends the flag
/// transversally at step `step` on any sampled point.
class GenusError : public CartanError {
 public:
  GenusError(std::size_t step, std::size_t n);
  std::size_t step;
};

/// Rows i_{V_{i_{d-1}}} ... i_{V_{i_1}} g for every generator of degree
/// d <= k+1 and every (d-1)-subset of the k flag vectors. Columns are the
/// chart coordinates.
RationalMatrix polar_matrix(const std::vector<EvaluatedForm>& generators,
                            const std::vector<TangentVector>& flag);

/// True when every generator of degree d vanishes on every d-subset of the
/// flag vectors.
bool is_integral(const std::vector<EvaluatedForm>& generators, const std::vector<TangentVector>& flag);

/// Everything one Monte Carlo trial produced, for inspection and tests.
struct TrialRecord {
  CharacterTable table;
  Flag flag;
  std::vector<RationalMatrix> polar_matrices;
  std::vector<ModularCheck> modular;
  int restarts_used = 0;
};

TrialRecord run_trial(const EDSystem& eds, std::uint64_t seed, const CharacterOptions& options = {});

CharacterTable compute_characters(const EDSystem& eds, std::uint64_t seed,
                                  const CharacterOptions& options = {});

/// Independent trials; majority table, agreement = all identical.
CharacterTable compute_characters_multi(const EDSystem& eds, const std::vector<std::uint64_t>& seeds,
                                        const CharacterOptions& options = {});

/// Error from one trial of compute_characters_multi, tagged with its seed.
class TrialError : public CartanError {
 public:
  TrialError(std::uint64_t seed, const std::string& what);
  std::uint64_t seed;
};

/// "N[s_0,...,s_{n-1}]n+s_n"
std::string format_table(const CharacterTable& t);

/// The bookkeeping identity N = s_0 + ... + s_n + n, with all s_k >= 0.
bool cartan_bookkeeping(const CharacterTable& t);

}  // namespace edsys
