#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edsys/exterior.hpp"
#include "edsys/linalg.hpp"

namespace edsys {

struct Generator {
  std::string name;
  Form form;
};

/// d(target) = sum_i coefficient_i ^ generator_i.
struct ClosureCertificate {
  std::string target;
  std::vector<std::pair<Form, std::string>> combination;
};

class EdsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a pointwise computation would need more Lambda^k basis
/// elements than the configured budget.
class BudgetExceeded : public EdsError {
 public:
  BudgetExceeded(std::size_t needed, std::size_t budget);
  std::size_t needed;
  std::size_t budget;
};

/// Generators with an independence condition dx^{i_1}, ..., dx^{i_n}.
class EDSystem {
 public:
  EDSystem(ChartPtr chart, std::vector<Generator> generators, std::vector<Index> independence,
           std::vector<ClosureCertificate> certificates = {});

  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return chart_->size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Index>& independence() const { return independence_; }
  const std::vector<ClosureCertificate>& certificates() const { return certificates_; }
  const Generator* find(const std::string& name) const;

 private:
  ChartPtr chart_;
  std::vector<Generator> generators_;
  std::vector<Index> independence_;
  std::vector<ClosureCertificate> certificates_;
};

/// Same chart, generator forms in order, and independence; names and
/// certificates are not compared.
bool same_structure(const EDSystem& a, const EDSystem& b);

/// C(n, k), saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

inline constexpr std::size_t kDefaultBudget = 500000;

struct BudgetOptions {
  std::size_t budget = kDefaultBudget;
  bool force = false;
};

/// Spanning set of the degree-k part of the algebraic ideal at p:
/// { evaluate(g, p) ^ dx^J : deg g <= k, |J| = k - deg g }. Degree-0 part is {0}.
std::vector<EvaluatedForm> ideal_at_point(const EDSystem& eds, const Point& p, int k,
                                          const BudgetOptions& budget = {});

/// Exact dimension of the span of ideal_at_point.
std::size_t ideal_dimension(const EDSystem& eds, const Point& p, int k,
                            const BudgetOptions& budget = {});

enum class Verdict { pass, fail, unverified, skipped_budget };

const char* to_string(Verdict v);

struct GeneratorVerdict {
  std::string generator;
  Verdict verdict;
  std::string detail;
  /// Non-empty residual form on certificate failure.
  std::optional<Form> residual;
};

/// Exact symbolic check d(target) == sum coefficient ^ generator. A
/// generator without a certificate passes when its d is zero or is itself a
/// generator, and is reported unverified otherwise.
std::vector<GeneratorVerdict> closure_check_certificate(const EDSystem& eds);

/// Generic-point membership of evaluate(dg, p) in the degree (deg g + 1)
/// ideal, by comparing spans. Budget refusals are reported per generator.
std::vector<GeneratorVerdict> closure_check_pointwise(const EDSystem& eds, const Point& p,
                                                      const BudgetOptions& budget = {});

/// Dimension of { v : i_v g(p) in I^{deg g - 1}(p) for every generator g }.
/// Throws BudgetExceeded.
std::size_t cauchy_space_dim(const EDSystem& eds, const Point& p,
                             const BudgetOptions& budget = {});

/// Uniform random integer point with coordinates in [-range, range].
Point random_point(const Chart& chart, Rng& rng, std::int64_t range);
/// Point whose coordinates are random signed primes among the first `count` primes.
Point random_prime_point(const Chart& chart, Rng& rng, std::size_t count = 300);

}  // namespace edsys
