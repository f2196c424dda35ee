#include "edsys/eds.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace edsys {

BudgetExceeded::BudgetExceeded(std::size_t needed_, std::size_t budget_)
    : EdsError("needs " + std::to_string(needed_) + " basis forms, budget is " +
               std::to_string(budget_) + " (use closure certificates, or raise --budget)"),
      needed(needed_),
      budget(budget_) {}

EDSystem::EDSystem(ChartPtr chart, std::vector<Generator> generators,
                   std::vector<Index> independence, std::vector<ClosureCertificate> certificates)
    : chart_(std::move(chart)),
      generators_(std::move(generators)),
      independence_(std::move(independence)),
      certificates_(std::move(certificates)) {
  if (independence_.size() > chart_->size()) throw EdsError("more independent forms than coordinates");
  std::set<Index> seen;
  for (Index i : independence_) {
    if (i >= chart_->size()) throw EdsError("independence coordinate out of range");
    if (!seen.insert(i).second) throw EdsError("repeated independence coordinate");
  }
  std::set<std::string> names;
  for (auto& g : generators_) {
    if (!names.insert(g.name).second) throw EdsError("duplicate generator name '" + g.name + "'");
    if (g.form.degree() < 1) {
      throw EdsError("generator '" + g.name + "' has degree 0; degree >= 1 required");
    }
    if (g.form.chart() != chart_) {
      if (!(*g.form.chart() == *chart_)) {
        throw EdsError("generator '" + g.name + "' lives on a different chart");
      }
      g.form = g.form.rebind(chart_);
    }
  }
  for (const auto& cert : certificates_) {
    const Generator* target = find(cert.target);
    if (!target) throw EdsError("certificate for unknown generator '" + cert.target + "'");
    for (const auto& [coef, name] : cert.combination) {
      const Generator* g = find(name);
      if (!g) throw EdsError("certificate references unknown generator '" + name + "'");
      if (coef.degree() + g->form.degree() != target->form.degree() + 1) {
        throw EdsError("certificate for '" + cert.target + "' has inconsistent degrees");
      }
    }
  }
}

const Generator* EDSystem::find(const std::string& name) const {
  for (const auto& g : generators_) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

bool same_structure(const EDSystem& a, const EDSystem& b) {
  if (!(*a.chart() == *b.chart())) return false;
  if (a.independence() != b.independence()) return false;
  if (a.generators().size() != b.generators().size()) return false;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    if (!(a.generators()[i].form == b.generators()[i].form)) return false;
  }
  return true;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(r);
}

namespace {

void check_budget(std::size_t n, int k, const BudgetOptions& options) {
  if (k < 0) return;
  const std::size_t needed = binomial(n, static_cast<std::size_t>(k));
  if (needed > options.budget && !options.force) throw BudgetExceeded(needed, options.budget);
}

/// Column index of a k-subset within Lambda^k (combinatorial number system).
std::size_t basis_rank(const Basis& b) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < b.size(); ++i) r += binomial(b[i], i + 1);
  return r;
}

/// Columns run from high to low coordinate indices: pivots then land on
/// fibre directions, which few spanning forms share, and fill-in stays small.
SparseVector to_sparse(const EvaluatedForm& f, std::size_t offset = 0) {
  SparseVector v;
  constexpr std::size_t top = (std::size_t{1} << 48) - 1;
  for (const auto& [basis, c] : f.terms()) v.emplace(offset + (top - basis_rank(basis)), c);
  return v;
}

/// Calls fn on every strictly increasing k-tuple from [0, n).
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  Basis b(k);
  for (std::size_t i = 0; i < k; ++i) b[i] = static_cast<Index>(i);
  for (;;) {
    fn(static_cast<const Basis&>(b));
    std::size_t i = k;
    while (i > 0 && b[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++b[i - 1];
    for (std::size_t j = i; j < k; ++j) b[j] = static_cast<Index>(b[j - 1] + 1);
  }
}

SparseEchelon ideal_echelon(const EDSystem& eds, const Point& p, int k, const BudgetOptions& budget) {
  SparseEchelon echelon;
  for (const auto& f : ideal_at_point(eds, p, k, budget)) echelon.insert(to_sparse(f));
  return echelon;
}

}  // namespace

std::vector<EvaluatedForm> ideal_at_point(const EDSystem& eds, const Point& p, int k,
                                          const BudgetOptions& budget) {
  const std::size_t n = eds.dim();
  if (k < 0 || static_cast<std::size_t>(k) > n) {
    throw EdsError("ideal degree " + std::to_string(k) + " outside 0.." + std::to_string(n));
  }
  check_budget(n, k, budget);
  std::vector<EvaluatedForm> span;
  if (k == 0) return span;
  for (const auto& g : eds.generators()) {
    const int d = g.form.degree();
    if (d > k) continue;
    const EvaluatedForm eg = evaluate(g.form, p);
    if (eg.is_zero()) continue;
    if (d == k) {
      span.push_back(eg);
      continue;
    }
    for_each_subset(n, static_cast<std::size_t>(k - d), [&](const Basis& j) {
      EvaluatedForm xi(k - d);
      xi.add_term(j, 1);
      EvaluatedForm prod = wedge(eg, xi);
      if (!prod.is_zero()) span.push_back(std::move(prod));
    });
  }
  return span;
}

std::size_t ideal_dimension(const EDSystem& eds, const Point& p, int k, const BudgetOptions& budget) {
  return ideal_echelon(eds, p, k, budget).rank();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unverified: return "unverified";
    case Verdict::skipped_budget: return "skipped (budget)";
  }
  return "?";
}

std::vector<GeneratorVerdict> closure_check_certificate(const EDSystem& eds) {
  std::vector<GeneratorVerdict> out;
  for (const auto& g : eds.generators()) {
    const Form dg = exterior_derivative(g.form);
    const ClosureCertificate* cert = nullptr;
    for (const auto& c : eds.certificates()) {
      if (c.target == g.name) cert = &c;
    }
    if (cert) {
      Form residual = dg;
      for (const auto& [coef, name] : cert->combination) {
        residual -= wedge(coef, eds.find(name)->form);
      }
      if (residual.is_zero()) {
        out.push_back({g.name, Verdict::pass, "certificate residual is 0", std::nullopt});
      } else {
        out.push_back({g.name, Verdict::fail,
                       "certificate residual has " + std::to_string(residual.term_count()) + " terms",
                       residual});
      }
      continue;
    }
    if (dg.is_zero()) {
      out.push_back({g.name, Verdict::pass, "d vanishes identically", std::nullopt});
      continue;
    }
    const Generator* same = nullptr;
    for (const auto& h : eds.generators()) {
      if (h.form == dg || h.form == -dg) same = &h;
    }
    if (same) {
      out.push_back({g.name, Verdict::pass, "d is generator " + same->name, std::nullopt});
    } else {
      out.push_back({g.name, Verdict::unverified, "no certificate", std::nullopt});
    }
  }
  return out;
}

std::vector<GeneratorVerdict> closure_check_pointwise(const EDSystem& eds, const Point& p,
                                                      const BudgetOptions& budget) {
  std::vector<GeneratorVerdict> out;
  std::map<int, SparseEchelon> cache;
  for (const auto& g : eds.generators()) {
    const EvaluatedForm dg = evaluate(exterior_derivative(g.form), p);
    if (dg.is_zero()) {
      out.push_back({g.name, Verdict::pass, "d vanishes at the point", std::nullopt});
      continue;
    }
    const int k = g.form.degree() + 1;
    auto it = cache.find(k);
    if (it == cache.end()) {
      try {
        it = cache.emplace(k, ideal_echelon(eds, p, k, budget)).first;
      } catch (const BudgetExceeded& e) {
        out.push_back({g.name, Verdict::skipped_budget, e.what(), std::nullopt});
        continue;
      }
    }
    if (it->second.contains(to_sparse(dg))) {
      out.push_back({g.name, Verdict::pass, "d lies in the ideal at the point", std::nullopt});
    } else {
      out.push_back({g.name, Verdict::fail, "d is not in the ideal at the point", std::nullopt});
    }
  }
  return out;
}

std::size_t cauchy_space_dim(const EDSystem& eds, const Point& p, const BudgetOptions& budget) {
  const std::size_t n = eds.dim();
  for (const auto& g : eds.generators()) check_budget(n, g.form.degree() - 1, budget);

  std::map<int, SparseEchelon> ideals;
  std::vector<SparseVector> images(n);
  std::size_t offset = 0;
  for (const auto& g : eds.generators()) {
    const int d = g.form.degree();
    auto it = ideals.find(d - 1);
    if (it == ideals.end()) it = ideals.emplace(d - 1, ideal_echelon(eds, p, d - 1, budget)).first;
    const EvaluatedForm eg = evaluate(g.form, p);
    for (std::size_t j = 0; j < n; ++j) {
      TangentVector e{std::vector<Rational>(n)};
      e[j] = 1;
      const SparseVector rem = it->second.reduce(to_sparse(interior_product(e, eg)));
      for (const auto& [c, x] : rem) images[j].emplace(offset + c, x);
    }
    offset += std::size_t{1} << 48;
  }
  // v is characteristic iff sum_j v^j images[j] = 0.
  SparseEchelon span;
  for (auto& img : images) span.insert(std::move(img));
  return n - span.rank();
}

Point random_point(const Chart& chart, Rng& rng, std::int64_t range) {
  Point p;
  p.values.reserve(chart.size());
  for (std::size_t i = 0; i < chart.size(); ++i) p.values.emplace_back(rng.uniform(-range, range));
  return p;
}

Point random_prime_point(const Chart& chart, Rng& rng, std::size_t count) {
  std::vector<long> primes;
  for (long c = 2; primes.size() < count; ++c) {
    if (is_prime(static_cast<std::uint64_t>(c))) primes.push_back(c);
  }
  Point p;
  p.values.reserve(chart.size());
  for (std::size_t i = 0; i < chart.size(); ++i) {
    const long v = primes[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(count) - 1))];
    p.values.emplace_back(rng.uniform(0, 1) ? v : -v);
  }
  return p;
}

}  // namespace edsys
