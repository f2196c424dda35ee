#include "edsys/cartan.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <optional>
#include <sstream>

namespace edsys {

GenusError::GenusError(std::size_t step_, std::size_t n)
    : CartanError("genus < " + std::to_string(n) + " at step " + std::to_string(step_) +
                  ": no integral vector satisfies the independence condition"),
      step(step_) {}

TrialError::TrialError(std::uint64_t seed_, const std::string& what)
    : CartanError("seed " + std::to_string(seed_) + ": " + what), seed(seed_) {}

namespace {

/// Calls fn on every increasing `size`-subset of [0, count).
template <typename Fn>
void for_each_index_subset(std::size_t count, std::size_t size, Fn&& fn) {
  if (size > count) return;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == count - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

EvaluatedForm contract(const EvaluatedForm& g, const std::vector<TangentVector>& flag,
                       const std::vector<std::size_t>& subset) {
  EvaluatedForm out = g;
  for (std::size_t i : subset) {
    if (out.is_zero()) return EvaluatedForm(out.degree() - 1);
    out = interior_product(flag[i], out);
  }
  return out;
}

}  // namespace

RationalMatrix polar_matrix(const std::vector<EvaluatedForm>& generators,
                            const std::vector<TangentVector>& flag) {
  std::size_t width = 0;
  if (!flag.empty()) width = flag.front().size();
  for (const auto& g : generators) {
    for (const auto& [basis, c] : g.terms()) {
      if (!basis.empty()) width = std::max<std::size_t>(width, basis.back() + 1);
    }
  }
  RationalMatrix m(0, width);
  const std::size_t k = flag.size();
  for (const auto& g : generators) {
    const int d = g.degree();
    if (d < 1 || static_cast<std::size_t>(d) > k + 1) continue;
    for_each_index_subset(k, static_cast<std::size_t>(d - 1), [&](const std::vector<std::size_t>& s) {
      const EvaluatedForm row_form = contract(g, flag, s);
      std::vector<Rational> row(width);
      for (const auto& [basis, c] : row_form.terms()) row.at(basis[0]) = c;
      m.append_row(row);
    });
  }
  return m;
}

bool is_integral(const std::vector<EvaluatedForm>& generators, const std::vector<TangentVector>& flag) {
  for (const auto& g : generators) {
    const int d = g.degree();
    if (d < 1 || static_cast<std::size_t>(d) > flag.size()) continue;
    bool ok = true;
    for_each_index_subset(flag.size(), static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& s) {
      if (!ok) return;
      std::vector<const TangentVector*> vs;
      for (std::size_t i : s) vs.push_back(&flag[i]);
      if (g.apply(vs) != 0) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool cartan_bookkeeping(const CharacterTable& t) {
  long total = static_cast<long>(t.n) + t.gauge;
  for (long s : t.s) {
    if (s < 0) return false;
    total += s;
  }
  return t.gauge >= 0 && total == static_cast<long>(t.N);
}

TrialRecord run_trial(const EDSystem& eds, std::uint64_t seed, const CharacterOptions& options) {
  const std::size_t N = eds.dim();
  const std::size_t n = eds.independence().size();
  Rng rng(seed);
  // Prime draws use their own stream so enabling the check never changes a flag.
  Rng prime_rng(seed ^ 0x9e3779b97f4a7c15ULL);

  std::size_t failed_step = 0;
  bool infeasible = false;
  std::string last_failure;
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    TrialRecord rec;
    rec.restarts_used = attempt;
    rec.flag.point = options.sampling == PointSampling::primes ? random_prime_point(*eds.chart(), rng)
                                                               : random_point(*eds.chart(), rng, options.range);
    std::vector<EvaluatedForm> gens;
    gens.reserve(eds.generators().size());
    for (const auto& g : eds.generators()) gens.push_back(evaluate(g.form, rec.flag.point));

    bool restart = false;
    for (std::size_t k = 0; k < n; ++k) {
      RationalMatrix m = polar_matrix(gens, rec.flag.vectors);
      if (m.cols() < N) {
        RationalMatrix padded(0, N);
        for (std::size_t r = 0; r < m.rows(); ++r) {
          auto row = m.row(r);
          row.resize(N);
          padded.append_row(row);
        }
        m = std::move(padded);
      }
      const std::size_t c = rank(m);
      rec.table.polar_ranks.push_back(c);
      if (options.modular_check) {
        rec.modular.push_back(crosscheck_rank(m, c, prime_rng));
        ++rec.table.modular_checks;
      }

      std::vector<PinConstraint> pins;
      for (std::size_t j = 0; j < n; ++j) pins.push_back({eds.independence()[j], Rational(j == k ? 1 : 0)});
      SampleOptions sample;
      sample.range = options.range;
      sample.max_retries = options.vector_retries;
      std::optional<TangentVector> v;
      try {
        v = solve_sample(m, pins, rng, sample);
      } catch (const DegenerateSample& e) {
        last_failure = e.what();
        restart = true;
        break;
      }
      rec.polar_matrices.push_back(std::move(m));
      if (!v) {
        failed_step = k;
        infeasible = true;
        restart = true;
        break;
      }
      rec.flag.vectors.push_back(std::move(*v));
      if (!is_integral(gens, rec.flag.vectors)) {
        throw CartanError("flag lost integrality at step " + std::to_string(k + 1));
      }
    }
    if (restart) continue;

    CharacterTable& t = rec.table;
    t.N = N;
    t.n = n;
    std::size_t prev = 0;
    for (std::size_t c : t.polar_ranks) {
      t.s.push_back(static_cast<long>(c) - static_cast<long>(prev));
      prev = c;
    }
    t.gauge = static_cast<long>(N) - static_cast<long>(n) - static_cast<long>(prev);
    t.cartan_ok = rec.flag.vectors.size() == n && cartan_bookkeeping(t);
    t.trials = 1;
    t.seeds = {seed};
    t.agreement = true;
    return rec;
  }
  if (infeasible) throw GenusError(failed_step, n);
  throw CartanError("persistent degeneracy after " + std::to_string(options.restarts + 1) +
                    " points: " + last_failure);
}

CharacterTable compute_characters(const EDSystem& eds, std::uint64_t seed,
                                  const CharacterOptions& options) {
  return run_trial(eds, seed, options).table;
}

CharacterTable compute_characters_multi(const EDSystem& eds, const std::vector<std::uint64_t>& seeds,
                                        const CharacterOptions& options) {
  if (seeds.empty()) throw CartanError("at least one seed is required");
  // Trials share nothing but the immutable system; results are collected in
  // seed order, so the outcome does not depend on scheduling.
  std::vector<std::future<CharacterTable>> pending;
  pending.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    pending.push_back(std::async(std::launch::async, [&eds, seed, &options] {
      return compute_characters(eds, seed, options);
    }));
  }
  std::vector<CharacterTable> tables;
  tables.reserve(seeds.size());
  std::optional<TrialError> first_error;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    try {
      tables.push_back(pending[i].get());
    } catch (const std::exception& e) {
      if (!first_error) first_error.emplace(seeds[i], e.what());
    }
  }
  if (first_error) throw *first_error;
  std::size_t best = 0;
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto count = static_cast<std::size_t>(std::count_if(
        tables.begin(), tables.end(), [&](const CharacterTable& t) { return t.same_characters(tables[i]); }));
    if (count > best_count) {
      best = i;
      best_count = count;
    }
  }
  CharacterTable out = tables[best];
  out.trials = tables.size();
  out.seeds = seeds;
  out.agreement = best_count == tables.size();
  out.modular_checks = 0;
  for (const auto& t : tables) out.modular_checks += t.modular_checks;
  return out;
}

std::string format_table(const CharacterTable& t) {
  std::ostringstream os;
  os << t.N << "[";
  for (std::size_t i = 0; i < t.s.size(); ++i) os << (i ? "," : "") << t.s[i];
  os << "]" << t.n << "+" << t.gauge;
  return os.str();
}

}  // namespace edsys
