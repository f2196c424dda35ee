// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "edsys/cartan.hpp"
#include "edsys/cli.hpp"
#include "edsys/models.hpp"
#include "support.hpp"

using namespace edsys;
using Clock = std::chrono::steady_clock;

namespace {

struct Row {
  Family family;
  int n;
  const char* expected;
  double limit_seconds;
};

const std::vector<Row> kRows{
    {Family::maxwell, 3, "9[0,2,3]3+1", 10},
    {Family::maxwell, 4, "14[0,1,3,5]4+1", 10},
    {Family::maxwell, 5, "20[0,1,2,4,7]5+1", 10},
    {Family::maxwell, 6, "27[0,1,2,3,5,9]6+1", 10},
    {Family::su2_yang_mills, 3, "21[0,6,9]3+3", 300},
    {Family::su2_yang_mills, 4, "34[0,3,9,15]4+3", 300},
    {Family::su2_yang_mills, 5, "50[0,3,6,12,21]5+3", 300},
    {Family::su2_yang_mills, 6, "69[0,3,6,9,15,27]6+3", 300},
};

const std::vector<std::uint64_t> kSeeds{1, 2, 3};

ModelSpec spec_for(const Row& r, std::optional<Metric> metric = std::nullopt) {
  return r.family == Family::maxwell ? ModelSpec::maxwell(r.n, metric) : ModelSpec::su2(r.n, metric);
}

std::string label(const Row& r) {
  return std::string(r.family == Family::maxwell ? "maxwell" : "su2ym") + " n=" + std::to_string(r.n);
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (!ok) detail += "; ";
    if (ok) detail.clear();
    ok = false;
    detail += why;
  }
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  failures += !o.ok;
  std::cout << (o.ok ? "PASS " : "FAIL ") << std::left << std::setw(4) << id << title << "  [" << std::fixed
            << std::setprecision(2) << secs << " s]";
  if (!o.detail.empty()) std::cout << "  -- " << o.detail;
  std::cout << std::endl;
}

// Shared between criteria 1, 2 and 6b: tables computed once with the
// modular cross-check enabled (the cross-check throws on disagreement).
struct RowResult {
  CharacterTable table;
  double seconds = 0;
  std::string error;
};
std::vector<RowResult> row_results;

void compute_rows() {
  CharacterOptions opts;
  opts.modular_check = true;
  for (const auto& r : kRows) {
    RowResult rr;
    const auto start = Clock::now();
    try {
      rr.table = compute_characters_multi(build_model(spec_for(r)), kSeeds, opts);
    } catch (const std::exception& e) {
      rr.error = e.what();
    }
    rr.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    row_results.push_back(rr);
  }
}

}  // namespace

int main() {
  compute_rows();

  report("1", "character tables match for all 8 rows within the time limits", [] {
    Outcome o;
    std::ostringstream times;
    for (std::size_t i = 0; i < kRows.size(); ++i) {
      const auto& r = kRows[i];
      const auto& rr = row_results[i];
      if (!rr.error.empty()) {
        o.fail(label(r) + ": " + rr.error);
        continue;
      }
      const std::string got = format_table(rr.table);
      if (got != r.expected) o.fail(label(r) + ": expected " + r.expected + ", got " + got);
      if (rr.seconds > r.limit_seconds) {
        o.fail(label(r) + " took " + std::to_string(rr.seconds) + " s > " + std::to_string(r.limit_seconds));
      }
      times << (i ? ", " : "") << label(r) << " " << std::fixed << std::setprecision(2) << rr.seconds << "s";
    }
    if (o.ok) o.detail = times.str();
    return o;
  });

  report("2", "three seeds agree for every row", [] {
    Outcome o;
    for (std::size_t i = 0; i < kRows.size(); ++i) {
      const auto& t = row_results[i].table;
      if (!row_results[i].error.empty() || !t.agreement || t.trials != 3) o.fail(label(kRows[i]) + " disagrees");
    }
    return o;
  });

  report("3a", "dLambda - theta^a ^ psi_a = 0 exactly (Maxwell, SU(2), n=3..6)", [] {
    Outcome o;
    for (const auto& r : kRows) {
      const CartanPoincare cp = cartan_poincare(spec_for(r));
      if (!cp.residual.is_zero()) o.fail(label(r) + ": " + std::to_string(cp.residual.term_count()) + " terms");
    }
    return o;
  });

  report("3b", "d psi_a certificate residual = 0 exactly (SU(2), n=3..6)", [] {
    Outcome o;
    for (int n = 3; n <= 6; ++n) {
      const EDSystem eds = build_su2_yang_mills(n, Metric::mostly_plus(static_cast<std::size_t>(n)));
      for (const auto& v : closure_check_certificate(eds)) {
        if (v.verdict != Verdict::pass) o.fail("n=" + std::to_string(n) + " " + v.generator + ": " + v.detail);
      }
    }
    return o;
  });

  report("3c", "dF ^ d*F = 0 and gamma^c_ab *F_c ^ F^b = 0 exactly (n=3..6)", [] {
    Outcome o;
    for (const auto& r : kRows) {
      for (const auto& id : essential_identities(spec_for(r))) {
        if (id.name == "d(theta^psi) = 0") continue;
        if (!id.ok) o.fail(label(r) + " " + id.name + ": " + std::to_string(id.residual_terms) + " terms");
      }
    }
    return o;
  });

  report("4", "no Cauchy characteristics for Maxwell n=3,4 at 3 random points", [] {
    Outcome o;
    for (int n : {3, 4}) {
      const EDSystem eds = build_maxwell(n, Metric::mostly_plus(static_cast<std::size_t>(n)));
      for (std::uint64_t seed : kSeeds) {
        Rng rng(seed);
        const std::size_t dim = cauchy_space_dim(eds, random_point(*eds.chart(), rng, 10));
        if (dim != 0) o.fail("n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": dim " + std::to_string(dim));
      }
    }
    return o;
  });

  report("5", "contact system gives 5[1,1]2+1", [] {
    Outcome o;
    const CharacterTable t = compute_characters_multi(build_contact_example(), kSeeds);
    if (format_table(t) != "5[1,1]2+1" || !t.agreement) o.fail("got " + format_table(t));
    return o;
  });

  report("6a", "d^2 = 0, antisymmetry, associativity, Leibniz on 200 random forms", [] {
    using namespace edsys::testing;
    Outcome o;
    auto chart = coordinate_chart(6);
    Rng rng(20240601);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
      const int p = static_cast<int>(rng.uniform(0, 3));
      const int q = static_cast<int>(rng.uniform(0, 6 - p));
      const int r = static_cast<int>(rng.uniform(0, 6 - p - q));
      const Form a = random_form(rng, chart, p), b = random_form(rng, chart, q), c = random_form(rng, chart, r);
      const bool ok = exterior_derivative(exterior_derivative(a)).is_zero() &&
                      wedge(a, b) == wedge(b, a) * sign_power(p * q) &&
                      wedge(wedge(a, b), c) == wedge(a, wedge(b, c)) &&
                      exterior_derivative(wedge(a, b)) ==
                          wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)) * sign_power(p);
      bad += !ok;
    }
    if (bad) o.fail(std::to_string(bad) + " of 200 samples violate an identity");
    return o;
  });

  report("6b", "every polar rank agrees modulo 2 of 3 random primes", [] {
    Outcome o;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < kRows.size(); ++i) {
      if (!row_results[i].error.empty()) o.fail(label(kRows[i]) + ": " + row_results[i].error);
      checked += row_results[i].table.modular_checks;
    }
    std::size_t expected = 0;
    for (const auto& r : kRows) expected += kSeeds.size() * static_cast<std::size_t>(r.n);
    if (checked != expected) o.fail(std::to_string(checked) + " of " + std::to_string(expected) + " ranks checked");
    if (o.ok) o.detail = std::to_string(checked) + " polar matrices";
    return o;
  });

  report("6c", "tables are invariant under the metric signature", [] {
    Outcome o;
    for (std::size_t i = 0; i < kRows.size(); ++i) {
      const auto& r = kRows[i];
      const auto n = static_cast<std::size_t>(r.n);
      for (const Metric& eta : {Metric::mostly_minus(n), Metric::time_first(n)}) {
        const CharacterTable t = compute_characters_multi(build_model(spec_for(r, eta)), kSeeds);
        if (format_table(t) != r.expected || !t.agreement) o.fail(label(r) + ": " + format_table(t));
      }
    }
    return o;
  });

  report("6d", "identical seeds give byte-identical output", [] {
    Outcome o;
    for (const auto& r : kRows) {
      const std::vector<std::string> args{"chars", "--model", r.family == Family::maxwell ? "maxwell" : "su2ym",
                                          "--n", std::to_string(r.n), "--seed", "5", "--format", "json"};
      std::ostringstream a, b, err;
      cli::run(args, a, err);
      cli::run(args, b, err);
      if (a.str() != b.str() || a.str().empty()) o.fail(label(r) + " differs between runs");
    }
    return o;
  });

  report("7a", "dropping the 1/4 gamma A ^ *F term from psi is detected", [] {
    Outcome o;
    for (int n = 3; n <= 6; ++n) {
      ModelSpec spec = ModelSpec::su2(n);
      spec.mutation.drop_psi_coupling = true;
      int failed = 0;
      for (const auto& v : closure_check_certificate(build_model(spec))) failed += v.verdict == Verdict::fail;
      if (failed == 0) o.fail("n=" + std::to_string(n) + ": closure certificates still pass");
      if (cartan_poincare(spec).ok) o.fail("n=" + std::to_string(n) + ": dLambda identity still holds");
    }
    return o;
  });

  report("7b", "flipping the sign of the 1/8 term in Lambda is detected", [] {
    Outcome o;
    for (int n = 3; n <= 6; ++n) {
      ModelSpec spec = ModelSpec::su2(n);
      spec.mutation.flip_lagrangian_cubic = true;
      if (cartan_poincare(spec).ok) o.fail("n=" + std::to_string(n) + ": dLambda identity still holds");
    }
    return o;
  });

  std::cout << (failures ? std::to_string(failures) + " criteria FAILED" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
