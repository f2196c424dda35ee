#include <doctest.h>

#include <numeric>

#include "edsys/models.hpp"
#include "support.hpp"

using namespace edsys;
using namespace edsys::testing;

namespace {

std::vector<int> degrees(const EDSystem& eds) {
  std::vector<int> out;
  for (const auto& g : eds.generators()) out.push_back(g.form.degree());
  return out;
}

/// *F = 1/4 F_ij eps^{ij}_{kl} dx^k ^ dx^l in four dimensions, summed over
/// all ordered index pairs.
Form four_dim_dual(const GaugeForms& gf, std::size_t a, const Metric& eta) {
  const auto& chart = gf.chart;
  Form out(chart, 2);
  for (const auto& [basis, coef] : gf.F[a].terms()) {
    for (int swap = 0; swap < 2; ++swap) {
      const Index i = swap ? basis[1] : basis[0], j = swap ? basis[0] : basis[1];
      const Poly Fij = swap ? -coef : coef;
      for (Index k = 0; k < 4; ++k) {
        for (Index l = 0; l < 4; ++l) {
          const int e = permutation_sign({i, j, k, l});
          if (e == 0) continue;
          const Rational c = Rational(e * eta.signs[i] * eta.signs[j], 4);
          out += wedge(Form::d_coordinate(chart, k), Form::d_coordinate(chart, l)).scaled(Fij * c);
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("chart sizes") {
  const std::vector<std::size_t> maxwell{9, 14, 20, 27}, su2{21, 34, 50, 69};
  for (int n = 3; n <= 8; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const std::size_t m = 2 * un + un * (un - 1) / 2, s = 4 * un + 3 * un * (un - 1) / 2;
    CHECK(chart_size(Family::maxwell, n) == m);
    CHECK(chart_size(Family::su2_yang_mills, n) == s);
    CHECK(build_maxwell(n, Metric::mostly_plus(un)).dim() == m);
    if (n <= 6) {
      CHECK(m == maxwell[un - 3]);
      CHECK(s == su2[un - 3]);
      CHECK(build_su2_yang_mills(n, Metric::mostly_plus(un)).dim() == s);
    }
  }
}

TEST_CASE("Maxwell generators") {
  const EDSystem m4 = build_maxwell(4, Metric::mostly_plus(4));
  CHECK(degrees(m4) == std::vector<int>{2, 3, 3});
  CHECK(m4.independence() == std::vector<Index>{0, 1, 2, 3});
  const EDSystem m3 = build_maxwell(3, Metric::mostly_plus(3));
  CHECK(degrees(m3) == std::vector<int>{2, 3, 2});
  const GaugeForms gf = gauge_forms(ModelSpec::maxwell(3));
  CHECK(gf.dual_F[0].degree() == 1);
  CHECK(m4.chart()->name(4) == "A1");
  CHECK(m4.chart()->name(8) == "F12");
  CHECK(m4.chart()->name(13) == "F34");
  CHECK_THROWS_AS(build_maxwell(2, Metric::mostly_plus(2)), ModelError);
  CHECK_THROWS_AS(build_model(ModelSpec::maxwell(4, Metric::mostly_plus(3))), ModelError);
}

TEST_CASE("SU(2) generators") {
  for (int n = 3; n <= 5; ++n) {
    const EDSystem eds = build_su2_yang_mills(n, Metric::mostly_plus(static_cast<std::size_t>(n)));
    CHECK(degrees(eds) == std::vector<int>{2, 2, 2, 3, 3, 3, n - 1, n - 1, n - 1});
    CHECK(eds.certificates().size() == 9);
  }
  CHECK_THROWS_AS(build_su2_yang_mills(2, Metric::mostly_plus(2)), ModelError);
}

TEST_CASE("structure constants") {
  const StructureConstants g = StructureConstants::su2();
  CHECK(g(0, 1, 2) == 1);
  CHECK(g(0, 2, 1) == -1);
  CHECK(g(1, 2, 0) == 1);
  CHECK(g(0, 0, 1) == 0);
  CHECK(g.totally_antisymmetric());
  StructureConstants bad{};
  bad(0, 1, 2) = 1;
  CHECK_FALSE(bad.totally_antisymmetric());
}

TEST_CASE("the general dual formula matches the four-dimensional one") {
  for (const Metric& eta : {Metric::mostly_plus(4), Metric::mostly_minus(4), Metric::time_first(4)}) {
    const GaugeForms m = gauge_forms(ModelSpec::maxwell(4, eta));
    CHECK(m.dual_F[0] == four_dim_dual(m, 0, eta));
    const GaugeForms s = gauge_forms(ModelSpec::su2(4, eta));
    for (std::size_t a = 0; a < 3; ++a) CHECK(s.dual_F[a] == four_dim_dual(s, a, eta));
  }
}

TEST_CASE("certificates pass on every built-in model") {
  std::vector<EDSystem> systems{build_contact_example()};
  for (int n = 3; n <= 6; ++n) {
    for (const Metric& eta : {Metric::mostly_plus(static_cast<std::size_t>(n)), Metric::time_first(static_cast<std::size_t>(n))}) {
      systems.push_back(build_maxwell(n, eta));
      systems.push_back(build_su2_yang_mills(n, eta));
    }
  }
  for (const auto& eds : systems) {
    for (const auto& v : closure_check_certificate(eds)) {
      CAPTURE(v.generator);
      CHECK(v.verdict == Verdict::pass);
    }
  }
}

TEST_CASE("Maxwell psi is exactly closed") {
  for (int n = 3; n <= 6; ++n) {
    const EDSystem eds = build_maxwell(n, Metric::mostly_plus(static_cast<std::size_t>(n)));
    CHECK(exterior_derivative(eds.find("psi")->form).is_zero());
  }
}

TEST_CASE("Cartan-Poincare identity") {
  for (int n = 3; n <= 6; ++n) {
    const CartanPoincare m = cartan_poincare(ModelSpec::maxwell(n));
    CHECK(m.ok);
    CHECK(m.residual.is_zero());
    CHECK(m.lagrangian.degree() == n);
    const CartanPoincare s = cartan_poincare(ModelSpec::su2(n));
    CHECK(s.ok);
    CHECK(s.residual.is_zero());
  }
}

TEST_CASE("essential identities") {
  for (int n = 3; n <= 6; ++n) {
    for (const auto& spec : {ModelSpec::maxwell(n), ModelSpec::su2(n)}) {
      for (const auto& id : essential_identities(spec)) {
        CAPTURE(id.name);
        CHECK(id.ok);
        CHECK(id.residual_terms == 0);
      }
    }
  }
  CHECK(essential_identities(ModelSpec::maxwell(4)).size() == 2);
  CHECK(essential_identities(ModelSpec::su2(4)).size() == 3);
}

TEST_CASE("mutation: dropping the psi coupling breaks closure") {
  for (int n = 3; n <= 6; ++n) {
    ModelSpec spec = ModelSpec::su2(n);
    spec.mutation.drop_psi_coupling = true;
    int failed = 0;
    for (const auto& v : closure_check_certificate(build_model(spec))) failed += v.verdict == Verdict::fail;
    CHECK(failed == 3);
    CHECK_FALSE(cartan_poincare(spec).ok);
  }
}

TEST_CASE("mutation: flipping the cubic Lagrangian term breaks dLambda = theta^psi") {
  for (int n = 3; n <= 6; ++n) {
    ModelSpec spec = ModelSpec::su2(n);
    spec.mutation.flip_lagrangian_cubic = true;
    const CartanPoincare cp = cartan_poincare(spec);
    CHECK_FALSE(cp.ok);
    CHECK_FALSE(cp.residual.is_zero());
    // The EDS itself does not involve the Lagrangian.
    for (const auto& v : closure_check_certificate(build_model(spec))) CHECK(v.verdict == Verdict::pass);
  }
}

TEST_CASE("mutation: non-antisymmetric structure constants break the essential identity") {
  StructureConstants bad{};
  bad(0, 1, 2) = 1;
  ModelSpec spec = ModelSpec::su2(4);
  spec.mutation.gamma = bad;
  bool identity_failed = false;
  for (const auto& id : essential_identities(spec)) {
    if (id.name == "gamma^c_ab *F_c^F^b = 0") identity_failed = !id.ok;
  }
  CHECK(identity_failed);
}

TEST_CASE("group relabelling keeps every identity") {
  std::array<int, 3> order{0, 1, 2};
  do {
    ModelSpec spec = ModelSpec::su2(4);
    spec.group_order = order;
    CHECK(cartan_poincare(spec).ok);
    for (const auto& v : closure_check_certificate(build_model(spec))) CHECK(v.verdict == Verdict::pass);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("contact example") {
  const EDSystem eds = build_contact_example();
  CHECK(eds.dim() == 5);
  CHECK(degrees(eds) == std::vector<int>{1, 2});
  CHECK(exterior_derivative(eds.generators()[0].form) == eds.generators()[1].form);
  CHECK_THROWS_AS(gauge_forms(ModelSpec{Family::contact, 2, Metric::euclidean(2), {}, {0, 1, 2}}), ModelError);
}

TEST_CASE("registry") {
  REQUIRE(find_model("maxwell"));
  CHECK(find_model("maxwell")->min_n == 3);
  REQUIRE(find_model("su2ym"));
  REQUIRE(find_model("contact"));
  CHECK(find_model("gr") == nullptr);
  CHECK(model_registry().size() == 3);
}

}  // TEST_SUITE
