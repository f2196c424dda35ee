#include "edsys/models.hpp"

namespace edsys {

StructureConstants StructureConstants::su2() {
  StructureConstants s;
  // gamma^a_{bc} = epsilon_{abc}
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        s(a, b, c) = permutation_sign({static_cast<Index>(a), static_cast<Index>(b), static_cast<Index>(c)});
      }
    }
  }
  return s;
}

bool StructureConstants::totally_antisymmetric() const {
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        const Rational& g = gamma[a][b][c];
        if (g != -gamma[a][c][b] || g != gamma[b][c][a] || g != gamma[c][a][b]) return false;
      }
    }
  }
  return true;
}

ModelSpec ModelSpec::maxwell(int n, std::optional<Metric> metric) {
  ModelSpec s;
  s.family = Family::maxwell;
  s.n = n;
  s.metric = metric ? *metric : Metric::mostly_plus(static_cast<std::size_t>(std::max(n, 0)));
  return s;
}

ModelSpec ModelSpec::su2(int n, std::optional<Metric> metric) {
  ModelSpec s = maxwell(n, std::move(metric));
  s.family = Family::su2_yang_mills;
  return s;
}

std::size_t chart_size(Family family, int n) {
  const auto un = static_cast<std::size_t>(n);
  switch (family) {
    case Family::maxwell: return 2 * un + un * (un - 1) / 2;
    case Family::su2_yang_mills: return 4 * un + 3 * un * (un - 1) / 2;
    case Family::contact: return 5;
  }
  return 0;
}

namespace {

/// Coordinate layout shared by the abelian and SU(2) models.
struct GaugeChart {
  ChartPtr chart;
  int n;
  int groups;
  Index x(int i) const { return static_cast<Index>(i); }
  Index a(int g, int i) const { return static_cast<Index>(n + g * n + i); }
  Index f(int g, int i, int j) const {
    // offset of pair (i,j), i<j, in lexicographic order
    const int pair = i * n - i * (i + 1) / 2 + (j - i - 1);
    return static_cast<Index>(n + groups * n + g * (n * (n - 1) / 2) + pair);
  }
};

GaugeChart make_gauge_chart(int n, int groups) {
  if (n < 3) throw ModelError("gauge models need n >= 3, got " + std::to_string(n));
  if (n > 9) throw ModelError("gauge models support n <= 9, got " + std::to_string(n));
  std::vector<std::string> names;
  std::vector<Index> base;
  for (int i = 1; i <= n; ++i) {
    names.push_back("x" + std::to_string(i));
    base.push_back(static_cast<Index>(i - 1));
  }
  const bool labelled = groups > 1;
  for (int g = 1; g <= groups; ++g) {
    for (int i = 1; i <= n; ++i) {
      names.push_back(labelled ? "A" + std::to_string(g) + "_" + std::to_string(i) : "A" + std::to_string(i));
    }
  }
  for (int g = 1; g <= groups; ++g) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const std::string ij = std::to_string(i) + std::to_string(j);
        names.push_back(labelled ? "F" + std::to_string(g) + "_" + ij : "F" + ij);
      }
    }
  }
  return GaugeChart{make_chart(std::move(names), std::move(base)), n, groups};
}

struct GaugeBuild {
  GaugeForms forms;
  std::vector<Generator> generators;
  std::vector<ClosureCertificate> certificates;
};

GaugeBuild build_gauge(const ModelSpec& spec) {
  const bool su2 = spec.family == Family::su2_yang_mills;
  if (spec.family == Family::contact) throw ModelError("contact example is not a gauge model");
  const int n = spec.n;
  const int groups = su2 ? 3 : 1;
  const GaugeChart gc = make_gauge_chart(n, groups);
  if (static_cast<int>(spec.metric.dim()) != n) {
    throw ModelError("metric has dimension " + std::to_string(spec.metric.dim()) + ", model has n = " +
                     std::to_string(n));
  }
  const ChartPtr& chart = gc.chart;

  StructureConstants base_gamma = spec.mutation.gamma ? *spec.mutation.gamma : StructureConstants::su2();
  StructureConstants gamma;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        gamma(a, b, c) = base_gamma(spec.group_order[a], spec.group_order[b], spec.group_order[c]);
      }
    }
  }

  GaugeForms gf{chart, {}, {}, {}, {}, {}, Form(chart, n)};
  for (int g = 0; g < groups; ++g) {
    Form A(chart, 1);
    Form F(chart, 2);
    TwoFormComponents comps;
    for (int i = 0; i < n; ++i) {
      A += Form::monomial(chart, {gc.x(i)}, Poly::coordinate(gc.a(g, i)));
      for (int j = i + 1; j < n; ++j) {
        F += Form::monomial(chart, {gc.x(i), gc.x(j)}, Poly::coordinate(gc.f(g, i, j)));
        comps[{i, j}] = Poly::coordinate(gc.f(g, i, j));
      }
    }
    gf.A.push_back(std::move(A));
    gf.F.push_back(std::move(F));
    gf.dual_F.push_back(hodge_dual_2form(chart, comps, spec.metric));
  }

  const Rational eighth(1, 8);
  const Rational quarter(1, 4);
  for (int a = 0; a < groups; ++a) {
    Form theta = exterior_derivative(gf.A[a]) - gf.F[a];
    Form psi = -exterior_derivative(gf.dual_F[a]);
    if (su2) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          if (gamma(a, b, c) != 0) theta += wedge(gf.A[b], gf.A[c]) * (eighth * gamma(a, b, c));
          if (gamma(c, a, b) != 0 && !spec.mutation.drop_psi_coupling) {
            psi -= wedge(gf.A[b], gf.dual_F[c]) * (quarter * gamma(c, a, b));
          }
        }
      }
    }
    gf.theta.push_back(std::move(theta));
    gf.psi.push_back(std::move(psi));
  }

  Form lagrangian(chart, n);
  for (int a = 0; a < groups; ++a) {
    lagrangian -= wedge(gf.dual_F[a], exterior_derivative(gf.A[a]));
    lagrangian += wedge(gf.F[a], gf.dual_F[a]) * Rational(1, 2);
  }
  if (su2) {
    const Rational cubic = spec.mutation.flip_lagrangian_cubic ? eighth : Rational(-eighth);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          if (gamma(c, a, b) == 0) continue;
          lagrangian += wedge(wedge(gf.A[a], gf.A[b]), gf.dual_F[c]) * (cubic * gamma(c, a, b));
        }
      }
    }
  }
  gf.lagrangian = std::move(lagrangian);

  auto label = [&](const std::string& stem, int a) {
    return su2 ? stem + std::to_string(a + 1) : stem;
  };
  std::vector<Generator> generators;
  std::vector<ClosureCertificate> certificates;
  for (int a = 0; a < groups; ++a) generators.push_back({label("theta", a), gf.theta[a]});
  for (int a = 0; a < groups; ++a) {
    generators.push_back({label("dtheta", a), exterior_derivative(gf.theta[a])});
  }
  for (int a = 0; a < groups; ++a) generators.push_back({label("psi", a), gf.psi[a]});

  const Form one = Form::scalar(chart, Poly(1));
  for (int a = 0; a < groups; ++a) {
    certificates.push_back({label("theta", a), {{one, label("dtheta", a)}}});
    certificates.push_back({label("dtheta", a), {}});
    ClosureCertificate cert{label("psi", a), {}};
    if (su2) {
      // d psi_a = -1/4 gamma^c_{ab} A^b ^ psi_c - 1/4 gamma^c_{ab} *F_c ^ theta^b
      for (int c = 0; c < 3; ++c) {
        Form coef(chart, 1);
        for (int b = 0; b < 3; ++b) {
          if (gamma(c, a, b) != 0) coef -= gf.A[b] * (quarter * gamma(c, a, b));
        }
        if (!coef.is_zero()) cert.combination.emplace_back(coef, label("psi", c));
      }
      for (int b = 0; b < 3; ++b) {
        Form coef(chart, n - 2);
        for (int c = 0; c < 3; ++c) {
          if (gamma(c, a, b) != 0) coef -= gf.dual_F[c] * (quarter * gamma(c, a, b));
        }
        if (!coef.is_zero()) cert.combination.emplace_back(coef, label("theta", b));
      }
    }
    certificates.push_back(std::move(cert));
  }
  return GaugeBuild{std::move(gf), std::move(generators), std::move(certificates)};
}

}  // namespace

EDSystem build_model(const ModelSpec& spec) {
  if (spec.family == Family::contact) return build_contact_example();
  GaugeBuild b = build_gauge(spec);
  std::vector<Index> indep;
  for (int i = 0; i < spec.n; ++i) indep.push_back(static_cast<Index>(i));
  return EDSystem(b.forms.chart, std::move(b.generators), std::move(indep), std::move(b.certificates));
}

EDSystem build_maxwell(int n, const Metric& metric) { return build_model(ModelSpec::maxwell(n, metric)); }

EDSystem build_su2_yang_mills(int n, const Metric& metric) { return build_model(ModelSpec::su2(n, metric)); }

EDSystem build_contact_example() {
  auto chart = make_chart({"x", "y", "z", "p", "q"}, {0, 1});
  const Index x = 0, y = 1, z = 2, p = 3, q = 4;
  Form theta = Form::d_coordinate(chart, z);
  theta -= Form::d_coordinate(chart, x).scaled(Poly::coordinate(p));
  theta -= Form::d_coordinate(chart, y).scaled(Poly::coordinate(q));
  Form dtheta = exterior_derivative(theta);
  return EDSystem(chart, {{"theta", theta}, {"dtheta", dtheta}}, {x, y});
}

GaugeForms gauge_forms(const ModelSpec& spec) { return build_gauge(spec).forms; }

CartanPoincare cartan_poincare(const ModelSpec& spec) {
  GaugeForms gf = gauge_forms(spec);
  Form residual = exterior_derivative(gf.lagrangian);
  for (std::size_t a = 0; a < gf.theta.size(); ++a) residual -= wedge(gf.theta[a], gf.psi[a]);
  const bool ok = residual.is_zero();
  return {std::move(gf.lagrangian), std::move(residual), ok};
}

std::vector<IdentityCheck> essential_identities(const ModelSpec& spec) {
  const GaugeForms gf = gauge_forms(spec);
  std::vector<IdentityCheck> out;
  const ChartPtr& chart = gf.chart;
  const int groups = static_cast<int>(gf.F.size());

  Form dfdf(chart, 2 * 1 + spec.n);
  for (int a = 0; a < groups; ++a) {
    dfdf += wedge(exterior_derivative(gf.F[a]), exterior_derivative(gf.dual_F[a]));
  }
  out.push_back({"dF^d*F = 0", dfdf.is_zero(), dfdf.term_count()});

  if (spec.family == Family::su2_yang_mills) {
    StructureConstants base = spec.mutation.gamma ? *spec.mutation.gamma : StructureConstants::su2();
    std::size_t terms = 0;
    for (int a = 0; a < 3; ++a) {
      Form sum(chart, spec.n);
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          const Rational& g = base(spec.group_order[c], spec.group_order[a], spec.group_order[b]);
          if (g != 0) sum += wedge(gf.dual_F[c], gf.F[b]) * g;
        }
      }
      terms += sum.term_count();
    }
    out.push_back({"gamma^c_ab *F_c^F^b = 0", terms == 0, terms});
  }

  Form dtp(chart, spec.n + 2);
  for (int a = 0; a < groups; ++a) dtp += exterior_derivative(wedge(gf.theta[a], gf.psi[a]));
  out.push_back({"d(theta^psi) = 0", dtp.is_zero(), dtp.term_count()});
  return out;
}

const std::vector<ModelInfo>& model_registry() {
  static const std::vector<ModelInfo> registry{
      {"maxwell", Family::maxwell, 3, 9, "vacuum Maxwell theory in n dimensions (golden for n = 3..6)"},
      {"su2ym", Family::su2_yang_mills, 3, 9, "SU(2)-Yang-Mills theory in n dimensions (golden for n = 3..6)"},
      {"contact", Family::contact, 2, 2, "contact system dz - p dx - q dy on 5 coordinates"},
  };
  return registry;
}

const ModelInfo* find_model(const std::string& name) {
  for (const auto& m : model_registry()) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

}  // namespace edsys
