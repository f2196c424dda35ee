#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "edsys/eds.hpp"

namespace edsys {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// gamma^a_{bc} for a 3-dimensional Lie algebra, indices 0-based.
struct StructureConstants {
  std::array<std::array<std::array<Rational, 3>, 3>, 3> gamma{};

  const Rational& operator()(int a, int b, int c) const { return gamma[a][b][c]; }
  Rational& operator()(int a, int b, int c) { return gamma[a][b][c]; }

  /// Totally antisymmetric with gamma^1_{23} = 1.
  static StructureConstants su2();
  bool totally_antisymmetric() const;
};

enum class Family { maxwell, su2_yang_mills, contact };

/// Deliberate corruptions of the gauge models, used to show that the
/// identity checks are not vacuous.
struct Mutation {
  /// Drop the -1/4 gamma A ^ *F coupling from psi_a.
  bool drop_psi_coupling = false;
  /// Flip the sign of the cubic -1/8 gamma A ^ A ^ *F term in Lambda.
  bool flip_lagrangian_cubic = false;
  /// Replace the structure constants.
  std::optional<StructureConstants> gamma;
};

struct ModelSpec {
  Family family = Family::maxwell;
  int n = 4;
  Metric metric = Metric::mostly_plus(4);
  Mutation mutation{};
  /// Permutation of the group labels a = 1,2,3 applied to the generators.
  std::array<int, 3> group_order{0, 1, 2};

  static ModelSpec maxwell(int n, std::optional<Metric> metric = std::nullopt);
  static ModelSpec su2(int n, std::optional<Metric> metric = std::nullopt);
};

/// Coordinates x1..xn, A1..An, Fij (i<j).
EDSystem build_maxwell(int n, const Metric& metric);
/// Coordinates x1..xn, Aa_i, Fa_ij; generators theta_a, dtheta_a, psi_a.
EDSystem build_su2_yang_mills(int n, const Metric& metric);
/// Coordinates x y z p q; generators dz - p dx - q dy and its d.
EDSystem build_contact_example();

EDSystem build_model(const ModelSpec& spec);

/// Named forms of a gauge model: A^a, F^a, *F_a, theta^a, psi_a, Lambda.
struct GaugeForms {
  ChartPtr chart;
  std::vector<Form> A;
  std::vector<Form> F;
  std::vector<Form> dual_F;
  std::vector<Form> theta;
  std::vector<Form> psi;
  Form lagrangian;
};

GaugeForms gauge_forms(const ModelSpec& spec);

struct IdentityCheck {
  std::string name;
  bool ok;
  std::size_t residual_terms;
};

/// Lambda together with the exact check d Lambda - theta^a ^ psi_a = 0.
struct CartanPoincare {
  Form lagrangian;
  Form residual;
  bool ok;
};

CartanPoincare cartan_poincare(const ModelSpec& spec);

/// dF ^ d*F = 0 (per group label), gamma^c_{ab} *F_c ^ F^b = 0 (SU(2)) and
/// d(theta^a ^ psi_a) = 0.
std::vector<IdentityCheck> essential_identities(const ModelSpec& spec);

struct ModelInfo {
  std::string name;
  Family family;
  int min_n;
  int max_n;
  std::string description;
};

/// Family names and supported n for the CLI.
const std::vector<ModelInfo>& model_registry();
const ModelInfo* find_model(const std::string& name);

/// Dimension of the model's chart.
std::size_t chart_size(Family family, int n);

}  // namespace edsys
