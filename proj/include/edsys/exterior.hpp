#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace edsys {

using Rational = mpq_class;
using Integer = mpz_class;
using Index = std::uint16_t;

/// Strictly increasing coordinate indices naming dx^{i1}^...^dx^{ik}.
using Basis = std::vector<Index>;
/// Sorted (non-decreasing) coordinate indices naming x^{i1}...x^{ik}.
using Monomial = std::vector<Index>;

class ExteriorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinate chart. The order of `names` fixes the ordering of basis forms
/// everywhere; `base` lists the spacetime coordinates x^i.
class Chart {
 public:
  Chart(std::vector<std::string> names, std::vector<Index> base);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Index i) const { return names_.at(i); }
  const std::vector<Index>& base() const { return base_; }
  /// Index of `name`, or -1.
  int find(const std::string& name) const;

  bool operator==(const Chart& other) const {
    return names_ == other.names_ && base_ == other.base_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Index> base_;
  std::map<std::string, Index> lookup_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names, std::vector<Index> base = {});

/// Values of all chart coordinates at one point.
struct Point {
  std::vector<Rational> values;
};

/// Components of a tangent vector in the coordinate frame d/dx^j.
struct TangentVector {
  std::vector<Rational> components;

  std::size_t size() const { return components.size(); }
  const Rational& operator[](std::size_t i) const { return components[i]; }
  Rational& operator[](std::size_t i) { return components[i]; }
};

/// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly coordinate(Index i);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;
  bool operator==(const Poly& other) const { return terms_ == other.terms_; }

  /// Partial derivative with respect to coordinate `i`.
  Poly derivative(Index i) const;
  Rational evaluate(const Point& p) const;
  /// Largest coordinate index appearing, or -1.
  int max_index() const;

  void add_term(const Monomial& m, const Rational& c);

 private:
  Terms terms_;
};

class EvaluatedForm;

/// Sparse exterior form of fixed degree with polynomial coefficients.
///
/// Keys are strictly increasing basis tuples; zero coefficients are never
/// stored, so two forms are equal iff their term maps are equal.
class Form {
 public:
  using Terms = std::map<Basis, Poly>;

  Form(ChartPtr chart, int degree);

  static Form zero(ChartPtr chart, int degree) { return Form(std::move(chart), degree); }
  static Form scalar(ChartPtr chart, const Poly& p);
  /// The basis 1-form dx^i.
  static Form d_coordinate(ChartPtr chart, Index i);
  /// Single term coefficient * dx^{basis}; the basis may be unsorted and
  /// is normalized with the permutation sign.
  static Form monomial(ChartPtr chart, std::vector<Index> basis, const Poly& coefficient);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Adds coefficient * dx^{basis} (basis must already be strictly increasing).
  void add_term(const Basis& basis, const Poly& coefficient);

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(const Rational& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Rational& c) { return a *= c; }
  friend Form operator*(const Rational& c, Form a) { return a *= c; }
  Form operator-() const;
  /// Multiplication by a polynomial 0-form.
  Form scaled(const Poly& p) const;

  bool operator==(const Form& other) const;

  /// Same terms, re-attached to an equal-named chart.
  Form rebind(ChartPtr chart) const;

 private:
  ChartPtr chart_;
  int degree_;
  Terms terms_;
};

/// A form evaluated at a point: an antisymmetric rational tensor.
class EvaluatedForm {
 public:
  using Terms = std::map<Basis, Rational>;

  explicit EvaluatedForm(int degree = 0) : degree_(degree) {}

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Basis& basis, const Rational& c);

  EvaluatedForm& operator+=(const EvaluatedForm& other);
  EvaluatedForm& operator*=(const Rational& c);
  bool operator==(const EvaluatedForm& other) const {
    return degree_ == other.degree_ && terms_ == other.terms_;
  }

  /// Value on the ordered vectors (requires vectors.size() == degree).
  Rational apply(const std::vector<const TangentVector*>& vectors) const;

 private:
  int degree_;
  Terms terms_;
};

/// Constant diagonal metric with entries +-1 on the base coordinates.
/// The Levi-Civita symbol is fixed by epsilon_{1...n} = +1 (all indices down).
struct Metric {
  std::vector<int> signs;

  std::size_t dim() const { return signs.size(); }
  int det_sign() const;

  /// diag(+1,...,+1,-1): last base coordinate timelike.
  static Metric mostly_plus(std::size_t n);
  /// diag(-1,...,-1,+1).
  static Metric mostly_minus(std::size_t n);
  /// diag(-1,+1,...,+1): first base coordinate timelike.
  static Metric time_first(std::size_t n);
  static Metric euclidean(std::size_t n);
};

/// Sign of the permutation taking `seq` to sorted order, or 0 on a repeat.
int permutation_sign(const std::vector<Index>& seq);

/// Merge of two strictly increasing tuples: sign of dx^a ^ dx^b relative to
/// dx^{a union b}; 0 when they overlap.
int merge_sign(const Basis& a, const Basis& b, Basis& out);

Form wedge(const Form& a, const Form& b);
Form exterior_derivative(const Form& a);
EvaluatedForm evaluate(const Form& a, const Point& p);
EvaluatedForm wedge(const EvaluatedForm& a, const EvaluatedForm& b);
/// Contraction with v into the first slot. Throws on degree-0 input.
EvaluatedForm interior_product(const TangentVector& v, const EvaluatedForm& a);

/// Antisymmetric 2-form components F_{ij}, keyed by positions (i < j) in
/// the chart's base list.
using TwoFormComponents = std::map<std::pair<int, int>, Poly>;

/// Dual (n-2)-form
///   *F = 1/(2 (n-2)!) F_{ij} eta^{ii} eta^{jj} eps_{ij k...} dx^k ^ ... ,
/// summed over all index values. Requires n = |chart base| = metric.dim() >= 3.
Form hodge_dual_2form(const ChartPtr& chart, const TwoFormComponents& components,
                      const Metric& metric);

std::string to_string(const Poly& p, const Chart& chart);
std::string to_string(const Form& f);

}  // namespace edsys
