#include "edsys/exterior.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace edsys {

Chart::Chart(std::vector<std::string> names, std::vector<Index> base)
    : names_(std::move(names)), base_(std::move(base)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!lookup_.emplace(names_[i], static_cast<Index>(i)).second) {
      throw ExteriorError("duplicate coordinate name '" + names_[i] + "'");
    }
  }
  std::vector<Index> seen = base_;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw ExteriorError("repeated base coordinate");
  }
  for (Index b : base_) {
    if (b >= names_.size()) throw ExteriorError("base coordinate out of range");
  }
}

int Chart::find(const std::string& name) const {
  auto it = lookup_.find(name);
  return it == lookup_.end() ? -1 : static_cast<int>(it->second);
}

ChartPtr make_chart(std::vector<std::string> names, std::vector<Index> base) {
  return std::make_shared<const Chart>(std::move(names), std::move(base));
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::coordinate(Index i) {
  Poly p;
  p.terms_.emplace(Monomial{i}, Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  Monomial m;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      m.resize(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), m.begin());
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::derivative(Index i) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    auto lo = std::lower_bound(m.begin(), m.end(), i);
    auto hi = std::upper_bound(m.begin(), m.end(), i);
    const long power = hi - lo;
    if (power == 0) continue;
    Monomial reduced(m.begin(), m.end());
    reduced.erase(reduced.begin() + (lo - m.begin()));
    out.add_term(reduced, c * power);
  }
  return out;
}

Rational Poly::evaluate(const Point& p) const {
  Rational total = 0;
  Rational term;
  for (const auto& [m, c] : terms_) {
    term = c;
    for (Index i : m) term *= p.values.at(i);
    total += term;
  }
  return total;
}

int Poly::max_index() const {
  int out = -1;
  for (const auto& [m, c] : terms_) {
    if (!m.empty()) out = std::max(out, static_cast<int>(m.back()));
  }
  return out;
}

// ---------------------------------------------------------------- signs

int permutation_sign(const std::vector<Index>& seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) sign = -sign;
    }
  }
  return sign;
}

int merge_sign(const Basis& a, const Basis& b, Basis& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  // Each element of b passing the remaining elements of a costs one swap each.
  std::size_t swaps = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      swaps += a.size() - i;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return (swaps % 2 == 0) ? 1 : -1;
}

// ---------------------------------------------------------------- Form

Form::Form(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (!chart_) throw ExteriorError("form without chart");
  if (degree < 0) throw ExteriorError("negative form degree");
}

Form Form::scalar(ChartPtr chart, const Poly& p) {
  Form f(std::move(chart), 0);
  f.add_term({}, p);
  return f;
}

Form Form::d_coordinate(ChartPtr chart, Index i) {
  if (i >= chart->size()) throw ExteriorError("coordinate index out of range");
  Form f(std::move(chart), 1);
  f.add_term({i}, Poly(1));
  return f;
}

Form Form::monomial(ChartPtr chart, std::vector<Index> basis, const Poly& coefficient) {
  Form f(std::move(chart), static_cast<int>(basis.size()));
  const int sign = permutation_sign(basis);
  if (sign == 0) return f;
  std::sort(basis.begin(), basis.end());
  f.add_term(basis, sign > 0 ? coefficient : -coefficient);
  return f;
}

void Form::add_term(const Basis& basis, const Poly& coefficient) {
  if (static_cast<int>(basis.size()) != degree_) {
    throw ExteriorError("basis length does not match form degree");
  }
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(basis, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

static void require_compatible(const Form& a, const Form& b) {
  if (a.chart() != b.chart() && !(*a.chart() == *b.chart())) {
    throw ExteriorError("forms live on different charts");
  }
}

Form& Form::operator+=(const Form& other) {
  require_compatible(*this, other);
  if (other.degree_ != degree_) {
    throw ExteriorError("cannot add forms of degree " + std::to_string(degree_) + " and " +
                        std::to_string(other.degree_));
  }
  for (const auto& [b, p] : other.terms_) add_term(b, p);
  return *this;
}

Form& Form::operator-=(const Form& other) {
  require_compatible(*this, other);
  if (other.degree_ != degree_) {
    throw ExteriorError("cannot subtract forms of degree " + std::to_string(degree_) + " and " +
                        std::to_string(other.degree_));
  }
  for (const auto& [b, p] : other.terms_) add_term(b, -p);
  return *this;
}

Form& Form::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [b, p] : terms_) p *= c;
  }
  return *this;
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [b, p] : out.terms_) p = -p;
  return out;
}

Form Form::scaled(const Poly& p) const {
  Form out(chart_, degree_);
  for (const auto& [b, c] : terms_) out.add_term(b, c * p);
  return out;
}

bool Form::operator==(const Form& other) const {
  return degree_ == other.degree_ && terms_ == other.terms_ &&
         (chart_ == other.chart_ || *chart_ == *other.chart_);
}

Form Form::rebind(ChartPtr chart) const {
  if (chart->names() != chart_->names()) throw ExteriorError("rebind to a different chart");
  Form out(std::move(chart), degree_);
  out.terms_ = terms_;
  return out;
}

Form wedge(const Form& a, const Form& b) {
  require_compatible(a, b);
  Form out(a.chart(), a.degree() + b.degree());
  if (out.degree() > static_cast<int>(a.chart()->size())) return out;
  Basis merged;
  for (const auto& [ba, pa] : a.terms()) {
    for (const auto& [bb, pb] : b.terms()) {
      const int sign = merge_sign(ba, bb, merged);
      if (sign == 0) continue;
      Poly prod = pa * pb;
      if (sign < 0) prod = -prod;
      out.add_term(merged, prod);
    }
  }
  return out;
}

Form exterior_derivative(const Form& a) {
  Form out(a.chart(), a.degree() + 1);
  if (out.degree() > static_cast<int>(a.chart()->size())) return out;
  Basis merged;
  for (const auto& [basis, poly] : a.terms()) {
    std::vector<Index> vars;
    for (const auto& [m, c] : poly.terms()) vars.insert(vars.end(), m.begin(), m.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (Index v : vars) {
      // d(p dx^I) = sum_v dp/dx^v dx^v ^ dx^I
      const int sign = merge_sign(Basis{v}, basis, merged);
      if (sign == 0) continue;
      Poly dp = poly.derivative(v);
      if (sign < 0) dp = -dp;
      out.add_term(merged, dp);
    }
  }
  return out;
}

// ---------------------------------------------------------------- evaluated forms

void EvaluatedForm::add_term(const Basis& basis, const Rational& c) {
  if (static_cast<int>(basis.size()) != degree_) {
    throw ExteriorError("basis length does not match form degree");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(basis, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

EvaluatedForm& EvaluatedForm::operator+=(const EvaluatedForm& other) {
  if (other.degree_ != degree_) throw ExteriorError("degree mismatch in sum");
  for (const auto& [b, c] : other.terms_) add_term(b, c);
  return *this;
}

EvaluatedForm& EvaluatedForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [b, v] : terms_) v *= c;
  }
  return *this;
}

Rational EvaluatedForm::apply(const std::vector<const TangentVector*>& vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) {
    throw ExteriorError("wrong number of vectors for form of degree " + std::to_string(degree_));
  }
  Rational total = 0;
  if (degree_ == 0) {
    auto it = terms_.find({});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  // Determinant of the k x k minor selected by each basis tuple.
  std::vector<Rational> m(static_cast<std::size_t>(degree_ * degree_));
  for (const auto& [basis, c] : terms_) {
    for (int r = 0; r < degree_; ++r) {
      for (int s = 0; s < degree_; ++s) m[r * degree_ + s] = (*vectors[s])[basis[r]];
    }
    Rational det = 1;
    for (int col = 0; col < degree_ && det != 0; ++col) {
      int piv = -1;
      for (int r = col; r < degree_; ++r) {
        if (m[r * degree_ + col] != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) {
        det = 0;
        break;
      }
      if (piv != col) {
        for (int s = 0; s < degree_; ++s) std::swap(m[piv * degree_ + s], m[col * degree_ + s]);
        det = -det;
      }
      const Rational pivot = m[col * degree_ + col];
      det *= pivot;
      for (int r = col + 1; r < degree_; ++r) {
        if (m[r * degree_ + col] == 0) continue;
        const Rational f = m[r * degree_ + col] / pivot;
        for (int s = col; s < degree_; ++s) m[r * degree_ + s] -= f * m[col * degree_ + s];
      }
    }
    total += c * det;
  }
  return total;
}

EvaluatedForm evaluate(const Form& a, const Point& p) {
  if (p.values.size() != a.chart()->size()) {
    throw ExteriorError("point dimension does not match chart");
  }
  EvaluatedForm out(a.degree());
  for (const auto& [basis, poly] : a.terms()) out.add_term(basis, poly.evaluate(p));
  return out;
}

EvaluatedForm wedge(const EvaluatedForm& a, const EvaluatedForm& b) {
  EvaluatedForm out(a.degree() + b.degree());
  Basis merged;
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      const int sign = merge_sign(ba, bb, merged);
      if (sign == 0) continue;
      out.add_term(merged, sign > 0 ? Rational(ca * cb) : Rational(-ca * cb));
    }
  }
  return out;
}

EvaluatedForm interior_product(const TangentVector& v, const EvaluatedForm& a) {
  if (a.degree() < 1) throw ExteriorError("interior product of a 0-form");
  EvaluatedForm out(a.degree() - 1);
  Basis rest;
  for (const auto& [basis, c] : a.terms()) {
    for (std::size_t pos = 0; pos < basis.size(); ++pos) {
      const Rational& comp = v.components.at(basis[pos]);
      if (comp == 0) continue;
      rest.assign(basis.begin(), basis.end());
      rest.erase(rest.begin() + static_cast<long>(pos));
      const Rational term = c * comp;
      out.add_term(rest, pos % 2 == 0 ? term : Rational(-term));
    }
  }
  return out;
}

// ---------------------------------------------------------------- metric and duals

int Metric::det_sign() const {
  int s = 1;
  for (int v : signs) s *= v;
  return s;
}

Metric Metric::mostly_plus(std::size_t n) {
  Metric m{std::vector<int>(n, 1)};
  if (n > 0) m.signs.back() = -1;
  return m;
}

Metric Metric::mostly_minus(std::size_t n) {
  Metric m{std::vector<int>(n, -1)};
  if (n > 0) m.signs.back() = 1;
  return m;
}

Metric Metric::time_first(std::size_t n) {
  Metric m{std::vector<int>(n, 1)};
  if (n > 0) m.signs.front() = -1;
  return m;
}

Metric Metric::euclidean(std::size_t n) { return Metric{std::vector<int>(n, 1)}; }

Form hodge_dual_2form(const ChartPtr& chart, const TwoFormComponents& components,
                      const Metric& metric) {
  const int n = static_cast<int>(metric.dim());
  if (n < 3) throw ExteriorError("hodge_dual_2form needs n >= 3, got " + std::to_string(n));
  if (static_cast<int>(chart->base().size()) != n) {
    throw ExteriorError("metric dimension does not match chart base");
  }
  for (int s : metric.signs) {
    if (s != 1 && s != -1) throw ExteriorError("metric signs must be +1 or -1");
  }
  // The 1/(2 (n-2)!) exactly cancels the orderings of (i,j) and of the
  // complementary block, leaving one term per i<j.
  Form out(chart, n - 2);
  for (const auto& [ij, value] : components) {
    const auto [i, j] = ij;
    if (i < 0 || j >= n || i >= j) throw ExteriorError("2-form components need 0 <= i < j < n");
    std::vector<Index> order{static_cast<Index>(i), static_cast<Index>(j)};
    std::vector<Index> rest;
    for (int k = 0; k < n; ++k) {
      if (k != i && k != j) {
        order.push_back(static_cast<Index>(k));
        rest.push_back(static_cast<Index>(k));
      }
    }
    const int sign = permutation_sign(order) * metric.signs[i] * metric.signs[j];
    Basis basis;
    for (Index k : rest) basis.push_back(chart->base()[k]);
    // Base coordinates need not be listed in chart order.
    std::vector<Index> raw = basis;
    const int reorder = permutation_sign(raw);
    std::sort(basis.begin(), basis.end());
    out.add_term(basis, sign * reorder > 0 ? value : -value);
  }
  return out;
}

// ---------------------------------------------------------------- printing

std::string to_string(const Poly& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || m.empty()) {
      os << mag.get_str();
      need_star = true;
    }
    for (Index i : m) {
      if (need_star) os << "*";
      os << chart.name(i);
      need_star = true;
    }
  }
  return os.str();
}

std::string to_string(const Form& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [basis, poly] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(poly, *f.chart()) << ")";
    for (std::size_t k = 0; k < basis.size(); ++k) {
      os << (k == 0 ? " " : "^") << "d" << f.chart()->name(basis[k]);
    }
  }
  return os.str();
}

}  // namespace edsys
