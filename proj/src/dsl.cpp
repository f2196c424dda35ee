#include "edsys/dsl.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace edsys {

ParseError::ParseError(int line_, int column_, std::string message_, std::string token_)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + message_ +
                         (token_.empty() ? std::string() : " (at '" + token_ + "')")),
      line(line_),
      column(column_),
      message(std::move(message_)),
      token(std::move(token_)) {}

namespace {

const std::set<std::string> kKeywords{"coords", "let", "generators", "indep", "d"};

enum class Tok { ident, number, punct, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  int last_line = 1;
  int last_col = 1;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      last_line = line;
      last_col = col;
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int tl = line;
    const int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::string_view(";,=+-^*()").find(c) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw ParseError(tl, tc, "unexpected character", std::string(1, c));
  }
  out.push_back({Tok::end, "", last_line, src.empty() ? 1 : last_col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  EDSystem parse_file() {
    parse_coords();
    while (is_ident("let")) parse_let();
    if (!is_ident("generators")) fail("expected 'generators' statement");
    auto generators = parse_generators();
    if (!is_ident("indep")) fail("expected 'indep' statement");
    auto indep = parse_indep();
    if (peek().kind != Tok::end) fail("unexpected token after 'indep' statement");

    auto chart = make_chart(chart_->names(), indep);
    for (auto& g : generators) g.form = g.form.rebind(chart);
    return EDSystem(chart, std::move(generators), std::move(indep));
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_ident(const char* word, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::ident && peek(ahead).text == word;
  }
  bool is_punct(char c, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::punct && peek(ahead).text[0] == c;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.column, msg, t.kind == Tok::end ? "end of input" : t.text);
  }
  void expect_punct(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "'");
    next();
  }
  const Token& expect_name(const char* what) {
    if (peek().kind != Tok::ident) fail(std::string("expected ") + what);
    if (kKeywords.count(peek().text)) fail(std::string("keyword used as ") + what);
    return next();
  }

  void parse_coords() {
    if (!is_ident("coords")) fail("expected 'coords' statement first");
    next();
    std::vector<std::string> names;
    while (!is_punct(';')) {
      const Token& t = expect_name("coordinate name");
      for (const auto& n : names) {
        if (n == t.text) fail_at(t, "duplicate coordinate");
      }
      names.push_back(t.text);
    }
    if (names.empty()) fail("'coords' needs at least one coordinate");
    next();
    try {
      chart_ = make_chart(std::move(names));
    } catch (const ExteriorError& e) {
      fail(e.what());
    }
  }

  void parse_let() {
    next();
    const Token& name = expect_name("binding name");
    if (chart_->find(name.text) >= 0) fail_at(name, "binding shadows a coordinate");
    if (bindings_.count(name.text)) fail_at(name, "duplicate binding");
    expect_punct('=');
    Form value = parse_expr();
    expect_punct(';');
    bindings_.emplace(name.text, std::move(value));
  }

  std::vector<Generator> parse_generators() {
    next();
    std::vector<Generator> out;
    std::set<std::string> used;
    auto unique = [&](std::string base) {
      std::string name = base;
      for (int k = 2; used.count(name) || chart_->find(name) >= 0 || bindings_.count(name); ++k) {
        name = base + "_" + std::to_string(k);
      }
      return name;
    };
    if (is_punct(';')) {
      next();
      return out;
    }
    for (;;) {
      const Token& first = peek();
      std::string name;
      const bool bare = first.kind == Tok::ident && bindings_.count(first.text) &&
                        (is_punct(',', 1) || is_punct(';', 1));
      const bool d_of = is_ident("d") && is_punct('(', 1) && peek(2).kind == Tok::ident &&
                        is_punct(')', 3) && (is_punct(',', 4) || is_punct(';', 4));
      if (bare) {
        name = first.text;
        if (used.count(name)) fail_at(first, "generator listed twice");
      } else if (d_of) {
        name = unique("d" + peek(2).text);
      } else {
        name = unique("g" + std::to_string(out.size() + 1));
      }
      Form f = parse_expr();
      if (f.degree() < 1) {
        fail_at(first, "generator is a 0-form; degree >= 1 required");
      }
      used.insert(name);
      out.push_back({name, std::move(f)});
      if (is_punct(',')) {
        next();
        continue;
      }
      expect_punct(';');
      return out;
    }
  }

  std::vector<Index> parse_indep() {
    next();
    std::vector<Index> out;
    while (!is_punct(';')) {
      const Token& t = expect_name("coordinate name");
      const int idx = chart_->find(t.text);
      if (idx < 0) fail_at(t, "independence variable is not a coordinate");
      for (Index i : out) {
        if (i == idx) fail_at(t, "independence variable repeated");
      }
      out.push_back(static_cast<Index>(idx));
    }
    next();
    return out;
  }

  Form parse_expr() {
    bool negate = false;
    if (is_punct('-')) {
      next();
      negate = true;
    }
    Form acc = parse_term();
    if (negate) acc = -acc;
    while (is_punct('+') || is_punct('-')) {
      const Token& op = next();
      Form rhs = parse_term();
      if (rhs.degree() != acc.degree()) {
        fail_at(op, "mixed degrees " + std::to_string(acc.degree()) + " and " + std::to_string(rhs.degree()) +
                        " in '" + op.text + "'");
      }
      if (op.text == "+") {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  Form parse_term() {
    Form acc = parse_atom();
    while (is_punct('^')) {
      next();
      acc = wedge(acc, parse_atom());
    }
    return acc;
  }

  Form parse_atom() {
    Form left = parse_primary();
    if (!is_punct('*')) return left;
    const Token& star = next();
    if (left.degree() != 0) fail_at(star, "left operand of '*' must be a 0-form, got degree " +
                                              std::to_string(left.degree()));
    return wedge(left, parse_atom());
  }

  Form parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      next();
      Rational q;
      try {
        q = Rational(t.text);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
      } catch (const std::invalid_argument&) {
        fail_at(t, "malformed number");
      }
      return Form::scalar(chart_, Poly(q));
    }
    if (is_punct('(')) {
      next();
      Form inner = parse_expr();
      expect_punct(')');
      return inner;
    }
    if (t.kind == Tok::ident) {
      if (t.text == "d" && is_punct('(', 1)) {
        next();
        next();
        Form inner = parse_expr();
        expect_punct(')');
        return exterior_derivative(inner);
      }
      if (kKeywords.count(t.text)) fail("unexpected keyword");
      next();
      const int idx = chart_->find(t.text);
      if (idx >= 0) return Form::scalar(chart_, Poly::coordinate(static_cast<Index>(idx)));
      auto it = bindings_.find(t.text);
      if (it != bindings_.end()) return it->second;
      fail_at(t, "unknown identifier");
    }
    fail("expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ChartPtr chart_;
  std::map<std::string, Form> bindings_;
};

bool valid_identifier(const std::string& s) {
  if (s.empty() || kKeywords.count(s)) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

std::string print_form(const Form& f) {
  const Chart& chart = *f.chart();
  std::ostringstream os;
  auto basis_text = [&](const Basis& b) {
    std::string s;
    for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "^d(" : "d(") + chart.name(b[k]) + ")";
    return s;
  };
  if (f.is_zero()) {
    Basis b;
    for (int k = 0; k < f.degree(); ++k) b.push_back(static_cast<Index>(k));
    return f.degree() == 0 ? "0" : "0*" + basis_text(b);
  }
  bool first = true;
  for (const auto& [basis, poly] : f.terms()) {
    for (const auto& [mono, c] : poly.terms()) {
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      std::vector<std::string> factors;
      const Rational mag = abs(c);
      if (mag != 1 || (mono.empty() && basis.empty())) factors.push_back(mag.get_str());
      for (Index i : mono) factors.push_back(chart.name(i));
      if (!basis.empty()) factors.push_back(basis_text(basis));
      for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
    }
  }
  return os.str();
}

}  // namespace

EDSystem parse_eds(std::string_view text) { return Parser(text).parse_file(); }

std::string print_eds(const EDSystem& eds) {
  const Chart& chart = *eds.chart();
  std::ostringstream os;
  os << "coords";
  for (const auto& n : chart.names()) {
    if (!valid_identifier(n)) throw EdsError("coordinate '" + n + "' is not a valid identifier");
    os << " " << n;
  }
  os << ";\n";
  for (const auto& g : eds.generators()) {
    if (!valid_identifier(g.name) || chart.find(g.name) >= 0) {
      throw EdsError("generator name '" + g.name + "' cannot be printed as a binding");
    }
    os << "let " << g.name << " = " << print_form(g.form) << ";\n";
  }
  os << "generators";
  for (std::size_t i = 0; i < eds.generators().size(); ++i) {
    os << (i ? ", " : " ") << eds.generators()[i].name;
  }
  os << ";\nindep";
  for (Index i : eds.independence()) os << " " << chart.name(i);
  os << ";\n";
  return os.str();
}

}  // namespace edsys
