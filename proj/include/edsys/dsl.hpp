#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "edsys/eds.hpp"

namespace edsys {

/// Lexical, syntactic, scoping or degree error in `.eds` source. `line` and
/// `column` are 1-based; column counts bytes.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message, std::string token);

  int line;
  int column;
  std::string message;
  std::string token;
};

/// Parses an `.eds` system:
///
///   coords x y z p q;
///   let th = d(z) - p*d(x) - q*d(y);   # comment
///   generators th, d(th);
///   indep x y;
///
/// `^` is the wedge product, `*` multiplies by a 0-form, `d(...)` is the
/// exterior derivative and a bare coordinate name is that coordinate as a
/// function. Generators named by a `let` keep that name; others are named
/// `d<name>` for `d(name)` or `g<k>`.
EDSystem parse_eds(std::string_view text);

/// Source text that parses back to an equal system (names included).
std::string print_eds(const EDSystem& eds);

}  // namespace edsys
