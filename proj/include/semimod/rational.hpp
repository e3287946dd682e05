#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

#include "error.hpp"

namespace semimod {

/// Exact rational in canonical form (reduced, positive denominator).
using Rat = mpq_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

/// Parses "n", "-n" or "n/d".
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  Rat out;
  if (out.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (out.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  out.canonicalize();
  return out;
}

inline std::string to_string(const Rat& x) { return x.get_str(10); }

inline std::string numerator_string(const Rat& x) { return x.get_num().get_str(10); }
inline std::string denominator_string(const Rat& x) { return x.get_den().get_str(10); }

inline Rat make_rat(const std::string& num, const std::string& den) {
  return parse_rat(num + "/" + den);
}

}  // namespace semimod
