#include "gkm/rational.hpp"

#include <stdexcept>

namespace gkm {

Rational rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw std::invalid_argument("bad rational literal: " + s);
  }
  Rational r(s, 10);  // mpq_class ctor throws std::invalid_argument on junk
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

}  // namespace gkm
