#include "fatcert/rational.hpp"

#include "fatcert/errors.hpp"

namespace fatcert {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("not a rational: '" + s + "'");
  Rational r;
  r.get_num() = mpz_class(num, 10);
  r.get_den() = mpz_class(den, 10);
  if (r.get_den() == 0) throw ParseError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace fatcert
