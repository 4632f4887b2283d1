#include "finstoch/rational.hpp"

#include "finstoch/errors.hpp"

namespace finstoch {

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view part) -> Int {
    if (part.empty()) throw Error("empty integer in rational");
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) throw Error("sign without digits in rational");
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw Error("invalid rational '" + std::string(part) + "'");
    return Int(std::string(part));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in rational '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace finstoch
