#include "cc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cc {

Rat parse_decimal_rat(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '+') ++i;
  BigInt num = 0;
  std::size_t frac_len = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("not a decimal number: '" + text + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      num = num * 10 + (ch - '0');
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else {
      throw std::invalid_argument("not a decimal number: '" + text + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a decimal number: '" + text + "'");
  BigInt den = 1;
  for (std::size_t j = 0; j < frac_len; ++j) den *= 10;
  return Rat(num, den);
}

std::string rat_to_string(const Rat& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace cc
