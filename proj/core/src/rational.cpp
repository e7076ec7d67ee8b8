#include "pottscert/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pottscert {

namespace {

Int pow10(unsigned e) {
  Int p = 1;
  for (unsigned i = 0; i < e; ++i) p *= 10;
  return p;
}

[[noreturn]] void bad(const std::string& token) {
  throw std::invalid_argument("not a rational: '" + token + "'");
}

Rat parse_decimal(const std::string& s) {
  size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';

  std::string digits;
  long frac_len = 0;
  bool saw_digit = false, saw_dot = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      saw_digit = true;
      if (saw_dot) ++frac_len;
    } else if (c == '.' && !saw_dot) {
      saw_dot = true;
    } else {
      break;
    }
  }
  if (!saw_digit) bad(s);

  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    if (pos >= s.size()) bad(s);
    long e = 0;
    for (; pos < s.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(s[pos]))) bad(s);
      e = e * 10 + (s[pos] - '0');
      if (e > 1000000) bad(s);
    }
    exp10 = eneg ? -e : e;
  }
  if (pos != s.size()) bad(s);

  // GMP-backed string conversion treats a leading 0 as octal; strip them.
  size_t nz = digits.find_first_not_of('0');
  Int num(nz == std::string::npos ? "0" : digits.substr(nz));
  if (neg) num = -num;
  long shift = exp10 - frac_len;
  if (shift >= 0) return Rat(num * pow10(static_cast<unsigned>(shift)));
  return Rat(num, pow10(static_cast<unsigned>(-shift)));
}

}  // namespace

Rat parse_rational(const std::string& token) {
  auto slash = token.find('/');
  if (slash == std::string::npos) return parse_decimal(token);
  Rat num = parse_decimal(token.substr(0, slash));
  Rat den = parse_decimal(token.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + token + "'");
  return num / den;
}

std::string format_rational(const Rat& r) {
  Int num = numerator(r);
  Int den = denominator(r);
  if (den == 1) return num.str();

  // A rational has a terminating decimal expansion iff den = 2^a 5^b. Scale
  // to 10^max(a,b) and print with that many fractional digits.
  Int d = den;
  unsigned a = 0, b = 0;
  while (d % 2 == 0) { d /= 2; ++a; }
  while (d % 5 == 0) { d /= 5; ++b; }
  if (d == 1) {
    unsigned places = a > b ? a : b;
    Int scaled = num;
    for (unsigned i = 0; i < places - a; ++i) scaled *= 2;
    for (unsigned i = 0; i < places - b; ++i) scaled *= 5;
    std::string body = Int(abs(scaled)).str();
    if (body.size() <= 17 + (places > body.size() ? places - body.size() : 0)) {
      std::string sign = scaled < 0 ? "-" : "";
      if (body.size() <= places) body.insert(0, places - body.size() + 1, '0');
      body.insert(body.size() - places, ".");
      // places is minimal (all 2s and 5s stripped), so no trailing zeros
      size_t sig = 0;
      for (char c : body)
        if (std::isdigit(static_cast<unsigned char>(c)) && !(sig == 0 && c == '0')) ++sig;
      if (sig <= 17) return sign + body;
    }
  }
  return num.str() + "/" + den.str();
}

}  // namespace pottscert
