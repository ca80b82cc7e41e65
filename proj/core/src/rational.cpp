#include "ietlab/rational.hpp"

#include "ietlab/errors.hpp"

#include <algorithm>
#include <cctype>

namespace ietlab {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Rat parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c) != 0; }),
          s.end());
  if (s.empty()) throw StructuralError("empty rational literal");
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string num, den = "1";
  auto slash = s.find('/', pos);
  if (slash == std::string::npos) {
    num = s.substr(pos);
  } else {
    num = s.substr(pos, slash - pos);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw StructuralError("bad rational literal: " + text);
  Int den_z(den, 10);
  if (den_z == 0) throw StructuralError("zero denominator: " + text);
  Rat value{Int(num, 10), den_z};
  value.canonicalize();
  return negative ? Rat(-value) : value;
}

Rat parse_decimal(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c) != 0; }),
          s.end());
  if (s.empty()) throw StructuralError("empty decimal literal");
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string whole, frac;
  auto dot = s.find('.', pos);
  if (dot == std::string::npos) {
    whole = s.substr(pos);
  } else {
    whole = s.substr(pos, dot - pos);
    frac = s.substr(dot + 1);
  }
  if (whole.empty()) whole = "0";
  if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
    throw StructuralError("bad decimal literal: " + text);
  Int numerator(whole + frac, 10);
  Int denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 10, frac.size());
  Rat value(numerator, denominator);
  value.canonicalize();
  return negative ? Rat(-value) : value;
}

Rat parse_number(const std::string& text) {
  return text.find('.') == std::string::npos ? parse_rational(text)
                                             : parse_decimal(text);
}

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string decimal_string(const Rat& value, unsigned digits) {
  bool negative = sgn(value) < 0;
  Rat v = abs(value);
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Int scaled = (v.get_num() * scale) / v.get_den();
  Int whole = scaled / scale;
  Int frac = scaled % scale;
  std::string out = whole.get_str();
  if (digits > 0) {
    std::string fs = frac.get_str();
    fs.insert(fs.begin(), digits - fs.size(), '0');
    out += "." + fs;
  }
  return negative ? "-" + out : out;
}

std::string sqrt_decimal(unsigned n, unsigned digits) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Int target = Int(n) * scale * scale;
  Int root;
  mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());
  Int whole = root / scale;
  Int frac = root % scale;
  std::string fs = frac.get_str();
  fs.insert(fs.begin(), digits - fs.size(), '0');
  return whole.get_str() + "." + fs;
}

Rat pow10_inverse(unsigned digits) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  return Rat(Int(1), scale);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  // splitmix64-style mix.
  std::uint64_t x = seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash_rat(const Rat& value) {
  // The mpq_class(int, int) constructor does not canonicalize, so reduce a
  // copy first to keep equal values hashing equal.
  Rat c = value;
  c.canonicalize();
  const std::uint64_t modulus = 0xffffffffffffffc5ULL; // largest 64-bit prime
  std::uint64_t num = mpz_fdiv_ui(c.get_num().get_mpz_t(), modulus);
  std::uint64_t den = mpz_fdiv_ui(c.get_den().get_mpz_t(), modulus);
  std::uint64_t h = hash_combine(0x51ab5f1e0aa015cbULL, num);
  return hash_combine(h, den);
}

std::vector<Rat> primitive_integer_vector(const std::vector<Rat>& row) {
  Int lcm(1);
  for (const Rat& r : row)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
  std::vector<Int> scaled;
  scaled.reserve(row.size());
  Int gcd(0);
  for (const Rat& r : row) {
    Int v = r.get_num() * (lcm / r.get_den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), v.get_mpz_t());
    scaled.push_back(v);
  }
  if (gcd == 0) return row; // zero vector
  int lead = 0;
  for (const Int& v : scaled) {
    if (v != 0) {
      lead = sgn(v);
      break;
    }
  }
  if (lead < 0) gcd = -gcd;
  std::vector<Rat> out;
  out.reserve(row.size());
  for (const Int& v : scaled) out.emplace_back(Rat(v / gcd));
  return out;
}

} // namespace ietlab
