#include "flatpack/rat.hpp"

#include <ostream>
#include <stdexcept>

namespace flatpack {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::from_ints(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(q);
}

namespace {

bool valid_int(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view n = text.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(n, true) || !valid_int(d, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string ns(n);
  if (!ns.empty() && ns[0] == '+') ns.erase(0, 1);
  mpz_class num(ns, 10), den(std::string(d), 10);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return from_ints(num, den);
}

std::string Rat::str() const { return v_.get_str(10); }

std::optional<Rat> Rat::sqrt_exact() const {
  if (sign() < 0) return std::nullopt;
  mpz_class n = v_.get_num(), d = v_.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return from_ints(rn, rd);
}

Rat Rat::abs() const { return sign() < 0 ? -*this : *this; }

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::size_t Rat::hash() const {
  std::size_t h1 = std::hash<std::string>{}(v_.get_num().get_str(16));
  std::size_t h2 = std::hash<std::string>{}(v_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

mpz_class floor_rat(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return q;
}

}  // namespace flatpack
