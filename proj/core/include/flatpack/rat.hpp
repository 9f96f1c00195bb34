#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace flatpack {

// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
public:
  Rat() = default;
  Rat(long v) : v_(v) {}                              // NOLINT(implicit)
  Rat(int v) : v_(static_cast<long>(v)) {}            // NOLINT(implicit)
  Rat(long num, long den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  static Rat from_ints(const mpz_class& num, const mpz_class& den);

  // Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input or zero denominator.
  static Rat parse(std::string_view text);
  std::string str() const;

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  // Exact square root when this is the square of a rational.
  std::optional<Rat> sqrt_exact() const;

  Rat abs() const;
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

// Floor of a rational as an integer.
mpz_class floor_rat(const Rat& r);

}  // namespace flatpack

template <>
struct std::hash<flatpack::Rat> {
  std::size_t operator()(const flatpack::Rat& r) const noexcept { return r.hash(); }
};
