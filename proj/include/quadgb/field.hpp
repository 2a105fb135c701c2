#pragma once

// Coefficient fields: prime fields GF(p) and the rationals.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace quadgb {

/// A field as used by every algorithm in the library. Elements are plain
/// values; all arithmetic goes through the (possibly stateful) field object.
template <class F>
concept Field = requires(const F f, const typename F::value_type a, long n, std::mt19937_64& rng) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.equal(a, a) } -> std::same_as<bool>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.name() } -> std::same_as<std::string>;
  { f.random(rng) } -> std::same_as<typename F::value_type>;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Uniform integer in [0, n) without relying on library distributions, so
/// that seeded runs are reproducible across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// GF(p), elements stored as canonical representatives in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p >= (1u << 31)) throw std::invalid_argument("GF(p): p must be a prime below 2^31");
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  value_type from_mpz(const mpz_class& n) const {
    mpz_class r = n % p_;
    if (r < 0) r += p_;
    return static_cast<value_type>(r.get_ui());
  }
  value_type from_rational(const mpq_class& q) const {
    value_type den = from_mpz(q.get_den());
    if (den == 0) throw std::domain_error("denominator vanishes in GF(" + std::to_string(p_) + ")");
    return mul(from_mpz(q.get_num()), inv(den));
  }
  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(p)");
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  std::uint64_t characteristic() const { return p_; }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  value_type random(std::mt19937_64& rng) const { return static_cast<value_type>(uniform_below(rng, p_)); }
  /// Sign-free printing: a coefficient is "negative" when it is written as p - c.
  bool prints_negative(value_type) const { return false; }

  std::uint32_t prime() const { return p_; }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, elements kept in lowest terms with positive denominator.
class RationalField {
 public:
  using value_type = mpq_class;

  /// Random elements are integers drawn from [-bound, bound].
  explicit RationalField(long random_bound = 1000) : bound_(random_bound) {}

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long n) const { return mpq_class(n); }
  value_type from_mpz(const mpz_class& n) const { return mpq_class(n); }
  value_type from_rational(const mpq_class& q) const {
    mpq_class r(q);
    r.canonicalize();
    return r;
  }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero in QQ");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  std::uint64_t characteristic() const { return 0; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }
  value_type random(std::mt19937_64& rng) const {
    return mpq_class(static_cast<long>(uniform_below(rng, 2 * bound_ + 1)) - bound_);
  }
  bool prints_negative(const value_type& a) const { return sgn(a) < 0; }

  bool operator==(const RationalField&) const { return true; }

 private:
  long bound_;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

}  // namespace quadgb
