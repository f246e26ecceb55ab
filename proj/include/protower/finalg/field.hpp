#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace protower {

/// Exact ground fields.  A field object carries whatever runtime data its
/// elements need (the modulus for F_p) and performs all arithmetic; the
/// elements themselves are plain values.
template <class F>
concept ExactField = requires(const F& f, const typename F::value_type& a,
                              const std::string& s, std::int64_t n) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.equal(a, a) } -> std::same_as<bool>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.parse(s) } -> std::same_as<typename F::value_type>;
  { f.characteristic() } -> std::same_as<std::uint32_t>;
};

class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 2) : p_(p) {
    if (p < 2 || p >= (1u << 31)) {
      throw std::invalid_argument("PrimeField: modulus must satisfy 2 <= p < 2^31");
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                    " is not prime");
      }
    }
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  std::string to_string(value_type a) const { return std::to_string(a); }
  value_type parse(const std::string& s) const {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("PrimeField: bad element '" + s + "'");
    return from_int(v);
  }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using value_type = mpq_class;

  std::uint32_t characteristic() const { return 0; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t n) const {
    return value_type(mpz_class(std::to_string(n)));
  }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("RationalField: inverse of zero");
    return 1 / a;
  }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  // "num/den", or "num" for integers
  std::string to_string(const value_type& a) const { return a.get_str(); }
  value_type parse(const std::string& s) const {
    value_type v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("RationalField: bad element '" + s + "'");
    v.canonicalize();
    return v;
  }

  bool operator==(const RationalField&) const = default;
};

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

}  // namespace protower
