#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "protower/finalg/errors.hpp"
#include "protower/finalg/matrix.hpp"

namespace protower {

/// An element of k[x, x^-1][[y]] modulo y^L, over F_p.  Coefficient n is a
/// Laurent polynomial in x stored as exponent -> nonzero scalar.
class TruncatedLaurentSeries {
 public:
  using Poly = std::map<std::int64_t, std::uint32_t>;

  TruncatedLaurentSeries(PrimeField k, std::size_t levels) : k_(k), coeffs_(levels) {}

  const PrimeField& field() const { return k_; }
  std::size_t levels() const { return coeffs_.size(); }
  const Poly& coefficient(std::size_t n) const { return coeffs_.at(n); }
  const std::vector<Poly>& coefficients() const { return coeffs_; }

  std::uint32_t get(std::size_t n, std::int64_t e) const {
    auto it = coeffs_.at(n).find(e);
    return it == coeffs_.at(n).end() ? 0 : it->second;
  }
  void set(std::size_t n, std::int64_t e, std::uint32_t c) {
    c %= k_.modulus();
    if (c == 0)
      coeffs_.at(n).erase(e);
    else
      coeffs_.at(n)[e] = c;
  }
  void add_to(std::size_t n, std::int64_t e, std::uint32_t c) { set(n, e, k_.add(get(n, e), c)); }

  TruncatedLaurentSeries operator+(const TruncatedLaurentSeries& o) const {
    check_compatible(o);
    auto r = *this;
    for (std::size_t n = 0; n < levels(); ++n)
      for (auto [e, c] : o.coeffs_[n]) r.add_to(n, e, c);
    return r;
  }
  TruncatedLaurentSeries operator*(const TruncatedLaurentSeries& o) const {
    check_compatible(o);
    TruncatedLaurentSeries r(k_, levels());
    for (std::size_t a = 0; a < levels(); ++a)
      for (std::size_t b = 0; a + b < levels(); ++b)
        for (auto [ea, ca] : coeffs_[a])
          for (auto [eb, cb] : o.coeffs_[b]) r.add_to(a + b, ea + eb, k_.mul(ca, cb));
    return r;
  }
  bool operator==(const TruncatedLaurentSeries& o) const { return k_ == o.k_ && coeffs_ == o.coeffs_; }

  /// No negative powers of x in any kept coefficient.
  bool is_polynomial() const {
    for (const auto& p : coeffs_)
      if (!p.empty() && p.begin()->first < 0) return false;
    return true;
  }

  /// Lowest x-exponent of coefficient n, absent for zero.
  std::optional<std::int64_t> valuation(std::size_t n) const {
    if (coeffs_.at(n).empty()) return std::nullopt;
    return coeffs_.at(n).begin()->first;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t n = 0; n < levels(); ++n)
      for (auto [e, c] : coeffs_[n]) {
        if (!out.empty()) out += " + ";
        if (c != 1) out += std::to_string(c) + "*";
        out += "x^" + std::to_string(e);
        if (n > 0) out += "*y^" + std::to_string(n);
      }
    return out.empty() ? "0" : out;
  }

 private:
  void check_compatible(const TruncatedLaurentSeries& o) const {
    if (!(k_ == o.k_) || levels() != o.levels()) throw ValidationError("TruncatedLaurentSeries: incompatible operands");
  }

  PrimeField k_;
  std::vector<Poly> coeffs_;
};

/// s = sum_n x^(-2^n) y^n modulo y^L.
inline TruncatedLaurentSeries obstruction_series(std::size_t levels, PrimeField k = PrimeField{2}) {
  if (levels < 1) throw ValidationError("obstruction_series: need at least one level");
  if (levels > 62) throw ValidationError("obstruction_series: exponent 2^L does not fit");
  TruncatedLaurentSeries s(k, levels);
  for (std::size_t n = 0; n < levels; ++n) s.set(n, -(std::int64_t{1} << n), 1);
  return s;
}

struct SeriesSolution {
  std::optional<std::size_t> valuation;         // minimal x-valuation of q_0
  std::optional<TruncatedLaurentSeries> q;       // a solution attaining it
  std::size_t equations = 0;
  std::size_t unknowns = 0;
};

namespace detail {
// q_j has coefficients at exponents 0..D, unknown index j * (D + 1) + e.
// Coefficient of x^(-e), e >= 1, in y^n of q s is sum_m q_{n-m}[2^m - e].
inline Matrix<PrimeField> series_system(const PrimeField& k, std::size_t levels, std::size_t degree) {
  const std::size_t w = degree + 1;
  std::vector<Vec<PrimeField>> rows;
  for (std::size_t n = 0; n < levels; ++n) {
    const std::int64_t top = std::int64_t{1} << n;
    for (std::int64_t e = 1; e <= top; ++e) {
      Vec<PrimeField> row(levels * w, 0);
      bool any = false;
      for (std::size_t m = 0; m <= n; ++m) {
        const std::int64_t idx = (std::int64_t{1} << m) - e;
        if (idx < 0 || idx > static_cast<std::int64_t>(degree)) continue;
        row[(n - m) * w + static_cast<std::size_t>(idx)] = 1;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  return Matrix<PrimeField>::from_rows(k, levels * w, rows);
}
}  // namespace detail

/// Smallest v such that some q with polynomial coefficients of degree <= D,
/// q_0 != 0 and x^v exactly dividing q_0, makes q s polynomial modulo y^L.
inline SeriesSolution min_valuation_of_solution(std::size_t levels, std::size_t degree,
                                                PrimeField k = PrimeField{2}) {
  if (levels < 1) throw ValidationError("min_valuation_of_solution: need at least one level");
  if (levels > 20) throw ValidationError("min_valuation_of_solution: too many levels");
  const std::size_t w = degree + 1;
  auto sys = detail::series_system(k, levels, degree);
  SeriesSolution out;
  out.equations = sys.rows();
  out.unknowns = sys.cols();
  // solutions with q_0[0..v-1] = 0 form W_v; v is attained iff W_v != W_{v+1}
  std::vector<Vec<PrimeField>> rows;
  for (std::size_t r = 0; r < sys.rows(); ++r) rows.push_back(sys.row(r));
  auto dim_of = [&](std::size_t v) {
    auto cons = rows;
    for (std::size_t i = 0; i < v; ++i) cons.push_back(unit_vec(k, sys.cols(), i));
    return sys.cols() - rank(Matrix<PrimeField>::from_rows(k, sys.cols(), cons));
  };
  std::size_t prev = dim_of(0);
  for (std::size_t v = 0; v <= degree; ++v) {
    const std::size_t next = dim_of(v + 1);
    if (next < prev) {
      out.valuation = v;
      auto cons = rows;
      Vec<PrimeField> rhs(cons.size(), 0);
      for (std::size_t i = 0; i <= v; ++i) {
        cons.push_back(unit_vec(k, sys.cols(), i));
        rhs.push_back(i == v ? 1 : 0);
      }
      auto x = *solve(Matrix<PrimeField>::from_rows(k, sys.cols(), cons), rhs);
      TruncatedLaurentSeries q(k, levels);
      for (std::size_t j = 0; j < levels; ++j)
        for (std::size_t e = 0; e < w; ++e) q.set(j, static_cast<std::int64_t>(e), x[j * w + e]);
      out.q = std::move(q);
      return out;
    }
    prev = next;
  }
  return out;
}

/// q s modulo y^L has no negative x-powers.
inline bool clears_denominators(const TruncatedLaurentSeries& q) {
  return (q * obstruction_series(q.levels(), q.field())).is_polynomial();
}

}  // namespace protower
