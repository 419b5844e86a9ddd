#pragma once
/*
 * exactnum.hpp
 * ------------
 * Exact integer arithmetic used throughout the library:
 *
 *   - BigScalar, an arbitrary precision signed integer (Boost cpp_int);
 *   - elementary number theory (phi, divisors, Bezout, prime powers, binomials);
 *   - IntPolynomial and the cyclotomic polynomials Phi_N;
 *   - CycloElem<Int>, elements of the group ring Z[x]/(x^N - 1).
 *
 * A primitive N-th root of unity is modelled by the class of x in
 * Z[x]/(x^N - 1). Products are cyclic convolutions; nothing is reduced
 * modulo Phi_N until an element is converted back to a rational integer.
 *
 * CycloElem is parameterised on its coordinate type so that hot loops can
 * run on int64_t / __int128 whenever an a-priori bound proves the
 * coordinates fit. BigScalar is the default.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "circulant/errors.hpp"

namespace circulant {

using BigScalar = boost::multiprecision::cpp_int;
using int128 = __int128;

inline BigScalar to_big(std::int64_t v) { return BigScalar(v); }

inline BigScalar to_big(int128 v) {
  const bool neg = v < 0;
  // Two's complement negation of INT128_MIN is fine on the unsigned side.
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigScalar r = BigScalar(static_cast<std::uint64_t>(mag >> 64));
  r <<= 64;
  r += BigScalar(static_cast<std::uint64_t>(mag));
  return neg ? BigScalar(-r) : r;
}

inline const BigScalar& to_big(const BigScalar& v) { return v; }

// Coordinate types accepted by CycloElem.
template <class T>
concept ExactInt = std::same_as<T, std::int64_t> || std::same_as<T, int128> || std::same_as<T, BigScalar>;

// ---------------------------------------------------------------------------
// Number theory
// ---------------------------------------------------------------------------

/// Prime factorisation by trial division, ascending primes.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw InvalidInput("factorize: n must be positive");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned r = 0;
    while (n % p == 0) {
      n /= p;
      ++r;
    }
    out.emplace_back(p, r);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw InvalidInput("euler_phi: n must be positive");
  std::uint64_t result = n;
  for (auto [p, r] : factorize(n)) result = result / p * (p - 1);
  return result;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw InvalidInput("divisors: n must be positive");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    small.push_back(k);
    if (k != n / k) large.push_back(n / k);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

struct BezoutResult {
  std::int64_t g;
  std::int64_t s;
  std::int64_t t;
};

/// Extended Euclid: s*a + t*b == g == gcd(a, b), with g >= 0.
inline BezoutResult bezout(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// (p, r) with n == p^r and r >= 1; empty for 1 and for n with two distinct prime factors.
inline std::optional<PrimePower> is_prime_power(std::uint64_t n) {
  if (n == 0) throw InvalidInput("is_prime_power: n must be positive");
  if (n == 1) return std::nullopt;
  const auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return PrimePower{f[0].first, f[0].second};
}

inline BigScalar binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) throw InvalidInput("binomial: need 0 <= k <= n");
  k = std::min(k, n - k);
  BigScalar r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) after this step
  }
  return r;
}

inline BigScalar factorial(unsigned n) {
  BigScalar r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// ---------------------------------------------------------------------------
// Dense univariate integer polynomials
// ---------------------------------------------------------------------------

/// Integer polynomial, lowest degree first, no trailing zeros. The zero
/// polynomial has an empty coefficient list.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigScalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// x^n - 1
  static IntPolynomial x_pow_minus_one(std::size_t n) {
    std::vector<BigScalar> c(n + 1);
    c[0] = -1;
    c[n] += 1;
    return IntPolynomial(std::move(c));
  }

  const std::vector<BigScalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  BigScalar operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigScalar(0); }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigScalar> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Quotient and remainder by a monic divisor. Exact over Z.
  friend std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& num, const IntPolynomial& den) {
    if (!den.is_monic()) throw InvalidInput("divmod_monic: divisor must be monic");
    std::vector<BigScalar> rem = num.coeffs_;
    const std::size_t dd = den.coeffs_.size() - 1;
    if (rem.size() <= dd) return {IntPolynomial{}, num};
    std::vector<BigScalar> quo(rem.size() - dd);
    for (std::size_t k = rem.size(); k-- > dd;) {
      const BigScalar lead = rem[k];
      if (lead == 0) continue;
      quo[k - dd] = lead;
      for (std::size_t i = 0; i <= dd; ++i) rem[k - dd + i] -= lead * den.coeffs_[i];
    }
    rem.resize(dd);
    return {IntPolynomial(std::move(quo)), IntPolynomial(std::move(rem))};
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const BigScalar& c = coeffs_[k];
      if (c == 0) continue;
      const BigScalar mag = c < 0 ? BigScalar(-c) : c;
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      if (mag != 1 || k == 0) s += mag.str();
      if (k > 0) s += k == 1 ? "x" : "x^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigScalar> coeffs_;
};

/// Phi_N by exact division of x^N - 1 by Phi_k over the proper divisors k of N.
inline IntPolynomial cyclotomic_poly(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclotomic_poly: N must be positive");
  static std::mutex mu;
  static std::map<std::size_t, IntPolynomial> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPolynomial denom(std::vector<BigScalar>{1});
  for (std::uint64_t k : divisors(n))
    if (k != n) denom = denom * cyclotomic_poly(k);
  auto [q, r] = divmod_monic(IntPolynomial::x_pow_minus_one(n), denom);
  if (!r.is_zero()) throw InexactDivision("x^N - 1 not divisible by the proper cyclotomic factors");
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(q)).first->second;
}

// ---------------------------------------------------------------------------
// Group ring Z[x]/(x^N - 1)
// ---------------------------------------------------------------------------

template <ExactInt Int = BigScalar>
class CycloElem {
 public:
  using value_type = Int;

  /// Zero of order n.
  explicit CycloElem(std::size_t order) : coeffs_(order, Int(0)) {
    if (order == 0) throw InvalidInput("CycloElem: order must be positive");
  }

  CycloElem(std::size_t order, std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    if (order == 0) throw InvalidInput("CycloElem: order must be positive");
    if (coeffs_.size() != order) throw InvalidInput("CycloElem: coefficient vector length must equal order");
  }

  static CycloElem constant(std::size_t order, Int c) {
    CycloElem e(order);
    e.coeffs_[0] = std::move(c);
    return e;
  }

  /// zeta^k, exponent taken mod order.
  static CycloElem root_power(std::size_t order, std::size_t k) {
    CycloElem e(order);
    e.coeffs_[k % order] = 1;
    return e;
  }

  std::size_t order() const { return coeffs_.size(); }
  std::span<const Int> coeffs() const { return coeffs_; }
  const Int& operator[](std::size_t k) const { return coeffs_[k]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& c) { return c == 0; });
  }

  /// k if this is exactly zeta^k.
  std::optional<std::size_t> as_root_power() const {
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      if (coeffs_[k] != 1 || hit) return std::nullopt;
      hit = k;
    }
    return hit;
  }

  /// this += zeta^shift * src
  void add_rotated(const CycloElem& src, std::size_t shift) {
    check_order(src);
    const std::size_t n = coeffs_.size();
    shift %= n;
    for (std::size_t k = 0, t = shift; k < n; ++k) {
      coeffs_[t] += src.coeffs_[k];
      if (++t == n) t = 0;
    }
  }

  /// Galois conjugate zeta -> zeta^{-1}.
  CycloElem conj() const {
    CycloElem r(order());
    const std::size_t n = order();
    for (std::size_t k = 0; k < n; ++k) r.coeffs_[(n - k) % n] = coeffs_[k];
    return r;
  }

  CycloElem& operator+=(const CycloElem& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  CycloElem& operator-=(const CycloElem& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  CycloElem& operator*=(const Int& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  CycloElem operator-() const {
    CycloElem r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend bool operator==(const CycloElem&, const CycloElem&) = default;

  /// Divide every coordinate by s, which must divide each of them.
  void divide_exact(const Int& s) {
    for (auto& c : coeffs_) {
      if (c % s != 0) throw InexactDivision("CycloElem coordinate not divisible");
      c /= s;
    }
  }

  /// Same element with BigScalar coordinates.
  CycloElem<BigScalar> widen() const {
    std::vector<BigScalar> c;
    c.reserve(coeffs_.size());
    for (const auto& v : coeffs_) c.push_back(to_big(v));
    return CycloElem<BigScalar>(coeffs_.size(), std::move(c));
  }

  std::string to_string() const {
    std::vector<BigScalar> c;
    for (const auto& v : coeffs_) c.push_back(to_big(v));
    std::string s = IntPolynomial(std::move(c)).to_string();
    std::replace(s.begin(), s.end(), 'x', 'z');
    return s;
  }

 private:
  template <ExactInt>
  friend class CycloElem;

  void check_order(const CycloElem& o) const {
    if (o.order() != order()) throw InvalidInput("CycloElem: order mismatch");
  }

  std::vector<Int> coeffs_;
};

/// Cyclic convolution.
template <ExactInt Int>
CycloElem<Int> cyclo_mul(const CycloElem<Int>& a, const CycloElem<Int>& b) {
  if (a.order() != b.order()) throw InvalidInput("cyclo_mul: order mismatch");
  const std::size_t n = a.order();
  std::vector<Int> c(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0, t = i; j < n; ++j) {
      if (b[j] != 0) c[t] += a[i] * b[j];
      if (++t == n) t = 0;
    }
  }
  return CycloElem<Int>(n, std::move(c));
}

/// Reduce modulo Phi_N; the remainder must be a constant, which is returned.
template <ExactInt Int>
BigScalar cyclo_to_int(const CycloElem<Int>& a) {
  std::vector<BigScalar> c;
  c.reserve(a.order());
  for (const auto& v : a.coeffs()) c.push_back(to_big(v));
  auto [q, r] = divmod_monic(IntPolynomial(std::move(c)), cyclotomic_poly(a.order()));
  if (r.degree() > 0) throw NotRational("remainder mod Phi_" + std::to_string(a.order()) + " is " + r.to_string());
  return r[0];
}

/// Bulk version of cyclo_to_int for one fixed order. Holds the table
/// x^k mod Phi_N (k < N), so each reduction is a small matrix-vector product.
class CyclotomicReducer {
 public:
  explicit CyclotomicReducer(std::size_t order) : order_(order) {
    const IntPolynomial phi = cyclotomic_poly(order);
    width_ = static_cast<std::size_t>(phi.degree());
    table_.assign(order * width_, 0);
    // r_0 = 1, r_{k+1} = x * r_k mod Phi_N
    std::vector<BigScalar> r(width_ + 1);
    r[0] = 1;
    for (std::size_t k = 0; k < order; ++k) {
      for (std::size_t i = 0; i < width_; ++i) {
        if (boost::multiprecision::abs(r[i]) > (BigScalar(1) << 40))
          throw BudgetExceeded("CyclotomicReducer: reduction table entries too large");
        table_[k * width_ + i] = static_cast<std::int64_t>(r[i]);
      }
      std::rotate(r.rbegin(), r.rbegin() + 1, r.rend());  // multiply by x
      const BigScalar lead = r[width_];
      for (std::size_t i = 0; i <= width_; ++i) r[i] -= lead * phi[i];
    }
  }

  std::size_t order() const { return order_; }

  template <ExactInt Int>
  BigScalar to_int(const CycloElem<Int>& a) const {
    if (a.order() != order_) throw InvalidInput("CyclotomicReducer: order mismatch");
    if constexpr (std::same_as<Int, std::int64_t>) {
      // |coord| < 2^63 and |table| <= 2^40 with order < 2^20 keeps the sum below 2^124.
      std::vector<int128> rem(width_, 0);
      accumulate(a, rem);
      return finish(rem);
    } else {
      std::vector<BigScalar> rem(width_, 0);
      accumulate(a, rem);
      return finish(rem);
    }
  }

 private:
  template <class Int, class Acc>
  void accumulate(const CycloElem<Int>& a, std::vector<Acc>& rem) const {
    for (std::size_t k = 0; k < order_; ++k) {
      if (a[k] == 0) continue;
      Acc c;
      if constexpr (std::same_as<Acc, BigScalar>)
        c = to_big(a[k]);
      else
        c = Acc(a[k]);
      const std::int64_t* row = &table_[k * width_];
      for (std::size_t i = 0; i < width_; ++i)
        if (row[i] != 0) rem[i] += c * Acc(row[i]);
    }
  }

  template <class Acc>
  BigScalar finish(const std::vector<Acc>& rem) const {
    for (std::size_t i = 1; i < width_; ++i)
      if (rem[i] != 0) throw NotRational("non-constant remainder mod Phi_" + std::to_string(order_));
    return to_big(rem[0]);
  }

  std::size_t order_;
  std::size_t width_ = 0;  // phi(order)
  std::vector<std::int64_t> table_;
};

}  // namespace circulant
