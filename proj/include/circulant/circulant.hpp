#pragma once
/*
 * circulant.hpp
 * -------------
 * Determinant and permanent expansions of the generic circulant
 * Circ(x_0, ..., x_{N-1}) and of the sparse circulant A^d_alpha, whose
 * first row of length d carries x_i at position alpha_i and zeros elsewhere.
 *
 * Both determinants are products of "twisted" linear forms
 *
 *     det A^d_alpha = prod_{j=0}^{d-1} sum_i zeta^{j*alpha_i} x_i,   zeta^d = 1,
 *
 * expanded exactly in Z[zeta][x] and reduced to integer coefficients at the
 * end. Independent routes to the same numbers live alongside:
 *   - det_brute_force / per_expand: Leibniz sums over all permutations;
 *   - coefficient_oracle: one coefficient at a time, by a Ryser-style
 *     inclusion-exclusion permanent over the columns of the eigenvalue
 *     matrix;
 *   - per_support / p_count_formula: the permanent support as lattice
 *     points, and its closed-form count.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "circulant/errors.hpp"
#include "circulant/exactnum.hpp"
#include "circulant/mpoly.hpp"

namespace circulant {

inline constexpr std::uint64_t kDefaultTermBudget = 5'000'000;
inline constexpr std::size_t kMaxPermanentOrder = 10;
inline constexpr std::size_t kMaxBruteForceOrder = 8;
inline constexpr std::size_t kMaxOracleOrder = 16;

struct Term {
  MultisetIndex multiset;
  BigScalar coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Expanded determinant or permanent. For the generic circulant order == nvars
/// and alpha == (0, 1, ..., N-1).
struct ExpansionReport {
  std::string kind;  // "det" or "per"
  std::size_t nvars = 0;
  std::size_t order = 0;
  std::vector<std::uint32_t> alpha;
  std::vector<Term> terms;  // ascending multisets, nonzero coefficients
  std::size_t term_count = 0;

  /// Coefficient of the monomial, 0 when absent.
  BigScalar coefficient(const MultisetIndex& m) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), m,
                               [](const Term& t, const MultisetIndex& key) { return t.multiset < key; });
    return it != terms.end() && it->multiset == m ? it->coeff : BigScalar(0);
  }

  friend bool operator==(const ExpansionReport&, const ExpansionReport&) = default;
};

inline ExpansionReport make_report(std::string kind, std::vector<std::uint32_t> alpha, std::size_t order,
                                   const SparsePoly<BigScalar>& p) {
  ExpansionReport r;
  r.kind = std::move(kind);
  r.nvars = p.nvars();
  r.order = order;
  r.alpha = std::move(alpha);
  r.terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r.terms.push_back({multiset_of(p.exps(i)), p.coeff(i)});
  r.term_count = r.terms.size();
  return r;
}

inline std::vector<std::uint32_t> identity_alpha(std::size_t n) {
  std::vector<std::uint32_t> a(n);
  std::iota(a.begin(), a.end(), 0u);
  return a;
}

inline void check_multiset(std::size_t nvars, std::size_t degree, const MultisetIndex& m) {
  if (m.degree() != degree)
    throw InvalidInput("multiset " + m.to_string() + " must have " + std::to_string(degree) + " entries");
  for (auto a : m)
    if (a >= nvars) throw InvalidInput("multiset entry " + std::to_string(a) + " out of range");
}

// ---------------------------------------------------------------------------
// Products of twisted linear forms
// ---------------------------------------------------------------------------

namespace detail {

/// alpha reduced mod d; throws when entries repeat or are out of [0, d].
inline std::vector<std::uint32_t> reduce_alpha(std::size_t d, const std::vector<std::uint32_t>& alpha) {
  if (d == 0) throw InvalidInput("order d must be positive");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > d) throw InvalidInput("alpha entries must lie in [0, d]");
    if (i > 0 && alpha[i] <= alpha[i - 1]) throw InvalidInput("alpha must be strictly increasing");
  }
  std::vector<std::uint32_t> r(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) r[i] = static_cast<std::uint32_t>(alpha[i] % d);
  auto sorted = r;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("alpha entries must be distinct mod d");
  return r;
}

inline void check_budget(std::size_t nvars, std::size_t degree, std::uint64_t budget) {
  // number of monomials of the final degree bounds every intermediate product
  const BigScalar terms = binomial(static_cast<std::int64_t>(nvars + degree) - 1, static_cast<std::int64_t>(degree));
  if (terms > budget)
    throw BudgetExceeded("expansion needs up to " + terms.str() + " terms, budget is " + std::to_string(budget));
}

template <ExactInt Int>
SparsePoly<CycloElem<Int>> twisted_product(std::size_t d, const std::vector<std::uint32_t>& alpha,
                                           std::size_t j_begin, std::size_t j_end) {
  const std::size_t n = alpha.size();
  auto p = SparsePoly<CycloElem<Int>>::constant(n, CycloElem<Int>::constant(d, 1));
  std::vector<CycloElem<Int>> form;
  for (std::size_t j = j_begin; j < j_end; ++j) {
    form.clear();
    for (std::size_t i = 0; i < n; ++i) form.push_back(CycloElem<Int>::root_power(d, (j * alpha[i]) % d));
    p = mul_linear_form(p, form);
  }
  return p;
}

/// Every coordinate of the partial product is bounded by nvars^factors in
/// absolute value (each of the nvars^factors choice sequences contributes one
/// unit), so int64 suffices while that power stays below 2^63.
inline bool fits_int64(std::size_t nvars, std::size_t factors) {
  BigScalar bound = 1;
  for (std::size_t k = 0; k < factors; ++k) bound *= nvars;
  return bound < (BigScalar(1) << 63);
}

}  // namespace detail

/// prod_{j in [j_begin, j_end)} (sum_i zeta_d^{j*alpha_i} x_i) with integer
/// coefficients. alpha must already be reduced (see reduce_alpha).
inline SparsePoly<BigScalar> twisted_product_integral(std::size_t d, const std::vector<std::uint32_t>& alpha,
                                                      std::size_t j_begin, std::size_t j_end,
                                                      std::uint64_t budget = kDefaultTermBudget) {
  if (j_end < j_begin) throw InvalidInput("twisted_product_integral: empty factor range");
  detail::check_budget(alpha.size(), j_end - j_begin, budget);
  if (detail::fits_int64(alpha.size(), j_end - j_begin))
    return reduce_coefficients(detail::twisted_product<std::int64_t>(d, alpha, j_begin, j_end));
  return reduce_coefficients(detail::twisted_product<BigScalar>(d, alpha, j_begin, j_end));
}

/// det(A^d_alpha).
inline ExpansionReport det_expand_general(std::size_t d, const std::vector<std::uint32_t>& alpha,
                                          std::uint64_t budget = kDefaultTermBudget) {
  if (alpha.size() < 2) throw InvalidInput("det_expand_general: need at least two variables");
  const auto reduced = detail::reduce_alpha(d, alpha);
  auto p = twisted_product_integral(d, reduced, 0, d, budget);
  p.check_invariants();
  return make_report("det", alpha, d, p);
}

/// det(Circ(x_0, ..., x_{N-1})).
inline ExpansionReport det_expand(std::size_t n, std::uint64_t budget = kDefaultTermBudget) {
  if (n == 0) throw InvalidInput("det_expand: N must be positive");
  auto p = twisted_product_integral(n, identity_alpha(n), 0, n, budget);
  p.check_invariants();
  return make_report("det", identity_alpha(n), n, p);
}

// ---------------------------------------------------------------------------
// Leibniz sums
// ---------------------------------------------------------------------------

namespace detail {

// Exponents of a degree-N monomial in N <= 15 variables, 4 bits each.
inline std::uint64_t pack(const std::vector<Exponent>& e) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < e.size(); ++i) key |= std::uint64_t{e[i]} << (4 * i);
  return key;
}

inline SparsePoly<BigScalar> leibniz(std::size_t n, bool signed_sum) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::unordered_map<std::uint64_t, std::int64_t> acc;
  std::vector<Exponent> e(n);
  do {
    std::fill(e.begin(), e.end(), 0);
    // row i, column sigma(i) holds x_{(sigma(i) - i) mod N}
    for (std::size_t i = 0; i < n; ++i) ++e[(sigma[i] + n - i) % n];
    std::int64_t sign = 1;
    if (signed_sum) {
      std::size_t inversions = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) inversions += sigma[a] > sigma[b];
      if (inversions % 2) sign = -1;
    }
    acc[pack(e)] += sign;
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<std::pair<ExponentVector, BigScalar>> terms;
  for (auto [key, c] : acc) {
    std::vector<Exponent> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Exponent>((key >> (4 * i)) & 0xF);
    terms.emplace_back(ExponentVector(std::move(v)), BigScalar(c));
  }
  return SparsePoly<BigScalar>::from_terms(n, static_cast<unsigned>(n), std::move(terms));
}

}  // namespace detail

/// per(Circ(x_0, ..., x_{N-1})) by enumerating all N! permutations.
inline ExpansionReport per_expand(std::size_t n) {
  if (n == 0) throw InvalidInput("per_expand: N must be positive");
  if (n > kMaxPermanentOrder) throw BudgetExceeded("per_expand: N! enumeration limited to N <= 10");
  return make_report("per", identity_alpha(n), n, detail::leibniz(n, false));
}

/// Leibniz expansion of det(Circ(x_0, ..., x_{N-1})).
inline ExpansionReport det_brute_force(std::size_t n) {
  if (n == 0) throw InvalidInput("det_brute_force: N must be positive");
  if (n > kMaxBruteForceOrder) throw BudgetExceeded("det_brute_force: N! enumeration limited to N <= 8");
  return make_report("det", identity_alpha(n), n, detail::leibniz(n, true));
}

// ---------------------------------------------------------------------------
// Permanent support
// ---------------------------------------------------------------------------

/// Calls visit(multiplicities) for each (M_0, ..., M_{N-1}) >= 0 with
/// sum M_i = N and sum i*M_i = 0 mod N. M_0 carries weight 0 and M_{N-1}
/// weight -1 mod N, so both are solved for instead of searched.
template <class Visitor>
void for_each_per_support(std::size_t n, Visitor&& visit) {
  if (n == 0) throw InvalidInput("per_support: N must be positive");
  std::vector<Exponent> m(n, 0);
  if (n == 1) {
    m[0] = 1;
    visit(std::span<const Exponent>(m));
    return;
  }
  // free variables are 1 .. n-2
  auto rec = [&](auto&& self, std::size_t v, std::size_t used, std::size_t residue) -> void {
    if (v == n - 1) {
      // need M_{n-1} = residue (mod n), M_{n-1} <= n - used
      for (std::size_t last = residue; last <= n - used; last += n) {
        m[n - 1] = static_cast<Exponent>(last);
        m[0] = static_cast<Exponent>(n - used - last);
        visit(std::span<const Exponent>(m));
      }
      m[n - 1] = 0;
      return;
    }
    for (std::size_t k = 0; used + k <= n; ++k) {
      m[v] = static_cast<Exponent>(k);
      self(self, v + 1, used + k, (residue + k * v) % n);
    }
    m[v] = 0;
  };
  rec(rec, 1, 0, 0);
}

inline std::uint64_t count_per_support(std::size_t n) {
  std::uint64_t count = 0;
  for_each_per_support(n, [&](std::span<const Exponent>) { ++count; });
  return count;
}

/// Monomials of per(Circ), as ascending multisets.
inline std::vector<MultisetIndex> per_support(std::size_t n) {
  std::vector<MultisetIndex> out;
  for_each_per_support(n, [&](std::span<const Exponent> m) { out.push_back(multiset_of(m)); });
  std::sort(out.begin(), out.end());
  return out;
}

/// (1/N) sum_{k | N} phi(N/k) C(2k-1, k)
inline BigScalar p_count_formula(std::size_t n) {
  if (n == 0) throw InvalidInput("p_count_formula: N must be positive");
  BigScalar sum = 0;
  for (std::uint64_t k : divisors(n)) sum += euler_phi(n / k) * binomial(2 * static_cast<std::int64_t>(k) - 1, k);
  if (sum % n != 0) throw InexactDivision("p_count_formula: sum not divisible by N");
  return sum / n;
}

// ---------------------------------------------------------------------------
// Single coefficients
// ---------------------------------------------------------------------------

namespace detail {

// Ryser's formula with grouped columns: variable i appears as M_i identical
// columns of the d x d matrix (zeta^{j*alpha_i})_{j,i}. Choosing s_i of them
// happens in C(M_i, s_i) ways and all choices have the same row sums.
template <ExactInt Int>
BigScalar ryser_coefficient(std::size_t d, const std::vector<std::uint32_t>& alpha, const ExponentVector& mult) {
  const std::size_t n = alpha.size();
  std::vector<std::vector<Int>> choose(n);
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned s = 0; s <= mult[i]; ++s) {
      if constexpr (std::same_as<Int, BigScalar>)
        choose[i].push_back(binomial(mult[i], s));
      else
        choose[i].push_back(static_cast<Int>(static_cast<std::int64_t>(binomial(mult[i], s))));
    }

  CycloElem<Int> total(d);
  std::vector<unsigned> s(n, 0);
  for (;;) {
    // odometer increment over 0 <= s_i <= M_i
    std::size_t i = 0;
    while (i < n && s[i] == mult[i]) s[i++] = 0;
    if (i == n) break;
    ++s[i];

    Int weight = 1;
    unsigned chosen = 0;
    for (std::size_t k = 0; k < n; ++k) {
      weight *= choose[k][s[k]];
      chosen += s[k];
    }
    CycloElem<Int> prod = CycloElem<Int>::constant(d, 1);
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Int> row(d, Int(0));
      for (std::size_t k = 0; k < n; ++k)
        if (s[k]) row[(j * alpha[k]) % d] += Int(s[k]);
      prod = cyclo_mul(prod, CycloElem<Int>(d, std::move(row)));
    }
    prod *= weight;
    if ((d - chosen) % 2)
      total -= prod;
    else
      total += prod;
  }

  Int denom = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned k = 2; k <= mult[i]; ++k) denom *= Int(k);
  total.divide_exact(denom);
  return cyclo_to_int(total);
}

}  // namespace detail

/// Coefficient of x^mult in prod_{j<d} sum_i zeta_d^{j*alpha_i} x_i, computed
/// on its own without expanding the product.
inline BigScalar coefficient_oracle_general(std::size_t d, const std::vector<std::uint32_t>& alpha,
                                            const ExponentVector& mult) {
  if (mult.size() != alpha.size()) throw InvalidInput("coefficient_oracle: exponent length differs from alpha");
  if (mult.degree() != d) throw InvalidInput("coefficient_oracle: monomial degree must equal d");
  const auto reduced = detail::reduce_alpha(d, alpha);
  // |coords| <= 2^d * d^d, which fits __int128 for d <= 22
  if (d <= 22) return detail::ryser_coefficient<int128>(d, reduced, mult);
  return detail::ryser_coefficient<BigScalar>(d, reduced, mult);
}

/// Coefficient c_{a_0...a_{N-1}} of det(Circ(x_0, ..., x_{N-1})).
inline BigScalar coefficient_oracle(std::size_t n, const MultisetIndex& m) {
  if (n == 0) throw InvalidInput("coefficient_oracle: N must be positive");
  if (n > kMaxOracleOrder) throw BudgetExceeded("coefficient_oracle: N limited to 16");
  check_multiset(n, n, m);
  return coefficient_oracle_general(n, identity_alpha(n), exponent_of(m, n));
}

/// a_0 + ... + a_{N-1} = 0 (mod N)
inline bool support_congruence_check(std::size_t n, const MultisetIndex& m) {
  check_multiset(n, n, m);
  return m.index_sum() % n == 0;
}

/// Malenfant-type vanishing criterion for multisets 0^{M_0} 1^{M_1} a b c
/// with N = M_0 + M_1 + 3. The coefficient is symmetric in its indices, so
/// every split of m into that shape and every ordering of (a, b, c) is tried.
inline bool vanishing_predicate(std::size_t n, const MultisetIndex& m) {
  check_multiset(n, n, m);
  if (n < 5) return false;  // M_0, M_1 >= 1 forces N >= 5
  const long N = static_cast<long>(n);
  const long zeros = std::count(m.begin(), m.end(), 0u);
  const long ones = std::count(m.begin(), m.end(), 1u);

  for (long m0 = 1; m0 <= zeros; ++m0) {
    const long m1 = N - 3 - m0;
    if (m1 < 1 || m1 > ones) continue;
    if (((m1 + 1) * (m1 + 2)) % N != 0) continue;
    const long k1 = (m1 + 1) * (m1 + 2) / N;
    const long k0 = (m0 + 1) * (m0 + 2) / N;  // N divides this too, as M_0 + 2 = -(M_1 + 1) mod N

    std::vector<long> tail;
    {
      long skip0 = m0, skip1 = m1;
      for (auto a : m) {
        if (a == 0 && skip0 > 0) {
          --skip0;
          continue;
        }
        if (a == 1 && skip1 > 0) {
          --skip1;
          continue;
        }
        tail.push_back(a);
      }
    }
    std::sort(tail.begin(), tail.end());
    if ((m1 + tail[0] + tail[1] + tail[2]) % N != 0) continue;
    do {
      const long a = tail[0], b = tail[1], c = tail[2];
      const bool first = a <= b && b < N - m1 && a + b == N + 1 - k1 && c == m0 + 2 + k1;
      const bool second = N - m1 <= b && b <= a && b + c == N + 1 + k0 && a == m0 + 2 - k0;
      if (first || second) return true;
    } while (std::next_permutation(tail.begin(), tail.end()));
  }
  return false;
}

// ---------------------------------------------------------------------------
// Constructive witness for d(N) < p(N)
// ---------------------------------------------------------------------------

struct WitnessParams {
  std::int64_t N = 0, n = 0, m = 0, lambda = 0, mu = 0, M0 = 0, M1 = 0, A1 = 0, A2 = 0, A3 = 0;
  friend bool operator==(const WitnessParams&, const WitnessParams&) = default;
};

struct Witness {
  WitnessParams params;
  MultisetIndex multiset;
};

/// Checks every relation the witness parameters must satisfy, for any split.
inline bool witness_params_valid(const WitnessParams& w) {
  const auto [N, n, m, lambda, mu, M0, M1, A1, A2, A3] = w;
  if (N != n * m || !(1 < n && n < m) || std::gcd(n, m) != 1) return false;
  if (lambda * m != 1 + mu * n || lambda < 1 || mu < 1 || lambda * m > N) return false;
  if (M1 != mu * n - 1 || M0 != n * m - mu * n - 2) return false;
  if (A2 != n * m - mu * n || A1 != mu * n - mu * lambda + 1 || A3 != n * m - mu * n + lambda * mu) return false;
  if (((M1 + 1) * (M1 + 2)) % N != 0) return false;
  return M0 >= 1 && M1 >= 1 && A1 <= A2 && A2 <= A3 && A3 < N;
}

inline MultisetIndex witness_multiset(const WitnessParams& w) {
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(w.M0), 0u);
  idx.insert(idx.end(), static_cast<std::size_t>(w.M1), 1u);
  for (auto a : {w.A1, w.A2, w.A3}) idx.push_back(static_cast<std::uint32_t>(a));
  return MultisetIndex(std::move(idx));
}

/// Multiset of a vanishing determinant coefficient that the permanent keeps.
/// Uses the coprime split N = n*m with the smallest admissible n and the
/// least positive lambda with lambda*m = 1 (mod n).
inline Witness theorem_witness(std::size_t big_n) {
  if (big_n == 0) throw InvalidInput("theorem_witness: N must be positive");
  if (big_n == 1 || is_prime_power(big_n)) throw PrimePowerInput(std::to_string(big_n) + " has no coprime split");
  const auto N = static_cast<std::int64_t>(big_n);

  std::int64_t n = 0;
  for (std::uint64_t k : divisors(big_n)) {
    const auto kk = static_cast<std::int64_t>(k);
    if (kk > 1 && kk < N / kk && std::gcd(kk, N / kk) == 1) {
      n = kk;
      break;
    }
  }
  if (n == 0) throw PrimePowerInput(std::to_string(big_n) + " has no coprime split");
  const std::int64_t m = N / n;

  // m*s + n*t = 1, so lambda = s mod n
  const auto bz = bezout(m, n);
  if (bz.g != 1) throw ConsistencyError("theorem_witness: split is not coprime");
  std::int64_t lambda = ((bz.s % n) + n) % n;
  if (lambda == 0) lambda = n;  // only when n == 1, excluded above
  const std::int64_t mu = (lambda * m - 1) / n;

  WitnessParams w;
  w.N = N;
  w.n = n;
  w.m = m;
  w.lambda = lambda;
  w.mu = mu;
  w.M1 = mu * n - 1;
  w.M0 = n * m - mu * n - 2;
  w.A2 = n * m - mu * n;
  w.A1 = mu * n - mu * lambda + 1;
  w.A3 = n * m - mu * n + lambda * mu;
  if (!witness_params_valid(w)) throw ConsistencyError("theorem_witness: parameter relations violated");
  return {w, witness_multiset(w)};
}

// ---------------------------------------------------------------------------
// d(N) versus p(N)
// ---------------------------------------------------------------------------

struct DpComparison {
  std::size_t n = 0;
  BigScalar d;
  BigScalar p;
  bool equal = false;
  bool prime_power = false;
  /// equal == prime_power, which is what the theorem predicts
  bool consistent = false;
};

inline DpComparison compare_dp(std::size_t n, std::uint64_t budget = kDefaultTermBudget) {
  DpComparison r;
  r.n = n;
  r.d = det_expand(n, budget).term_count;
  r.p = p_count_formula(n);
  if (BigScalar(count_per_support(n)) != r.p)
    throw ConsistencyError("compare_dp: closed formula disagrees with lattice-point count for N=" + std::to_string(n));
  r.equal = r.d == r.p;
  r.prime_power = n == 1 || is_prime_power(n).has_value();
  r.consistent = r.equal == r.prime_power;
  return r;
}

}  // namespace circulant
