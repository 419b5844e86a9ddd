#pragma once
/*
 * gtsys.hpp
 * ---------
 * GT-systems: the ideal I^d_alpha generated by all degree-d monomials
 * invariant under x_i -> zeta^{alpha_i} x_i, zeta a primitive d-th root of 1.
 *
 * For each system we report
 *   - its generators and their number mu(I), against the bound C(N+d-2, N-2);
 *   - an explicit kernel element F_{d-1} of x l : [R/I]_{d-1} -> [R/I]_d,
 *     l = x_0 + ... + x_{N-1}, i.e. the failure of the WLP in degree d-1;
 *   - the exact rank of that multiplication map;
 *   - minimality, decided by whether every generator has a nonzero
 *     coefficient in det(A^d_alpha).
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <atomic>
#include <unordered_map>
#include <utility>
#include <vector>

#include "circulant/circulant.hpp"
#include "circulant/errors.hpp"
#include "circulant/exactnum.hpp"
#include "circulant/linalg.hpp"
#include "circulant/mpoly.hpp"

namespace circulant {

class InvalidAction : public InvalidInput {
 public:
  explicit InvalidAction(const std::string& what) : InvalidInput("InvalidAction: " + what) {}
};

/// Diagonal action of Z/d on k[x_0, ..., x_{N-1}] with weights alpha_i mod d.
struct GroupAction {
  std::size_t order = 0;                  // d
  std::vector<std::uint32_t> exponents;   // alpha_i, reduced mod d

  std::size_t nvars() const { return exponents.size(); }

  /// sum alpha_i e_i mod d
  std::uint64_t weight(std::span<const Exponent> e) const {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += std::uint64_t{exponents[i]} * e[i];
    return w % order;
  }
  bool invariant(std::span<const Exponent> e) const { return weight(e) == 0; }

  friend bool operator==(const GroupAction&, const GroupAction&) = default;
};

inline GroupAction make_action(std::size_t d, const std::vector<std::int64_t>& alpha) {
  if (d < 3) throw InvalidAction("order d must be at least 3");
  if (alpha.size() < 3) throw InvalidAction("need at least 3 variables");
  GroupAction a;
  a.order = d;
  std::int64_t g = static_cast<std::int64_t>(d);
  for (auto x : alpha) {
    const auto r = ((x % static_cast<std::int64_t>(d)) + static_cast<std::int64_t>(d)) % static_cast<std::int64_t>(d);
    a.exponents.push_back(static_cast<std::uint32_t>(r));
    g = std::gcd(g, r);
  }
  if (g != 1) throw InvalidAction("gcd(alpha_0, ..., alpha_{N-1}, d) = " + std::to_string(g) + " != 1");
  return a;
}

inline GroupAction make_action(std::size_t d, const std::vector<std::uint32_t>& alpha) {
  return make_action(d, std::vector<std::int64_t>(alpha.begin(), alpha.end()));
}

/// I^N_{0,1,...,N-1}
inline GroupAction standard_action(std::size_t n) { return make_action(n, identity_alpha(n)); }

// ---------------------------------------------------------------------------
// Generators and their number
// ---------------------------------------------------------------------------

/// Calls visit(e) for every exponent vector of the given degree, leading terms first.
template <class Visitor>
void for_each_monomial(std::size_t nvars, unsigned degree, Visitor&& visit) {
  std::vector<Exponent> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t v, unsigned left) -> void {
    if (v + 1 == nvars) {
      e[v] = static_cast<Exponent>(left);
      visit(std::span<const Exponent>(e));
      e[v] = 0;
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[v] = static_cast<Exponent>(k);
      self(self, v + 1, left - k);
    }
    e[v] = 0;
  };
  if (nvars == 0) return;
  rec(rec, 0, degree);
}

inline std::vector<ExponentVector> invariant_monomials(const GroupAction& action,
                                                       std::uint64_t budget = kDefaultTermBudget) {
  detail::check_budget(action.nvars(), action.order, budget);
  std::vector<ExponentVector> out;
  for_each_monomial(action.nvars(), static_cast<unsigned>(action.order), [&](std::span<const Exponent> e) {
    if (action.invariant(e)) out.emplace_back(e);
  });
  return out;
}

/// mu(I) by dynamic programming over (degree used, weight mod d).
inline BigScalar count_invariant_monomials(const GroupAction& action) {
  const std::size_t d = action.order;
  // ways[deg][w]
  std::vector<std::vector<BigScalar>> ways(d + 1, std::vector<BigScalar>(d, 0));
  ways[0][0] = 1;
  for (auto a : action.exponents) {
    auto next = ways;  // exponent 0 for this variable
    for (std::size_t deg = 0; deg <= d; ++deg)
      for (std::size_t w = 0; w < d; ++w) {
        if (ways[deg][w] == 0) continue;
        for (std::size_t k = 1; deg + k <= d; ++k) next[deg + k][(w + k * a) % d] += ways[deg][w];
      }
    ways = std::move(next);
  }
  return ways[d][0];
}

struct BoundCheck {
  BigScalar mu;
  BigScalar bound;  // C(N+d-2, N-2)
  bool ok = false;
  /// p(N) <= C(2N-2, N); only evaluated for I^N_{0,...,N-1}
  std::optional<bool> formula_inequality;
};

inline BoundCheck togliatti_bound_check(const GroupAction& action) {
  const auto n = static_cast<std::int64_t>(action.nvars());
  const auto d = static_cast<std::int64_t>(action.order);
  BoundCheck r;
  r.mu = count_invariant_monomials(action);
  r.bound = binomial(n + d - 2, n - 2);
  r.ok = r.mu <= r.bound;
  if (action.order == action.nvars() && action.exponents == identity_alpha(action.nvars()))
    r.formula_inequality = p_count_formula(action.nvars()) <= binomial(2 * n - 2, n);
  return r;
}

// ---------------------------------------------------------------------------
// Failure of the WLP in degree d-1
// ---------------------------------------------------------------------------

struct KernelWitness {
  SparsePoly<BigScalar> form;     // F_{d-1}
  SparsePoly<BigScalar> product;  // l * F_{d-1}
  bool verified = false;
};

/// F_{d-1} = prod_{j=1}^{d-1} sum_i zeta^{j*alpha_i} x_i. The Galois group
/// permutes these factors, so F_{d-1} has rational integer coefficients; the
/// product with l is invariant, hence lies in I, hence F is in the kernel.
inline KernelWitness wlp_kernel_witness(const GroupAction& action, std::uint64_t budget = kDefaultTermBudget) {
  const std::size_t n = action.nvars();
  KernelWitness w{twisted_product_integral(action.order, action.exponents, 1, action.order, budget),
                  SparsePoly<BigScalar>(n, static_cast<unsigned>(action.order)), false};
  if (w.form.empty()) throw WitnessFailure("F_{d-1} vanished");
  w.product = mul_linear_form(w.form, std::vector<BigScalar>(n, BigScalar(1)));
  for (std::size_t i = 0; i < w.product.size(); ++i)
    if (!action.invariant(w.product.exps(i)))
      throw WitnessFailure("l * F_{d-1} contains non-invariant monomial " + multiset_of(w.product.exps(i)).to_string());
  w.verified = true;
  return w;
}

struct RankResult {
  std::size_t rank = 0;
  std::size_t source_dim = 0;  // dim R_{d-1}
  std::size_t target_dim = 0;  // dim [R/I]_d
  bool injective = false;
  /// false only when the modular bound could not be matched by a certificate
  bool exact = false;
  std::string method;
};

inline constexpr std::size_t kBareissSourceLimit = 120;

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<Exponent>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

inline std::vector<ExponentVector> all_monomials(std::size_t nvars, unsigned degree) {
  std::vector<ExponentVector> out;
  for_each_monomial(nvars, degree, [&](std::span<const Exponent> e) { out.emplace_back(e); });
  return out;
}

inline RankResult rank_by_bareiss(const GroupAction& action) {
  const std::size_t n = action.nvars();
  const auto d = static_cast<unsigned>(action.order);
  const auto source = all_monomials(n, d - 1);
  std::unordered_map<std::vector<Exponent>, std::size_t, VecHash> row_of;
  for (const auto& e : all_monomials(n, d))
    if (!action.invariant(e.view())) row_of.emplace(e.values(), row_of.size());

  std::vector<std::vector<BigScalar>> m(row_of.size(), std::vector<BigScalar>(source.size(), 0));
  for (std::size_t c = 0; c < source.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) {
      auto t = source[c].values();
      ++t[i];
      if (auto it = row_of.find(t); it != row_of.end()) m[it->second][c] = 1;
    }
  RankResult r;
  r.source_dim = source.size();
  r.target_dim = row_of.size();
  r.rank = exact_rank_bareiss(std::move(m));
  r.exact = true;
  r.method = "bareiss";
  return r;
}

// Rank mod p via a unimodular block. With source monomials a ordered by
// falling x_0-degree, column a has its entry in row a + e_0 whenever that row
// survives (a + e_0 not in I), and that row's other entries sit in columns of
// larger x_0-degree. Those columns therefore form a unit-triangular block T,
// and rank = |T| + rank(S) for the Schur complement S on the remaining
// columns B (a + e_0 in I) and rows Q (x_0-free, not in I).
//
// known_kernel is a certified lower bound on the kernel dimension; elimination
// stops once rank(S) reaches |B| - known_kernel.
inline std::size_t schur_rank_mod_p(const GroupAction& action, std::uint64_t prime, std::size_t known_kernel) {
  const std::size_t n = action.nvars();
  const auto d = static_cast<unsigned>(action.order);
  const auto source = all_monomials(n, d - 1);  // falling x_0-degree order

  std::unordered_map<std::vector<Exponent>, std::size_t, VecHash> pos;
  std::vector<std::ptrdiff_t> b_index(source.size(), -1);
  std::size_t nb = 0;
  for (std::size_t k = 0; k < source.size(); ++k) {
    pos.emplace(source[k].values(), k);
    auto r = source[k].values();
    ++r[0];
    if (action.invariant(r)) b_index[k] = static_cast<std::ptrdiff_t>(nb++);
  }
  if (nb == 0) return source.size();
  const std::size_t stop_at = nb - std::min(nb, known_kernel);

  // v[k] expresses the kernel coordinate of pivot column k through the free B coordinates
  std::vector<std::vector<std::uint32_t>> v(source.size());
  auto add_coord = [&](std::vector<std::uint64_t>& acc, std::size_t k, std::uint64_t sign_minus) {
    if (b_index[k] >= 0) {
      const auto j = static_cast<std::size_t>(b_index[k]);
      acc[j] = (acc[j] + (sign_minus ? prime - 1 : 1)) % prime;
      return;
    }
    const auto& vk = v[k];
    for (std::size_t j = 0; j < nb; ++j)
      if (vk[j]) acc[j] = (acc[j] + (sign_minus ? prime - vk[j] : vk[j])) % prime;
  };

  std::vector<std::uint64_t> acc(nb);
  for (std::size_t k = 0; k < source.size(); ++k) {
    if (b_index[k] >= 0) continue;
    // row r = a + e_0:  v_a + sum_{i>=1, r_i>0} v_{r-e_i} = 0
    std::fill(acc.begin(), acc.end(), 0);
    auto r = source[k].values();
    ++r[0];
    for (std::size_t i = 1; i < n; ++i) {
      if (r[i] == 0) continue;
      auto s = r;
      --s[i];
      add_coord(acc, pos.at(s), 1);
    }
    v[k].assign(acc.begin(), acc.end());
  }

  ModularEchelon ech(nb, prime);
  for_each_monomial(n, d, [&](std::span<const Exponent> q) {
    if (ech.rank() >= stop_at) return;
    if (q[0] != 0 || action.invariant(q)) return;
    std::fill(acc.begin(), acc.end(), 0);
    std::vector<Exponent> s(q.begin(), q.end());
    for (std::size_t i = 1; i < n; ++i) {
      if (s[i] == 0) continue;
      --s[i];
      add_coord(acc, pos.at(s), 0);
      ++s[i];
    }
    ech.insert(acc);
  });
  return source.size() - nb + ech.rank();
}

}  // namespace detail

/// Rank of x l : R_{d-1} -> R_d / I_d over Q, l = x_0 + ... + x_{N-1}.
///
/// Small maps use Bareiss elimination. Larger ones use the rank mod p, which
/// is a lower bound for the rank over Q; it is exact when it reaches
/// source_dim, or source_dim - 1 together with a verified kernel witness.
inline RankResult wlp_rank(const GroupAction& action, bool witness_verified = false) {
  const std::size_t n = action.nvars();
  const auto d = static_cast<std::int64_t>(action.order);
  const auto source_dim = static_cast<std::size_t>(binomial(static_cast<std::int64_t>(n) + d - 2, n - 1));
  if (source_dim <= kBareissSourceLimit) {
    auto r = detail::rank_by_bareiss(action);
    r.injective = r.rank == r.source_dim;
    return r;
  }

  const auto mu = static_cast<std::size_t>(count_invariant_monomials(action));
  RankResult r;
  r.source_dim = source_dim;
  r.target_dim = static_cast<std::size_t>(binomial(static_cast<std::int64_t>(n) + d - 1, n - 1)) - mu;
  r.method = "modular";
  for (std::uint64_t prime : {2147483647ull, 2147483629ull}) {
    r.rank = std::max(r.rank, detail::schur_rank_mod_p(action, prime, witness_verified ? 1 : 0));
    if (r.rank == source_dim) {
      r.exact = true;
      break;
    }
    if (witness_verified && r.rank + 1 == source_dim) {
      r.exact = true;
      r.method = "modular+kernel-witness";
      break;
    }
  }
  r.injective = r.exact && r.rank == r.source_dim;
  return r;
}

// ---------------------------------------------------------------------------
// Minimality
// ---------------------------------------------------------------------------

struct GTReport {
  GroupAction action;
  std::vector<ExponentVector> generators;
  std::size_t mu = 0;
  BigScalar togliatti_bound;
  bool bound_satisfied = false;
  bool wlp_witness_verified = false;
  std::size_t rank = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  bool injective = false;
  bool rank_exact = false;
  std::string rank_method;
  bool minimal = false;
  std::vector<ExponentVector> missing_monomials;
  std::string minimality_criterion = "all invariant monomials have nonzero coefficient in det(A^d_alpha)";
};

struct GTOptions {
  std::uint64_t budget = kDefaultTermBudget;
  bool compute_rank = true;
};

inline GTReport minimality_check(const GroupAction& action, const GTOptions& opts = {}) {
  for (std::size_t i = 1; i < action.nvars(); ++i)
    if (action.exponents[i] <= action.exponents[i - 1])
      throw InvalidInput("minimality_check: alpha must be strictly increasing after reduction mod d");

  GTReport rep;
  rep.action = action;
  rep.generators = invariant_monomials(action, opts.budget);
  rep.mu = rep.generators.size();

  const auto bound = togliatti_bound_check(action);
  if (bound.mu != rep.mu) throw ConsistencyError("generator count disagrees with the counting recursion");
  rep.togliatti_bound = bound.bound;
  rep.bound_satisfied = bound.ok;

  rep.wlp_witness_verified = wlp_kernel_witness(action, opts.budget).verified;

  if (opts.compute_rank) {
    const auto rank = wlp_rank(action, rep.wlp_witness_verified);
    rep.rank = rank.rank;
    rep.source_dim = rank.source_dim;
    rep.target_dim = rank.target_dim;
    rep.injective = rank.injective;
    rep.rank_exact = rank.exact;
    rep.rank_method = rank.method;
    if (rep.wlp_witness_verified && rank.rank >= rank.source_dim)
      throw ConsistencyError("kernel witness verified but multiplication map has full rank");
  }

  const auto det = det_expand_general(action.order, action.exponents, opts.budget);
  const std::size_t n = action.nvars();
  for (const auto& t : det.terms)
    if (!action.invariant(exponent_of(t.multiset, n).view()))
      throw ConsistencyError("det(A^d_alpha) has a non-invariant monomial " + t.multiset.to_string());
  for (const auto& g : rep.generators)
    if (det.coefficient(multiset_of(g)) == 0) rep.missing_monomials.push_back(g);
  rep.minimal = rep.missing_monomials.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

/// Runs fn(0..count-1) on up to `workers` threads; results keep index order.
template <class Fn>
auto parallel_map(std::size_t count, std::size_t workers, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        results[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

struct Theorem49Row {
  std::size_t n = 0;
  bool minimal = false;
  bool prime_power = false;
  bool consistent = false;
  std::size_t mu = 0;
  std::size_t missing = 0;
};

inline std::vector<Theorem49Row> theorem49_scan(std::size_t n_max, std::size_t workers = 1, GTOptions opts = {}) {
  if (n_max < 3) throw InvalidInput("theorem49_scan: N_max must be at least 3");
  return parallel_map(n_max - 2, workers, [&](std::size_t k) {
    const std::size_t n = k + 3;
    const auto rep = minimality_check(standard_action(n), opts);
    Theorem49Row row;
    row.n = n;
    row.minimal = rep.minimal;
    row.prime_power = is_prime_power(n).has_value();
    row.consistent = row.minimal == row.prime_power;
    row.mu = rep.mu;
    row.missing = rep.missing_monomials.size();
    return row;
  });
}

struct ConjectureRow {
  std::size_t d = 0;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  bool minimal = false;
  std::size_t missing_count = 0;
  std::size_t mu = 0;
};

/// I^d_{0,n,m} in k[x, y, z] for 3 <= d <= d_max, 1 <= n < m <= d-1, gcd(n, m, d) = 1.
inline std::vector<ConjectureRow> conjecture_scan(std::size_t d_max, std::size_t workers = 1, GTOptions opts = {}) {
  if (d_max < 3) throw InvalidInput("conjecture_scan: d_max must be at least 3");
  std::vector<std::tuple<std::size_t, std::uint32_t, std::uint32_t>> cells;
  for (std::size_t d = 3; d <= d_max; ++d)
    for (std::uint32_t n = 1; n + 1 <= d - 1; ++n)
      for (std::uint32_t m = n + 1; m <= d - 1; ++m)
        if (std::gcd(std::gcd<std::size_t>(n, m), d) == 1) cells.emplace_back(d, n, m);
  return parallel_map(cells.size(), workers, [&](std::size_t k) {
    const auto [d, n, m] = cells[k];
    const auto rep = minimality_check(make_action(d, std::vector<std::uint32_t>{0, n, m}), opts);
    return ConjectureRow{d, n, m, rep.minimal, rep.missing_monomials.size(), rep.mu};
  });
}

}  // namespace circulant
