#pragma once
/*
 * mpoly.hpp
 * ---------
 * Sparse homogeneous polynomials in a fixed number of variables.
 *
 * A degree-k monomial has two encodings:
 *   ExponentVector  (M_0, ..., M_{n-1})   with sum M_i = k
 *   MultisetIndex   [a_0 <= ... <= a_{k-1}] listing each variable index M_i times
 *
 * SparsePoly keeps its terms sorted in descending graded-lex order
 * (x_0 > x_1 > ...), which is the same as ascending lexicographic order of
 * the multiset encodings. Exponents live in one flat array so that a
 * million-term expansion does not pay for a million small vectors of keys.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "circulant/errors.hpp"
#include "circulant/exactnum.hpp"

namespace circulant {

using Exponent = std::uint16_t;

class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<Exponent> e) : e_(std::move(e)) {}
  ExponentVector(std::initializer_list<Exponent> e) : e_(e) {}
  explicit ExponentVector(std::span<const Exponent> e) : e_(e.begin(), e.end()) {}

  static ExponentVector zero(std::size_t nvars) { return ExponentVector(std::vector<Exponent>(nvars, 0)); }

  std::size_t size() const { return e_.size(); }
  unsigned degree() const { return std::accumulate(e_.begin(), e_.end(), 0u); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }
  std::span<const Exponent> view() const { return e_; }
  const std::vector<Exponent>& values() const { return e_; }

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<Exponent> e_;
};

class MultisetIndex {
 public:
  MultisetIndex() = default;
  explicit MultisetIndex(std::vector<std::uint32_t> idx) : idx_(std::move(idx)) {
    if (!std::is_sorted(idx_.begin(), idx_.end())) throw InvalidInput("MultisetIndex: indices must be sorted");
  }
  MultisetIndex(std::initializer_list<std::uint32_t> idx) : MultisetIndex(std::vector<std::uint32_t>(idx)) {}

  std::size_t degree() const { return idx_.size(); }
  std::uint32_t operator[](std::size_t i) const { return idx_[i]; }
  const std::vector<std::uint32_t>& values() const { return idx_; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

  /// a_0 + ... + a_{k-1}
  std::uint64_t index_sum() const { return std::accumulate(idx_.begin(), idx_.end(), std::uint64_t{0}); }

  friend auto operator<=>(const MultisetIndex&, const MultisetIndex&) = default;
  friend bool operator==(const MultisetIndex&, const MultisetIndex&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < idx_.size(); ++i) s += (i ? "," : "") + std::to_string(idx_[i]);
    return s + "]";
  }

 private:
  std::vector<std::uint32_t> idx_;
};

inline MultisetIndex multiset_of(std::span<const Exponent> v) {
  std::vector<std::uint32_t> idx;
  for (std::size_t i = 0; i < v.size(); ++i) idx.insert(idx.end(), v[i], static_cast<std::uint32_t>(i));
  return MultisetIndex(std::move(idx));
}
inline MultisetIndex multiset_of(const ExponentVector& v) { return multiset_of(v.view()); }

inline ExponentVector exponent_of(const MultisetIndex& m, std::size_t nvars) {
  std::vector<Exponent> e(nvars, 0);
  for (auto a : m) {
    if (a >= nvars) throw InvalidInput("exponent_of: index " + std::to_string(a) + " out of range");
    ++e[a];
  }
  return ExponentVector(std::move(e));
}

/// Strict weak order placing leading terms first: higher degree, then
/// lexicographically larger exponent vector.
struct GradedLexFirst {
  bool operator()(std::span<const Exponent> a, std::span<const Exponent> b) const {
    const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
  bool operator()(const ExponentVector& a, const ExponentVector& b) const { return (*this)(a.view(), b.view()); }
};

// Coefficient hooks --------------------------------------------------------

inline bool coeff_is_zero(const BigScalar& c) { return c == 0; }
inline bool coeff_is_zero(std::int64_t c) { return c == 0; }
template <ExactInt Int>
bool coeff_is_zero(const CycloElem<Int>& c) {
  return c.is_zero();
}

inline std::string coeff_to_string(const BigScalar& c) { return c.str(); }
template <ExactInt Int>
std::string coeff_to_string(const CycloElem<Int>& c) {
  return "(" + c.to_string() + ")";
}

template <class Coeff>
class SparsePoly {
 public:
  using coeff_type = Coeff;

  SparsePoly(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {}

  /// The constant c as a degree-0 polynomial.
  static SparsePoly constant(std::size_t nvars, Coeff c) {
    SparsePoly p(nvars, 0);
    if (!coeff_is_zero(c)) p.push_back_unchecked(std::vector<Exponent>(nvars, 0), std::move(c));
    return p;
  }

  /// Sorts, merges repeated monomials by addition and drops zero coefficients.
  static SparsePoly from_terms(std::size_t nvars, unsigned degree, std::vector<std::pair<ExponentVector, Coeff>> terms) {
    for (const auto& [e, c] : terms) {
      if (e.size() != nvars) throw InvalidInput("SparsePoly: exponent vector has wrong length");
      if (e.degree() != degree) throw InvalidInput("SparsePoly: term degree differs from declared degree");
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return GradedLexFirst{}(a.first, b.first); });
    SparsePoly p(nvars, degree);
    for (std::size_t i = 0; i < terms.size();) {
      Coeff c = std::move(terms[i].second);
      std::size_t j = i + 1;
      for (; j < terms.size() && terms[j].first == terms[i].first; ++j) c += terms[j].second;
      if (!coeff_is_zero(c)) p.push_back_unchecked(terms[i].first.values(), std::move(c));
      i = j;
    }
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  std::span<const Exponent> exps(std::size_t i) const { return {exps_.data() + i * nvars_, nvars_}; }
  ExponentVector exponent(std::size_t i) const { return ExponentVector(exps(i)); }
  const Coeff& coeff(std::size_t i) const { return coeffs_[i]; }

  /// Coefficient of x^e, or nullptr when absent.
  const Coeff* find(std::span<const Exponent> e) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (GradedLexFirst{}(exps(mid), e))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < size() && std::ranges::equal(exps(lo), e)) return &coeffs_[lo];
    return nullptr;
  }
  const Coeff* find(const ExponentVector& e) const { return find(e.view()); }

  /// Appends a term that must sort strictly after the current last term.
  void push_back_unchecked(std::span<const Exponent> e, Coeff c) {
    exps_.insert(exps_.end(), e.begin(), e.end());
    coeffs_.push_back(std::move(c));
  }

  void reserve(std::size_t n) {
    exps_.reserve(n * nvars_);
    coeffs_.reserve(n);
  }

  /// Verifies sortedness, uniform degree and absence of stored zeros.
  void check_invariants() const {
    for (std::size_t i = 0; i < size(); ++i) {
      auto e = exps(i);
      if (std::accumulate(e.begin(), e.end(), 0u) != degree_)
        throw ConsistencyError("SparsePoly: inhomogeneous term");
      if (coeff_is_zero(coeffs_[i])) throw ConsistencyError("SparsePoly: stored zero coefficient");
      if (i > 0 && !GradedLexFirst{}(exps(i - 1), e)) throw ConsistencyError("SparsePoly: terms out of order");
    }
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.exps_ == b.exps_ && a.coeffs_ == b.coeffs_;
  }

  /// e.g. "x0^3 + x1^3 + x2^3 - 3*x0*x1*x2"
  std::string to_string() const {
    if (empty()) return "0";
    std::ostringstream out;
    for (std::size_t i = 0; i < size(); ++i) {
      std::string c = coeff_to_string(coeffs_[i]);
      bool neg = !c.empty() && c[0] == '-';
      if (neg) c.erase(0, 1);
      if (i == 0)
        out << (neg ? "-" : "");
      else
        out << (neg ? " - " : " + ");
      std::string mono;
      auto e = exps(i);
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(v);
        if (e[v] > 1) mono += "^" + std::to_string(e[v]);
      }
      if (mono.empty())
        out << c;
      else if (c == "1")
        out << mono;
      else
        out << c << "*" << mono;
    }
    return out.str();
  }

 private:
  std::size_t nvars_;
  unsigned degree_;
  std::vector<Exponent> exps_;
  std::vector<Coeff> coeffs_;
};

namespace detail {

// How to accumulate `factor * src` into `acc` for one linear-form coefficient.
template <class Coeff>
struct FormCoeff;

template <ExactInt Int>
struct FormCoeff<CycloElem<Int>> {
  explicit FormCoeff(const CycloElem<Int>& c) : value(c), root(c.as_root_power()) {}
  CycloElem<Int> zero_like(const CycloElem<Int>& src) const { return CycloElem<Int>(src.order()); }
  void accumulate(CycloElem<Int>& acc, const CycloElem<Int>& src) const {
    if (root)
      acc.add_rotated(src, *root);
    else
      acc += cyclo_mul(value, src);
  }
  const CycloElem<Int>& value;
  std::optional<std::size_t> root;
};

template <>
struct FormCoeff<BigScalar> {
  explicit FormCoeff(const BigScalar& c) : value(c) {}
  BigScalar zero_like(const BigScalar&) const { return 0; }
  void accumulate(BigScalar& acc, const BigScalar& src) const {
    if (value == 1)
      acc += src;
    else
      acc += value * src;
  }
  const BigScalar& value;
};

}  // namespace detail

/// p * (sum_i form[i] * x_i). The product is merged from one sorted stream
/// per variable (multiplying by x_i preserves the term order).
template <class Coeff>
SparsePoly<Coeff> mul_linear_form(const SparsePoly<Coeff>& p, std::span<const Coeff> form) {
  const std::size_t n = p.nvars();
  if (form.size() != n) throw InvalidInput("mul_linear_form: form length differs from variable count");

  std::vector<std::size_t> vars;
  std::vector<detail::FormCoeff<Coeff>> ops;
  for (std::size_t i = 0; i < n; ++i) {
    if (coeff_is_zero(form[i])) continue;
    vars.push_back(i);
    ops.emplace_back(form[i]);
  }

  SparsePoly<Coeff> out(n, p.degree() + 1);
  if (p.empty() || vars.empty()) return out;

  struct Cursor {
    std::size_t stream;  // index into vars/ops
    std::size_t term;    // position in p
  };
  // shifted exponent of a cursor at variable v
  auto at = [&](const Cursor& c, std::size_t v) -> unsigned {
    return p.exps(c.term)[v] + (v == vars[c.stream] ? 1u : 0u);
  };
  // min-heap on "comes later in graded-lex-first order"
  auto later = [&](const Cursor& a, const Cursor& b) {
    for (std::size_t v = 0; v < n; ++v) {
      const unsigned ea = at(a, v), eb = at(b, v);
      if (ea != eb) return ea < eb;
    }
    return a.stream > b.stream;
  };

  std::vector<Cursor> heap;
  for (std::size_t s = 0; s < vars.size(); ++s) heap.push_back({s, 0});
  std::make_heap(heap.begin(), heap.end(), later);

  std::vector<Exponent> cur(n), next(n);
  std::optional<Coeff> acc;
  out.reserve(p.size() * 2);

  auto flush = [&] {
    if (acc && !coeff_is_zero(*acc)) out.push_back_unchecked(cur, std::move(*acc));
    acc.reset();
  };

  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    Cursor c = heap.back();
    heap.pop_back();
    for (std::size_t v = 0; v < n; ++v) next[v] = static_cast<Exponent>(at(c, v));
    if (!acc || next != cur) {
      flush();
      cur = next;
      acc = ops[c.stream].zero_like(p.coeff(c.term));
    }
    ops[c.stream].accumulate(*acc, p.coeff(c.term));
    if (++c.term < p.size()) {
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end(), later);
    }
  }
  flush();
  return out;
}

template <class Coeff>
SparsePoly<Coeff> mul_linear_form(const SparsePoly<Coeff>& p, const std::vector<Coeff>& form) {
  return mul_linear_form(p, std::span<const Coeff>(form));
}

/// Termwise cyclo_to_int. Terms reducing to 0 are dropped.
template <ExactInt Int>
SparsePoly<BigScalar> reduce_coefficients(const SparsePoly<CycloElem<Int>>& p) {
  SparsePoly<BigScalar> out(p.nvars(), p.degree());
  if (p.empty()) return out;
  const CyclotomicReducer reducer(p.coeff(0).order());
  for (std::size_t i = 0; i < p.size(); ++i) {
    BigScalar c;
    try {
      c = reducer.to_int(p.coeff(i));
    } catch (const NotRational& e) {
      throw NotRational(std::string(e.what()) + " at monomial " + multiset_of(p.exps(i)).to_string());
    }
    if (c != 0) out.push_back_unchecked(p.exps(i), std::move(c));
  }
  return out;
}

}  // namespace circulant
