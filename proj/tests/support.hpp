#pragma once
// Independent oracles shared by the test suites. Nothing here calls into the
// expansion code paths it is used to check.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "circulant/circulant.hpp"

namespace testsupport {

using circulant::BigScalar;
using Poly = std::map<std::vector<std::uint32_t>, BigScalar>;

/// Parses a displayed polynomial such as "x^3+y^3-3xyz" or "6 t^4 u z".
/// `letters` maps characters to variable indices in order.
inline Poly parse_display(const std::string& text, const std::string& letters) {
  Poly out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    BigScalar coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      coeff = BigScalar(text.substr(i, j - i));
      i = j;
    }
    std::vector<std::uint32_t> idx;
    while (true) {
      skip();
      if (i >= text.size() || text[i] == '+' || text[i] == '-') break;
      const auto pos = letters.find(text[i]);
      if (pos == std::string::npos) throw std::runtime_error(std::string("bad variable ") + text[i]);
      ++i;
      unsigned power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        power = static_cast<unsigned>(std::stoul(text.substr(i, j - i)));
        i = j;
      }
      idx.insert(idx.end(), power, static_cast<std::uint32_t>(pos));
    }
    std::sort(idx.begin(), idx.end());
    out[idx] += sign * coeff;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline Poly as_map(const circulant::ExpansionReport& r) {
  Poly out;
  for (const auto& t : r.terms) out[t.multiset.values()] = t.coeff;
  return out;
}

/// Row r, column c holds x_{(c - r) mod N}.
inline std::vector<std::vector<double>> circulant_matrix(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = x[(c + n - r) % n];
  return a;
}

/// Determinant by LU with partial pivoting.
inline double lu_det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Permanent by summing over all permutations.
inline double permanent(const std::vector<std::vector<double>>& a) {
  std::vector<std::size_t> s(a.size());
  std::iota(s.begin(), s.end(), 0);
  double total = 0;
  do {
    double p = 1;
    for (std::size_t r = 0; r < a.size(); ++r) p *= a[r][s[r]];
    total += p;
  } while (std::next_permutation(s.begin(), s.end()));
  return total;
}

inline long double evaluate(const circulant::ExpansionReport& r, const std::vector<double>& x) {
  long double total = 0;
  for (const auto& t : r.terms) {
    long double v = t.coeff.convert_to<long double>();
    for (auto a : t.multiset) v *= x[a];
    total += v;
  }
  return total;
}

/// Multisets of size N over {0..N-1} with index sum divisible by N, by plain
/// recursion over all multisets.
inline std::vector<std::vector<std::uint32_t>> brute_per_support(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t lo, std::uint64_t sum) -> void {
    if (cur.size() == n) {
      if (sum % n == 0) out.push_back(cur);
      return;
    }
    for (std::uint32_t a = lo; a < n; ++a) {
      cur.push_back(a);
      self(self, a, sum + a);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

inline std::vector<double> random_point(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace testsupport
