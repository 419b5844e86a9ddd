#pragma once
/*
 * serialize.hpp
 * -------------
 * JSON and CSV encodings of the reports. JSON keys keep insertion order and
 * integer coefficients are written as decimal strings, so output is
 * byte-for-byte reproducible and safe for consumers with 53-bit numbers.
 */

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "circulant/circulant.hpp"
#include "circulant/gtsys.hpp"

namespace circulant {

using Json = nlohmann::ordered_json;

inline Json multiset_json(const MultisetIndex& m) { return Json(m.values()); }

inline MultisetIndex multiset_from_json(const Json& j) { return MultisetIndex(j.get<std::vector<std::uint32_t>>()); }

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

// -- ExpansionReport --------------------------------------------------------

inline Json to_json(const ExpansionReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(Json{{"multiset", multiset_json(t.multiset)}, {"coeff", t.coeff.str()}});
  return Json{{"kind", r.kind},   {"n", r.nvars},          {"d", r.order},
              {"alpha", r.alpha}, {"count", r.term_count}, {"terms", std::move(terms)}};
}

inline ExpansionReport expansion_from_json(const Json& j) {
  ExpansionReport r;
  r.kind = j.at("kind").get<std::string>();
  r.nvars = j.at("n").get<std::size_t>();
  r.order = j.at("d").get<std::size_t>();
  r.alpha = j.at("alpha").get<std::vector<std::uint32_t>>();
  r.term_count = j.at("count").get<std::size_t>();
  for (const auto& t : j.at("terms"))
    r.terms.push_back({multiset_from_json(t.at("multiset")), BigScalar(t.at("coeff").get<std::string>())});
  if (r.term_count != r.terms.size()) throw InvalidInput("report count does not match its term list");
  return r;
}

inline std::string to_csv(const ExpansionReport& r) {
  std::ostringstream out;
  out << "multiset,coeff\n";
  for (const auto& t : r.terms) {
    for (std::size_t i = 0; i < t.multiset.degree(); ++i) out << (i ? " " : "") << t.multiset[i];
    out << ',' << t.coeff << '\n';
  }
  return out.str();
}

/// Human-readable polynomial, e.g. "x0^3 + x1^3 + x2^3 - 3*x0*x1*x2".
inline std::string to_pretty(const ExpansionReport& r) {
  std::vector<std::pair<ExponentVector, BigScalar>> terms;
  for (const auto& t : r.terms) terms.emplace_back(exponent_of(t.multiset, r.nvars), t.coeff);
  const auto p = SparsePoly<BigScalar>::from_terms(r.nvars, static_cast<unsigned>(r.order), std::move(terms));
  std::ostringstream out;
  out << r.kind << " (" << r.term_count << " terms) = " << p.to_string() << '\n';
  return out.str();
}

// -- d(N) / p(N) table -------------------------------------------------------

inline std::string to_csv(const std::vector<DpComparison>& rows) {
  std::ostringstream out;
  out << "n,d,p,equal,prime_power\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.d << ',' << r.p << ',' << bool_str(r.equal) << ',' << bool_str(r.prime_power) << '\n';
  return out.str();
}

inline Json to_json(const std::vector<DpComparison>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back(Json{{"n", r.n},
                     {"d", r.d.str()},
                     {"p", r.p.str()},
                     {"equal", r.equal},
                     {"prime_power", r.prime_power},
                     {"consistent", r.consistent}});
  return Json{{"kind", "count"}, {"rows", std::move(a)}};
}

// -- witness -----------------------------------------------------------------

struct WitnessReport {
  Witness witness;
  bool congruence_ok = false;  // satisfies the permanent-support system
  bool predicate_ok = false;   // vanishing_predicate
  BigScalar coefficient;       // coefficient_oracle
};

inline Json to_json(const WitnessReport& r) {
  const auto& w = r.witness.params;
  return Json{{"kind", "witness"},
              {"n", w.N},
              {"params",
               Json{{"n", w.n},
                    {"m", w.m},
                    {"lambda", w.lambda},
                    {"mu", w.mu},
                    {"M0", w.M0},
                    {"M1", w.M1},
                    {"A1", w.A1},
                    {"A2", w.A2},
                    {"A3", w.A3}}},
              {"multiset", multiset_json(r.witness.multiset)},
              {"congruence_ok", r.congruence_ok},
              {"predicate_ok", r.predicate_ok},
              {"coefficient", r.coefficient.str()}};
}

// -- GT-systems --------------------------------------------------------------

inline Json to_json(const GTReport& r) {
  Json gens = Json::array(), missing = Json::array();
  for (const auto& g : r.generators) gens.push_back(multiset_json(multiset_of(g)));
  for (const auto& g : r.missing_monomials) missing.push_back(multiset_json(multiset_of(g)));
  return Json{{"kind", "gt"},
              {"d", r.action.order},
              {"alpha", r.action.exponents},
              {"nvars", r.action.nvars()},
              {"mu", r.mu},
              {"generators", std::move(gens)},
              {"togliatti_bound", r.togliatti_bound.str()},
              {"bound_satisfied", r.bound_satisfied},
              {"wlp_witness_verified", r.wlp_witness_verified},
              {"rank", r.rank},
              {"source_dim", r.source_dim},
              {"target_dim", r.target_dim},
              {"injective", r.injective},
              {"rank_exact", r.rank_exact},
              {"rank_method", r.rank_method},
              {"minimal", r.minimal},
              {"minimality_criterion", r.minimality_criterion},
              {"missing_monomials", std::move(missing)}};
}

inline GTReport gt_report_from_json(const Json& j) {
  GTReport r;
  r.action.order = j.at("d").get<std::size_t>();
  r.action.exponents = j.at("alpha").get<std::vector<std::uint32_t>>();
  const std::size_t n = j.at("nvars").get<std::size_t>();
  r.mu = j.at("mu").get<std::size_t>();
  for (const auto& g : j.at("generators")) r.generators.push_back(exponent_of(multiset_from_json(g), n));
  r.togliatti_bound = BigScalar(j.at("togliatti_bound").get<std::string>());
  r.bound_satisfied = j.at("bound_satisfied").get<bool>();
  r.wlp_witness_verified = j.at("wlp_witness_verified").get<bool>();
  r.rank = j.at("rank").get<std::size_t>();
  r.source_dim = j.at("source_dim").get<std::size_t>();
  r.target_dim = j.at("target_dim").get<std::size_t>();
  r.injective = j.at("injective").get<bool>();
  r.rank_exact = j.at("rank_exact").get<bool>();
  r.rank_method = j.at("rank_method").get<std::string>();
  r.minimal = j.at("minimal").get<bool>();
  r.minimality_criterion = j.at("minimality_criterion").get<std::string>();
  for (const auto& g : j.at("missing_monomials")) r.missing_monomials.push_back(exponent_of(multiset_from_json(g), n));
  return r;
}

inline bool operator==(const GTReport& a, const GTReport& b) {
  return a.action == b.action && a.generators == b.generators && a.mu == b.mu &&
         a.togliatti_bound == b.togliatti_bound && a.bound_satisfied == b.bound_satisfied &&
         a.wlp_witness_verified == b.wlp_witness_verified && a.rank == b.rank && a.source_dim == b.source_dim &&
         a.target_dim == b.target_dim && a.injective == b.injective && a.rank_exact == b.rank_exact &&
         a.rank_method == b.rank_method && a.minimal == b.minimal &&
         a.minimality_criterion == b.minimality_criterion && a.missing_monomials == b.missing_monomials;
}

inline std::string to_pretty(const GTReport& r) {
  std::ostringstream out;
  out << "GT-system d=" << r.action.order << " alpha=(";
  for (std::size_t i = 0; i < r.action.nvars(); ++i) out << (i ? "," : "") << r.action.exponents[i];
  out << ")\n"
      << "  generators mu(I)     " << r.mu << "  (bound " << r.togliatti_bound << (r.bound_satisfied ? ", ok" : ", exceeded")
      << ")\n"
      << "  kernel witness       " << (r.wlp_witness_verified ? "verified" : "not verified") << '\n'
      << "  x l rank             " << r.rank << " of " << r.source_dim << " -> " << r.target_dim
      << (r.injective ? " (injective)" : " (not injective)") << " [" << r.rank_method << "]\n"
      << "  minimal              " << bool_str(r.minimal) << '\n';
  for (const auto& m : r.missing_monomials) out << "  missing              " << multiset_of(m).to_string() << '\n';
  return out.str();
}

// -- scans -------------------------------------------------------------------

inline std::string to_csv(const std::vector<Theorem49Row>& rows) {
  std::ostringstream out;
  out << "n,minimal,prime_power,consistent,mu,missing\n";
  for (const auto& r : rows)
    out << r.n << ',' << bool_str(r.minimal) << ',' << bool_str(r.prime_power) << ',' << bool_str(r.consistent) << ','
        << r.mu << ',' << r.missing << '\n';
  return out.str();
}

inline Json to_json(const std::vector<Theorem49Row>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back(Json{{"n", r.n},
                     {"minimal", r.minimal},
                     {"prime_power", r.prime_power},
                     {"consistent", r.consistent},
                     {"mu", r.mu},
                     {"missing", r.missing}});
  return Json{{"kind", "scan-theorem49"}, {"rows", std::move(a)}};
}

inline std::string to_csv(const std::vector<ConjectureRow>& rows) {
  std::ostringstream out;
  out << "d,n,m,minimal,missing_count,mu\n";
  for (const auto& r : rows)
    out << r.d << ',' << r.n << ',' << r.m << ',' << bool_str(r.minimal) << ',' << r.missing_count << ',' << r.mu
        << '\n';
  return out.str();
}

inline Json to_json(const std::vector<ConjectureRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back(Json{{"d", r.d},
                     {"n", r.n},
                     {"m", r.m},
                     {"minimal", r.minimal},
                     {"missing_count", r.missing_count},
                     {"mu", r.mu}});
  return Json{{"kind", "scan-conjecture"}, {"rows", std::move(a)}};
}

}  // namespace circulant
