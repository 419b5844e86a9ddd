#pragma once
/*
 * cli.hpp
 * -------
 * Command-line driver. run_cli() parses arguments, runs one subcommand and
 * maps the error hierarchy onto exit codes:
 *   0 success, 1 invalid input, 2 budget exceeded, 3 internal consistency failure.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "circulant/circulant.hpp"
#include "circulant/gtsys.hpp"
#include "circulant/serialize.hpp"

namespace circulant::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kBudget = 2, kConsistency = 3 };

struct Config {
  std::string subcommand;
  std::optional<std::size_t> n;
  std::string n_range;
  std::optional<std::size_t> d;
  std::vector<std::int64_t> alpha;
  std::vector<std::uint32_t> multiset;
  std::string format;  // empty: the subcommand's default
  std::uint64_t budget = kDefaultTermBudget;
  std::size_t workers = 1;
  std::string out_path;
  std::optional<std::size_t> theorem49;
  std::optional<std::size_t> conjecture;
};

/// Budget from CIRCULANT_BUDGET, or the library default when unset.
inline std::uint64_t env_budget() {
  const char* v = std::getenv("CIRCULANT_BUDGET");
  if (!v || !*v) return kDefaultTermBudget;
  try {
    std::size_t pos = 0;
    const unsigned long long b = std::stoull(v, &pos);
    if (pos != std::string(v).size() || b == 0) throw std::invalid_argument(v);
    return b;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("CIRCULANT_BUDGET must be a positive integer, got '") + v + "'");
  }
}

/// "A..B" -> [A, B]
inline std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw InvalidInput("range must look like A..B, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const auto lo = std::stoull(a, &p1), hi = std::stoull(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument(s);
    if (lo > hi) throw InvalidInput("range " + s + " is empty");
    return {lo, hi};
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidInput("range must look like A..B, got '" + s + "'");
  }
}

inline std::vector<std::uint32_t> nonnegative_alpha(const std::vector<std::int64_t>& alpha) {
  std::vector<std::uint32_t> r;
  for (auto a : alpha) {
    if (a < 0 || a > UINT32_MAX) throw InvalidInput("alpha entries must be non-negative");
    r.push_back(static_cast<std::uint32_t>(a));
  }
  return r;
}

inline std::string json_line(const Json& j) { return j.dump() + "\n"; }

inline std::string render(const Json& j, const std::string& format) {
  if (format == "pretty") return j.dump(2) + "\n";
  if (format == "json") return json_line(j);
  throw InvalidInput("format '" + format + "' is not available for this subcommand");
}

inline std::string run_expansion(const ExpansionReport& r, const std::string& format) {
  if (format == "csv") return to_csv(r);
  if (format == "pretty") return to_pretty(r);
  return json_line(to_json(r));
}

inline std::string cmd_det(const Config& c) {
  ExpansionReport r;
  if (c.d) {
    if (c.n) throw InvalidInput("det takes either --n or --d with --alpha");
    if (c.alpha.empty()) throw InvalidInput("det --d needs --alpha");
    r = det_expand_general(*c.d, nonnegative_alpha(c.alpha), c.budget);
  } else {
    if (!c.n) throw InvalidInput("det needs --n or --d with --alpha");
    r = det_expand(*c.n, c.budget);
  }
  return run_expansion(r, c.format.empty() ? "json" : c.format);
}

inline std::string cmd_per(const Config& c) {
  if (!c.n) throw InvalidInput("per needs --n");
  return run_expansion(per_expand(*c.n), c.format.empty() ? "json" : c.format);
}

inline std::string cmd_count(const Config& c) {
  std::size_t lo = 0, hi = 0;
  if (!c.n_range.empty()) {
    if (c.n) throw InvalidInput("count takes either --n or --n-range");
    std::tie(lo, hi) = parse_range(c.n_range);
  } else if (c.n) {
    lo = hi = *c.n;
  } else {
    throw InvalidInput("count needs --n or --n-range");
  }
  if (lo == 0) throw InvalidInput("N must be positive");
  // fail fast on the largest N before spending time on the small ones
  detail::check_budget(hi, hi, c.budget);
  const auto rows = parallel_map(hi - lo + 1, c.workers, [&](std::size_t k) { return compare_dp(lo + k, c.budget); });
  const std::string format = c.format.empty() ? "csv" : c.format;
  if (format == "csv") return to_csv(rows);
  return render(to_json(rows), format);
}

inline std::string cmd_coeff(const Config& c) {
  if (c.multiset.empty()) throw InvalidInput("coeff needs --multiset");
  auto sorted = c.multiset;
  std::sort(sorted.begin(), sorted.end());
  const MultisetIndex m(sorted);
  Json j;
  if (c.d) {
    if (c.n) throw InvalidInput("coeff takes either --n or --d with --alpha");
    if (c.alpha.empty()) throw InvalidInput("coeff --d needs --alpha");
    const auto alpha = nonnegative_alpha(c.alpha);
    check_multiset(alpha.size(), *c.d, m);
    const BigScalar v = coefficient_oracle_general(*c.d, alpha, exponent_of(m, alpha.size()));
    j = Json{{"kind", "coeff"}, {"d", *c.d}, {"alpha", alpha}, {"multiset", multiset_json(m)}, {"coeff", v.str()}};
  } else {
    if (!c.n) throw InvalidInput("coeff needs --n or --d with --alpha");
    const BigScalar v = coefficient_oracle(*c.n, m);
    j = Json{{"kind", "coeff"},
             {"n", *c.n},
             {"multiset", multiset_json(m)},
             {"coeff", v.str()},
             {"congruence_ok", support_congruence_check(*c.n, m)},
             {"predicate_ok", vanishing_predicate(*c.n, m)}};
  }
  return render(j, c.format.empty() ? "json" : c.format);
}

inline std::string cmd_witness(const Config& c) {
  if (!c.n) throw InvalidInput("witness needs --n");
  WitnessReport r;
  r.witness = theorem_witness(*c.n);
  r.congruence_ok = support_congruence_check(*c.n, r.witness.multiset);
  r.predicate_ok = vanishing_predicate(*c.n, r.witness.multiset);
  r.coefficient = coefficient_oracle(*c.n, r.witness.multiset);
  if (r.coefficient != 0 || !r.congruence_ok || !r.predicate_ok)
    throw WitnessFailure("witness for N=" + std::to_string(*c.n) + " " + r.witness.multiset.to_string() +
                         " has coefficient " + r.coefficient.str());
  return render(to_json(r), c.format.empty() ? "json" : c.format);
}

inline std::string cmd_gt(const Config& c) {
  if (!c.d || c.alpha.empty()) throw InvalidInput("gt needs --d and --alpha");
  GTOptions opts;
  opts.budget = c.budget;
  const auto rep = minimality_check(make_action(*c.d, c.alpha), opts);
  const std::string format = c.format.empty() ? "json" : c.format;
  if (format == "pretty") return to_pretty(rep);
  return render(to_json(rep), format);
}

inline std::string cmd_scan(const Config& c, std::ostream& err) {
  if (c.theorem49.has_value() == c.conjecture.has_value())
    throw InvalidInput("scan needs exactly one of --theorem49 N_MAX or --conjecture D_MAX");
  GTOptions opts;
  opts.budget = c.budget;
  const std::string format = c.format.empty() ? "csv" : c.format;
  if (c.theorem49) {
    const auto rows = theorem49_scan(*c.theorem49, c.workers, opts);
    for (const auto& r : rows)
      if (!r.consistent) err << "inconsistent row: N=" << r.n << '\n';
    return format == "csv" ? to_csv(rows) : render(to_json(rows), format);
  }
  const auto rows = conjecture_scan(*c.conjecture, c.workers, opts);
  for (const auto& r : rows)
    if (r.missing_count != 0)
      err << "finding: d=" << r.d << " alpha=(0," << r.n << ',' << r.m << ") is not minimal, " << r.missing_count
          << " invariant monomials missing\n";
  return format == "csv" ? to_csv(rows) : render(to_json(rows), format);
}

inline std::string dispatch(const Config& c, std::ostream& err) {
  if (c.subcommand == "det") return cmd_det(c);
  if (c.subcommand == "per") return cmd_per(c);
  if (c.subcommand == "count") return cmd_count(c);
  if (c.subcommand == "coeff") return cmd_coeff(c);
  if (c.subcommand == "witness") return cmd_witness(c);
  if (c.subcommand == "gt") return cmd_gt(c);
  if (c.subcommand == "scan") return cmd_scan(c, err);
  throw InvalidInput("unknown subcommand " + c.subcommand);
}

/// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  std::optional<std::uint64_t> budget_flag;
  std::optional<std::size_t> workers_flag;

  CLI::App app{"Exact expansions of generic circulant determinants and permanents"};
  app.name("circulant");
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json | csv | pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--budget", budget_flag, "term budget for expansions")->check(CLI::PositiveNumber);
    sub->add_option("--workers", workers_flag, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out_path, "write output to PATH");
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", c.n, "matrix order N")->check(CLI::NonNegativeNumber); };
  auto add_d_alpha = [&](CLI::App* sub) {
    sub->add_option("--d", c.d, "group order d");
    sub->add_option("--alpha", c.alpha, "exponents i,j,k")->delimiter(',');
  };

  auto* det = app.add_subcommand("det", "expand det Circ(x_0..x_{N-1}) or the twisted product for (d, alpha)");
  add_n(det);
  add_d_alpha(det);
  common(det);
  auto* per = app.add_subcommand("per", "expand the permanent by brute force");
  add_n(per);
  common(per);
  auto* count = app.add_subcommand("count", "d(N) and p(N) table");
  add_n(count);
  count->add_option("--n-range", c.n_range, "A..B");
  common(count);
  auto* coeff = app.add_subcommand("coeff", "one determinant coefficient without expanding");
  add_n(coeff);
  add_d_alpha(coeff);
  coeff->add_option("--multiset", c.multiset, "indices a,b,c,...")->delimiter(',');
  common(coeff);
  auto* witness = app.add_subcommand("witness", "vanishing coefficient witness for non prime powers");
  add_n(witness);
  common(witness);
  auto* gt = app.add_subcommand("gt", "GT-system report for the action (d, alpha)");
  add_d_alpha(gt);
  common(gt);
  auto* scan = app.add_subcommand("scan", "minimality scans");
  scan->add_option("--theorem49", c.theorem49, "scan alpha = (0..N-1) for N = 3..N_MAX");
  scan->add_option("--conjecture", c.conjecture, "scan alpha = (0, n, m) for d = 3..D_MAX");
  common(scan);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    c.budget = budget_flag ? *budget_flag : env_budget();
    c.workers = workers_flag ? *workers_flag : std::max(1u, std::thread::hardware_concurrency());
    const std::string text = dispatch(c, err);
    if (c.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out_path, std::ios::binary);
      if (!f) throw InvalidInput("cannot open " + c.out_path + " for writing");
      f << text;
      if (!f.flush()) throw InvalidInput("cannot write " + c.out_path);
    }
    return kOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << '\n';
    return kConsistency;
  }
}

}  // namespace circulant::cli
