#include "operad/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "operad/bounds.hpp"
#include "operad/equations.hpp"

namespace operad {

namespace {

struct RunConfig {
  std::string command;
  std::string file;
  int order = 12;
  int cap = 8;
  std::uint64_t budget = 10'000'000;
  std::string format = "tsv";
  std::vector<std::string> precedence;
  unsigned seed = 1;
  int count = 20;

  GroebnerOptions gb() const { return GroebnerOptions{cap, budget}; }

  std::string header() const {
    std::string h = "# operad " + command;
    if (!file.empty()) h += " file=" + file;
    h += " order=" + std::to_string(order) + " cap=" + std::to_string(cap) +
         " budget=" + std::to_string(budget) + " format=" + format;
    if (!precedence.empty()) {
      h += " precedence=";
      for (std::size_t i = 0; i < precedence.size(); ++i) h += (i ? "," : "") + precedence[i];
    }
    if (command == "selftest") h += " seed=" + std::to_string(seed) + " count=" + std::to_string(count);
    return h + "\n";
  }
};

// Rows rendered either tab-separated or as aligned columns.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render(const std::string& format) const {
    std::string out;
    if (format == "tsv") {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "\t" : "") + cells[i];
        out += "\n";
      };
      line(header);
      for (const auto& r : rows) line(r);
      return out;
    }
    std::vector<std::size_t> width(header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    };
    measure(header);
    for (const auto& r : rows) measure(r);
    auto line = [&](const std::vector<std::string>& cells) {
      std::string l;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        l += cells[i];
        if (i + 1 < cells.size()) l += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      out += l + "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

std::string decimal(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

const char* kCapCaveat =
    "# dimensions from a truncated Groebner basis are certified only for arities below the cap\n";

Presentation load(const RunConfig& cfg) { return load_presentation(cfg.file); }

MonomialOrder order_of(const Presentation& p, const RunConfig& cfg) { return p.order(cfg.precedence); }

std::string dims_table(const DimTable& t, const std::string& format) {
  Table tab{{"arity", "dim", "tag"}, {}};
  for (const auto& r : t.rows) tab.rows.push_back({std::to_string(r.arity), r.dim.get_str(), std::string(to_string(r.tag))});
  return tab.render(format);
}

int cmd_dims(const RunConfig& cfg, std::ostream& out) {
  auto p = load(cfg);
  out << cfg.header();
  auto t = dims_of_quotient(p, order_of(p, cfg), cfg.gb(), cfg.order);
  out << "# mode " << to_string(p.mode) << ", " << (p.is_monomial() ? "monomial" : "general") << " presentation\n";
  if (!p.is_monomial()) out << kCapCaveat;
  out << dims_table(t, cfg.format);
  if (t.budget_exhausted) {
    out << "# budget exhausted: arities beyond " << t.max_arity() << " were not computed\n";
    return 4;
  }
  return 0;
}

int cmd_gb(const RunConfig& cfg, std::ostream& out) {
  auto p = load(cfg);
  out << cfg.header();
  const auto order = order_of(p, cfg);
  auto g = buchberger(p, order, cfg.gb());
  out << "# basis (" << g.basis.size() << " elements)\n";
  for (const auto& b : g.basis) out << format_element(b, p.signature, order) << "\n";
  out << "# complete below cap: " << yes_no(g.complete_below_cap) << "\n";
  out << "# finite basis: " << yes_no(g.finite) << (g.finite ? "" : " (not claimed: the cap must exceed twice the largest basis arity)") << "\n";
  out << kCapCaveat;
  if (g.budget_exhausted) {
    out << "# budget exhausted: the basis is incomplete\n";
    return 4;
  }
  return 0;
}

// The monomial presentation the series pipeline works on.
Presentation monomial_input(const Presentation& p, const RunConfig& cfg, std::ostream& out) {
  if (p.is_monomial()) return p;
  const auto order = order_of(p, cfg);
  auto g = buchberger(p, order, cfg.gb());
  if (g.budget_exhausted) throw BudgetExceeded("Groebner basis computation ran out of budget");
  out << "# using the leading monomials of a Groebner basis truncated at arity " << cfg.cap << "\n";
  if (!g.finite) out << "# warning: incomplete Groebner basis; the series below is an upper bound beyond the cap\n";
  return leading_monomials(g, p, order);
}

int cmd_series(const RunConfig& cfg, std::ostream& out) {
  auto source = load(cfg);
  out << cfg.header();
  auto p = monomial_input(source, cfg, out);
  const bool shuffle = p.mode == Mode::shuffle;

  out << "stamps:\n";
  const auto stamps = stamp_set(p);
  for (std::size_t i = 0; i < stamps.size(); ++i) {
    out << "  y_" << i << " <- " << format_monomial(stamps[i], p.signature) << "\n";
  }
  const auto sys = shuffle ? build_shuffle_system(p) : build_planar_system(p);
  out << "system:\n" << sys.format() << "total = " << sys.format_total() << "\n";

  std::optional<EquationSystem> simple;
  if (shuffle && is_symmetric_regular(p.monomials())) {
    simple = simplify_symmetric_regular(sys, p);
    out << "simplified system:\n" << simple->format() << "total = " << simple->format_total() << "\n";
  } else if (shuffle) {
    out << "simplified system: not available (relations are not symmetric regular)\n";
  }

  const auto sol = solve_series(sys, cfg.order);
  out << "series: " << format_series(sol.total) << "\n";

  const EquationSystem* poly = shuffle ? (simple ? &*simple : nullptr) : &sys;
  if (poly) {
    try {
      auto eq = eliminate(*poly);
      out << "algebraic equation: " << eq.format() << "\n";
      out << "  Y-degree " << eq.y_degree() << " <= bound " << eq.degree_bound << "; verified to order "
          << eq.verified_order << " with " << eq.spare << " spare coefficients\n";
    } catch (const HypothesisError&) {
      throw;
    } catch (const Error& e) {
      out << "algebraic equation: not found (" << e.what() << ")\n";
    }
  } else {
    out << "algebraic equation: not attempted\n";
  }

  if (shuffle) {
    out << "differential constraints:\n";
    for (const auto& d : ode_from_system(sys)) {
      const bool ok = verify_ode(d, sol.unknowns);
      out << "  " << d.format(sys.names) << " = 0  [" << (ok ? "verified" : "FAILED") << "]\n";
      if (!ok) throw Error("differential constraint does not hold");
    }
  }
  out << "verification order: " << cfg.order << "\n";

  const int check = std::min(cfg.order, 6);
  auto oracle = normal_dims(p, check, cfg.budget);
  auto dims = dims_of(sol.total);
  bool agree = true;
  for (const auto& r : oracle.rows) agree = agree && dims[static_cast<std::size_t>(r.arity)] == r.dim;
  out << "enumeration agreement to arity " << oracle.max_arity() << ": " << (agree ? "yes" : "NO") << "\n";
  if (!agree) throw Error("series disagrees with direct enumeration");
  return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  auto p = load(cfg);
  out << cfg.header();
  const auto order = order_of(p, cfg);
  const int n_max = std::max(1, std::min(cfg.order, cfg.cap - 1));
  const auto in = gs_input(p, n_max);
  const auto gs = gs_lower_bound(in, n_max);
  const auto free = gs_lower_bound({in.x, PowerSeries(in.x.flavor(), n_max)}, n_max);
  const auto upper = partial_gb_bound(p, order, cfg.gb(), n_max);
  std::optional<DimTable> oracle;
  if (p.is_monomial()) oracle = normal_dims(p, n_max, cfg.budget);

  out << "# lower: Golod-Shafarevich inverse series; upper: leading monomials of the truncated basis; free: no relations\n";
  out << "# t/f(t) nonnegative to order " << n_max << ": " << yes_no(gs.hypothesis)
      << (gs.hypothesis ? "" : " (the lower bound is not guaranteed)") << "\n";
  out << kCapCaveat;
  Table tab{{"arity", "gs_lower", "oracle", "partial_gb_upper", "free_upper", "flags"}, {}};
  bool sandwich = true;
  for (const auto& row : upper.rows) {
    const int n = row.arity;
    const Rational lo = gs.dim(n);
    const Rational fr = free.dim(n);
    const Rational mid = oracle && n <= oracle->max_arity() ? Rational(oracle->dim(n)) : Rational(row.dim);
    bool ok = mid <= Rational(row.dim) && Rational(row.dim) <= fr;
    if (gs.hypothesis) ok = ok && lo <= mid;
    sandwich = sandwich && ok;
    std::string flags = std::string(to_string(row.tag));
    if (gs.hypothesis && lo == Rational(row.dim)) flags += ",pinched";
    if (!ok) flags += ",VIOLATED";
    tab.rows.push_back({std::to_string(n), format_rational(lo),
                        oracle && n <= oracle->max_arity() ? oracle->dim(n).get_str() : "-", row.dim.get_str(),
                        format_rational(fr), flags});
  }
  out << tab.render(cfg.format);

  bool binary = !p.signature.generators().empty();
  for (const auto& g : p.signature.generators()) binary = binary && g.arity == 2;
  if (binary && p.mode == Mode::shuffle) {
    const int c = static_cast<int>(p.signature.size());
    const auto b = binary_bounds(c, gs_input(p, n_max + 1).r, n_max);
    out << "binary bracket: c = " << c;
    if (b.quadratic) {
      out << ", d = " << format_rational(b.d) << ", condition d <= 3c^2/8: " << (b.condition ? "holds" : "fails");
    }
    out << "\n";
    if (!b.condition || !b.root_found) {
      out << "binary bracket: hypothesis failure, no positive root of phi; no bounds\n";
    } else {
      if (!b.z0_radical.empty()) out << "z0 = " << b.z0_radical << "\n";
      out << "z0 in [" << format_rational(b.z0_lo) << ", " << format_rational(b.z0_hi) << "]\n";
      out << "z0 decimal estimate " << decimal(b.z0) << "\n";
      Table br{{"arity", "lower", "stated_lower_estimate", "gs", "upper", "sandwich"}, {}};
      for (const auto& r : b.rows) {
        br.rows.push_back({std::to_string(r.n + 1), r.lower.get_str(), decimal(r.lower_printed, 4),
                           format_rational(r.gs), r.upper.get_str(), yes_no(r.sandwich)});
      }
      out << br.render(cfg.format);
    }
  } else {
    out << "binary bracket: needs a shuffle presentation with binary generators only\n";
  }

  std::vector<Integer> dims(1, Integer(0));
  for (const auto& r : (oracle ? *oracle : upper).rows) dims.push_back(r.dim);
  if (dims.size() >= 5) {
    bool exact = true;
    for (const auto& r : (oracle ? *oracle : upper).rows) exact = exact && r.tag != DimTag::upper_bound;
    out << "growth (" << (exact ? "certified dims" : "upper-bound dims") << "):\n";
    out << growth_report(dims, p.mode == Mode::shuffle ? Flavor::egf : Flavor::ogf).text();
  } else {
    out << "growth: fewer than 4 arities available\n";
  }
  if (upper.budget_exhausted || (oracle && oracle->budget_exhausted)) {
    out << "# budget exhausted: some arities were not computed\n";
    return 4;
  }
  if (!sandwich) throw Error("sandwich property violated");
  return 0;
}

// Random monomial shuffle presentations, checked against the sandwich and
// the series oracle.
int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  out << cfg.header();
  std::mt19937 rng(cfg.seed);
  const Signature sig({{"a", 2}, {"b", 2}});
  const auto shapes = planar_shapes(sig, 3);
  const int n_max = std::min(cfg.order, 5);
  int failures = 0;
  for (int trial = 0; trial < cfg.count; ++trial) {
    std::vector<TreeMonomial> forbid;
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < k; ++i) {
      const auto& s = shapes[std::uniform_int_distribution<std::size_t>(0, shapes.size() - 1)(rng)];
      const auto ls = shuffle_labellings(s);
      forbid.push_back(ls[std::uniform_int_distribution<std::size_t>(0, ls.size() - 1)(rng)]);
    }
    forbid = regular_closure(forbid, Regularity::shuffle);
    const auto p = monomial_presentation(Mode::shuffle, sig, forbid);
    const auto oracle = normal_dims(p, n_max, cfg.budget);
    const auto gs = gs_lower_bound(gs_input(p, n_max), n_max);
    const auto sol = solve_series(build_shuffle_system(p), n_max);
    const auto dims = dims_of(sol.total);
    bool ok = true;
    for (const auto& r : oracle.rows) {
      ok = ok && dims[static_cast<std::size_t>(r.arity)] == r.dim;
      if (gs.hypothesis) ok = ok && gs.dim(r.arity) <= Rational(r.dim);
    }
    failures += !ok;
    out << "trial " << trial << "\t" << forbid.size() << " monomials\t" << (ok ? "pass" : "FAIL") << "\n";
  }
  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 5;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Dimensions, Groebner bases, generating series and bounds for operads"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub, bool with_file) {
    if (with_file) sub->add_option("file", cfg.file, "presentation file")->required();
    sub->add_option("--order", cfg.order, "truncation order of series and largest arity")->check(CLI::PositiveNumber);
    sub->add_option("--cap", cfg.cap, "arity cap of the Groebner basis")->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget, "vertex budget for enumeration and lifting")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"tsv", "text"}));
    sub->add_option("--precedence", cfg.precedence, "generator precedence, largest first")->delimiter(',');
  };
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"dims", "gb", "series", "bounds"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " of a presentation file");
    add_common(sub, true);
    subs.emplace_back(name, sub);
  }
  auto* self = app.add_subcommand("selftest", "randomized consistency checks");
  add_common(self, false);
  self->add_option("--seed", cfg.seed, "random seed");
  self->add_option("--count", cfg.count, "number of random presentations")->check(CLI::PositiveNumber);
  subs.emplace_back("selftest", self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) cfg.command = name;
  }

  try {
    if (cfg.command == "dims") return cmd_dims(cfg, out);
    if (cfg.command == "gb") return cmd_gb(cfg, out);
    if (cfg.command == "series") return cmd_series(cfg, out);
    if (cfg.command == "bounds") return cmd_bounds(cfg, out);
    return cmd_selftest(cfg, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisError& e) {
    err << "hypothesis failure: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 5;
  }
}

}  // namespace operad
