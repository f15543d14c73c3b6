// ces: command-line front end for the quasi-exact state tables, boundary
// audits and the Numerov shooting oracle.
//
// Exit codes: 0 success / audit accept, 1 verification or audit failure,
// 2 usage or domain error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ces/acceptance.hpp"
#include "ces/error.hpp"
#include "ces/hermite.hpp"
#include "ces/liouville.hpp"
#include "ces/oracle.hpp"
#include "ces/quasi_exact.hpp"
#include "ces/report.hpp"
#include "ces/singularity.hpp"

using namespace ces;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Config {
  std::string format = "table";
  std::string out;
  std::string potential = "v1";
  double A = -1.0;
  double B = 0.0;
  std::vector<double> E;
  std::string G;
  int ell = 0;
  int n = 2;
  std::optional<int> only_n;
  std::optional<int> only_k;
  int n_max = 5;
  double e_min = -0.5;
  double e_max = -0.01;
  double b_min = -5.0;
  double b_max = 0.0;
  int points = 200;
  std::optional<double> h;
  std::optional<double> x_max;
  std::string scope = "all";
  std::string fault;
  bool discrepancies_only = false;
  double tol = 1e-5;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::InvalidArgument, "cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double energy(const Config& cfg) {
  if (cfg.E.empty()) throw Error(ErrorKind::InvalidArgument, "--E is required");
  return cfg.E.front();
}

std::optional<oracle::GridSpec> grid_override(const Config& cfg,
                                              const oracle::GridSpec& fallback) {
  if (!cfg.h && !cfg.x_max) return std::nullopt;
  return oracle::GridSpec::make(cfg.x_max.value_or(fallback.x_max),
                                cfg.h.value_or(fallback.h));
}

int cmd_zeros(const Config& cfg, std::ostream& os, report::Format fmt) {
  if (cfg.n < 0) throw Error(ErrorKind::InvalidArgument, "--n must be nonnegative");
  const auto set = hermite::zeros(cfg.n);
  std::vector<report::Record> records;
  for (const auto& z : set.zeros) {
    report::Record rec;
    rec.add("n", std::int64_t{cfg.n})
        .add("k", std::int64_t{z.k})
        .add("x", z.x)
        .add("closed_form", z.exact.has_value())
        .add("exact", z.exact ? z.exact->str() : std::string())
        .add("hermite_value", hermite::eval(cfg.n, z.x).value)
        .add("origin_zero_present", set.origin_zero_present);
    records.push_back(std::move(rec));
  }
  report::write(os, records, fmt);
  return 0;
}

int cmd_classify(const Config& cfg, std::ostream& os, report::Format fmt) {
  Rational G = cfg.G.empty() ? PotentialSpec{parse_family(cfg.potential)}.G
                             : parse_rational(cfg.G);
  if (cfg.G.empty()) {
    const auto family = parse_family(cfg.potential);
    G = family == Family::V2 ? Rational(-5, 36) : Rational(-3, 16);
  }
  const auto rep = singularity::classify_regime(G, cfg.ell);
  const double nan = std::nan("");
  report::Record rec;
  rec.add("G", to_string(rep.G))
      .add("ell", std::int64_t{rep.ell})
      .add("G_eff", to_string(rep.G_eff))
      .add("L", rep.L.value_or(nan))
      .add("exp_regular", rep.exp_regular.value_or(nan))
      .add("exp_irregular", rep.exp_irregular.value_or(nan))
      .add("regime", std::string(singularity::to_string(rep.regime)))
      .add("boundary_condition", std::string(singularity::to_string(rep.boundary_condition)))
      .add("equivalence_proven", rep.equivalence_proven);
  std::vector<report::Record> records{rec};
  report::write(os, records, fmt);
  return 0;
}

PotentialSpec make_spec(const Config& cfg) {
  const auto family = parse_family(cfg.potential);
  switch (family) {
    case Family::V1: return PotentialSpec::v1(cfg.A, cfg.B);
    case Family::V2: return PotentialSpec::v2(cfg.A, cfg.B);
    case Family::Kratzer:
      return PotentialSpec::kratzer(cfg.A, cfg.B,
                                    cfg.G.empty() ? Rational(0) : parse_rational(cfg.G), cfg.ell);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

int cmd_liouville(const Config& cfg, std::ostream& os, report::Format fmt) {
  const auto spec = make_spec(cfg);
  const auto c = liouville::cancellation_exponent(spec);
  report::Record rec;
  rec.add("potential", std::string(to_string(spec.family)))
      .add("G_eff", to_string(spec.effective_G()))
      .add("c", c.exact ? to_string(*c.exact) : report::format_double(c.value))
      .add("c_exact", c.exact.has_value());
  if (c.exact) {
    const auto osc = liouville::transform(spec, *c.exact, energy(cfg));
    rec.add("p", osc.p)
        .add("q", osc.q)
        .add("lambda", osc.lambda)
        .add("residual_centrifugal", to_string(osc.residual_centrifugal));
    if (osc.residual_centrifugal == Rational(0)) {
      const auto ex = liouville::threshold_exponents(osc);
      rec.add("exp_regular", to_string(ex.regular)).add("exp_irregular", to_string(ex.irregular));
    }
  }
  std::vector<report::Record> records{rec};
  report::write(os, records, fmt);
  return 0;
}

int cmd_ces_states(const Config& cfg, std::ostream& os, report::Format fmt) {
  const auto states = quasi_exact::table2(cfg.A, cfg.n_max);
  std::vector<report::Record> rows;
  const auto selected = [&](int n, int k) {
    return (!cfg.only_n || *cfg.only_n == n) && (!cfg.only_k || *cfg.only_k == k);
  };
  for (const auto& s : states) {
    if (!selected(s.n, s.k)) continue;
    const auto exact = quasi_exact::exact_forms(s);
    report::Record rec;
    if (fmt == report::Format::JsonLines) rec.add("record", std::string("state"));
    rec.add("M", std::int64_t{s.M})
        .add("n", std::int64_t{s.n})
        .add("k", std::int64_t{s.k})
        .add("X", s.X)
        .add("X_exact", s.X_exact ? s.X_exact->str() : std::string())
        .add("beta", s.beta)
        .add("B", s.B)
        .add("Bprime", s.Bprime)
        .add("Bprime_exact", exact ? exact->bprime_str() : std::string())
        .add("E", s.E)
        .add("E_exact", exact ? exact->energy.str() : std::string())
        .add("selfconsistency", quasi_exact::selfconsistency_residual(s));
    rows.push_back(std::move(rec));
  }

  std::vector<report::Record> disc;
  if (cfg.A == -1.0) {
    for (const auto& d : report::compare_with_printed(states)) {
      if (!selected(d.n, d.k)) continue;
      report::Record rec;
      if (fmt == report::Format::JsonLines) rec.add("record", std::string("discrepancy"));
      rec.add("M", std::int64_t{d.M})
          .add("n", std::int64_t{d.n})
          .add("k", std::int64_t{d.k})
          .add("quantity", d.quantity)
          .add("paper_value", d.paper_value)
          .add("computed_value", d.computed_value)
          .add("abs_difference", d.abs_difference)
          .add("verdict", std::string(report::to_string(d.verdict)));
      disc.push_back(std::move(rec));
    }
  }

  if (cfg.discrepancies_only) {
    report::write(os, disc, fmt);
    return 0;
  }
  if (fmt == report::Format::Table) os << "# quasi-exact states, A = " << cfg.A << "\n";
  report::write(os, rows, fmt);
  if (!disc.empty()) {
    if (fmt == report::Format::Table) {
      os << "\n# comparison with the published table (printed values are transcriptions)\n";
    } else if (fmt == report::Format::Csv) {
      os << "\n";
    }
    report::write(os, disc, fmt);
  }
  return 0;
}

int cmd_audit(const Config& cfg, std::ostream& os, report::Format fmt) {
  const auto audit = quasi_exact::boundary_audit(cfg.n, cfg.B, energy(cfg), cfg.tol);
  report::Record rec;
  rec.add("n", std::int64_t{audit.n})
      .add("B", audit.B)
      .add("E", audit.E)
      .add("beta", audit.beta)
      .add("z0", audit.z0)
      .add("hermite_at_z0", audit.hermite_at_z0)
      .add("nodal_zero", audit.nodal_zero)
      .add("leading_exponent", audit.leading_exponent)
      .add("psi_vanishes", audit.vanishes_at_origin)
      .add("psi_over_sqrt_r_vanishes", audit.vanishes_over_sqrt_r)
      .add("verdict", std::string(quasi_exact::to_string(audit.verdict)))
      .add("note", std::string(audit.coupling_vanishes ? "B = 0 is excluded (B must be nonzero)" : ""));
  std::vector<report::Record> records{rec};
  report::write(os, records, fmt);
  return audit.verdict == quasi_exact::Verdict::Accept ? 0 : kExitFailure;
}

int cmd_solve(const Config& cfg, std::ostream& os, report::Format fmt) {
  const auto spec = make_spec(cfg);
  std::vector<oracle::Eigenvalue> found;
  std::string axis;
  if (spec.family == Family::V2) {
    const double E = energy(cfg);
    const auto grid =
        grid_override(cfg, oracle::default_coupling_grid(spec, E, cfg.b_min, cfg.b_max));
    found = oracle::coupling_scan(spec, E, cfg.b_min, cfg.b_max, cfg.points, grid);
    axis = "B";
  } else {
    const auto grid = grid_override(cfg, oracle::default_grid(spec, cfg.e_min, cfg.e_max));
    found = oracle::spectrum_scan(spec, cfg.e_min, cfg.e_max, cfg.points, grid);
    axis = "E";
  }
  std::vector<report::Record> records;
  for (const auto& ev : found) {
    report::Record rec;
    rec.add("potential", std::string(to_string(spec.family)))
        .add("axis", axis)
        .add("value", ev.value)
        .add("nodes", std::int64_t{ev.nodes})
        .add("residual", ev.residual);
    records.push_back(std::move(rec));
  }
  report::write(os, records, fmt);
  return 0;
}

int cmd_pathology(const Config& cfg, std::ostream& os, report::Format fmt) {
  const auto spec = make_spec(cfg);
  if (cfg.E.empty()) throw Error(ErrorKind::InvalidArgument, "--E needs at least one energy");
  std::optional<oracle::GridSpec> grid;
  if (cfg.h || cfg.x_max) {
    const auto [lo, hi] = std::minmax_element(cfg.E.begin(), cfg.E.end());
    grid = grid_override(cfg, oracle::default_grid(spec, *lo, *hi));
  }
  const auto rows = oracle::weak_bc_pathology_demo(spec, cfg.E, grid);
  std::vector<report::Record> records;
  for (const auto& r : rows) {
    report::Record rec;
    rec.add("E", r.E)
        .add("c_irr", r.c_irr)
        .add("c_reg", r.c_reg)
        .add("c_tolerance", r.c_tolerance)
        .add("fitted_exponent", r.fitted_exponent)
        .add("near_origin_norm", r.near_origin_norm)
        .add("psi_vanishes", r.vanishes_at_origin)
        .add("psi_over_sqrt_r_vanishes", r.vanishes_over_sqrt_r);
    records.push_back(std::move(rec));
  }
  report::write(os, records, fmt);
  return 0;
}

int cmd_verify(const Config& cfg, std::ostream& os) {
  acceptance::Options options;
  if (cfg.fault == "beta") {
    options.make_state = [](int n, int k, double A) {
      auto s = quasi_exact::make_state(n, k, A);
      s.beta *= 1.001;
      s.E = -0.25 * std::pow(s.beta, 4);
      s.B = 0.5 * s.X * std::pow(s.beta, 3);
      s.Bprime = s.B / 8.0;
      return s;
    };
  } else if (!cfg.fault.empty()) {
    throw Error(ErrorKind::InvalidArgument, "unknown fault '" + cfg.fault + "'");
  }
  const auto results = acceptance::run(acceptance::parse_scope(cfg.scope), options);
  acceptance::print(os, results);
  for (const auto& r : results) {
    if (!r.passed) return kExitFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-exact states of singular V1/V2 potentials: tables, audits, shooting oracle"};
  app.set_help_flag("--help", "print help");  // -h is taken by the Numerov step
  app.require_subcommand(1, 1);
  app.fallthrough();
  Config cfg;

  app.add_option("--format", cfg.format, "table | csv | json-lines")
      ->check(CLI::IsMember({"table", "csv", "json-lines"}));
  app.add_option("--out", cfg.out, "write output to this file instead of stdout");

  auto* zeros = app.add_subcommand("zeros", "nonvanishing zeros of H_n");
  zeros->add_option("--n", cfg.n, "Hermite order")->required();

  auto* classify = app.add_subcommand("classify", "singularity regime and boundary condition");
  classify->add_option("--potential", cfg.potential, "v1 | v2 | kratzer");
  classify->add_option("--G", cfg.G, "inverse-square strength, e.g. -3/16 (overrides --potential)");
  classify->add_option("--ell", cfg.ell, "angular momentum");

  auto* liou = app.add_subcommand("liouville", "map to the canonical shifted oscillator");
  liou->add_option("--potential", cfg.potential, "v1 | v2 | kratzer");
  liou->add_option("--A", cfg.A);
  liou->add_option("--B", cfg.B);
  liou->add_option("--E", cfg.E)->expected(1);
  liou->add_option("--G", cfg.G, "kratzer only");
  liou->add_option("--ell", cfg.ell, "kratzer only");

  auto* states = app.add_subcommand("ces-states", "quasi-exact V1 states and published-table comparison");
  states->add_option("--A", cfg.A, "Coulomb coupling, must be negative");
  states->add_option("--n-max", cfg.n_max, "largest Hermite order");
  states->add_option("--n", cfg.only_n, "only states of this Hermite order");
  states->add_option("--k", cfg.only_k, "only states with this zero index");
  states->add_flag("--discrepancies", cfg.discrepancies_only, "emit only the comparison records");

  auto* audit = app.add_subcommand("audit-dutra", "threshold audit of a Hermite-type V1 wavefunction");
  audit->add_option("--n", cfg.n)->required();
  audit->add_option("--B", cfg.B)->required();
  audit->add_option("--E", cfg.E)->expected(1)->required();
  audit->add_option("--tol", cfg.tol,
                    "relative nodal tolerance; the default allows six-digit inputs");

  auto* solve = app.add_subcommand("solve", "shooting eigenvalue scan (E for v1, B for v2)");
  solve->add_option("--potential", cfg.potential, "v1 | v2 | kratzer");
  solve->add_option("--A", cfg.A);
  solve->add_option("--B", cfg.B);
  solve->add_option("--E", cfg.E, "fixed energy (v2)")->expected(1);
  solve->add_option("--G", cfg.G, "kratzer only");
  solve->add_option("--e-min", cfg.e_min);
  solve->add_option("--e-max", cfg.e_max);
  solve->add_option("--b-min", cfg.b_min, "v2 coupling range");
  solve->add_option("--b-max", cfg.b_max, "v2 coupling range");
  solve->add_option("--points", cfg.points, "scan grid size");
  solve->add_option("--h", cfg.h, "Numerov step");
  solve->add_option("--x-max", cfg.x_max, "outer end of the canonical grid");

  auto* path = app.add_subcommand("pathology", "inward-only solutions under the weak condition psi(0)=0");
  path->add_option("--potential", cfg.potential, "v1 | kratzer");
  path->add_option("--A", cfg.A);
  path->add_option("--B", cfg.B);
  path->add_option("--E", cfg.E, "energies, comma separated")->delimiter(',')->required();
  path->add_option("--h", cfg.h, "Numerov step");
  path->add_option("--x-max", cfg.x_max, "outer end of the canonical grid");

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--scope", cfg.scope, "tables | oracle | all")
      ->check(CLI::IsMember({"tables", "oracle", "all"}));
  verify->add_option("--inject-fault", cfg.fault, "perturb a formula to test the gate (beta)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Output out(cfg.out);
    auto& os = out.stream();
    const auto fmt = report::parse_format(cfg.format);
    if (*zeros) return cmd_zeros(cfg, os, fmt);
    if (*classify) return cmd_classify(cfg, os, fmt);
    if (*liou) return cmd_liouville(cfg, os, fmt);
    if (*states) return cmd_ces_states(cfg, os, fmt);
    if (*audit) return cmd_audit(cfg, os, fmt);
    if (*solve) return cmd_solve(cfg, os, fmt);
    if (*path) return cmd_pathology(cfg, os, fmt);
    if (*verify) return cmd_verify(cfg, os);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
