// Command-line front end: verification suites, spectrum/wavefunction tables,
// the self-energy length estimate and convergence studies, as CSV or JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ncqm/analytic.hpp"
#include "ncqm/coulomb_field.hpp"
#include "ncqm/radial_engine.hpp"
#include "ncqm/spectrum.hpp"
#include "ncqm/verify.hpp"

using namespace ncqm;

namespace {

using nlohmann::json;

struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<std::string> notes;

  void add_row(std::initializer_list<json> cells) { rows.emplace_back(cells); }
};

std::string format_cell(const json& v) {
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_csv(std::ostream& os, const Table& t) {
  os << "# " << t.schema << "\n";
  for (const auto& note : t.notes) os << "# " << note << "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_cell(row[c]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  json out;
  out["schema"] = t.schema;
  if (!t.notes.empty()) out["notes"] = t.notes;
  out["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj;
    for (std::size_t c = 0; c < row.size() && c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  out["rows"] = std::move(rows);
  os << out.dump(2) << "\n";
}

int emit(const Table& t, const std::string& format, const std::string& out_path) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return 2;
    }
    os = &file;
  }
  if (format == "json") {
    write_json(*os, t);
  } else {
    write_csv(*os, t);
  }
  return 0;
}

struct CommonFlags {
  std::string format = "csv";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out_path, "output path (default stdout)");
}

std::pair<int, int> parse_n_range(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    int n = std::stoi(spec);
    return {n, n};
  }
  return {std::stoi(spec.substr(0, colon)), std::stoi(spec.substr(colon + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotationally invariant noncommutative Coulomb problem"};
  app.require_subcommand(1);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run the operator-identity suites");
  CommonFlags vf;
  int v_nmax = 30;
  double v_lambda = 1.0;
  bool v_exact = false;
  double v_tol = 1e-12;
  unsigned v_seed = 20260808;
  verify->add_option("--nmax", v_nmax, "truncation level")->check(CLI::Range(2, 200));
  verify->add_option("--lambda", v_lambda, "length parameter (units of a0)")->check(CLI::NonNegativeNumber);
  verify->add_flag("--exact", v_exact, "rational arithmetic, zero tolerances");
  verify->add_option("--tol", v_tol, "relative tolerance of float checks")->check(CLI::PositiveNumber);
  verify->add_option("--seed", v_seed, "seed of the random hermiticity probes");
  add_common(verify, vf);

  // ---- spectrum ----
  auto* spectrum = app.add_subcommand("spectrum", "bound-state energies, analytic and numeric");
  CommonFlags sf;
  double s_lambda = 0.1;
  int s_j = 0, s_nmax = 800;
  std::string s_n = "1:4";
  spectrum->add_option("--lambda", s_lambda, "length parameter (units of a0)")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--j", s_j, "include sectors j = 0..J")->check(CLI::Range(0, 20));
  spectrum->add_option("--n", s_n, "principal quantum number or range lo:hi");
  spectrum->add_option("--nmax", s_nmax, "truncation level")->check(CLI::Range(4, 2000000));
  add_common(spectrum, sf);

  // ---- wavefunction ----
  auto* wavefunction = app.add_subcommand("wavefunction", "radial profile: analytic vs numeric");
  CommonFlags wf;
  double w_lambda = 0.1;
  int w_n = 1, w_j = 0, w_m = 0, w_nmax = 400;
  wavefunction->add_option("--lambda", w_lambda, "length parameter (units of a0)")->check(CLI::PositiveNumber);
  wavefunction->add_option("--n", w_n, "principal quantum number")->check(CLI::Range(1, 50));
  wavefunction->add_option("--j", w_j, "angular momentum")->check(CLI::Range(0, 49));
  wavefunction->add_option("--m", w_m, "magnetic quantum number (radial data is m-independent)");
  wavefunction->add_option("--nmax", w_nmax, "truncation level")->check(CLI::Range(4, 200000));
  add_common(wavefunction, wf);

  // ---- lambda0 ----
  auto* lambda0 = app.add_subcommand("lambda0", "electron self-energy estimate of the length scale");
  CommonFlags lf;
  std::string l_constants;
  lambda0->add_option("--constants", l_constants, "key = value file of SI constants");
  add_common(lambda0, lf);

  // ---- convergence ----
  auto* convergence = app.add_subcommand("convergence", "commutative-limit and truncation studies");
  CommonFlags cf;
  std::string c_study = "lambda";
  int c_n = 1, c_j = 0, c_nmax = 800, c_points = 9;
  double c_lambda = 0.1, c_lambda_lo = 1e-4, c_lambda_hi = 1e-2;
  convergence->add_option("--study", c_study, "lambda sweep or nmax doubling")
      ->check(CLI::IsMember({"lambda", "nmax"}));
  convergence->add_option("--n", c_n, "principal quantum number")->check(CLI::Range(1, 50));
  convergence->add_option("--j", c_j, "angular momentum (nmax study)")->check(CLI::Range(0, 49));
  convergence->add_option("--lambda", c_lambda, "length parameter of the nmax study")
      ->check(CLI::PositiveNumber);
  convergence->add_option("--lambda-lo", c_lambda_lo, "sweep start")->check(CLI::PositiveNumber);
  convergence->add_option("--lambda-hi", c_lambda_hi, "sweep end")->check(CLI::PositiveNumber);
  convergence->add_option("--points", c_points, "sweep points")->check(CLI::Range(2, 200));
  convergence->add_option("--nmax", c_nmax, "largest truncation of the doubling ladder")
      ->check(CLI::Range(16, 2000000));
  add_common(convergence, cf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      VerifyOptions opt;
      opt.n_max = v_nmax;
      opt.lambda = v_lambda;
      opt.lambda_exact = Rational(v_lambda);  // exact binary value of the flag
      opt.exact = v_exact;
      opt.tolerance = v_tol;
      opt.seed = v_seed;
      auto checks = run_verification(opt);
      Table t;
      t.schema = "ncqm.verify.v1";
      t.columns = {"check", "mode", "residual", "tolerance", "pass"};
      for (const auto& c : checks)
        t.add_row({c.name, v_exact ? "exact" : "float", c.residual, c.tolerance, c.pass});
      int rc = emit(t, vf.format, vf.out_path);
      if (rc != 0) return rc;
      for (const auto& c : checks) {
        if (!c.pass) {
          std::cerr << "verification failed: " << c.name << " residual " << c.residual << "\n";
          return 1;
        }
      }
      return 0;
    }

    if (*spectrum) {
      auto [n_lo, n_hi] = parse_n_range(s_n);
      if (n_lo < 1 || n_hi < n_lo) {
        std::cerr << "error: bad --n range\n";
        return 2;
      }
      if (s_nmax < s_j + 2) {
        std::cerr << "error: need nmax >= j + 2\n";
        return 2;
      }
      Table t;
      t.schema = "ncqm.spectrum.v1";
      t.columns = {"n", "j", "lambda", "E_analytic", "E_numeric", "rel_err", "n_max"};
      if (s_lambda == 0.0)
        t.notes.push_back("lambda=0: numeric lattice solve undefined, analytic column only");
      for (int j = 0; j <= s_j; ++j) {
        if (s_lambda == 0.0) {
          for (int n = std::max(n_lo, j + 1); n <= n_hi; ++n) {
            t.add_row({n, j, s_lambda, bound_energy(n, 0.0).energy,
                       std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN(), s_nmax});
          }
          continue;
        }
        auto records = compute_spectrum(j, s_lambda, n_lo, n_hi, s_nmax);
        for (const auto& r : records) {
          t.add_row({r.n, r.j, r.lambda, r.e_analytic, r.e_numeric, r.rel_err, r.n_max});
          if (!r.converged)
            std::cerr << "warning: state n=" << r.n << " j=" << r.j
                      << " not converged at nmax=" << r.n_max << "\n";
        }
      }
      return emit(t, sf.format, sf.out_path);
    }

    if (*wavefunction) {
      if (w_m < -w_j || w_m > w_j) {
        std::cerr << "error: m outside [-j, j]\n";
        return 2;
      }
      if (w_j >= w_n || w_nmax < w_j + 2) {
        std::cerr << "error: need j < n and nmax >= j + 2\n";
        return 2;
      }
      auto states = solve_bound_states(build_pencil<double>(w_j, w_lambda, 2.0, w_nmax));
      int idx = w_n - w_j - 1;
      if (idx >= int(states.size())) {
        std::cerr << "error: state (n=" << w_n << ", j=" << w_j
                  << ") not bound at this truncation; raise --nmax\n";
        return 1;
      }
      RadialSequence ana = analytic_radial_sequence(w_n, w_j, w_lambda, w_nmax);
      double norm = std::sqrt(sequence_norm(ana));
      Table t;
      t.schema = "ncqm.wavefunction.v1";
      t.columns = {"N", "R_analytic", "R_numeric", "abs_diff"};
      const auto& num = states[idx].sequence.values;
      for (std::size_t i = 0; i < ana.values.size(); ++i) {
        double a = ana.values[i] / norm;
        double b = i < num.size() ? num[i] : 0.0;
        t.add_row({int(i) + w_j, a, b, std::abs(a - b)});
      }
      return emit(t, wf.format, wf.out_path);
    }

    if (*lambda0) {
      PhysicalConstants consts =
          l_constants.empty() ? PhysicalConstants::defaults() : PhysicalConstants::from_file(l_constants);
      auto rep = self_energy_lambda0(consts);
      Table t;
      t.schema = "ncqm.lambda0.v1";
      t.columns = {"quantity", "value", "unit"};
      t.add_row({"field_energy_sum", to_double(rep.trace_sum), "exact 3/4"});
      t.add_row({"lambda0_over_r0", to_double(rep.lambda0_over_r0), "exact 3/8"});
      t.add_row({"r0", rep.r0_m, "m"});
      t.add_row({"lambda0", rep.lambda0_m, "m"});
      t.add_row({"a0", rep.a0_m, "m"});
      t.add_row({"lambda0_over_a0", rep.lambda0_over_a0, "= (3/8) alpha^2"});
      t.add_row({"printed_ratio_variant", rep.printed_ratio_variant, "= (9/64) alpha^2"});
      t.add_row({"level_shift_rel_n1", rep.level_shift_rel_n1, "= lambda0^2/(4 a0^2)"});
      for (const auto& row : rep.partial_sums) {
        t.add_row({"partial_sum_" + std::to_string(row.terms), row.partial, "remainder " +
                   std::to_string(row.remainder)});
      }
      return emit(t, lf.format, lf.out_path);
    }

    if (*convergence) {
      Table t;
      if (c_study == "lambda") {
        if (!(c_lambda_hi > c_lambda_lo)) {
          std::cerr << "error: need lambda-hi > lambda-lo\n";
          return 2;
        }
        t.schema = "ncqm.convergence.lambda.v1";
        t.columns = {"lambda", "n", "E_lambda", "E_commutative", "shift"};
        for (int i = 0; i < c_points; ++i) {
          double frac = double(i) / double(c_points - 1);
          double lam = c_lambda_lo * std::pow(c_lambda_hi / c_lambda_lo, frac);
          t.add_row({lam, c_n, bound_energy(c_n, lam).energy, commutative_energy(c_n),
                     energy_shift_from_commutative(c_n, lam)});
        }
        auto fit = fit_commutative_slope(c_n, c_lambda_lo, c_lambda_hi, c_points);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "fitted_loglog_slope = %.17g", fit.slope);
        t.notes.push_back(buf);
      } else {
        if (c_j >= c_n || c_nmax / 8 < c_j + 2) {
          std::cerr << "error: need j < n and nmax/8 >= j + 2\n";
          return 2;
        }
        t.schema = "ncqm.convergence.nmax.v1";
        t.columns = {"n_max", "n", "j", "lambda", "E_numeric", "rel_err"};
        auto rows = nmax_doubling_study(c_n, c_j, c_lambda, c_nmax / 8, 3);
        for (const auto& r : rows) t.add_row({r.n_max, c_n, c_j, c_lambda, r.e_numeric, r.rel_err});
      }
      return emit(t, cf.format, cf.out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
