#include "ncqm/coulomb_field.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ncqm {

double electric_field_squared_level(double charge, double lambda, int level) {
  if (level < 1) throw std::domain_error("electric_field_squared_level: defined for N >= 1");
  double n = level;
  return charge * charge /
         (lambda * lambda * lambda * lambda * n * (n + 1.0) * (n + 1.0) * (n + 2.0));
}

PhysicalConstants PhysicalConstants::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("constants file not readable: " + path);
  PhysicalConstants c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string key, eq;
    double value = 0.0;
    std::istringstream ls(line);
    if (!(ls >> key)) continue;  // blank
    if (!(ls >> eq >> value) || eq != "=")
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    if (key == "electron_mass") {
      c.electron_mass_kg = value;
    } else if (key == "elementary_charge") {
      c.elementary_charge_c = value;
    } else if (key == "hbar") {
      c.hbar_js = value;
    } else if (key == "speed_of_light") {
      c.speed_of_light_m_s = value;
    } else if (key == "coulomb_constant") {
      c.coulomb_constant = value;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

Rational self_energy_partial_sum_exact(int terms) {
  // Σ_{N=1..K} 1/(N(N+2)) = (1/2)(1 + 1/2 − 1/(K+1) − 1/(K+2))
  if (terms < 1) return 0;
  return (Rational(3, 2) - Rational(1, terms + 1) - Rational(1, terms + 2)) / 2;
}

SelfEnergyReport self_energy_lambda0(const PhysicalConstants& constants) {
  SelfEnergyReport rep;
  // Level sum of (N+1)·(N+1)·Ê² with Ê² = e²/(λ⁴ N(N+1)²(N+2)): the (N+1)
  // factors cancel and Σ 1/(N(N+2)) telescopes to 3/4 with remainder
  // (1/2)(1/(K+1) + 1/(K+2)).
  rep.trace_sum = Rational(3, 4);
  for (int k : {1, 10, 100, 1000, 10000}) {
    PartialSumRow row;
    row.terms = k;
    Rational partial = self_energy_partial_sum_exact(k);
    row.partial = to_double(partial);
    row.remainder = to_double(rep.trace_sum - partial);
    rep.partial_sums.push_back(row);
  }
  // mc² = (λ³/2)(e²/λ⁴)·(3/4) = (3/8) e²/λ  =>  λ0 = (3/8) e²/(mc²) = (3/8) r0
  rep.lambda0_over_r0 = rep.trace_sum / 2;
  rep.r0_m = constants.classical_electron_radius_m();
  rep.a0_m = constants.bohr_radius_m();
  rep.lambda0_m = to_double(rep.lambda0_over_r0) * rep.r0_m;
  rep.lambda0_over_a0 = rep.lambda0_m / rep.a0_m;
  double alpha = constants.fine_structure();
  rep.printed_ratio_variant = 9.0 / 64.0 * alpha * alpha;
  double la = rep.lambda0_over_a0;
  rep.level_shift_rel_n1 = la * la / 4.0;
  return rep;
}

BallVolume ball_volume(int level, double lambda) {
  if (level < 0) throw std::invalid_argument("ball_volume: level must be >= 0");
  const double pi = 3.14159265358979323846;
  BallVolume v;
  v.level = level;
  v.lambda = lambda;
  v.radius = lambda * double(level + 1);
  double lam3 = lambda * lambda * lambda;
  auto square_pyramid = [](double k) { return k * (k + 1.0) * (2.0 * k + 1.0) / 6.0; };
  // Σ_{n=0..N} (n+1)² = Σ_{m=1..N+1} m²
  v.volume = 4.0 * pi * lam3 * square_pyramid(double(level + 1));
  v.volume_upper_variant = 4.0 * pi * lam3 * square_pyramid(double(level + 2));
  v.continuum = 4.0 * pi / 3.0 * v.radius * v.radius * v.radius;
  v.rel_dev = std::abs(v.volume / v.continuum - 1.0);
  v.rel_dev_upper_variant = std::abs(v.volume_upper_variant / v.continuum - 1.0);
  return v;
}

}  // namespace ncqm
