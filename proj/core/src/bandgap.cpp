// Copyright 2026 the qdln authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdln/bandgap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qdln {

void SweepCurve::validate() const {
  if (points.empty()) throw std::invalid_argument("sweep grid must be non-empty");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].first > points[i - 1].first))
      throw std::invalid_argument("sweep grid must be strictly increasing");
}

std::string SweepCurve::to_csv() const {
  std::string out = x_label + ",delta_e_ueV\n";
  char buf[64];
  for (const auto& [x, y] : points) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", x, y * 1e6);
    out += buf;
  }
  return out;
}

double hydrostatic(const StrainVoigt& eps) {
  return eps.xx() + eps.yy() + eps.zz();
}

double q_epsilon(const StrainVoigt& eps, const DeformationPotentials& p) {
  return -p.b / 2.0 * (eps.xx() + eps.yy() - 2.0 * eps.zz());
}

std::complex<double> r_epsilon(const StrainVoigt& eps, const DeformationPotentials& p) {
  return {std::sqrt(3.0) / 2.0 * p.b * (eps.xx() - eps.yy()), -p.d * eps.xy()};
}

BandgapShift bandgap_shift(const StrainVoigt& eps, const DeformationPotentials& p) {
  const double q = q_epsilon(eps, p);
  const std::complex<double> r = r_epsilon(eps, p);
  return BandgapShift{(p.a_c + p.a_v) * hydrostatic(eps) - std::sqrt(q * q + std::norm(r))};
}

namespace {

std::vector<double> check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid must be non-empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("sweep grid must be strictly increasing");
  return grid;
}

double shift_at(const MaterialSet& m, Orientation theta, double volts,
                const ElectrodeGeometry& geom) {
  return bandgap_shift(strain_from_voltage(m, theta, volts, geom), m.potentials).delta_e_ev;
}

}  // namespace

SweepCurve shift_vs_theta(const MaterialSet& m, double volts, const ElectrodeGeometry& geom,
                          const std::vector<double>& theta_grid_deg) {
  SweepCurve c;
  c.x_label = "theta_deg";
  for (double t : check_grid(theta_grid_deg))
    c.points.emplace_back(t, shift_at(m, Orientation::from_degrees(t), volts, geom));
  return c;
}

SweepCurve shift_vs_voltage(const MaterialSet& m, Orientation theta,
                            const std::vector<double>& v_grid, const ElectrodeGeometry& geom) {
  SweepCurve c;
  c.x_label = "v_volts";
  for (double v : check_grid(v_grid)) c.points.emplace_back(v, shift_at(m, theta, v, geom));
  return c;
}

double branch_rate(const MaterialSet& m, Orientation theta, const ElectrodeGeometry& geom) {
  // dE is exactly linear on each sign branch of V; one evaluation suffices.
  const double v_probe = 1.0;
  return shift_at(m, theta, v_probe, geom) / v_probe;
}

double fitted_rate(const MaterialSet& m, Orientation theta, const ElectrodeGeometry& geom,
                   double v_span) {
  if (!(v_span > 0)) throw std::invalid_argument("fit interval must have positive span");
  // Least squares over a symmetric grid; with dE = alpha V - s0 |V| the even
  // |V| part is orthogonal to V, so this converges to alpha as the grid
  // refines. 201 points keep the discrete fit within 1e-12 of that limit.
  const int n = 201;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = -v_span + 2.0 * v_span * i / (n - 1);
    sxy += v * shift_at(m, theta, v, geom);
    sxx += v * v;
  }
  return sxy / sxx;
}

double find_critical_angle(const MaterialSet& m, const ElectrodeGeometry& geom) {
  auto rate_mag = [&](double deg) {
    return std::abs(branch_rate(m, Orientation::from_degrees(deg), geom));
  };
  // Coarse scan, then a refined scan around the minimum.
  double best = 0.0, best_val = rate_mag(0.0);
  for (double t = 0.0; t <= 180.0; t += 1.0) {
    const double v = rate_mag(t);
    if (v < best_val) { best_val = v; best = t; }
  }
  const double lo = std::max(0.0, best - 1.0), hi = std::min(180.0, best + 1.0);
  for (double t = lo; t <= hi; t += 0.01) {
    const double v = rate_mag(t);
    if (v < best_val) { best_val = v; best = t; }
  }
  return best;
}

CalibrationResult calibrate_transfer(const MaterialSet& m, Orientation theta,
                                     double measured_rate_ev_per_v,
                                     const ElectrodeGeometry& geom, double v_span) {
  MaterialSet unit = m;
  unit.strain_transfer = 1.0;
  const double model_rate = fitted_rate(unit, theta, geom, v_span);
  if (model_rate == 0.0 || !std::isfinite(model_rate))
    throw std::invalid_argument("degenerate calibration point: model rate vanishes at this angle");
  const double eta_req = measured_rate_ev_per_v / model_rate;
  if (eta_req <= 0.0)
    throw std::invalid_argument("calibration sign mismatch: measured and model rates disagree in sign");

  CalibrationResult out;
  out.clamped = eta_req > 1.0;
  out.eta = out.clamped ? 1.0 : eta_req;
  out.materials = m;
  out.materials.strain_transfer = out.eta;
  out.achieved_rate = model_rate * out.eta;
  out.residual_rate = measured_rate_ev_per_v - out.achieved_rate;
  return out;
}

}  // namespace qdln
