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

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qdln/piezo.hpp"

namespace qdln {

// Band-gap change of the strained waveguide, eV. Negative values are a
// redshift of the emission energy.
struct BandgapShift {
  double delta_e_ev = 0.0;
};

// Ordered (x, delta_e) samples of a one-parameter sweep. Energies are stored
// in eV; CSV serialization reports micro-eV.
struct SweepCurve {
  std::string x_label;  // e.g. "theta_deg" or "v_volts"
  std::vector<std::pair<double, double>> points;

  void validate() const;  // x strictly increasing
  std::string to_csv() const;
};

// eps_xx + eps_yy + eps_zz.
double hydrostatic(const StrainVoigt& eps);

// -b/2 (eps_xx + eps_yy - 2 eps_zz).
double q_epsilon(const StrainVoigt& eps, const DeformationPotentials& p);

// sqrt(3)/2 b (eps_xx - eps_yy) - i d eps_xy.
std::complex<double> r_epsilon(const StrainVoigt& eps, const DeformationPotentials& p);

// Strain Hamiltonian band-gap shift, spin-orbit coupling neglected:
//   dE = (a_c + a_v) eps_h - sqrt(|Q|^2 + |R|^2).
// The shear term never increases the gap.
BandgapShift bandgap_shift(const StrainVoigt& eps, const DeformationPotentials& p);

// dE at fixed bias over a grid of orientations. Grid must be non-empty and
// strictly increasing.
SweepCurve shift_vs_theta(const MaterialSet& m, double volts, const ElectrodeGeometry& geom,
                          const std::vector<double>& theta_grid_deg);

// dE at fixed orientation over a voltage grid.
SweepCurve shift_vs_voltage(const MaterialSet& m, Orientation theta,
                            const std::vector<double>& v_grid, const ElectrodeGeometry& geom);

// Slope of dE(V) as V -> 0+ (the branch actually swept by a positive bias),
// eV per volt. Includes the kinked shear term.
double branch_rate(const MaterialSet& m, Orientation theta, const ElectrodeGeometry& geom);

// Least-squares linear slope of dE(V) over [-v_span, v_span], eV per volt.
// On a symmetric interval this isolates the odd (hydrostatic) response,
// which is the slope a linear fit of a measured sweep reports.
double fitted_rate(const MaterialSet& m, Orientation theta, const ElectrodeGeometry& geom,
                   double v_span = 200.0);

// Orientation in [0, 180] where |d(dE)/dV| at V -> 0+ is smallest; at this
// angle the gap is first-order insensitive to the applied bias. Invariant
// under scaling of strain_transfer.
double find_critical_angle(const MaterialSet& m, const ElectrodeGeometry& geom);

struct CalibrationResult {
  MaterialSet materials;
  double eta = 1.0;              // applied strain_transfer
  double achieved_rate = 0.0;    // model rate at the calibration point, eV/V
  double residual_rate = 0.0;    // measured - achieved, eV/V (0 unless clamped)
  bool clamped = false;          // requested eta exceeded 1
};

// Scale strain_transfer so the fitted model slope at `theta` matches a
// measured tuning rate (eV per volt, signed). eta is clamped to (0, 1]; a
// clamp is reported through the residual. Throws std::invalid_argument if
// the model rate at theta is degenerate (zero) or of opposite sign.
CalibrationResult calibrate_transfer(const MaterialSet& m, Orientation theta,
                                     double measured_rate_ev_per_v,
                                     const ElectrodeGeometry& geom, double v_span = 200.0);

}  // namespace qdln
