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

#include "qdln/materials.hpp"
#include "qdln/voigt.hpp"

namespace qdln {

// Device frame used everywhere downstream:
//   z = surface normal (the crystal X axis of the X-cut film),
//   y = electrode field axis,
//   x = the remaining in-plane axis.
// At theta = 0 the crystal trigonal axis points along -y; positive theta
// rotates the device in-plane. This mounting and sense reproduce the measured
// orientation dependence of the band-gap response (see bandgap tests).

// In-plane device orientation, degrees, normalized into [0, 360).
struct Orientation {
  double theta_deg = 0.0;

  static Orientation from_degrees(double deg);
  double radians() const;
};

// Electrode pair driven by a bias voltage; uniform-field approximation
// F = V / gap across the gap.
struct ElectrodeGeometry {
  double gap_m = 5e-6;
};

using FieldVector = Eigen::Vector3d;  // V/m, device frame

// Engineering strain state (eps_xx, eps_yy, eps_zz, eps_yz, eps_xz, eps_xy).
struct StrainVoigt {
  Vector6d eps = Vector6d::Zero();

  double xx() const { return eps[0]; }
  double yy() const { return eps[1]; }
  double zz() const { return eps[2]; }
  double yz() const { return eps[3]; }
  double xz() const { return eps[4]; }
  double xy() const { return eps[5]; }

  // Sanity bound for this device regime.
  static constexpr double kMaxMagnitude = 1e-2;
  void validate() const;  // throws std::domain_error
};

// Crystal -> device-frame rotation for a device at `orientation`: the fixed
// X-cut mounting composed with the in-plane rotation about the surface
// normal. Orthogonal with det +1.
Eigen::Matrix3d passive_rotation_matrix(Orientation orientation);

// Device-frame piezoelectric tensor of the film under the device at theta.
PiezoTensorVoigt rotate_piezo(const PiezoTensorVoigt& e_c, Orientation orientation);

// Uniform-field model: F = (0, V/gap, 0) in the device frame.
FieldVector field_from_voltage(double volts, const ElectrodeGeometry& geom);

// Strain induced in the waveguide:
//   eps = -eta * s * e_dev^T * F,  e_dev = rotate_piezo(e_c, theta).
// Linear in the bias voltage.
StrainVoigt strain_from_voltage(const MaterialSet& m, Orientation orientation,
                                double volts, const ElectrodeGeometry& geom);

}  // namespace qdln
