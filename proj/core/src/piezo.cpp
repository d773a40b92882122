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

#include "qdln/piezo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdln {

namespace {

// Fixed X-cut mounting: crystal (x1, x2, x3=trigonal) -> device (x, y, z)
// with z = crystal x1 (surface normal) and the trigonal axis along -y.
const Eigen::Matrix3d kMounting = [] {
  Eigen::Matrix3d p;
  p << 0, -1, 0,
       0, 0, -1,
       1, 0, 0;
  return p;
}();

Eigen::Matrix3d rot_about_normal(double rad) {
  const double c = std::cos(rad), s = std::sin(rad);
  Eigen::Matrix3d r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

}  // namespace

Orientation Orientation::from_degrees(double deg) {
  if (!std::isfinite(deg)) throw std::domain_error("orientation angle must be finite");
  double t = std::fmod(deg, 360.0);
  if (t < 0) t += 360.0;
  if (t >= 360.0) t = 0.0;  // fmod can land exactly on 360 after the add
  return Orientation{t};
}

double Orientation::radians() const {
  return theta_deg * std::numbers::pi / 180.0;
}

void StrainVoigt::validate() const {
  for (int i = 0; i < 6; ++i) {
    if (!std::isfinite(eps[i])) throw std::domain_error("strain component is not finite");
    if (std::abs(eps[i]) >= kMaxMagnitude)
      throw std::domain_error("strain magnitude exceeds the device-regime bound of 1e-2");
  }
}

Eigen::Matrix3d passive_rotation_matrix(Orientation orientation) {
  // The in-plane rotation sense is fixed together with the mounting; the
  // mirrored choice swaps the sign of the orientation response.
  return rot_about_normal(-orientation.radians()) * kMounting;
}

PiezoTensorVoigt rotate_piezo(const PiezoTensorVoigt& e_c, Orientation orientation) {
  return PiezoTensorVoigt{rotate_piezo_voigt(e_c.e, passive_rotation_matrix(orientation))};
}

FieldVector field_from_voltage(double volts, const ElectrodeGeometry& geom) {
  if (!(geom.gap_m > 0)) throw std::invalid_argument("electrode gap must be positive");
  return FieldVector(0.0, volts / geom.gap_m, 0.0);
}

StrainVoigt strain_from_voltage(const MaterialSet& m, Orientation orientation,
                                double volts, const ElectrodeGeometry& geom) {
  const PiezoTensorVoigt e_dev = rotate_piezo(m.piezo_c_axis, orientation);
  const FieldVector f = field_from_voltage(volts, geom);
  const Vector6d stress = e_dev.e.transpose() * f;  // Pa
  StrainVoigt out;
  out.eps = -m.strain_transfer * (m.compliance.s * stress);
  out.validate();
  return out;
}

}  // namespace qdln
