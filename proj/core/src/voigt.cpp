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

#include "qdln/voigt.hpp"

#include <stdexcept>

namespace qdln {

Eigen::Matrix3d strain_to_tensor(const Vector6d& g) {
  Eigen::Matrix3d t;
  t << g[0], g[5] / 2, g[4] / 2,
       g[5] / 2, g[1], g[3] / 2,
       g[4] / 2, g[3] / 2, g[2];
  return t;
}

Vector6d strain_from_tensor(const Eigen::Matrix3d& t) {
  Vector6d g;
  g << t(0, 0), t(1, 1), t(2, 2), 2 * t(1, 2), 2 * t(0, 2), 2 * t(0, 1);
  return g;
}

bool is_rotation(const Eigen::Matrix3d& a, double tol) {
  return (a * a.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < tol &&
         std::abs(a.determinant() - 1.0) < tol;
}

Matrix6d bond_strain_matrix(const Eigen::Matrix3d& a) {
  if (!is_rotation(a))
    throw std::invalid_argument("bond_strain_matrix: input is not a proper rotation");

  // Shear row/column r of the Voigt vector corresponds to the index pair
  // pair[r]; the 2 factors below are fixed by the engineering convention.
  static constexpr int pi[3] = {1, 0, 0};
  static constexpr int pk[3] = {2, 2, 1};

  Matrix6d n;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) n(i, j) = a(i, j) * a(i, j);
    n(i, 3) = a(i, 1) * a(i, 2);
    n(i, 4) = a(i, 0) * a(i, 2);
    n(i, 5) = a(i, 0) * a(i, 1);
  }
  for (int r = 0; r < 3; ++r) {
    const int i = pi[r], k = pk[r];
    for (int j = 0; j < 3; ++j) n(3 + r, j) = 2 * a(i, j) * a(k, j);
    for (int c = 0; c < 3; ++c) {
      const int j = pi[c], l = pk[c];
      n(3 + r, 3 + c) = a(i, j) * a(k, l) + a(i, l) * a(k, j);
    }
  }
  return n;
}

Matrix36d rotate_piezo_voigt(const Matrix36d& e, const Eigen::Matrix3d& a) {
  if (!is_rotation(a))
    throw std::invalid_argument("rotate_piezo_voigt: input is not a proper rotation");
  // N(a)^-1 = N(a^T); no matrix inversion needed.
  return a * e * bond_strain_matrix(a.transpose());
}

}  // namespace qdln
