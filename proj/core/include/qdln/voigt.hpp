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

#include <Eigen/Dense>

namespace qdln {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix36d = Eigen::Matrix<double, 3, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

// Voigt index order used throughout: xx, yy, zz, yz, xz, xy.
// Strain 6-vectors are engineering strain (factor 2 on the shear slots).

// Engineering-strain Voigt vector <-> symmetric 3x3 tensor.
Eigen::Matrix3d strain_to_tensor(const Vector6d& eng);
Vector6d strain_from_tensor(const Eigen::Matrix3d& t);

bool is_rotation(const Eigen::Matrix3d& a, double tol = 1e-9);

// 6x6 Bond transformation N for engineering strain: if v' = a v for
// coordinates, then gamma' = N(a) gamma. Satisfies N(a b) = N(a) N(b) and
// N(a)^-1 = N(a^T). Throws std::invalid_argument for non-orthogonal input.
Matrix6d bond_strain_matrix(const Eigen::Matrix3d& a);

// Rotate a contracted 3x6 piezoelectric stress tensor by an arbitrary
// rotation: equivalent to contracting every index of the full rank-3 tensor
// with `a`. Implemented as a e N(a)^-1 in Voigt form.
Matrix36d rotate_piezo_voigt(const Matrix36d& e, const Eigen::Matrix3d& a);

}  // namespace qdln
