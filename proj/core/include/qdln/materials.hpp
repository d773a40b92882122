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

#include <string>
#include <string_view>

#include "qdln/voigt.hpp"

namespace qdln {

// Elastic compliance in Voigt notation, 1/Pa. GaAs is cubic: three
// independent entries (s11, s12, s44) in the standard pattern.
struct ElasticCompliance {
  Matrix6d s = Matrix6d::Zero();
};

// Piezoelectric stress constants in Voigt notation, C/m^2, expressed in the
// crystal frame with the trigonal axis along z. LiNbO3 is class 3m: four
// independent magnitudes (e15, e22, e31, e33).
struct PiezoTensorVoigt {
  Matrix36d e = Matrix36d::Zero();
};

// Band-edge deformation potentials, eV.
struct DeformationPotentials {
  double a_c = 0.0;
  double a_v = 0.0;
  double b = 0.0;
  double d = 0.0;
};

struct MaterialSet {
  ElasticCompliance compliance;
  PiezoTensorVoigt piezo_c_axis;
  DeformationPotentials potentials;
  // Scalar transfer factor in (0, 1] multiplying the computed strain; models
  // strain loss at the bonded interface. Calibrated against measured tuning
  // rates, identity before calibration.
  double strain_transfer = 1.0;
};

ElasticCompliance cubic_compliance(double s11, double s12, double s44);
PiezoTensorVoigt trigonal_3m_piezo(double e15, double e22, double e31, double e33);

// Throw ConfigError naming the offending entry on any pattern violation.
void validate(const ElasticCompliance& c);
void validate(const PiezoTensorVoigt& p);
void validate(const DeformationPotentials& p);
void validate(const MaterialSet& m);

// Parse and validate a MaterialSet from config text. Schema (all values
// doubles): [compliance] s11,s12,s44 with optional per-entry overrides
// s_<i>_<j> (1-based); [piezo] e15,e22,e31,e33 with optional overrides
// e_<i>_<j>; [potentials] a_c,a_v,b,d; [coupling] strain_transfer.
// Unrelated sections are ignored. Throws ConfigError.
MaterialSet load_materials(std::string_view config_text);

// Built-in defaults; identical to the shipped reference config.
MaterialSet default_materials();

// Serialization round-trips bit-exactly through load_materials.
std::string serialize_materials(const MaterialSet& m);

}  // namespace qdln
