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

#include "qdln/materials.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qdln/config.hpp"

namespace qdln {

namespace {

std::string entry(const char* name, int i, int j) {
  return std::string(name) + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

// Cubic compliance pattern: rows/cols 1..3 carry s11 on the diagonal and s12
// off-diagonal, rows 4..6 carry s44 on the diagonal, everything else zero.
bool cubic_zero(int i, int j) {
  if (i < 3 && j < 3) return false;
  return i != j;
}

// Class 3m sparsity (mirror plane normal to x1): nonzero entries are
//   (1,5) e15, (1,6) -e22, (2,1) -e22, (2,2) e22, (2,4) e15,
//   (3,1) e31, (3,2) e31, (3,3) e33.
bool piezo_3m_zero(int i, int j) {
  static const bool nz[3][6] = {
      {false, false, false, false, true, true},
      {true, true, false, true, false, false},
      {true, true, true, false, false, false},
  };
  return !nz[i][j];
}

}  // namespace

ElasticCompliance cubic_compliance(double s11, double s12, double s44) {
  ElasticCompliance c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.s(i, j) = (i == j) ? s11 : s12;
  for (int i = 3; i < 6; ++i) c.s(i, i) = s44;
  return c;
}

PiezoTensorVoigt trigonal_3m_piezo(double e15, double e22, double e31, double e33) {
  PiezoTensorVoigt p;
  p.e(0, 4) = e15;
  p.e(0, 5) = -e22;
  p.e(1, 0) = -e22;
  p.e(1, 1) = e22;
  p.e(1, 3) = e15;
  p.e(2, 0) = e31;
  p.e(2, 1) = e31;
  p.e(2, 2) = e33;
  return p;
}

void validate(const ElasticCompliance& c) {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      require(std::isfinite(c.s(i, j)), entry("s", i, j) + " is not finite");
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      require(c.s(i, j) == c.s(j, i),
              "symmetry violation: " + entry("s", i, j) + " != " + entry("s", j, i));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (cubic_zero(i, j))
        require(c.s(i, j) == 0.0, "cubic pattern violation: " + entry("s", i, j) + " must be zero");
  require(c.s(0, 0) == c.s(1, 1) && c.s(1, 1) == c.s(2, 2),
          "cubic pattern violation: diagonal entries s[1][1], s[2][2], s[3][3] must be equal");
  require(c.s(0, 1) == c.s(0, 2) && c.s(0, 2) == c.s(1, 2),
          "cubic pattern violation: off-diagonal entries s[1][2], s[1][3], s[2][3] must be equal");
  require(c.s(3, 3) == c.s(4, 4) && c.s(4, 4) == c.s(5, 5),
          "cubic pattern violation: shear entries s[4][4], s[5][5], s[6][6] must be equal");
  require(c.s(0, 0) > 0.0, "s11 must be positive");
  require(c.s(3, 3) > 0.0, "s44 must be positive");
}

void validate(const PiezoTensorVoigt& p) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j)
      require(std::isfinite(p.e(i, j)), entry("e", i, j) + " is not finite");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j)
      if (piezo_3m_zero(i, j))
        require(p.e(i, j) == 0.0, "3m pattern violation: " + entry("e", i, j) + " must be zero");
  require(p.e(1, 3) == p.e(0, 4), "3m pattern violation: e[2][4] must equal e[1][5]");
  require(p.e(1, 0) == -p.e(1, 1), "3m pattern violation: e[2][1] must equal -e[2][2]");
  require(p.e(0, 5) == -p.e(1, 1), "3m pattern violation: e[1][6] must equal -e[2][2]");
  require(p.e(2, 0) == p.e(2, 1), "3m pattern violation: e[3][1] must equal e[3][2]");
}

void validate(const DeformationPotentials& p) {
  require(std::isfinite(p.a_c) && std::isfinite(p.a_v) && std::isfinite(p.b) && std::isfinite(p.d),
          "deformation potentials must be finite");
  require(p.b < 0.0, "sign convention violation: b must be negative");
  require(p.d < 0.0, "sign convention violation: d must be negative");
}

void validate(const MaterialSet& m) {
  validate(m.compliance);
  validate(m.piezo_c_axis);
  validate(m.potentials);
  require(m.strain_transfer > 0.0 && m.strain_transfer <= 1.0,
          "strain_transfer must lie in (0, 1]");
}

MaterialSet load_materials(std::string_view config_text) {
  const Config cfg = Config::parse(config_text);
  MaterialSet m;

  m.compliance = cubic_compliance(cfg.number("compliance", "s11"),
                                  cfg.number("compliance", "s12"),
                                  cfg.number("compliance", "s44"));
  m.piezo_c_axis = trigonal_3m_piezo(cfg.number("piezo", "e15"), cfg.number("piezo", "e22"),
                                     cfg.number("piezo", "e31"), cfg.number("piezo", "e33"));

  // Per-entry overrides (s_<row>_<col>, e_<row>_<col>, 1-based) let a config
  // express an arbitrary matrix; validation below still enforces the
  // symmetry patterns, so a bad override is reported, not absorbed.
  for (const auto& key : cfg.keys("compliance")) {
    int i = 0, j = 0;
    if (std::sscanf(key.c_str(), "s_%d_%d", &i, &j) == 2) {
      require(i >= 1 && i <= 6 && j >= 1 && j <= 6, "compliance override out of range: " + key);
      m.compliance.s(i - 1, j - 1) = cfg.number("compliance", key);
    } else {
      require(key == "s11" || key == "s12" || key == "s44",
              "unknown key '" + key + "' in section [compliance]");
    }
  }
  for (const auto& key : cfg.keys("piezo")) {
    int i = 0, j = 0;
    if (std::sscanf(key.c_str(), "e_%d_%d", &i, &j) == 2) {
      require(i >= 1 && i <= 3 && j >= 1 && j <= 6, "piezo override out of range: " + key);
      m.piezo_c_axis.e(i - 1, j - 1) = cfg.number("piezo", key);
    } else {
      require(key == "e15" || key == "e22" || key == "e31" || key == "e33",
              "unknown key '" + key + "' in section [piezo]");
    }
  }

  m.potentials.a_c = cfg.number("potentials", "a_c");
  m.potentials.a_v = cfg.number("potentials", "a_v");
  m.potentials.b = cfg.number("potentials", "b");
  m.potentials.d = cfg.number("potentials", "d");
  m.strain_transfer = cfg.number("coupling", "strain_transfer");

  validate(m);
  return m;
}

MaterialSet default_materials() {
  MaterialSet m;
  // GaAs compliance (1/Pa): Blakemore, J. Appl. Phys. 53, R123 (1982);
  // consistent with inverting the stiffness set of Adachi (1994).
  m.compliance = cubic_compliance(1.17e-11, -3.66e-12, 1.68e-11);
  // LiNbO3 piezoelectric stress constants (C/m^2): Smith & Welsh,
  // J. Appl. Phys. 42, 2219 (1971). The e31/e33 values differ noticeably
  // between published sets; see the adoption cross-check in the tests.
  m.piezo_c_axis = trigonal_3m_piezo(3.65, 2.39, 0.33, 1.9);
  // GaAs deformation potentials (eV): Chuang, Physics of Optoelectronic
  // Devices (1995); a_c, a_v consistent with Vurgaftman et al. (2001).
  m.potentials = {-7.17, -1.16, -1.7, -4.55};
  m.strain_transfer = 1.0;
  validate(m);
  return m;
}

std::string serialize_materials(const MaterialSet& m) {
  char buf[32];
  auto g = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string out;
  out += "# qdln material constants\n";
  out += "[compliance]  # 1/Pa, cubic\n";
  out += "s11 = " + g(m.compliance.s(0, 0)) + "\n";
  out += "s12 = " + g(m.compliance.s(0, 1)) + "\n";
  out += "s44 = " + g(m.compliance.s(3, 3)) + "\n\n";
  out += "[piezo]  # C/m^2, class 3m, trigonal axis along z\n";
  out += "e15 = " + g(m.piezo_c_axis.e(0, 4)) + "\n";
  out += "e22 = " + g(m.piezo_c_axis.e(1, 1)) + "\n";
  out += "e31 = " + g(m.piezo_c_axis.e(2, 0)) + "\n";
  out += "e33 = " + g(m.piezo_c_axis.e(2, 2)) + "\n\n";
  out += "[potentials]  # eV\n";
  out += "a_c = " + g(m.potentials.a_c) + "\n";
  out += "a_v = " + g(m.potentials.a_v) + "\n";
  out += "b = " + g(m.potentials.b) + "\n";
  out += "d = " + g(m.potentials.d) + "\n\n";
  out += "[coupling]\n";
  out += "strain_transfer = " + g(m.strain_transfer) + "\n";
  return out;
}

}  // namespace qdln
