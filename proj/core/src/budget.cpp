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

#include "qdln/budget.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qdln/config.hpp"

namespace qdln {

void EfficiencyChain::validate() const {
  for (const auto& s : stages)
    if (!(s.efficiency > 0.0) || s.efficiency > 1.0)
      throw std::invalid_argument("stage '" + s.name + "' efficiency must lie in (0, 1]");
}

EfficiencyChain default_chain() {
  // beta and grating are measured figures of the reference device; taper,
  // filter and mmi come from the quoted design values. Propagation default
  // is lossless over the 0.48 mm link (knob in the config); detector
  // efficiency defaults to the identity, also a config knob.
  EfficiencyChain c;
  c.stages = {
      {"beta_factor", 0.832}, {"taper", 0.95},     {"propagation", 1.0}, {"mmi_split", 0.5},
      {"grating", 0.523},     {"filter", 0.70},    {"detector", 1.0},
  };
  c.validate();
  return c;
}

EfficiencyChain chain_from_config(std::string_view config_text) {
  const Config cfg = Config::parse(config_text);
  EfficiencyChain c = default_chain();
  if (!cfg.has_section("chain")) return c;

  auto set = [&c](const std::string& name, double v) {
    for (auto& s : c.stages)
      if (s.name == name) s.efficiency = v;
  };
  for (const auto& key : cfg.keys("chain")) {
    if (key == "propagation_db_per_mm" || key == "length_mm") continue;
    bool known = false;
    for (const auto& s : c.stages) known = known || s.name == key;
    if (!known) throw ConfigError("unknown key '" + key + "' in section [chain]");
    set(key, cfg.number("chain", key));
  }
  const double db_per_mm = cfg.number_or("chain", "propagation_db_per_mm", 0.0);
  const double length_mm = cfg.number_or("chain", "length_mm", 0.48);
  if (length_mm < 0) throw ConfigError("chain length_mm must be non-negative");
  set("propagation", std::pow(10.0, -db_per_mm * length_mm / 10.0));
  c.validate();
  return c;
}

double end_to_end(const EfficiencyChain& chain) {
  chain.validate();
  double p = 1.0;
  for (const auto& s : chain.stages) p *= s.efficiency;
  return p;
}

double coincidence_rate(double pulse_rate_hz, const EfficiencyChain& chain_a,
                        const EfficiencyChain& chain_b, double same_port_prob) {
  if (!(pulse_rate_hz >= 0)) throw std::invalid_argument("pulse rate must be non-negative");
  if (same_port_prob < 0.0 || same_port_prob > 1.0)
    throw std::invalid_argument("same_port_prob must lie in [0, 1]");
  return pulse_rate_hz * end_to_end(chain_a) * end_to_end(chain_b) * same_port_prob;
}

std::string budget_report(const EfficiencyChain& chain) {
  std::string out = "stage,efficiency\n";
  char buf[96];
  for (const auto& s : chain.stages) {
    std::snprintf(buf, sizeof buf, "%s,%.12g\n", s.name.c_str(), s.efficiency);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "end_to_end,%.12g\n", end_to_end(chain));
  out += buf;
  return out;
}

}  // namespace qdln
