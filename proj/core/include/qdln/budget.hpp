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
#include <vector>

namespace qdln {

// Scalar transmission chain from emitter to detector. Each stage efficiency
// lies in (0, 1].
struct EfficiencyChain {
  struct Stage {
    std::string name;
    double efficiency = 1.0;
  };
  std::vector<Stage> stages;

  void validate() const;
};

// Chain built from the [chain] config section; propagation loss is given in
// dB/mm over length_mm (shipped default 0 dB/mm, a documented knob).
EfficiencyChain chain_from_config(std::string_view config_text);
EfficiencyChain default_chain();

// Product of stage efficiencies; order-independent and monotone.
double end_to_end(const EfficiencyChain& chain);

// Expected coincidence rate: pulse_rate * eta_a * eta_b * same_port_prob.
double coincidence_rate(double pulse_rate_hz, const EfficiencyChain& chain_a,
                        const EfficiencyChain& chain_b, double same_port_prob);

std::string budget_report(const EfficiencyChain& chain);

}  // namespace qdln
