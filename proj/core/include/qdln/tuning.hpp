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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qdln {

// One waveguide-coupled emitter channel under the linear tuning model
// E(V) = e0 + rate * V, V in [v_min, v_max].
struct QDChannel {
  int id = 0;
  double e0_ev = 0.0;           // emission energy at zero bias
  double rate_ev_per_v = 0.0;   // signed tuning rate
  double v_min = 0.0;
  double v_max = 0.0;

  void validate() const;  // throws std::invalid_argument
};

// Parameters of a synthetic multi-channel chip. The spread values are fit to
// reproduce the measured per-channel statistics and are documented as
// synthetic in the shipped defaults.
struct EnsembleSpec {
  int n = 20;
  double center_ev = 1.3496;
  double sigma_inhomogeneous_ev = 1.3e-4;
  double rate_mean_ev_per_v = 4.1e-6;
  double rate_spread_ev_per_v = 0.4e-6;
  double v_limit = 100.0;
  std::uint64_t seed = 0;
};

struct AlignmentResult {
  double target_ev = 0.0;
  double tolerance_ev = 0.0;
  std::map<int, double> voltages;      // every channel, always within bounds
  std::map<int, double> residuals_ev;  // E(V) - target, signed
  std::set<int> aligned_ids;           // |residual| <= tolerance

  std::string to_text() const;
};

// Deterministic normal sampling of n channels around the ensemble center.
std::vector<QDChannel> sample_ensemble(const EnsembleSpec& spec);

// [min, max] of E(V) over the voltage range.
std::pair<double, double> reachable_interval(const QDChannel& ch);

// Intersection of all channels' reachable intervals; nullopt when empty.
// The width of this window is the ensemble's common spectral overlap.
std::optional<std::pair<double, double>> overlap_window(const std::vector<QDChannel>& channels);

// Choose the target energy maximizing the number of channels whose reachable
// interval intersects [target - tol, target + tol]; ties are broken by the
// smallest total |V| over aligned channels, then by the smaller target.
// Exact: candidate targets are interval endpoints +- tol plus the |V|
// breakpoints inside optimal regions.
AlignmentResult align_channels(const std::vector<QDChannel>& channels, double tolerance_ev);

// Voltage pair bringing two channels into exact resonance with minimal
// max(|V_a|, |V_b|); nullopt when their reachable intervals are disjoint.
std::optional<std::pair<double, double>> pair_resonance(const QDChannel& a, const QDChannel& b);

// CSV: "id,e0_eV,rate_ueV_per_V,vmin,vmax". Parse errors name the line.
std::string channels_to_csv(const std::vector<QDChannel>& channels);
std::vector<QDChannel> channels_from_csv(const std::string& text);

}  // namespace qdln
