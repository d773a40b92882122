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
#include <string>
#include <vector>

namespace qdln {

// Single-photon emitter: exponential emission-time distribution with mean
// lifetime, first-order coherence decaying over coherence_tau_c, and a
// residual multi-photon probability (the measured HBT g2(0) of the source).
struct EmitterModel {
  double energy_ev = 1.3496;
  double lifetime_tau1_ps = 600.0;
  double coherence_tau_c_ps = 72.0;
  double purity_g2 = 0.007;

  void validate() const;  // times positive, tau_c <= 2 tau1, purity in [0,1]
};

// Detection chain: per-detector Gaussian timing response of given FWHM, a
// pulsed excitation period, and the histogram span. The correlation channel
// sees the combined response of two detectors, FWHM * sqrt(2).
struct DetectionModel {
  double irf_fwhm_ps = 99.0;
  double bin_width_ps = 25.0;
  double rep_period_ps = 13200.0;
  double window_ps = 158400.0;  // multiple of rep_period

  void validate() const;
  double combined_sigma_ps() const;  // sqrt(2) * fwhm / 2.3548
};

// Two sources interfering on a 50:50 splitter, observed at one output port.
// `detuning_uev` sets the beat frequency between the sources (overriding any
// difference of the emitter energies); `mode_overlap` is the wavepacket
// overlap |<a|b>|^2 at zero detuning. single_source disables emitter_b for
// autocorrelation (HBT purity) runs.
struct TpiConfig {
  EmitterModel emitter_a;
  EmitterModel emitter_b;
  double detuning_uev = 0.0;
  double mode_overlap = 1.0;
  bool single_source = false;

  void validate() const;
  double mutual_coherence_time_ps() const;  // 2 ta tb / (ta + tb)
  double detuning_rad_per_ps() const;
};

// Coincidence histogram with signed delays, an odd number of bins centered
// on zero delay. Counts are stored as doubles; the simulator fills integers.
struct CorrelationHistogram {
  double bin_width_ps = 0.0;
  double rep_period_ps = 0.0;
  std::vector<double> bins;     // size 2*half_bins+1
  double total_pairs = 0.0;     // equals the sum of bins
  double normalization = 0.0;   // mean side-peak area, set after accumulation

  int half_bins() const { return static_cast<int>(bins.size() / 2); }
  double bin_center_ps(int idx) const { return (idx - half_bins()) * bin_width_ps; }

  // Number of fully-contained side peaks on each side of zero delay.
  int side_peaks_per_side() const;

  // Sum of counts in the tile of repetition peak n (delay n*rep_period).
  double peak_area(int n) const;

  void merge(const CorrelationHistogram& other);  // same binning required

  std::string to_csv() const;
  std::string meta_json() const;
};
CorrelationHistogram histogram_from_csv(const std::string& csv, const std::string& meta_json);

// Uniformly sampled curve of g2(tau).
struct SampledCurve {
  double tau_start_ps = 0.0;
  double dtau_ps = 0.0;
  std::vector<double> values;

  double tau_at(std::size_t i) const { return tau_start_ps + dtau_ps * static_cast<double>(i); }
};

// Interference factor between the two main photons at relative delay tau:
//   exp(-2|tau|/tau_c_eff) cos(dw tau),
// with tau_c_eff the mutual coherence time.
double interference_envelope(double tau_ps, const TpiConfig& cfg);

// Same-port correlation of the two-source model:
//   g2(tau) = 1/2 [1 + M exp(-2|tau|/tau_c_eff) cos(dw tau)],
// where M = mode_overlap * (1 - x_a - x_b) folds the emitters' residual
// multi-photon background into an effective overlap (x_i = purity_g2 / 2).
// 1 at tau = 0 for perfect indistinguishability, 1/2 when distinguishable.
double analytic_g2_same_port(double tau_ps, const TpiConfig& cfg);

// Discrete Gaussian convolution with the combined two-detector response.
// Edge bins renormalize the kernel mass, so constants are preserved exactly.
// Requires the curve to be sampled at <= bin_width/4.
SampledCurve convolve_irf(const SampledCurve& curve, const DetectionModel& det);

// (exp(-a|.|) convolved with a Gaussian of std sigma) evaluated at tau;
// numerically stable for large a*sigma and large |tau|.
double laplace_gauss(double a, double sigma, double tau);

// Monte Carlo coincidence run. Per pulse each enabled emitter produces one
// photon (exponential timestamp) plus, with probability purity_g2/2, an
// extra photon that interferes with nothing. The main photon pair is routed
// through the splitter with the joint same-port probability
// (1 + overlap * envelope(tau)) / 4; photons at the observed port split
// 50:50 onto two detectors whose timestamps carry Gaussian jitter.
// Deterministic for a given seed.
CorrelationHistogram simulate_tpi(const TpiConfig& cfg, const DetectionModel& det,
                                  std::uint64_t n_pulses, std::uint64_t seed);

struct G2Estimate {
  double value = 0.0;
  double sigma = 0.0;  // Poisson error
};

// Zero-delay peak area over the mean side-peak area (pulsed normalization).
// Requires >= 5 fully-contained side peaks per side.
G2Estimate extract_g2_zero(const CorrelationHistogram& h);

// (g2_on - g2_off) / g2_off. Throws for g2_off <= 0.
double visibility(double g2_on, double g2_off);

struct FitResult {
  double g2_zero = 0.0;        // deconvolved center/side density ratio at 0
  double tau_c_ps = 0.0;
  double fit_residual = 0.0;   // rms per center bin
  bool tau_c_unidentifiable = false;  // no coherence signature in the data
  bool converged = true;
};

// Least-squares fit of the convolved two-source model to the central peak:
// side peaks fix the lifetime scale, the center peak is then decomposed into
// a lifetime-only part and the coherence (bunching) part with tau_c searched
// by golden section.
FitResult fit_model(const CorrelationHistogram& h, const DetectionModel& det);

}  // namespace qdln
