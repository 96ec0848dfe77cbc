#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logicepp/epp.hpp"

namespace logicepp {

/// Closed-form output fidelity of one purification round,
/// F' = F^2 / (F^2 + (1-F)^2). F must lie in (0, 1).
double fidelity_formula(double fidelity);

/// Closed-form success probability of one round, F^2 + (1-F)^2.
double success_probability_formula(double fidelity);

/// Algorithm identifier recorded in every stochastic report. Trial t draws
/// from std::mt19937_64 seeded with splitmix64(seed + t); uniform doubles
/// take the top 53 bits. Independent per-trial streams make chunked
/// (parallel) and serial evaluation agree bit for bit.
inline constexpr const char* kRngId = "mt19937_64/splitmix64-per-trial";

struct MonteCarloSpec {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  double fidelity = 0.8;
  int M = 2;
  ErrorModel model{};
  int threads = 1;  ///< maximum parallelism hint
};

struct MonteCarloResult {
  double fidelity_estimate = 0.0;
  double fidelity_std_error = 0.0;
  double success_estimate = 0.0;
  double success_std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t seed = 0;
  std::string rng_id = kRngId;
};

/// Samples the protocol trial by trial: first the input mixture combination
/// by its weight, then one measurement record by its conditional
/// probability. Deterministic for a fixed spec, including the seed and
/// regardless of the thread count.
MonteCarloResult monte_carlo_run(const MonteCarloSpec& spec);

enum class SweepVariable { F, GammaOverKappa, LambdaOverKappa, Detuning };

struct SweepSpec {
  SweepVariable variable = SweepVariable::GammaOverKappa;
  std::vector<double> grid;  ///< nonempty, strictly increasing
  Protocol protocol = Protocol::BitFlipEpp;
  int M = 2;
  double fidelity = 0.8;
  ErrorModel model{};
  // Fixed cavity ratios for the variables not being swept.
  double detuning = -0.5;
  double gamma_over_kappa = 0.0;
  double lambda_over_kappa = 0.5;
  bool keep_modulus = false;

  void validate() const;
};

struct SweepRow {
  double value = 0.0;
  double output_fidelity = 0.0;
  double success_probability = 0.0;
  bool singular = false;  ///< row flagged, parameters were singular
};

/// Reruns the chosen protocol with numerically computed reflection phases at
/// every grid point. Singular parameter rows are flagged and skipped rather
/// than aborting the sweep.
std::vector<SweepRow> sensitivity_sweep(const SweepSpec& spec);

/// splitmix64 step, the documented per-trial stream derivation.
std::uint64_t splitmix64(std::uint64_t x);

const char* to_string(SweepVariable v);

}  // namespace logicepp
