#include "logicepp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace logicepp {

double fidelity_formula(double fidelity) {
  if (!(fidelity > 0.0 && fidelity < 1.0))
    throw std::invalid_argument("fidelity must lie in (0, 1)");
  return fidelity * fidelity /
         (fidelity * fidelity + (1.0 - fidelity) * (1.0 - fidelity));
}

double success_probability_formula(double fidelity) {
  if (!(fidelity > 0.0 && fidelity < 1.0))
    throw std::invalid_argument("fidelity must lie in (0, 1)");
  return fidelity * fidelity + (1.0 - fidelity) * (1.0 - fidelity);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// The trajectory table split into the four input combinations so each trial
// can sample the combination first and the record second.
struct SampledModel {
  std::vector<double> combo_weights;              // cumulative
  std::vector<std::vector<double>> record_cdf;    // per combo, cumulative
  std::vector<std::vector<TrajectoryLeaf>> leaves;  // per combo
};

SampledModel build_sampled_model(const MonteCarloSpec& spec) {
  ErrorModel model = spec.model;
  model.fidelity = spec.fidelity;
  const double f = spec.fidelity;
  const double weights[4] = {f * f, f * (1.0 - f), (1.0 - f) * f,
                             (1.0 - f) * (1.0 - f)};

  SampledModel out;
  out.leaves.resize(4);
  out.record_cdf.resize(4);
  for (const TrajectoryLeaf& leaf :
       enumerate_bitflip_trajectories(spec.fidelity, spec.M, model))
    out.leaves[static_cast<std::size_t>(leaf.combo)].push_back(leaf);

  double cumulative = 0.0;
  for (int combo = 0; combo < 4; ++combo) {
    cumulative += weights[combo];
    out.combo_weights.push_back(cumulative);
    double running = 0.0;
    for (const TrajectoryLeaf& leaf :
         out.leaves[static_cast<std::size_t>(combo)]) {
      running += leaf.record_probability;
      out.record_cdf[static_cast<std::size_t>(combo)].push_back(running);
    }
    if (std::abs(running - 1.0) > 1e-6)
      throw std::logic_error("trajectory table is not complete per combo");
  }
  return out;
}

struct Tally {
  std::uint64_t successes = 0;
  double overlap_sum = 0.0;
  double overlap_sum_squared = 0.0;
};

Tally run_chunk(const SampledModel& model, std::uint64_t seed,
                std::uint64_t first_trial, std::uint64_t count) {
  Tally tally;
  for (std::uint64_t t = first_trial; t < first_trial + count; ++t) {
    std::mt19937_64 rng(splitmix64(seed + t));
    const double u_combo = uniform01(rng);
    const auto combo_it =
        std::upper_bound(model.combo_weights.begin(),
                         model.combo_weights.end(), u_combo);
    const std::size_t combo = std::min<std::size_t>(
        static_cast<std::size_t>(combo_it - model.combo_weights.begin()), 3);

    const auto& cdf = model.record_cdf[combo];
    const double u_record = uniform01(rng);
    std::size_t pick = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u_record) - cdf.begin());
    pick = std::min(pick, cdf.size() - 1);

    const TrajectoryLeaf& leaf = model.leaves[combo][pick];
    if (leaf.success) {
      ++tally.successes;
      tally.overlap_sum += leaf.target_overlap;
      tally.overlap_sum_squared += leaf.target_overlap * leaf.target_overlap;
    }
  }
  return tally;
}

}  // namespace

MonteCarloResult monte_carlo_run(const MonteCarloSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const SampledModel model = build_sampled_model(spec);

  const int threads = std::clamp(spec.threads, 1,
                                 static_cast<int>(spec.trials));
  std::vector<Tally> tallies(static_cast<std::size_t>(threads));
  if (threads == 1) {
    tallies[0] = run_chunk(model, spec.seed, 0, spec.trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk =
        (spec.trials + static_cast<std::uint64_t>(threads) - 1) /
        static_cast<std::uint64_t>(threads);
    for (int i = 0; i < threads; ++i) {
      const std::uint64_t first = chunk * static_cast<std::uint64_t>(i);
      const std::uint64_t count =
          std::min(chunk, spec.trials > first ? spec.trials - first : 0);
      pool.emplace_back([&, i, first, count] {
        tallies[static_cast<std::size_t>(i)] =
            run_chunk(model, spec.seed, first, count);
      });
    }
    for (auto& worker : pool) worker.join();
  }

  Tally total;
  for (const Tally& t : tallies) {
    total.successes += t.successes;
    total.overlap_sum += t.overlap_sum;
    total.overlap_sum_squared += t.overlap_sum_squared;
  }

  MonteCarloResult result;
  result.trials = spec.trials;
  result.seed = spec.seed;
  result.successes = total.successes;
  const double n = static_cast<double>(spec.trials);
  result.success_estimate = static_cast<double>(total.successes) / n;
  result.success_std_error = std::sqrt(
      result.success_estimate * (1.0 - result.success_estimate) / n);
  if (total.successes > 0) {
    const double m = static_cast<double>(total.successes);
    result.fidelity_estimate = total.overlap_sum / m;
    const double variance =
        std::max(0.0, total.overlap_sum_squared / m -
                          result.fidelity_estimate * result.fidelity_estimate);
    result.fidelity_std_error = std::sqrt(variance / m);
  }
  return result;
}

void SweepSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("sweep grid must be strictly increasing");
  if (!(fidelity > 0.0 && fidelity < 1.0))
    throw std::invalid_argument("fidelity must lie in (0, 1)");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
}

std::vector<SweepRow> sensitivity_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size());

  for (double value : spec.grid) {
    double f = spec.fidelity;
    double detuning = spec.detuning;
    double gamma = spec.gamma_over_kappa;
    double lambda = spec.lambda_over_kappa;
    switch (spec.variable) {
      case SweepVariable::F: f = value; break;
      case SweepVariable::GammaOverKappa: gamma = value; break;
      case SweepVariable::LambdaOverKappa: lambda = value; break;
      case SweepVariable::Detuning: detuning = value; break;
    }

    SweepRow row;
    row.value = value;
    try {
      const CavityParams coupled =
          CavityParams::from_ratios(detuning, gamma, lambda);
      const ReflectionModel reflection =
          ReflectionModel::with_params(coupled, spec.keep_modulus);
      ErrorModel model = spec.model;
      model.fidelity = f;
      const PurificationReport report =
          spec.protocol == Protocol::BitFlipEpp
              ? run_bitflip_epp(f, spec.M, model, reflection)
              : run_phaseflip_correction(f, spec.M, reflection);
      row.output_fidelity = report.output_fidelity;
      row.success_probability = report.success_probability;
    } catch (const std::invalid_argument&) {
      row.singular = true;
    }
    rows.push_back(row);
  }
  return rows;
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::F: return "F";
    case SweepVariable::GammaOverKappa: return "gamma_over_kappa";
    case SweepVariable::LambdaOverKappa: return "lambda_over_kappa";
    case SweepVariable::Detuning: return "detuning";
  }
  return "?";
}

}  // namespace logicepp
