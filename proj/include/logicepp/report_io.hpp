#pragma once

#include <string>
#include <vector>

#include "logicepp/analysis.hpp"
#include "logicepp/epp.hpp"

namespace logicepp {

/// Formats a real with 12 significant digits, locale-independent. All report
/// files route numbers through this so identical runs produce identical
/// bytes on any platform.
std::string format_real(double value, int significant_digits = 12);

/// PurificationReport as a JSON document with fixed field order:
/// {protocol, M, F, success_probability, output_fidelity,
///  branches: [{atoms, photons, p, verdict, recovery}]}.
/// Reals are emitted as decimal strings.
std::string report_to_json(const PurificationReport& report);

/// State fixture: {photons, atoms, terms: [{basis, re, im}]}.
std::string state_to_json(const SparseState& state);
SparseState state_from_json(const std::string& text);

std::string monte_carlo_to_json(const MonteCarloResult& result,
                                const MonteCarloSpec& spec);
std::string monte_carlo_to_csv(const MonteCarloResult& result,
                               const MonteCarloSpec& spec);

std::string sweep_to_csv(const SweepSpec& spec,
                         const std::vector<SweepRow>& rows);
std::string sweep_to_json(const SweepSpec& spec,
                          const std::vector<SweepRow>& rows);

std::string iterations_to_csv(const std::vector<IterationRow>& rows);
std::string iterations_to_json(const std::vector<IterationRow>& rows);

struct ReflectionRow {
  double detuning = 0.0;
  Complex coupled;
  Complex empty;
};

std::string reflection_to_csv(const std::vector<ReflectionRow>& rows);
std::string reflection_to_json(const std::vector<ReflectionRow>& rows);

}  // namespace logicepp
