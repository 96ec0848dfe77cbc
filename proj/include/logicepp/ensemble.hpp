#pragma once

#include <vector>

#include "logicepp/sparse_state.hpp"

namespace logicepp {

struct WeightedState {
  double probability = 0.0;
  SparseState state;
};

/// A rank-k mixed state as an explicit convex combination of pure states.
/// Exact mixture propagation: protocol steps act branch by branch.
struct Ensemble {
  std::vector<WeightedState> branches;

  double total_weight() const;
  /// Throws std::invalid_argument unless weights sum to 1 within 1e-12,
  /// every weight is in (0, 1], and all states share one register shape.
  void validate() const;
};

/// Sum_k p_k |<target|psi_k>|^2. Throws on shape mismatch.
double ensemble_fidelity(const Ensemble& e, const SparseState& target);

/// Canonicalizes each member's global phase, merges members that are equal
/// term-by-term within tol, and drops members with negligible weight.
Ensemble merged(const Ensemble& e, double tol = 1e-10);

/// Rescales weights to sum to 1.
Ensemble renormalized(const Ensemble& e);

}  // namespace logicepp
