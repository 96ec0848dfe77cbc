#pragma once

#include <string>
#include <vector>

#include "logicepp/sparse_state.hpp"

namespace logicepp {

/// Half-wave plate: |L> -> (|L>+|R>)/sqrt(2), |R> -> (|L>-|R>)/sqrt(2).
/// Involutive.
SparseState hwp(const SparseState& s, int photon);

/// Polarization bit flip, L <-> R.
SparseState bit_flip(const SparseState& s, int photon);

/// Polarization phase flip, |R> -> -|R>.
SparseState phase_flip(const SparseState& s, int photon);

struct DetectionBranch {
  std::string outcome;  // one letter per detected slot, e.g. "LLRR"
  double probability;
  SparseState post;
};

/// PBS-plus-detectors: full projective measurement of the listed photon
/// slots in the {L, R} basis. Slots must be distinct and in range.
std::vector<DetectionBranch> pbs_detect(const SparseState& s,
                                        const std::vector<int>& photons);

}  // namespace logicepp
