#pragma once

#include "logicepp/ensemble.hpp"
#include "logicepp/sparse_state.hpp"

namespace logicepp {

/// The four polarization Bell states.
enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

enum class GhzSign { Plus, Minus };

/// A logic Bell state: two logic qubits, each an M-photon GHZ state.
struct LogicBellKind {
  BellKind kind = BellKind::PhiPlus;
  int M = 2;  ///< physical qubits per logic qubit, >= 1
};

/// How the mixed input deviates from the ideal logic Bell state.
struct ErrorModel {
  enum class Kind {
    LogicBitFlip,      ///< Phi+ -> Psi+ on the logic pair
    LogicPhaseFlip,    ///< Phi+ -> Phi- on the logic pair
    PhysicalBitFlip,   ///< X on one photon of logic qubit A
    PhysicalPhaseFlip  ///< Z-type flip on logic qubit A (GHZ+ <-> GHZ-)
  };

  Kind kind = Kind::LogicBitFlip;
  double fidelity = 0.8;  ///< weight of the error-free branch, in (0, 1)
  int position = 1;       ///< 1-based photon index, PhysicalBitFlip only

  void validate(int M) const;
};

/// phi+- = (|LL> +- |RR>)/sqrt(2), psi+- = (|LR> +- |RL>)/sqrt(2).
SparseState bell_state(BellKind kind);

/// (|L>^M +- |R>^M)/sqrt(2). M >= 1.
SparseState ghz_state(int M, GhzSign sign);

/// Logic Bell states over 2M photons (logic qubit A on slots [0, M), B on
/// [M, 2M)):
///   Phi+- = (GHZ+ GHZ+ +- GHZ- GHZ-)/sqrt(2)
///   Psi+- = (GHZ+ GHZ- +- GHZ- GHZ+)/sqrt(2)
SparseState logic_bell_state(LogicBellKind kind);

/// Rank-2 mixture [(F, clean), (1-F, error)] with the error branch built by
/// applying the model's flip to Phi+_M.
Ensemble mixed_input(const ErrorModel& model, int M);

const char* to_string(BellKind kind);

}  // namespace logicepp
