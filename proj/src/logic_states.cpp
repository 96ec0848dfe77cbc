#include "logicepp/logic_states.hpp"

#include <cmath>
#include <stdexcept>

#include "logicepp/optics.hpp"

namespace logicepp {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

BasisKet uniform_photons(int count, Polarization p) {
  BasisKet ket;
  if (p == Polarization::R)
    ket.photon_bits = count == 64 ? ~std::uint64_t{0}
                                  : (std::uint64_t{1} << count) - 1;
  return ket;
}

}  // namespace

void ErrorModel::validate(int M) const {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (!(fidelity > 0.0 && fidelity < 1.0))
    throw std::invalid_argument("fidelity must lie in (0, 1)");
  if (kind == Kind::PhysicalBitFlip && (position < 1 || position > M))
    throw std::invalid_argument("flip position must lie in [1, M]");
}

SparseState bell_state(BellKind kind) {
  const bool phi = kind == BellKind::PhiPlus || kind == BellKind::PhiMinus;
  const bool plus = kind == BellKind::PhiPlus || kind == BellKind::PsiPlus;
  SparseState s(RegisterShape{2, 0});
  s.accumulate(parse_basis(phi ? "LL" : "LR", ""), Complex{kInvSqrt2, 0.0});
  s.accumulate(parse_basis(phi ? "RR" : "RL", ""),
               Complex{plus ? kInvSqrt2 : -kInvSqrt2, 0.0});
  return s;
}

SparseState ghz_state(int M, GhzSign sign) {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  SparseState s(RegisterShape{M, 0});
  s.accumulate(uniform_photons(M, Polarization::L), Complex{kInvSqrt2, 0.0});
  s.accumulate(uniform_photons(M, Polarization::R),
               Complex{sign == GhzSign::Plus ? kInvSqrt2 : -kInvSqrt2, 0.0});
  return s;
}

SparseState logic_bell_state(LogicBellKind kind) {
  if (kind.M < 1) throw std::invalid_argument("M must be >= 1");
  const bool phi =
      kind.kind == BellKind::PhiPlus || kind.kind == BellKind::PhiMinus;
  const bool plus =
      kind.kind == BellKind::PhiPlus || kind.kind == BellKind::PsiPlus;
  const SparseState plus_half = ghz_state(kind.M, GhzSign::Plus);
  const SparseState minus_half = ghz_state(kind.M, GhzSign::Minus);
  const SparseState first =
      phi ? tensor(plus_half, plus_half) : tensor(plus_half, minus_half);
  const SparseState second =
      phi ? tensor(minus_half, minus_half) : tensor(minus_half, plus_half);
  return superpose(Complex{kInvSqrt2, 0.0}, first,
                   Complex{plus ? kInvSqrt2 : -kInvSqrt2, 0.0}, second);
}

Ensemble mixed_input(const ErrorModel& model, int M) {
  model.validate(M);
  const SparseState clean = logic_bell_state({BellKind::PhiPlus, M});

  SparseState error(RegisterShape{});
  switch (model.kind) {
    case ErrorModel::Kind::LogicBitFlip:
      error = logic_bell_state({BellKind::PsiPlus, M});
      break;
    case ErrorModel::Kind::LogicPhaseFlip:
      error = logic_bell_state({BellKind::PhiMinus, M});
      break;
    case ErrorModel::Kind::PhysicalBitFlip:
      error = bit_flip(clean, model.position - 1);
      break;
    case ErrorModel::Kind::PhysicalPhaseFlip:
      // A single physical Z inside logic qubit A realizes GHZ+ <-> GHZ-.
      error = phase_flip(clean, 0);
      break;
  }

  Ensemble e;
  e.branches.push_back({model.fidelity, clean});
  e.branches.push_back({1.0 - model.fidelity, error});
  return e;
}

const char* to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PhiPlus: return "Phi+";
    case BellKind::PhiMinus: return "Phi-";
    case BellKind::PsiPlus: return "Psi+";
    case BellKind::PsiMinus: return "Psi-";
  }
  return "?";
}

}  // namespace logicepp
