#include "logicepp/faraday.hpp"

#include <cmath>
#include <stdexcept>

namespace logicepp {

CavityParams CavityParams::from_ratios(double detuning,
                                       double gamma_over_kappa,
                                       double lambda_over_kappa) {
  CavityParams p;
  p.omega_p = detuning;
  p.omega_c = 0.0;
  p.omega_0 = 0.0;
  p.kappa = 1.0;
  p.gamma = gamma_over_kappa;
  p.lambda = lambda_over_kappa;
  return p;
}

CavityParams CavityParams::working_point() {
  return from_ratios(-0.5, 0.0, 0.5);
}

CavityParams CavityParams::decoupled() const {
  CavityParams p = *this;
  p.lambda = 0.0;
  return p;
}

void CavityParams::validate() const {
  const double values[] = {omega_p, omega_c, omega_0, kappa, gamma, lambda};
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("cavity parameter is not finite");
  if (kappa <= 0.0) throw std::invalid_argument("kappa must be positive");
  if (gamma < 0.0 || lambda < 0.0)
    throw std::invalid_argument("rates must be non-negative");
}

Complex reflection_coefficient(const CavityParams& p) {
  p.validate();
  const Complex cavity_detuning{0.0, p.omega_c - p.omega_p};
  const Complex atom_term =
      Complex{p.gamma / 2.0, p.omega_0 - p.omega_p};
  const Complex coupling{p.lambda * p.lambda, 0.0};
  const Complex numerator = (cavity_detuning - p.kappa / 2.0) * atom_term + coupling;
  const Complex denominator = (cavity_detuning + p.kappa / 2.0) * atom_term + coupling;
  if (std::abs(denominator) == 0.0)
    throw std::invalid_argument("singular cavity parameters (zero denominator)");
  return numerator / denominator;
}

Complex empty_reflection_coefficient(const CavityParams& p) {
  p.validate();
  const Complex cavity_detuning{0.0, p.omega_c - p.omega_p};
  return (cavity_detuning - p.kappa / 2.0) / (cavity_detuning + p.kappa / 2.0);
}

namespace {

void require_slots(const SparseState& s, int photon, int atom) {
  if (photon < 0 || photon >= s.shape().photons)
    throw std::invalid_argument("photon slot out of range");
  if (atom < 0 || atom >= s.shape().atoms)
    throw std::invalid_argument("atom slot out of range");
}

// The reflection is diagonal: each term picks up a factor chosen by whether
// the photon polarization matches the atom's ground state.
SparseState apply_reflection(const SparseState& s, int photon, int atom,
                             Complex coupled_factor, Complex empty_factor) {
  SparseState out(s.shape());
  for (const auto& [ket, amp] : s.terms()) {
    const bool coupled = static_cast<int>(ket.photon(photon)) ==
                         static_cast<int>(ket.atom(atom));
    out.accumulate(ket, amp * (coupled ? coupled_factor : empty_factor));
  }
  return out.prune();
}

}  // namespace

SparseState faraday_reflect(const SparseState& s, int photon, int atom) {
  require_slots(s, photon, atom);
  return apply_reflection(s, photon, atom, Complex{-1.0, 0.0},
                          Complex{0.0, 1.0});
}

SparseState faraday_reflect_numeric(const SparseState& s, int photon,
                                    int atom, const CavityParams& coupled,
                                    const CavityParams& empty,
                                    bool keep_modulus) {
  require_slots(s, photon, atom);
  const Complex r = reflection_coefficient(coupled);
  const Complex r0 = empty_reflection_coefficient(empty);
  const Complex coupled_factor =
      keep_modulus ? r : Complex{std::polar(1.0, std::arg(r))};
  const Complex empty_factor = std::polar(1.0, std::arg(r0));
  return apply_reflection(s, photon, atom, coupled_factor, empty_factor);
}

}  // namespace logicepp
