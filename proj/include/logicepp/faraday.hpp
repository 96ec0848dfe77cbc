#pragma once

#include "logicepp/sparse_state.hpp"

namespace logicepp {

/// Physical parameters of a single-atom low-Q cavity. All quantities share
/// one frequency unit; the helpers below express everything in units of the
/// cavity damping rate kappa, since the reflection coefficient depends only
/// on ratios.
struct CavityParams {
  double omega_p = 0.0;  ///< input photon frequency
  double omega_c = 0.0;  ///< cavity frequency
  double omega_0 = 0.0;  ///< atomic transition frequency
  double kappa = 1.0;    ///< cavity damping rate, must be > 0
  double gamma = 0.0;    ///< atomic decay rate, >= 0
  double lambda = 0.0;   ///< atom-cavity coupling strength, >= 0

  /// Coupled cavity from dimensionless ratios, kappa = 1, omega_c = omega_0
  /// = 0, omega_p = detuning (in units of kappa).
  static CavityParams from_ratios(double detuning, double gamma_over_kappa,
                                  double lambda_over_kappa);

  /// The operating point that realizes the ideal reflection rules:
  /// omega_0 = omega_c, omega_p = omega_c - kappa/2, lambda = kappa/2,
  /// gamma = 0.
  static CavityParams working_point();

  /// Same cavity with the atom decoupled (lambda = 0).
  CavityParams decoupled() const;

  /// Throws std::invalid_argument if any rate is negative, kappa is not
  /// strictly positive, or a value is non-finite.
  void validate() const;
};

/// Reflection coefficient of the coupled atom-cavity system,
///   r = ([i(wc-wp) - k/2][i(w0-wp) + g/2] + lambda^2)
///     / ([i(wc-wp) + k/2][i(w0-wp) + g/2] + lambda^2).
/// Throws std::invalid_argument on singular parameters (zero denominator).
Complex reflection_coefficient(const CavityParams& p);

/// Empty-cavity coefficient r0 = (i(wc-wp) - k/2)/(i(wc-wp) + k/2);
/// always unimodular.
Complex empty_reflection_coefficient(const CavityParams& p);

/// Ideal reflection of one photon off one intracavity atom: the diagonal
/// two-qubit unitary
///   |L,gL> -> -|L,gL>,  |R,gL> -> i|R,gL>,
///   |L,gR> ->  i|L,gR>, |R,gR> -> -|R,gR>.
SparseState faraday_reflect(const SparseState& s, int photon, int atom);

/// Reflection with numerically computed phases: coupled configurations
/// (L,gL) and (R,gR) acquire arg r(coupled); uncoupled ones acquire
/// arg r0(empty). By default the moduli stay at 1 (pure-phase model);
/// keep_modulus applies the true |r| to the coupled configurations, leaving
/// the state sub-normalized by the absorbed probability.
SparseState faraday_reflect_numeric(const SparseState& s, int photon,
                                    int atom, const CavityParams& coupled,
                                    const CavityParams& empty,
                                    bool keep_modulus = false);

}  // namespace logicepp
