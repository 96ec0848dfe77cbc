#pragma once

#include <Eigen/Core>

#include <complex>
#include <map>
#include <vector>

#include "logicepp/basis.hpp"

namespace logicepp {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Stored terms at or below this magnitude are dropped. The protocol algebra
/// is exact; the floor only absorbs floating-point dust.
inline constexpr double kAmplitudeFloor = 1e-14;

/// Tolerance for norm checks after normalization.
inline constexpr double kNormTolerance = 1e-12;

/// A pure state of a photon/atom register, stored as a finite map from
/// basis kets to complex amplitudes. Every protocol state in this codebase
/// has few nonzero terms, so the map is both exact and cheap; a dense
/// amplitude array over 2^n configurations never materializes.
///
/// All mutating members return *this so construction pipelines chain.
class SparseState {
 public:
  using TermMap = std::map<BasisKet, Complex>;

  SparseState() = default;
  explicit SparseState(RegisterShape shape);

  /// Unit amplitude on a single basis ket.
  static SparseState basis(RegisterShape shape, BasisKet ket);

  /// Unit ket from readable strings, e.g. from_basis("LR", "gLgR").
  static SparseState from_basis(std::string_view photons,
                                std::string_view atoms);

  const RegisterShape& shape() const { return shape_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex amplitude(const BasisKet& ket) const;
  /// Adds into the ket's amplitude (terms near zero are erased lazily by
  /// prune()).
  SparseState& accumulate(const BasisKet& ket, Complex value);

  double norm_squared() const;
  double norm() const;

  SparseState& prune(double floor = kAmplitudeFloor);
  /// Rescales to unit norm. Throws std::invalid_argument on the zero state.
  SparseState& normalize();
  SparseState normalized() const;
  bool is_normalized(double tol = kNormTolerance) const;

  SparseState& scale(Complex factor);

  friend bool operator==(const SparseState&, const SparseState&) = default;

 private:
  RegisterShape shape_{};
  TermMap terms_;
};

/// Kronecker product; register shapes concatenate (a's slots first).
SparseState tensor(const SparseState& a, const SparseState& b);

/// <a|b>, conjugate-linear in a. Throws on shape mismatch.
Complex inner_product(const SparseState& a, const SparseState& b);

/// |<a|b>|^2.
double overlap(const SparseState& a, const SparseState& b);

/// ca*a + cb*b, pruned but not normalized. Throws on shape mismatch.
SparseState superpose(Complex ca, const SparseState& a, Complex cb,
                      const SparseState& b);

/// Applies a 2x2 unitary to one photon slot (basis order L, R). The matrix
/// must be unitary within 1e-12 and the slot in range, else
/// std::invalid_argument.
SparseState apply_photon_unitary(const SparseState& s, int slot,
                                 const Matrix2c& u);

/// Same for an atom slot (basis order gL, gR).
SparseState apply_atom_unitary(const SparseState& s, int slot,
                               const Matrix2c& u);

struct PhotonMeasurement {
  Polarization outcome;
  double probability;
  SparseState post;  // normalized; the slot stays, collapsed
};

struct AtomMeasurement {
  AtomState outcome;
  double probability;
  SparseState post;
};

/// Projective measurement of one slot in the computational basis.
/// Zero-probability outcomes are omitted; probabilities sum to the squared
/// norm of the input (1 for normalized states).
std::vector<PhotonMeasurement> measure_photon(const SparseState& s, int slot);
std::vector<AtomMeasurement> measure_atom(const SparseState& s, int slot);

/// True iff |<a|b>| >= 1 - tol. Inputs must be normalized and share a shape.
bool equal_up_to_global_phase(const SparseState& a, const SparseState& b,
                              double tol);

/// Rephases so the amplitude of the smallest stored ket is real positive.
/// Gives states a canonical representative for merging and serialization.
SparseState& canonicalize_phase(SparseState& s);

/// Keeps photon slots [begin, begin+count) and drops everything else.
/// Every dropped slot must be collapsed (same value in all terms), which is
/// exactly the situation after it has been measured; otherwise throws.
SparseState extract_photon_block(const SparseState& s, int begin, int count);

/// Common fixed 2x2 operations (column k = image of basis vector k).
const Matrix2c& hadamard_matrix();
const Matrix2c& pauli_x_matrix();
const Matrix2c& pauli_z_matrix();

}  // namespace logicepp
