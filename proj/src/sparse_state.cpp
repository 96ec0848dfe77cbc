#include "logicepp/sparse_state.hpp"

#include <cmath>
#include <stdexcept>

namespace logicepp {

namespace {

void require_same_shape(const SparseState& a, const SparseState& b) {
  if (!(a.shape() == b.shape()))
    throw std::invalid_argument("register shapes do not match");
}

void require_unitary(const Matrix2c& u) {
  const Matrix2c residue = u.adjoint() * u - Matrix2c::Identity();
  if (residue.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("matrix is not unitary within 1e-12");
}

void require_photon_slot(const SparseState& s, int slot) {
  if (slot < 0 || slot >= s.shape().photons)
    throw std::invalid_argument("photon slot out of range");
}

void require_atom_slot(const SparseState& s, int slot) {
  if (slot < 0 || slot >= s.shape().atoms)
    throw std::invalid_argument("atom slot out of range");
}

}  // namespace

SparseState::SparseState(RegisterShape shape) : shape_(shape) {
  if (shape.photons < 0 || shape.atoms < 0 || shape.photons > 64 ||
      shape.atoms > 64)
    throw std::invalid_argument("register shape out of supported range");
}

SparseState SparseState::basis(RegisterShape shape, BasisKet ket) {
  SparseState s(shape);
  s.terms_[ket] = Complex{1.0, 0.0};
  return s;
}

SparseState SparseState::from_basis(std::string_view photons,
                                    std::string_view atoms) {
  return basis(parse_shape(photons, atoms), parse_basis(photons, atoms));
}

Complex SparseState::amplitude(const BasisKet& ket) const {
  const auto it = terms_.find(ket);
  return it == terms_.end() ? Complex{} : it->second;
}

SparseState& SparseState::accumulate(const BasisKet& ket, Complex value) {
  terms_[ket] += value;
  return *this;
}

double SparseState::norm_squared() const {
  double total = 0.0;
  for (const auto& [ket, amp] : terms_) total += std::norm(amp);
  return total;
}

double SparseState::norm() const { return std::sqrt(norm_squared()); }

SparseState& SparseState::prune(double floor) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = std::abs(it->second) <= floor ? terms_.erase(it) : std::next(it);
  return *this;
}

SparseState& SparseState::normalize() {
  const double n = norm();
  if (n <= kAmplitudeFloor)
    throw std::invalid_argument("cannot normalize a zero state");
  return scale(Complex{1.0 / n, 0.0}).prune();
}

SparseState SparseState::normalized() const {
  SparseState copy = *this;
  copy.normalize();
  return copy;
}

bool SparseState::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

SparseState& SparseState::scale(Complex factor) {
  for (auto& [ket, amp] : terms_) amp *= factor;
  return *this;
}

SparseState tensor(const SparseState& a, const SparseState& b) {
  const RegisterShape shape{a.shape().photons + b.shape().photons,
                            a.shape().atoms + b.shape().atoms};
  SparseState out(shape);
  for (const auto& [ka, va] : a.terms()) {
    for (const auto& [kb, vb] : b.terms()) {
      BasisKet ket;
      ket.photon_bits = ka.photon_bits | (kb.photon_bits << a.shape().photons);
      ket.atom_bits = ka.atom_bits | (kb.atom_bits << a.shape().atoms);
      out.accumulate(ket, va * vb);
    }
  }
  return out.prune();
}

Complex inner_product(const SparseState& a, const SparseState& b) {
  require_same_shape(a, b);
  // Iterate the smaller map.
  const SparseState& lead = a.term_count() <= b.term_count() ? a : b;
  const SparseState& other = &lead == &a ? b : a;
  Complex total{};
  for (const auto& [ket, amp] : lead.terms()) {
    const Complex mate = other.amplitude(ket);
    total += &lead == &a ? std::conj(amp) * mate : std::conj(mate) * amp;
  }
  return total;
}

double overlap(const SparseState& a, const SparseState& b) {
  return std::norm(inner_product(a, b));
}

SparseState superpose(Complex ca, const SparseState& a, Complex cb,
                      const SparseState& b) {
  require_same_shape(a, b);
  SparseState out(a.shape());
  for (const auto& [ket, amp] : a.terms()) out.accumulate(ket, ca * amp);
  for (const auto& [ket, amp] : b.terms()) out.accumulate(ket, cb * amp);
  return out.prune();
}

namespace {

template <typename SlotOf, typename SlotWith>
SparseState apply_single_qubit(const SparseState& s, int slot,
                               const Matrix2c& u, SlotOf slot_of,
                               SlotWith slot_with) {
  SparseState out(s.shape());
  for (const auto& [ket, amp] : s.terms()) {
    const int bit = slot_of(ket, slot);
    for (int target = 0; target < 2; ++target) {
      const Complex factor = u(target, bit);
      if (factor == Complex{}) continue;
      out.accumulate(slot_with(ket, slot, target), factor * amp);
    }
  }
  return out.prune();
}

}  // namespace

SparseState apply_photon_unitary(const SparseState& s, int slot,
                                 const Matrix2c& u) {
  require_photon_slot(s, slot);
  require_unitary(u);
  return apply_single_qubit(
      s, slot, u,
      [](const BasisKet& k, int i) { return static_cast<int>(k.photon(i)); },
      [](const BasisKet& k, int i, int v) {
        return k.with_photon(i, static_cast<Polarization>(v));
      });
}

SparseState apply_atom_unitary(const SparseState& s, int slot,
                               const Matrix2c& u) {
  require_atom_slot(s, slot);
  require_unitary(u);
  return apply_single_qubit(
      s, slot, u,
      [](const BasisKet& k, int i) { return static_cast<int>(k.atom(i)); },
      [](const BasisKet& k, int i, int v) {
        return k.with_atom(i, static_cast<AtomState>(v));
      });
}

namespace {

// Outcomes with probability below this are treated as numerically absent.
constexpr double kProbabilityFloor = 1e-24;

template <typename Branch, typename BitOf>
std::vector<Branch> measure_slot(const SparseState& s, int slot, BitOf bit_of) {
  double prob[2] = {0.0, 0.0};
  SparseState post[2] = {SparseState(s.shape()), SparseState(s.shape())};
  for (const auto& [ket, amp] : s.terms()) {
    const int bit = bit_of(ket, slot);
    prob[bit] += std::norm(amp);
    post[bit].accumulate(ket, amp);
  }
  std::vector<Branch> out;
  for (int bit = 0; bit < 2; ++bit) {
    if (prob[bit] < kProbabilityFloor) continue;
    post[bit].scale(Complex{1.0 / std::sqrt(prob[bit]), 0.0}).prune();
    out.push_back(Branch{static_cast<decltype(Branch{}.outcome)>(bit),
                         prob[bit], std::move(post[bit])});
  }
  return out;
}

}  // namespace

std::vector<PhotonMeasurement> measure_photon(const SparseState& s, int slot) {
  require_photon_slot(s, slot);
  return measure_slot<PhotonMeasurement>(
      s, slot,
      [](const BasisKet& k, int i) { return static_cast<int>(k.photon(i)); });
}

std::vector<AtomMeasurement> measure_atom(const SparseState& s, int slot) {
  require_atom_slot(s, slot);
  return measure_slot<AtomMeasurement>(
      s, slot,
      [](const BasisKet& k, int i) { return static_cast<int>(k.atom(i)); });
}

bool equal_up_to_global_phase(const SparseState& a, const SparseState& b,
                              double tol) {
  require_same_shape(a, b);
  return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

SparseState& canonicalize_phase(SparseState& s) {
  for (const auto& [ket, amp] : s.terms()) {
    const double magnitude = std::abs(amp);
    if (magnitude <= kAmplitudeFloor) continue;
    s.scale(std::conj(amp) / magnitude);
    return s;
  }
  return s;
}

SparseState extract_photon_block(const SparseState& s, int begin, int count) {
  if (count < 0 || begin < 0 || begin + count > s.shape().photons)
    throw std::invalid_argument("photon block out of range");
  if (s.empty()) throw std::invalid_argument("cannot extract from zero state");

  const BasisKet& reference = s.terms().begin()->first;
  const std::uint64_t keep_mask =
      count == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1)
                                            << begin;
  const std::uint64_t photon_drop = ~keep_mask;

  SparseState out(RegisterShape{count, 0});
  for (const auto& [ket, amp] : s.terms()) {
    const bool collapsed =
        ((ket.photon_bits ^ reference.photon_bits) & photon_drop) == 0 &&
        ket.atom_bits == reference.atom_bits;
    if (!collapsed)
      throw std::invalid_argument(
          "dropped slots are not collapsed; measure them first");
    BasisKet reduced;
    reduced.photon_bits = (ket.photon_bits & keep_mask) >> begin;
    out.accumulate(reduced, amp);
  }
  return out;
}

const Matrix2c& hadamard_matrix() {
  static const Matrix2c h = [] {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix2c m;
    m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    return m;
  }();
  return h;
}

const Matrix2c& pauli_x_matrix() {
  static const Matrix2c x = [] {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
  }();
  return x;
}

const Matrix2c& pauli_z_matrix() {
  static const Matrix2c z = [] {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
  }();
  return z;
}

}  // namespace logicepp
