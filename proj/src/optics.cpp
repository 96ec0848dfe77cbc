#include "logicepp/optics.hpp"

#include <set>
#include <stdexcept>

namespace logicepp {

SparseState hwp(const SparseState& s, int photon) {
  return apply_photon_unitary(s, photon, hadamard_matrix());
}

SparseState bit_flip(const SparseState& s, int photon) {
  return apply_photon_unitary(s, photon, pauli_x_matrix());
}

SparseState phase_flip(const SparseState& s, int photon) {
  return apply_photon_unitary(s, photon, pauli_z_matrix());
}

std::vector<DetectionBranch> pbs_detect(const SparseState& s,
                                        const std::vector<int>& photons) {
  const std::set<int> unique(photons.begin(), photons.end());
  if (unique.size() != photons.size())
    throw std::invalid_argument("duplicate photon slot in detection");

  std::vector<DetectionBranch> branches{{std::string{}, 1.0, s}};
  for (int slot : photons) {
    std::vector<DetectionBranch> next;
    for (const auto& branch : branches) {
      for (const auto& m : measure_photon(branch.post, slot)) {
        next.push_back({branch.outcome + to_char(m.outcome),
                        branch.probability * m.probability, m.post});
      }
    }
    branches = std::move(next);
  }
  return branches;
}

}  // namespace logicepp
