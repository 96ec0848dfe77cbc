#include "logicepp/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace logicepp {

namespace {

// Term-by-term equality of already phase-canonicalized states.
bool states_match(const SparseState& a, const SparseState& b, double tol) {
  if (!(a.shape() == b.shape()) || a.term_count() != b.term_count())
    return false;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (std::abs(ia->second - ib->second) > tol) return false;
  }
  return true;
}

}  // namespace

double Ensemble::total_weight() const {
  double total = 0.0;
  for (const auto& b : branches) total += b.probability;
  return total;
}

void Ensemble::validate() const {
  if (branches.empty()) throw std::invalid_argument("empty ensemble");
  const RegisterShape& shape = branches.front().state.shape();
  for (const auto& b : branches) {
    if (b.probability <= 0.0 || b.probability > 1.0 + kNormTolerance)
      throw std::invalid_argument("branch weight outside (0, 1]");
    if (!(b.state.shape() == shape))
      throw std::invalid_argument("mixed register shapes in ensemble");
  }
  if (std::abs(total_weight() - 1.0) > kNormTolerance)
    throw std::invalid_argument("ensemble weights do not sum to 1");
}

double ensemble_fidelity(const Ensemble& e, const SparseState& target) {
  double total = 0.0;
  for (const auto& b : e.branches) total += b.probability * overlap(target, b.state);
  return total;
}

Ensemble merged(const Ensemble& e, double tol) {
  Ensemble out;
  for (const auto& b : e.branches) {
    if (b.probability < 1e-15) continue;
    SparseState canonical = b.state;
    canonicalize_phase(canonical);
    bool absorbed = false;
    for (auto& existing : out.branches) {
      if (states_match(existing.state, canonical, tol)) {
        existing.probability += b.probability;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) out.branches.push_back({b.probability, std::move(canonical)});
  }
  return out;
}

Ensemble renormalized(const Ensemble& e) {
  const double total = e.total_weight();
  if (total <= 0.0)
    throw std::invalid_argument("cannot renormalize zero-weight ensemble");
  Ensemble out = e;
  for (auto& b : out.branches) b.probability /= total;
  return out;
}

}  // namespace logicepp
