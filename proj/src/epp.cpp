#include "logicepp/epp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "logicepp/optics.hpp"

namespace logicepp {

namespace {

constexpr double kStrictOverlapTol = 1e-9;
constexpr double kCompletenessTol = 1e-10;

double purified_fidelity(double f) {
  return f * f / (f * f + (1.0 - f) * (1.0 - f));
}

double round_success_probability(double f) {
  return f * f + (1.0 - f) * (1.0 - f);
}

std::vector<int> logic_qubit_b_slots(int M) {
  std::vector<int> slots(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) slots[static_cast<std::size_t>(k)] = M + k;
  return slots;
}

SparseState apply_bit_flips(SparseState s, const std::vector<int>& slots) {
  for (int p : slots) s = bit_flip(s, p);
  return s;
}

/// One exact trajectory: an input mixture branch followed through a full
/// measurement record.
struct LeafEvent {
  int combo = 0;
  double mixture_weight = 0.0;
  bool copy1_clean = true;
  std::string atoms;
  std::string photons;
  double record_probability = 0.0;  // conditional on the mixture branch
  Verdict verdict = Verdict::Fail;
  std::vector<int> recovery;
  SparseState conditional_pre;
  SparseState conditional_post;
};

using LeafVisitor = std::function<void(const LeafEvent&)>;

struct ComboInput {
  int index = 0;
  double weight = 0.0;
  bool copy1_clean = true;
  SparseState photon_state;
};

/// Exact branch-by-branch executor for both protocols. Groups are processed
/// one after another, measuring each group's atoms before the next group
/// starts; all operations on disjoint slots commute, so this matches the
/// all-measurements-at-the-end description while keeping the term count
/// small.
class ProtocolEngine {
 public:
  ProtocolEngine(WiringPlan plan, ReflectionModel reflection)
      : plan_(std::move(plan)),
        reflection_(reflection),
        strict_(!reflection.numeric),
        clean_target_(logic_bell_state({BellKind::PhiPlus, plan_.M})),
        error_target_(logic_bell_state({BellKind::PsiPlus, plan_.M})) {}

  void run(const std::vector<ComboInput>& combos, const LeafVisitor& visit) {
    for (const ComboInput& combo : combos) {
      SparseState state =
          tensor(combo.photon_state,
                 SparseState::basis(RegisterShape{0, plan_.atom_count}, {}));
      descend(std::move(state), 0, 1.0, {}, combo, visit);
    }
  }

 private:
  SparseState reflect(const SparseState& s, int photon, int atom) const {
    if (!reflection_.numeric) return faraday_reflect(s, photon, atom);
    return faraday_reflect_numeric(s, photon, atom, reflection_.coupled,
                                   reflection_.empty,
                                   reflection_.keep_modulus);
  }

  void descend(SparseState state, std::size_t group_index, double probability,
               std::string outcomes, const ComboInput& combo,
               const LeafVisitor& visit) {
    if (group_index == plan_.groups.size()) {
      finish(std::move(state), probability, outcomes, combo, visit);
      return;
    }
    const WiringGroup& group = plan_.groups[group_index];

    if (plan_.protocol == Protocol::BitFlipEpp)
      for (int p : group.photons) state = hwp(state, p);
    for (int a : group.atoms)
      state = apply_atom_unitary(state, a, hadamard_matrix());
    for (int p : group.photons)
      for (int a : group.atoms) state = reflect(state, p, a);
    if (reflection_.numeric && reflection_.keep_modulus) {
      // Absorption leaves the state sub-normalized; the missing mass is the
      // probability of losing a photon in this group.
      const double survival = state.norm_squared();
      probability *= survival;
      state.normalize();
    }
    for (int a : group.atoms)
      state = apply_atom_unitary(state, a, hadamard_matrix());

    measure_group(std::move(state), group, 0, probability,
                  std::move(outcomes), group_index, combo, visit);
  }

  void measure_group(SparseState state, const WiringGroup& group,
                     std::size_t atom_index, double probability,
                     std::string outcomes, std::size_t group_index,
                     const ComboInput& combo, const LeafVisitor& visit) {
    if (atom_index == group.atoms.size()) {
      descend(std::move(state), group_index + 1, probability,
              std::move(outcomes), combo, visit);
      return;
    }
    for (auto& branch :
         measure_atom(state, group.atoms[atom_index])) {
      measure_group(std::move(branch.post), group, atom_index + 1,
                    probability * branch.probability,
                    outcomes + std::string(to_token(branch.outcome)),
                    group_index, combo, visit);
    }
  }

  void finish(SparseState state, double probability,
              const std::string& outcomes, const ComboInput& combo,
              const LeafVisitor& visit) {
    if (plan_.protocol == Protocol::PhaseFlipDetect) {
      finish_phaseflip(std::move(state), probability, outcomes, combo, visit);
      return;
    }

    const std::vector<AtomState> atom_outcomes = parse_atom_pattern(outcomes);
    const Verdict verdict = classify_verdict(atom_outcomes, plan_, strict_);
    if (verdict == Verdict::Fail) {
      LeafEvent event;
      event.combo = combo.index;
      event.mixture_weight = combo.weight;
      event.copy1_clean = combo.copy1_clean;
      event.atoms = outcomes;
      event.record_probability = probability;
      visit(event);
      return;
    }

    for (int p = 0; p < plan_.photon_count; ++p) state = hwp(state, p);

    std::vector<int> copy2(static_cast<std::size_t>(2 * plan_.M));
    for (int k = 0; k < 2 * plan_.M; ++k)
      copy2[static_cast<std::size_t>(k)] = 2 * plan_.M + k;

    for (const DetectionBranch& detection : pbs_detect(state, copy2)) {
      SparseState conditional =
          extract_photon_block(detection.post, 0, 2 * plan_.M);
      const std::vector<int> recovery =
          decide_recovery(outcomes, detection.outcome, conditional, combo);
      SparseState post = apply_bit_flips(conditional, recovery);
      canonicalize_phase(post);

      LeafEvent event;
      event.combo = combo.index;
      event.mixture_weight = combo.weight;
      event.copy1_clean = combo.copy1_clean;
      event.atoms = outcomes;
      event.photons = detection.outcome;
      event.record_probability = probability * detection.probability;
      event.verdict = Verdict::Success;
      event.recovery = recovery;
      event.conditional_pre = std::move(conditional);
      event.conditional_post = std::move(post);
      visit(event);
    }
  }

  void finish_phaseflip(SparseState state, double probability,
                        const std::string& outcomes, const ComboInput& combo,
                        const LeafVisitor& visit) {
    const std::vector<AtomState> atom_outcomes = parse_atom_pattern(outcomes);
    const bool all_gl =
        std::all_of(atom_outcomes.begin(), atom_outcomes.end(),
                    [](AtomState a) { return a == AtomState::gL; });
    // gL on both atoms flags the Phi- component; the flip on logic qubit B
    // rewrites it into Phi+. Everything else is left untouched.
    const std::vector<int> recovery =
        all_gl ? logic_qubit_b_slots(plan_.M) : std::vector<int>{};

    SparseState conditional = extract_photon_block(state, 0, 2 * plan_.M);
    SparseState post = apply_bit_flips(conditional, recovery);
    canonicalize_phase(post);
    if (strict_ &&
        !equal_up_to_global_phase(post, clean_target_, kStrictOverlapTol))
      throw ProtocolViolation("phase-flip correction missed the target state");

    LeafEvent event;
    event.combo = combo.index;
    event.mixture_weight = combo.weight;
    event.copy1_clean = combo.copy1_clean;
    event.atoms = outcomes;
    event.record_probability = probability;
    event.verdict = Verdict::Success;
    event.recovery = recovery;
    event.conditional_pre = std::move(conditional);
    event.conditional_post = std::move(post);
    visit(event);
  }

  /// Recovery is a lookup on the public measurement record, so it must not
  /// depend on which mixture branch produced the record. The first branch
  /// that reaches a record fixes the choice; later branches verify it.
  std::vector<int> decide_recovery(const std::string& atoms,
                                   const std::string& photons,
                                   const SparseState& conditional,
                                   const ComboInput& combo) {
    const SparseState& family =
        combo.copy1_clean ? clean_target_ : error_target_;
    const auto key = std::make_pair(atoms, photons);
    if (const auto it = recovery_map_.find(key); it != recovery_map_.end()) {
      if (strict_ &&
          overlap(family, apply_bit_flips(conditional, it->second)) <
              1.0 - kStrictOverlapTol)
        throw ProtocolViolation(
            "recovery lookup is inconsistent across mixture branches");
      return it->second;
    }

    const std::vector<int> none;
    const std::vector<int> flip_b = logic_qubit_b_slots(plan_.M);
    const double keep = overlap(family, conditional);
    const double flipped = overlap(family, apply_bit_flips(conditional, flip_b));
    const std::vector<int>& chosen = keep >= flipped ? none : flip_b;
    if (strict_ && std::max(keep, flipped) < 1.0 - kStrictOverlapTol)
      throw ProtocolViolation(
          "success branch state lies outside the expected mixture");
    return recovery_map_.emplace(key, chosen).first->second;
  }

  WiringPlan plan_;
  ReflectionModel reflection_;
  bool strict_;
  SparseState clean_target_;
  SparseState error_target_;
  std::map<std::pair<std::string, std::string>, std::vector<int>> recovery_map_;
};

std::vector<ComboInput> bitflip_combos(double fidelity, int M,
                                       const ErrorModel& model) {
  if (model.kind != ErrorModel::Kind::LogicBitFlip &&
      model.kind != ErrorModel::Kind::PhysicalPhaseFlip)
    throw std::invalid_argument(
        "bit-flip purification expects a logic-bit-flip or "
        "physical-phase-flip error model");
  ErrorModel effective = model;
  effective.fidelity = fidelity;
  const Ensemble input = mixed_input(effective, M);

  std::vector<ComboInput> combos;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto& copy1 = input.branches[static_cast<std::size_t>(i)];
      const auto& copy2 = input.branches[static_cast<std::size_t>(j)];
      combos.push_back({2 * i + j, copy1.probability * copy2.probability,
                        i == 0, tensor(copy1.state, copy2.state)});
    }
  }
  return combos;
}

PurificationReport assemble_report(Protocol protocol, double fidelity, int M,
                                   const ReflectionModel& reflection,
                                   const std::vector<ComboInput>& combos) {
  ProtocolEngine engine(build_wiring(M, protocol), reflection);

  struct RecordAccum {
    double probability = 0.0;
    Verdict verdict = Verdict::Fail;
    std::vector<int> recovery;
    Ensemble pre;
    Ensemble post;
  };
  std::map<std::pair<std::string, std::string>, RecordAccum> records;
  Ensemble output;
  double total = 0.0;
  double success = 0.0;

  engine.run(combos, [&](const LeafEvent& event) {
    const double joint = event.mixture_weight * event.record_probability;
    total += joint;
    RecordAccum& record = records[{event.atoms, event.photons}];
    record.probability += joint;
    record.verdict = event.verdict;
    if (event.verdict == Verdict::Success) {
      success += joint;
      record.recovery = event.recovery;
      record.pre.branches.push_back({joint, event.conditional_pre});
      record.post.branches.push_back({joint, event.conditional_post});
      output.branches.push_back({joint, event.conditional_post});
    }
  });

  if (!reflection.keep_modulus && std::abs(total - 1.0) > kCompletenessTol)
    throw ProtocolViolation("branch probabilities do not sum to 1");

  PurificationReport report;
  report.protocol = protocol;
  report.M = M;
  report.input_fidelity = fidelity;
  report.target = {BellKind::PhiPlus, M};
  report.success_probability = success;
  report.output_ensemble = merged(renormalized(output));
  report.output_fidelity = ensemble_fidelity(
      report.output_ensemble, logic_bell_state({BellKind::PhiPlus, M}));
  for (auto& [key, record] : records) {
    BranchRecord row;
    row.atoms = key.first;
    row.photons = key.second;
    row.probability = record.probability;
    row.verdict = record.verdict;
    row.recovery = std::move(record.recovery);
    if (record.verdict == Verdict::Success) {
      row.pre_recovery = merged(renormalized(record.pre));
      row.post_recovery = merged(renormalized(record.post));
    }
    report.branches.push_back(std::move(row));
  }
  return report;
}

void require_fidelity(double fidelity) {
  if (!(fidelity > 0.0 && fidelity < 1.0))
    throw std::invalid_argument("fidelity must lie in (0, 1)");
}

}  // namespace

WiringPlan build_wiring(int M, Protocol protocol) {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  WiringPlan plan;
  plan.protocol = protocol;
  plan.M = M;

  if (protocol == Protocol::PhaseFlipDetect) {
    plan.photon_count = 2 * M;
    plan.groups.push_back({{M - 1, M}, {0, 1}});
    plan.alice_group_count = 1;
    plan.atom_count = 2;
    return plan;
  }

  plan.photon_count = 4 * M;
  int next_atom = 0;
  const auto add_side = [&](int copy1_base, int copy2_base) {
    for (int k = 0; k + 1 < M; k += 2) {
      plan.groups.push_back({{copy1_base + k, copy1_base + k + 1,
                              copy2_base + k, copy2_base + k + 1},
                             {next_atom, next_atom + 1}});
      next_atom += 2;
    }
    if (M % 2 == 1) {
      plan.groups.push_back(
          {{copy1_base + M - 1, copy2_base + M - 1}, {next_atom, next_atom + 1}});
      next_atom += 2;
    }
  };
  add_side(0, 2 * M);
  plan.alice_group_count = static_cast<int>(plan.groups.size());
  add_side(M, 3 * M);
  plan.atom_count = next_atom;
  return plan;
}

Verdict classify_verdict(std::span<const AtomState> outcomes,
                         const WiringPlan& plan, bool strict) {
  if (plan.protocol != Protocol::BitFlipEpp)
    throw std::invalid_argument("verdicts apply to the bit-flip protocol");
  if (static_cast<int>(outcomes.size()) != plan.atom_count)
    throw std::invalid_argument("outcome length does not match atom count");

  int parity[2] = {0, 0};
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    const WiringGroup& group = plan.groups[g];
    const int bit =
        static_cast<int>(outcomes[static_cast<std::size_t>(group.atoms[0])]);
    for (int a : group.atoms) {
      if (static_cast<int>(outcomes[static_cast<std::size_t>(a)]) != bit) {
        if (strict)
          throw ProtocolViolation("atoms within one cavity group disagree");
        return Verdict::Fail;
      }
    }
    const int side = g < static_cast<std::size_t>(plan.alice_group_count) ? 0 : 1;
    parity[side] ^= bit;
  }
  return parity[0] == parity[1] ? Verdict::Success : Verdict::Fail;
}

PurificationReport run_bitflip_epp(double fidelity, int M,
                                   const ErrorModel& model,
                                   const ReflectionModel& reflection) {
  require_fidelity(fidelity);
  return assemble_report(Protocol::BitFlipEpp, fidelity, M, reflection,
                         bitflip_combos(fidelity, M, model));
}

PurificationReport run_phaseflip_correction(double fidelity, int M,
                                            const ReflectionModel& reflection) {
  require_fidelity(fidelity);
  ErrorModel model;
  model.kind = ErrorModel::Kind::LogicPhaseFlip;
  model.fidelity = fidelity;
  const Ensemble input = mixed_input(model, M);

  std::vector<ComboInput> combos;
  for (const auto& branch : input.branches)
    combos.push_back({static_cast<int>(combos.size()), branch.probability,
                      true, branch.state});
  return assemble_report(Protocol::PhaseFlipDetect, fidelity, M, reflection,
                         combos);
}

std::vector<int> recovery_for_branch(const std::string& atom_outcomes,
                                     const std::string& photon_outcomes,
                                     int M) {
  const WiringPlan plan = build_wiring(M, Protocol::BitFlipEpp);
  const std::vector<AtomState> outcomes = parse_atom_pattern(atom_outcomes);
  if (classify_verdict(outcomes, plan, /*strict=*/false) == Verdict::Fail)
    throw std::invalid_argument("recovery is undefined on fail branches");

  const SparseState clean = logic_bell_state({BellKind::PhiPlus, M});
  ProtocolEngine engine(plan, ReflectionModel::ideal());
  bool found = false;
  std::vector<int> recovery;
  engine.run({{0, 1.0, true, tensor(clean, clean)}}, [&](const LeafEvent& event) {
    if (event.atoms == atom_outcomes && event.photons == photon_outcomes &&
        event.verdict == Verdict::Success) {
      found = true;
      recovery = event.recovery;
    }
  });
  if (!found)
    throw std::invalid_argument("measurement record is not reachable");
  return recovery;
}

LocateResult locate_physical_bitflip(const SparseState& state, int M) {
  if (M < 2) throw std::invalid_argument("localization needs M >= 2");
  if (!(state.shape() == RegisterShape{2 * M, 0}))
    throw std::invalid_argument("state must hold 2M photons and no atoms");
  if (!state.is_normalized())
    throw std::invalid_argument("state must be normalized");

  SparseState working = state;
  int checks = 0;
  int same_polarization_checks = 0;

  // One fresh atom compares the polarizations of two photons; the outcome is
  // deterministic for any single-flip input.
  const auto parity_check = [&](int photon_a, int photon_b) {
    working = tensor(working, SparseState::from_basis("", "gL"));
    const int atom = working.shape().atoms - 1;
    working = apply_atom_unitary(working, atom, hadamard_matrix());
    working = faraday_reflect(working, photon_a, atom);
    working = faraday_reflect(working, photon_b, atom);
    working = apply_atom_unitary(working, atom, hadamard_matrix());
    const auto branches = measure_atom(working, atom);
    if (branches.size() != 1)
      throw std::invalid_argument(
          "parity checks are not deterministic; not a single-flip state");
    working = branches.front().post;
    ++checks;
    if (branches.front().outcome == AtomState::gR) ++same_polarization_checks;
    return branches.front().outcome;
  };

  int position = 0;
  if (parity_check(0, 1) == AtomState::gL) {
    // The flip sits on a_1 or a_2; one more check tells them apart. With
    // M = 2 the comparison partner is b_1, which always matches a_2 when
    // a_1 carries the flip.
    const int partner = M >= 3 ? 2 : M;  // a_3, or b_1 when M == 2
    position = parity_check(1, partner) == AtomState::gL ? 2 : 1;
  } else {
    for (int n = 2; n <= M - 1; ++n) {
      if (parity_check(n - 1, n) == AtomState::gL) {
        position = n + 1;
        break;
      }
    }
  }

  SparseState corrected = extract_photon_block(working, 0, 2 * M);
  if (position > 0) corrected = bit_flip(corrected, position - 1);
  // Each same-polarization reflection pair imprints a relative minus sign
  // between the two GHZ components; undo it from the recorded outcomes.
  if (same_polarization_checks % 2 == 1) corrected = phase_flip(corrected, 0);

  if (!equal_up_to_global_phase(
          corrected, logic_bell_state({BellKind::PhiPlus, M}), 1e-9))
    throw std::invalid_argument(
        "parity syndrome does not match a single bit flip");

  return {position, checks, std::move(corrected)};
}

std::vector<IterationRow> iterate_epp(double initial_fidelity, int rounds,
                                      int M) {
  require_fidelity(initial_fidelity);
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (M < 1) throw std::invalid_argument("M must be >= 1");

  std::vector<IterationRow> rows;
  double fidelity = initial_fidelity;
  double yield = 1.0;
  for (int round = 1; round <= rounds; ++round) {
    yield *= round_success_probability(fidelity) / 2.0;
    fidelity = purified_fidelity(fidelity);
    rows.push_back({round, fidelity, yield});
  }
  return rows;
}

std::vector<TrajectoryLeaf> enumerate_bitflip_trajectories(
    double fidelity, int M, const ErrorModel& model,
    const ReflectionModel& reflection) {
  require_fidelity(fidelity);
  const SparseState target = logic_bell_state({BellKind::PhiPlus, M});
  ProtocolEngine engine(build_wiring(M, Protocol::BitFlipEpp), reflection);

  std::vector<TrajectoryLeaf> leaves;
  engine.run(bitflip_combos(fidelity, M, model), [&](const LeafEvent& event) {
    TrajectoryLeaf leaf;
    leaf.combo = event.combo;
    leaf.probability = event.mixture_weight * event.record_probability;
    leaf.record_probability = event.record_probability;
    leaf.success = event.verdict == Verdict::Success;
    leaf.target_overlap =
        leaf.success ? overlap(target, event.conditional_post) : 0.0;
    leaves.push_back(leaf);
  });
  return leaves;
}

const char* to_string(Protocol protocol) {
  return protocol == Protocol::BitFlipEpp ? "bit-flip-epp"
                                          : "phase-flip-detect";
}

const char* to_string(Verdict verdict) {
  return verdict == Verdict::Success ? "success" : "fail";
}

std::vector<AtomState> parse_atom_pattern(std::string_view pattern) {
  if (pattern.size() % 2 != 0)
    throw std::invalid_argument("atom pattern must be gL/gR tokens");
  std::vector<AtomState> outcomes;
  outcomes.reserve(pattern.size() / 2);
  for (std::size_t i = 0; i < pattern.size(); i += 2) {
    const std::string_view token = pattern.substr(i, 2);
    if (token == "gL")
      outcomes.push_back(AtomState::gL);
    else if (token == "gR")
      outcomes.push_back(AtomState::gR);
    else
      throw std::invalid_argument("atom pattern must be gL/gR tokens");
  }
  return outcomes;
}

}  // namespace logicepp
