#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "logicepp/ensemble.hpp"
#include "logicepp/faraday.hpp"
#include "logicepp/logic_states.hpp"

namespace logicepp {

/// Raised when a state of affairs the ideal protocol rules out is observed,
/// e.g. the two atoms of a cavity group disagreeing. Signals a wiring or
/// numerics bug, not bad user input.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Protocol { BitFlipEpp, PhaseFlipDetect };

enum class Verdict { Success, Fail };

/// One cavity group: each listed photon reflects off every listed atom, one
/// photon in a cavity at a time.
struct WiringGroup {
  std::vector<int> photons;
  std::vector<int> atoms;
};

/// Photon-to-cavity routing for a protocol instance. Photon slots follow the
/// fixed layout: copy 1 holds logic qubits A on [0, M) and B on [M, 2M);
/// copy 2 holds C on [2M, 3M) and D on [3M, 4M).
struct WiringPlan {
  Protocol protocol = Protocol::BitFlipEpp;
  int M = 2;
  std::vector<WiringGroup> groups;
  int alice_group_count = 0;  // groups [0, alice_group_count) are the A/C side
  int atom_count = 0;
  int photon_count = 0;
};

/// Builds the plan: photon pairs (2k, 2k+1) of each logic qubit team up with
/// the matching copy-2 pair and two atoms; odd M adds a two-photon group for
/// the last slot. Bit-flip uses 2M atoms (even M) or 2(M+1) (odd M);
/// phase-flip detection uses a single two-atom group on photons (a_M, b_1).
WiringPlan build_wiring(int M, Protocol protocol);

/// Success iff the XOR of group outcomes on Alice's side equals the XOR on
/// Bob's side (gR = 1); the two atoms of a group must agree. In strict mode
/// a disagreeing group throws ProtocolViolation (it cannot happen in the
/// ideal simulation); otherwise it classifies as Fail, which is how the
/// published pattern lists treat anything outside them.
Verdict classify_verdict(std::span<const AtomState> outcomes,
                         const WiringPlan& plan, bool strict = true);

/// Reflection backend for the cavity interactions.
struct ReflectionModel {
  bool numeric = false;
  CavityParams coupled = CavityParams::working_point();
  CavityParams empty = CavityParams::working_point().decoupled();
  bool keep_modulus = false;

  static ReflectionModel ideal() { return {}; }
  static ReflectionModel with_params(const CavityParams& coupled,
                                     bool keep_modulus = false) {
    return {true, coupled, coupled.decoupled(), keep_modulus};
  }
};

/// One measurement record of a protocol run, aggregated over the input
/// mixture branches.
struct BranchRecord {
  std::string atoms;    ///< atom outcomes as gL/gR tokens, e.g. "gLgLgRgR"
  std::string photons;  ///< copy-2 detections over {L,R}; empty on fail
  double probability = 0.0;
  Verdict verdict = Verdict::Fail;
  std::vector<int> recovery;  ///< copy-1 photon slots to bit-flip
  Ensemble pre_recovery;      ///< conditional copy-1 mixture, before recovery
  Ensemble post_recovery;     ///< after recovery; what the record delivers
};

struct PurificationReport {
  Protocol protocol = Protocol::BitFlipEpp;
  int M = 2;
  double input_fidelity = 0.0;
  LogicBellKind target{BellKind::PhiPlus, 2};
  double success_probability = 0.0;
  double output_fidelity = 0.0;
  std::vector<BranchRecord> branches;
  Ensemble output_ensemble;  ///< over copy-1 photons, success branches only
};

/// Runs the two-copy bit-flip purification round by exact branch
/// enumeration. Model kind must be LogicBitFlip or PhysicalPhaseFlip.
PurificationReport run_bitflip_epp(double fidelity, int M,
                                   const ErrorModel& model,
                                   const ReflectionModel& reflection =
                                       ReflectionModel::ideal());

/// Runs the deterministic logic phase-flip detection and correction.
PurificationReport run_phaseflip_correction(double fidelity, int M,
                                            const ReflectionModel& reflection =
                                                ReflectionModel::ideal());

/// Recovery operations for one success record, derived by rerunning the
/// clean branch of the pipeline along the given record: either no operation
/// or a bit flip on every photon of logic qubit B. Throws
/// std::invalid_argument on fail records or unreachable outcomes.
std::vector<int> recovery_for_branch(const std::string& atom_outcomes,
                                     const std::string& photon_outcomes,
                                     int M);

struct LocateResult {
  int position = 0;  ///< 1-based flipped photon in logic qubit A; 0 = none
  int atoms_used = 0;
  SparseState corrected;
};

/// Locates a single physical bit flip in logic qubit A of a Phi+_M state by
/// sequential two-photon parity checks, then corrects it. The state must
/// carry at most one flip; anything else is detected and reported as
/// std::invalid_argument.
LocateResult locate_physical_bitflip(const SparseState& state, int M);

struct IterationRow {
  int round = 0;
  double fidelity = 0.0;
  double yield = 0.0;  ///< surviving pair fraction, includes the 1/2 per round
};

/// Iterates the closed-form fidelity map F -> F^2/(F^2 + (1-F)^2); the yield
/// multiplies each round's success probability and the pair-consumption 1/2.
std::vector<IterationRow> iterate_epp(double initial_fidelity, int rounds,
                                      int M);

/// Flat trajectory table for stochastic sampling: one leaf per (input
/// mixture branch, measurement record) with its joint probability.
struct TrajectoryLeaf {
  int combo = 0;  ///< input combination index, copy-1 branch * 2 + copy-2
  double probability = 0.0;   ///< joint: mixture weight x record probability
  double record_probability = 0.0;  ///< conditional on the combination
  bool success = false;
  double target_overlap = 0.0;  ///< |<Phi+_M|post>|^2 after recovery
};

std::vector<TrajectoryLeaf> enumerate_bitflip_trajectories(
    double fidelity, int M, const ErrorModel& model,
    const ReflectionModel& reflection = ReflectionModel::ideal());

const char* to_string(Protocol protocol);
const char* to_string(Verdict verdict);

/// Parses "gLgR..." into atom outcomes. Throws on malformed input.
std::vector<AtomState> parse_atom_pattern(std::string_view pattern);

}  // namespace logicepp
