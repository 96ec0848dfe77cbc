#include "logicepp/report_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace logicepp {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::string json_dump(const OrderedJson& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_real(double value, int significant_digits) {
  // -0 and +0 must print identically.
  if (value == 0.0) value = 0.0;
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value,
                    std::chars_format::general, significant_digits);
  return std::string(buffer, result.ptr);
}

std::string report_to_json(const PurificationReport& report) {
  OrderedJson j;
  j["protocol"] = to_string(report.protocol);
  j["M"] = report.M;
  j["F"] = format_real(report.input_fidelity);
  j["success_probability"] = format_real(report.success_probability);
  j["output_fidelity"] = format_real(report.output_fidelity);
  j["branches"] = OrderedJson::array();
  for (const BranchRecord& branch : report.branches) {
    OrderedJson row;
    row["atoms"] = branch.atoms;
    row["photons"] = branch.photons;
    row["p"] = format_real(branch.probability);
    row["verdict"] = to_string(branch.verdict);
    row["recovery"] = branch.recovery;
    j["branches"].push_back(std::move(row));
  }
  return json_dump(j);
}

std::string state_to_json(const SparseState& state) {
  OrderedJson j;
  j["photons"] = state.shape().photons;
  j["atoms"] = state.shape().atoms;
  j["terms"] = OrderedJson::array();
  for (const auto& [ket, amp] : state.terms()) {
    OrderedJson term;
    term["basis"] = to_string(ket, state.shape());
    term["re"] = format_real(amp.real());
    term["im"] = format_real(amp.imag());
    j["terms"].push_back(std::move(term));
  }
  return json_dump(j);
}

SparseState state_from_json(const std::string& text) {
  const auto j = OrderedJson::parse(text);
  const RegisterShape shape{j.at("photons").get<int>(),
                            j.at("atoms").get<int>()};
  SparseState state(shape);
  for (const auto& term : j.at("terms")) {
    const std::string basis = term.at("basis").get<std::string>();
    const auto bar = basis.find('|');
    if (bar == std::string::npos)
      throw std::invalid_argument("basis string must contain '|'");
    const BasisKet ket =
        parse_basis(basis.substr(0, bar), basis.substr(bar + 1));
    const double re = std::stod(term.at("re").get<std::string>());
    const double im = std::stod(term.at("im").get<std::string>());
    state.accumulate(ket, Complex{re, im});
  }
  return state;
}

std::string monte_carlo_to_json(const MonteCarloResult& result,
                                const MonteCarloSpec& spec) {
  OrderedJson j;
  j["protocol"] = "bit-flip-epp";
  j["M"] = spec.M;
  j["F"] = format_real(spec.fidelity);
  j["trials"] = result.trials;
  j["seed"] = result.seed;
  j["rng"] = result.rng_id;
  j["success_rate"] = format_real(result.success_estimate);
  j["success_std_error"] = format_real(result.success_std_error);
  j["fidelity"] = format_real(result.fidelity_estimate);
  j["fidelity_std_error"] = format_real(result.fidelity_std_error);
  return json_dump(j);
}

std::string monte_carlo_to_csv(const MonteCarloResult& result,
                               const MonteCarloSpec& spec) {
  std::string out =
      "M,F,trials,seed,rng,success_rate,success_std_error,fidelity,"
      "fidelity_std_error\n";
  out += std::to_string(spec.M) + "," + format_real(spec.fidelity) + "," +
         std::to_string(result.trials) + "," + std::to_string(result.seed) +
         "," + result.rng_id + "," + format_real(result.success_estimate) +
         "," + format_real(result.success_std_error) + "," +
         format_real(result.fidelity_estimate) + "," +
         format_real(result.fidelity_std_error) + "\n";
  return out;
}

std::string sweep_to_csv(const SweepSpec& spec,
                         const std::vector<SweepRow>& rows) {
  std::string out = std::string(to_string(spec.variable)) +
                    ",output_fidelity,success_probability,status\n";
  for (const SweepRow& row : rows) {
    out += format_real(row.value) + ",";
    if (row.singular) {
      out += ",,singular\n";
    } else {
      out += format_real(row.output_fidelity) + "," +
             format_real(row.success_probability) + ",ok\n";
    }
  }
  return out;
}

std::string sweep_to_json(const SweepSpec& spec,
                          const std::vector<SweepRow>& rows) {
  OrderedJson j;
  j["variable"] = to_string(spec.variable);
  j["protocol"] = to_string(spec.protocol);
  j["M"] = spec.M;
  j["rows"] = OrderedJson::array();
  for (const SweepRow& row : rows) {
    OrderedJson r;
    r["value"] = format_real(row.value);
    r["status"] = row.singular ? "singular" : "ok";
    if (!row.singular) {
      r["output_fidelity"] = format_real(row.output_fidelity);
      r["success_probability"] = format_real(row.success_probability);
    }
    j["rows"].push_back(std::move(r));
  }
  return json_dump(j);
}

std::string iterations_to_csv(const std::vector<IterationRow>& rows) {
  std::string out = "round,fidelity,yield\n";
  for (const IterationRow& row : rows)
    out += std::to_string(row.round) + "," + format_real(row.fidelity) + "," +
           format_real(row.yield) + "\n";
  return out;
}

std::string iterations_to_json(const std::vector<IterationRow>& rows) {
  OrderedJson j = OrderedJson::array();
  for (const IterationRow& row : rows) {
    OrderedJson r;
    r["round"] = row.round;
    r["fidelity"] = format_real(row.fidelity);
    r["yield"] = format_real(row.yield);
    j.push_back(std::move(r));
  }
  return json_dump(j);
}

std::string reflection_to_csv(const std::vector<ReflectionRow>& rows) {
  std::string out =
      "detuning,re_r,im_r,abs_r,arg_r,re_r0,im_r0,abs_r0,arg_r0\n";
  for (const ReflectionRow& row : rows) {
    out += format_real(row.detuning) + "," + format_real(row.coupled.real()) +
           "," + format_real(row.coupled.imag()) + "," +
           format_real(std::abs(row.coupled)) + "," +
           format_real(std::arg(row.coupled)) + "," +
           format_real(row.empty.real()) + "," +
           format_real(row.empty.imag()) + "," +
           format_real(std::abs(row.empty)) + "," +
           format_real(std::arg(row.empty)) + "\n";
  }
  return out;
}

std::string reflection_to_json(const std::vector<ReflectionRow>& rows) {
  OrderedJson j = OrderedJson::array();
  for (const ReflectionRow& row : rows) {
    OrderedJson r;
    r["detuning"] = format_real(row.detuning);
    r["re_r"] = format_real(row.coupled.real());
    r["im_r"] = format_real(row.coupled.imag());
    r["abs_r"] = format_real(std::abs(row.coupled));
    r["arg_r"] = format_real(std::arg(row.coupled));
    r["re_r0"] = format_real(row.empty.real());
    r["im_r0"] = format_real(row.empty.imag());
    r["abs_r0"] = format_real(std::abs(row.empty));
    r["arg_r0"] = format_real(std::arg(row.empty));
    j.push_back(std::move(r));
  }
  return json_dump(j);
}

}  // namespace logicepp
