// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "procmat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "procmat/ocbgame.hpp"
#include "procmat/pmfile.hpp"
#include "procmat/reduction.hpp"

namespace procmat::cli {

namespace {

using nlohmann::json;

struct Options {
  double tol = kDefaultTol;
  long long seed = 0;
  bool pretty = false;
  std::string oracle = "both";
  std::string eta = "0";
  int samples = 100;
  std::string file;
  std::string label;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PMFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pm_file(buf.str());
}

json spec_json(const PartySpec& spec) {
  json parties = json::array();
  for (const auto& p : spec.parties()) parties.push_back({{"d_in", p.d_in}, {"d_out", p.d_out}});
  return parties;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json constraint_json(const ConstraintRecord& c) {
  json j = {{"description", c.description}, {"lhs", finite_or_null(c.lhs)}, {"expected", c.expected}};
  if (!c.implied_word.empty()) {
    j["implied_word"] = c.implied_label();
    j["implied_coefficient"] = c.implied_coefficient;
  }
  return j;
}

json reduction_json(const ReductionReport& r) {
  json violations = json::array();
  for (const auto& c : r.violations) violations.push_back(constraint_json(c));
  json j = {{"method", r.method},
            {"certified", r.certified},
            {"residual", r.residual},
            {"constraints_checked", r.constraints_checked},
            {"violations", std::move(violations)},
            {"hermitian", r.hermitian},
            {"psd_ok", r.psd_ok},
            {"trace", r.trace},
            {"trace_ok", r.trace_ok},
            {"w1_psd", r.w1_psd},
            {"w1_trace", r.w1_trace}};
  if (r.method == "constructive-multiqubit") j["extraction_crosscheck"] = r.extraction_crosscheck;
  j["w1"] = r.w1 ? matrix_to_json(*r.w1) : json(nullptr);
  return j;
}

json search_json(const ocb::CausalSearchResult& s) {
  return {{"order", std::string(ocb::order_name(s.order))},
          {"message_alphabet", s.message_alphabet},
          {"value", s.value},
          {"strategies", s.strategies},
          {"best_strategy", s.best.describe()}};
}

// Human-readable form: one "path: value" line per leaf; probabilities clamped.
void pretty_print(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      pretty_print(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    if (prefix.size() >= 7 && prefix.compare(prefix.size() - 7, 7, "entries") == 0) {
      out << prefix << ": [" << j.size() << " entries]\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) pretty_print(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    const auto leaf = prefix.substr(prefix.rfind('.') == std::string::npos ? 0 : prefix.rfind('.') + 1);
    if (j.is_number_float() && leaf.rfind("p_", 0) == 0) {
      out << prefix << ": " << std::setprecision(12) << display_probability(j.get<double>()) << "\n";
    } else {
      out << prefix << ": " << j.dump() << "\n";
    }
  }
}

int emit(const json& report, const Options& opt, std::ostream& out) {
  if (opt.pretty) {
    pretty_print(report, "", out);
  } else {
    out << report.dump(2) << "\n";
  }
  const std::string status = report.at("status");
  return status == "fail" ? kExitFail : kExitPass;
}

json base_report(const std::string& command, json inputs, const Options& opt) {
  return {{"command", command}, {"inputs", std::move(inputs)}, {"tolerances", {{"tol", opt.tol}}}};
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& opt, std::ostream& out) {
  const PMFile f = load(opt.file);
  const ProcessMatrix& w = f.process;
  const ValidityReport v = validate(w, opt.tol);

  json violated = json::array();
  for (const auto& c : v.violated_constraints)
    violated.push_back({{"label", c.label}, {"value", c.value}, {"expected", c.expected}, {"residual", c.residual}});

  // Seeded spot check: random two-outcome CPTP instruments per party.
  json sampled = nullptr;
  if (v.hermitian && opt.samples > 0) {
    const auto& parties = w.spec().parties();
    double min_p = 1.0, max_p = 0.0, worst_sum = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
      std::vector<Instrument> inst;
      for (std::size_t p = 0; p < parties.size(); ++p)
        inst.push_back(random_instrument(parties[p], 2, std::max(2, (parties[p].d_in + 1) / (2 * parties[p].d_out) + 1),
                                         static_cast<std::uint64_t>(opt.seed) * 1000003ULL + i * 131ULL + p));
      std::vector<std::vector<CJOperator>> cjs(parties.size());
      for (std::size_t p = 0; p < parties.size(); ++p)
        for (const auto& b : inst[p].branches()) cjs[p].push_back(cj_of_kraus(b));
      const std::size_t combos = std::size_t{1} << parties.size();
      double sum = 0.0;
      for (std::size_t k = 0; k < combos; ++k) {
        std::vector<CJOperator> pick;
        for (std::size_t p = 0; p < parties.size(); ++p) pick.push_back(cjs[p][(k >> (parties.size() - 1 - p)) & 1]);
        const double pr = trace_rule(w, pick).real();
        min_p = std::min(min_p, pr);
        max_p = std::max(max_p, pr);
        sum += pr;
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
    sampled = {{"instruments", opt.samples},
               {"seed", opt.seed},
               {"min_probability", min_p},
               {"max_probability", max_p},
               {"worst_sum_error", worst_sum},
               {"ok", min_p >= -opt.tol && max_p <= 1.0 + opt.tol && worst_sum <= opt.tol}};
  }

  json report = base_report("validate", {{"file", opt.file}, {"parties", spec_json(w.spec())}}, opt);
  if (f.label) report["inputs"]["label"] = *f.label;
  report["results"] = {{"hermitian", v.hermitian},
                       {"psd_ok", v.psd_ok},
                       {"min_eigenvalue", finite_or_null(v.min_eigenvalue)},
                       {"trace", v.trace},
                       {"expected_trace", v.expected_trace},
                       {"trace_ok", v.trace_ok},
                       {"normalization_ok", v.normalization_ok},
                       {"constraints_checked", v.constraints_checked},
                       {"worst_residual", v.worst_residual},
                       {"violated_constraints", std::move(violated)},
                       {"sampled_check", std::move(sampled)}};
  report["status"] = v.ok() ? "pass" : "fail";
  return emit(report, opt, out);
}

int cmd_reduce(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.oracle != "both" && opt.oracle != "constructive" && opt.oracle != "projection")
    throw UsageError("--oracle must be constructive, projection or both");
  const PMFile f = load(opt.file);
  const ProcessMatrix& w = f.process;
  if (!w.is_single_party()) throw UsageError("reduce needs a single-party process matrix");

  const DimensionPair dims = w.spec().parties().front();
  const int n = log2_exact(dims.d_in);
  const bool qubits = dims.d_in == dims.d_out && n >= 1 && n <= 4;

  json results = json::object();
  std::vector<bool> certified;
  if (opt.oracle != "projection") {
    if (!qubits) {
      if (opt.oracle == "constructive")
        throw UsageError("constructive reduction needs d_in == d_out == 2^n with 1 <= n <= 4");
      err << "note: dimensions are not n-qubit; running the projection oracle only\n";
      results["constructive"] = nullptr;
    } else {
      const ReductionReport r = n == 1 ? reduce_single_qubit(w, opt.tol) : reduce_multiqubit(w, opt.tol);
      certified.push_back(r.certified);
      results["constructive"] = reduction_json(r);
    }
  }
  if (opt.oracle != "constructive") {
    const ReductionReport r = projection_oracle(w, opt.tol);
    certified.push_back(r.certified);
    results["projection"] = reduction_json(r);
  }
  const bool agree = std::adjacent_find(certified.begin(), certified.end(), std::not_equal_to<>()) == certified.end();
  const bool all_certified = std::all_of(certified.begin(), certified.end(), [](bool b) { return b; });
  results["agree"] = agree;
  results["certified"] = agree && all_certified;

  json report = base_report("reduce", {{"file", opt.file}, {"oracle", opt.oracle}, {"parties", spec_json(w.spec())}}, opt);
  report["results"] = std::move(results);
  report["status"] = agree && all_certified ? "pass" : "fail";
  return emit(report, opt, out);
}

int cmd_ocb_game(const Options& opt, std::ostream& out) {
  const Vector eta = ocb::eta_state(opt.eta);
  const ProcessMatrix w = opt.file.empty() ? ocb::build_w_ocb() : load(opt.file).process;
  const ocb::GameResult g = ocb::evaluate_game(w, eta);
  const double bound = ocb::causal_bound_bruteforce().value;

  json report = base_report("ocb-game", {{"file", opt.file.empty() ? json("builtin:W_OCB") : json(opt.file)},
                                         {"eta", opt.eta}},
                            opt);
  report["results"] = {{"p_guess_b", g.p_guess_b},
                       {"p_guess_a", g.p_guess_a},
                       {"p_ocb", g.p_ocb},
                       {"p_ocb_quantum_reference", ocb::quantum_value()},
                       {"causal_bound", bound},
                       {"margin", g.p_ocb - bound}};
  report["status"] = g.p_ocb > bound + opt.tol ? "violated" : "satisfied";
  return emit(report, opt, out);
}

int cmd_causal_bound(const Options& opt, std::ostream& out) {
  const ocb::CausalBound cb = ocb::causal_bound_bruteforce();
  const double none = std::max(ocb::search_causal(ocb::Order::AliceFirst, 1).value,
                               ocb::search_causal(ocb::Order::BobFirst, 1).value);
  json report = base_report("causal-bound", json::object(), opt);
  report["results"] = {{"causal_bound", cb.value},
                       {"alice_first", search_json(cb.alice_first)},
                       {"bob_first", search_json(cb.bob_first)},
                       {"bob_first_two_bit_message", search_json(cb.bob_first_wide)},
                       {"zero_communication", none}};
  report["status"] = "value";
  return emit(report, opt, out);
}

int cmd_decompose(const Options& opt, std::ostream& out) {
  const PMFile f = load(opt.file);
  const PauliDecomposition d = pauli_decompose(f.process);
  const int nf = 2 * d.qubits_per_side();
  json coeffs = json::object();
  for (std::size_t idx = 0; idx < d.size(); ++idx)
    if (std::abs(d[idx]) > opt.tol) coeffs[pauli_label(PauliDecomposition::word_at(idx, nf))] = d[idx];
  json report = base_report("decompose", {{"file", opt.file}}, opt);
  report["results"] = {{"qubits_per_side", d.qubits_per_side()},
                       {"coefficients", std::move(coeffs)},
                       {"reconstruction_error", max_abs(d.reconstruct() - f.process.matrix())}};
  report["status"] = "value";
  return emit(report, opt, out);
}

int cmd_emit_ocb(const Options& opt, std::ostream& out) {
  const std::string text = serialize_pm_file(ocb::build_w_ocb(), opt.label.empty() ? std::optional<std::string>()
                                                                                 : std::optional(opt.label));
  if (opt.file == "-") {
    out << text;
    return kExitPass;
  }
  std::ofstream file(opt.file, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + opt.file + "'");
  file << text;
  json report = base_report("emit-ocb", {{"file", opt.file}}, opt);
  report["results"] = {{"path", opt.file}, {"rows", 16}, {"cols", 16}};
  report["status"] = "pass";
  return emit(report, opt, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Process-matrix toolkit: validity, single-party reduction, causal game", "pmtool"};
  app.require_subcommand(1);
  app.add_option("--tol", opt.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_flag("--pretty", opt.pretty, "human-readable output");

  auto* validate_cmd = app.add_subcommand("validate", "check positivity, normalization and trace of W");
  validate_cmd->add_option("file", opt.file, "process matrix (.pm.json)")->required();
  validate_cmd->add_option("--samples", opt.samples, "random instruments for the spot check")
      ->check(CLI::NonNegativeNumber);

  auto* reduce_cmd = app.add_subcommand("reduce", "certify W = W1 (x) I for a single party");
  reduce_cmd->add_option("file", opt.file, "process matrix (.pm.json)")->required();
  reduce_cmd->add_option("--oracle", opt.oracle, "constructive|projection|both");

  auto* game_cmd = app.add_subcommand("ocb-game", "evaluate the two-party causal game");
  game_cmd->add_option("file", opt.file, "process matrix (default: built-in W_OCB)");
  game_cmd->add_option("--eta", opt.eta, "Bob's prepared state for b'=1: 0|1|plus|iplus");

  auto* bound_cmd = app.add_subcommand("causal-bound", "enumerate classical causal strategies");

  auto* decompose_cmd = app.add_subcommand("decompose", "Pauli coefficients of a single-party qubit W");
  decompose_cmd->add_option("file", opt.file, "process matrix (.pm.json)")->required();

  auto* emit_cmd = app.add_subcommand("emit-ocb", "write W_OCB as a .pm.json file");
  emit_cmd->add_option("file", opt.file, "output path, or - for stdout")->required();
  emit_cmd->add_option("--label", opt.label, "label stored in the file");

  for (auto* sub : {validate_cmd, reduce_cmd, game_cmd, bound_cmd, decompose_cmd, emit_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(opt, out);
    if (*reduce_cmd) return cmd_reduce(opt, out, err);
    if (*game_cmd) return cmd_ocb_game(opt, out);
    if (*bound_cmd) return cmd_causal_bound(opt, out);
    if (*decompose_cmd) return cmd_decompose(opt, out);
    if (*emit_cmd) return cmd_emit_ocb(opt, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace procmat::cli
