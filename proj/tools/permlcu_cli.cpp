// Copyright 2026 The permlcu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// permlcu: schedule | simulate | cost | verify | dd
//
// Exit codes: 0 ok, 1 tolerance failure, 2 input error.
// Option precedence: flags, then PERMLCU_* environment variables, then defaults.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "permlcu/acceptance.hpp"
#include "permlcu/cost.hpp"
#include "permlcu/dd.hpp"
#include "permlcu/lcu.hpp"
#include "permlcu/oracle.hpp"
#include "permlcu/pham.hpp"
#include "permlcu/sched.hpp"

namespace {

using namespace permlcu;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

PermExpHamiltonian load_hamiltonian(const std::string& path, bool merge) {
  PermExpHamiltonian h = from_pauli_spec(parse_json(read_source(path), path));
  return merge ? merge_disjoint_exp_terms(h) : h;
}

GammaMode parse_mode(const std::string& s) {
  if (s == "exact") return GammaMode::exact;
  if (s == "uniform") return GammaMode::uniform;
  throw InputError("--mode must be exact or uniform");
}

void emit(const json& j, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) throw InputError("cannot write " + output);
  out << j.dump(2) << "\n";
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

// Bitstring (character i = qubit i), "plus", or "random".
CVector initial_state(const std::string& spec, std::size_t dim, int n, std::uint64_t seed) {
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim));
  if (spec == "plus") {
    psi.setConstant(Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    return psi;
  }
  if (spec == "random") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (Eigen::Index z = 0; z < psi.size(); ++z) psi(z) = Complex(g(rng), g(rng));
    return psi / psi.norm();
  }
  if (static_cast<int>(spec.size()) != n || spec.find_first_not_of("01") != std::string::npos) {
    throw InputError("--initial must be plus, random, or a bitstring of length " + std::to_string(n));
  }
  BasisState z = 0;
  for (int i = 0; i < n; ++i) {
    if (spec[static_cast<std::size_t>(i)] == '1') z |= BasisState{1} << i;
  }
  psi(static_cast<Eigen::Index>(z)) = 1.0;
  return psi;
}

struct Common {
  std::string hamiltonian = "-";
  double time = 1.0;
  double epsilon = 1e-3;
  std::string mode = "exact";
  bool no_merge = false;
  std::string output;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("hamiltonian", c.hamiltonian, "HamiltonianSpec JSON file, - for stdin")
      ->envname("PERMLCU_HAMILTONIAN")
      ->capture_default_str();
  cmd->add_option("--time,-T", c.time, "Total evolution time")->envname("PERMLCU_TIME")->capture_default_str();
  cmd->add_option("--epsilon,-e", c.epsilon, "Error budget")->envname("PERMLCU_EPSILON")->capture_default_str();
  cmd->add_option("--mode", c.mode, "Gamma bound: exact or uniform")->envname("PERMLCU_MODE")->capture_default_str();
  cmd->add_flag("--no-merge", c.no_merge, "Keep disjoint exponential terms separate");
  cmd->add_option("--output,-o", c.output, "Output file (default stdout)")->envname("PERMLCU_OUTPUT");
}

void check_time_eps(const Common& c) {
  if (!(c.time >= 0.0) || !std::isfinite(c.time)) throw InputError("--time must be finite and >= 0");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw InputError("--epsilon must be in (0, 1)");
}

int cmd_schedule(const Common& c) {
  check_time_eps(c);
  const PermExpHamiltonian h = load_hamiltonian(c.hamiltonian, !c.no_merge);
  const Schedule s = build_schedule(h, c.time, c.epsilon, parse_mode(c.mode));
  std::ostringstream csv;
  csv << std::setprecision(17) << "w,t_w,dt_w,gamma_tw\n";
  for (int w = 0; w < s.r; ++w) {
    const Step& st = s.steps[static_cast<std::size_t>(w)];
    csv << w << "," << st.t << "," << st.dt << "," << st.gamma << "\n";
  }
  const json summary = {{"r", s.r},
                        {"Q", s.Q},
                        {"l1_like", s.l1_like},
                        {"lambda", s.lambda},
                        {"final_step_clamped", s.final_step_clamped},
                        {"mode", to_string(s.mode)}};
  if (c.output.empty() || c.output == "-") {
    std::cout << csv.str() << summary.dump() << "\n";
  } else {
    std::ofstream out(c.output);
    if (!out) throw InputError("cannot write " + c.output);
    out << csv.str();
    std::cout << summary.dump() << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const Common& c, const std::string& initial, std::uint64_t seed, bool verify) {
  check_time_eps(c);
  const PermExpHamiltonian h = load_hamiltonian(c.hamiltonian, !c.no_merge);
  if (h.num_qubits() > 8) throw Error(Errc::unsupported_size, "simulate supports n <= 8");
  const CVector psi0 = initial_state(initial, h.dim(), h.num_qubits(), seed);
  RunOptions opts;
  opts.mode = parse_mode(c.mode);
  const RunResult run = run_full(h, c.time, c.epsilon, psi0, opts);

  json amps = json::array();
  for (Eigen::Index z = 0; z < run.final_state.size(); ++z) amps.push_back(complex_json(run.final_state(z)));
  json segs = json::array();
  for (const auto& sr : run.segments) {
    segs.push_back({{"w", sr.w}, {"t", sr.t}, {"dt", sr.dt}, {"s", sr.s}, {"s_nominal", sr.s_nominal},
                    {"clamped", sr.clamped}, {"residual", sr.residual}, {"deficit", sr.deficit},
                    {"terms", sr.terms}});
  }
  json report = {{"n", h.num_qubits()},
                 {"time", c.time},
                 {"epsilon", c.epsilon},
                 {"mode", to_string(opts.mode)},
                 {"r", run.schedule.r},
                 {"Q", run.schedule.Q},
                 {"final_state", amps},
                 {"segments", segs},
                 {"max_residual", run.max_residual},
                 {"total_deficit", run.total_deficit}};
  int code = kExitOk;
  if (verify) {
    const CVector ref = oracle::propagate_state(h, psi0, 0.0, c.time);
    const double fidelity = std::abs(ref.dot(run.final_state));
    const double distance = (ref - run.final_state).norm();
    const bool pass = distance <= c.epsilon;
    report["verify"] = {{"fidelity", fidelity}, {"distance", distance}, {"pass", pass}};
    if (!pass) code = kExitTolerance;
  }
  emit(report, c.output);
  return code;
}

struct CostArgs {
  std::int64_t M = -1, K = -1, r = -1, Q = -1, k_od = -1, L = -1, d = -1, n = -1;
  std::int64_t C_D = 1, C_dH0 = 1, C_Lambda = 1;
};

int cmd_cost(const Common& c, const CostArgs& a, bool from_hamiltonian) {
  CostParams p;
  json h0 = nullptr;
  if (from_hamiltonian) {
    check_time_eps(c);
    const PermExpHamiltonian h = load_hamiltonian(c.hamiltonian, !c.no_merge);
    Schedule s;  // T = 0: no segments, only the H0 circuit
    if (c.time > 0.0) s = build_schedule(h, c.time, c.epsilon, parse_mode(c.mode));
    p = cost_params(h, s);
    std::vector<std::int64_t> weights;
    for (const auto& zt : h.h0_terms()) weights.push_back(popcount(zt.z_mask));
    const H0Circuit circ = h0_circuit_count(p.L, p.d, weights);
    h0 = {{"cnots", circ.cnots}, {"rotations", circ.rotations}, {"ancillas", circ.ancillas},
          {"total", circ.total()}};
  }
  auto set = [](std::int64_t v, std::int64_t& field) {
    if (v >= 0) field = v;
  };
  set(a.M, p.M);
  set(a.K, p.K);
  set(a.r, p.r);
  set(a.Q, p.Q);
  set(a.k_od, p.k_od);
  set(a.L, p.L);
  set(a.d, p.d);
  set(a.n, p.n);
  p.C_D = a.C_D;
  p.C_dH0 = a.C_dH0;
  p.C_Lambda = a.C_Lambda;
  if (p.C_D < 0 || p.C_dH0 < 0 || p.C_Lambda < 0) throw InputError("unit costs must be >= 0");
  const CostReport rep = gate_cost(p);
  json out = {{"params", to_json(p)}, {"report", to_json(rep)}, {"qubits", qubit_cost(p)}};
  if (!h0.is_null()) out["h0_circuit"] = h0;
  emit(out, c.output);
  return kExitOk;
}

int cmd_dd(const std::string& source, const std::string& inline_json) {
  const json j = inline_json.empty() ? parse_json(read_source(source), source) : parse_json(inline_json, "--inputs");
  if (!j.is_array() || j.empty()) throw InputError("dd input must be a non-empty list of [re, im] pairs");
  std::vector<Complex> xs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InputError("dd input entries must be [re, im] pairs");
    }
    xs.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  const Complex v = dd::exp_dd(xs);
  const json out = {{"q", xs.size() - 1}, {"value", complex_json(v)}, {"bound", dd::exp_dd_bound(xs)}};
  std::cout << std::setprecision(17) << out.dump() << "\n";
  return kExitOk;
}

int cmd_verify(const std::vector<int>& only, std::uint64_t seed, const std::string& output) {
  acceptance::Options opts;
  opts.only = only;
  opts.seed = seed;
  for (int id : only) {
    if (id < 1 || id > acceptance::kNumCriteria) throw InputError("criterion ids are 1..10");
  }
  std::vector<acceptance::CriterionResult> results;
  for (int id = 1; id <= acceptance::kNumCriteria; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    results.push_back(acceptance::run_criterion(id, seed));
    std::cerr << acceptance::format_line(results.back()) << "\n";
  }
  const json report = acceptance::to_json(results);
  emit(report, output);
  return report["pass"].get<bool>() ? kExitOk : kExitTolerance;
}

int classify(const Error& e) {
  switch (e.code()) {
    case Errc::schema:
    case Errc::invalid_argument:
    case Errc::unsupported_size:
    case Errc::ill_posed:
      return kExitInput;
    default:
      return kExitTolerance;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyson-series LCU simulation of permutation-expanded Hamiltonians"};
  app.require_subcommand(1);

  Common common;
  std::string initial = "plus";
  std::uint64_t seed = 1;
  bool verify = false;
  CostArgs cost_args;
  std::string dd_source = "-";
  std::string dd_inline;
  std::vector<int> only;
  std::string verify_output;

  auto* schedule = app.add_subcommand("schedule", "Time partition as CSV plus a JSON summary");
  add_common(schedule, common);

  auto* simulate = app.add_subcommand("simulate", "Run the LCU statevector simulation");
  add_common(simulate, common);
  simulate->add_option("--initial", initial, "Bitstring, plus, or random")
      ->envname("PERMLCU_INITIAL")
      ->capture_default_str();
  simulate->add_option("--seed", seed, "Seed for --initial random")->envname("PERMLCU_SEED")->capture_default_str();
  simulate->add_flag("--verify", verify, "Compare against the ODE oracle");

  auto* cost = app.add_subcommand("cost", "Unit-gate and qubit counts");
  add_common(cost, common);
  cost->add_option("--M", cost_args.M, "Override M");
  cost->add_option("--K", cost_args.K, "Override K");
  cost->add_option("--r", cost_args.r, "Override r");
  cost->add_option("--Q", cost_args.Q, "Override Q");
  cost->add_option("--kod", cost_args.k_od, "Override k_od");
  cost->add_option("--L", cost_args.L, "Override L");
  cost->add_option("--d", cost_args.d, "Override d");
  cost->add_option("--n", cost_args.n, "Override n");
  cost->add_option("--cd", cost_args.C_D, "C_D unit cost")->capture_default_str();
  cost->add_option("--cdh0", cost_args.C_dH0, "C_dH0 unit cost")->capture_default_str();
  cost->add_option("--clambda", cost_args.C_Lambda, "C_Lambda unit cost")->capture_default_str();
  bool params_only = false;
  cost->add_flag("--params-only", params_only, "Use only the override flags, no Hamiltonian");

  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite; JSON report");
  verify_cmd->add_option("--only", only, "Criterion ids");
  verify_cmd->add_option("--seed", seed, "Suite seed")->envname("PERMLCU_SEED")->default_val(20260415);
  verify_cmd->add_option("--output,-o", verify_output, "Output file (default stdout)")->envname("PERMLCU_OUTPUT");

  auto* ddc = app.add_subcommand("dd", "Divided difference of exp at a JSON list of [re, im]");
  ddc->add_option("file", dd_source, "JSON file, - for stdin")->capture_default_str();
  ddc->add_option("--inputs,-i", dd_inline, "Inline JSON list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (schedule->parsed()) return cmd_schedule(common);
    if (simulate->parsed()) return cmd_simulate(common, initial, seed, verify);
    if (cost->parsed()) return cmd_cost(common, cost_args, !params_only);
    if (verify_cmd->parsed()) return cmd_verify(only, seed, verify_output);
    if (ddc->parsed()) return cmd_dd(dd_source, dd_inline);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  }
  return kExitInput;
}
