// Copyright 2026 The aqclab Authors
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

// aqclab command-line front end. Every subcommand writes comma-separated
// summaries with a header row into --out; run logs are JSON lines.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "aqclab/adiabatic/engine.hpp"
#include "aqclab/adiabatic/path.hpp"
#include "aqclab/adiabatic/zeno.hpp"
#include "aqclab/anneal/quantum.hpp"
#include "aqclab/anneal/simulated.hpp"
#include "aqclab/bench/harness.hpp"
#include "aqclab/bench/metrics.hpp"
#include "aqclab/clock/circuit.hpp"
#include "aqclab/clock/history.hpp"
#include "aqclab/embed/embedding.hpp"
#include "aqclab/embed/graph.hpp"
#include "aqclab/problem/generators.hpp"
#include "aqclab/problem/serialize.hpp"

namespace fs = std::filesystem;
using namespace aqc;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out = ".";
  int threads = 1;
};

fs::path out_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out);
  return fs::path(g.out) / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write " + p.string());
  os << text;
  std::cout << "wrote " << p.string() << "\n";
}

// Files are taken as given; directories contribute their *.json files in name order.
std::vector<std::string> expand_instances(const std::vector<std::string>& args) {
  std::vector<std::string> files;
  for (const auto& a : args) {
    if (fs::is_directory(a)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(a))
        if (e.path().extension() == ".json") found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(a);
    }
  }
  if (files.empty()) throw InvalidArgument("no instance files given");
  return files;
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

struct SAOptions {
  std::string schedule = "linear";
  SAConfig cfg;
  void attach(CLI::App* app) {
    app->add_option("--sa-schedule", schedule, "paper-log|linear|geometric|constant")->capture_default_str();
    app->add_option("--sweeps", cfg.sweeps, "Monte Carlo sweeps per run")->capture_default_str();
    app->add_option("--sa-k", cfg.k, "paper-log constant k")->capture_default_str();
    app->add_option("--t-start", cfg.t_start, "paper-log time offset")->capture_default_str();
    app->add_option("--T-initial", cfg.T_initial, "initial temperature")->capture_default_str();
    app->add_option("--T-final", cfg.T_final, "final temperature")->capture_default_str();
  }
  SAConfig get() const {
    SAConfig c = cfg;
    c.schedule = temperature_schedule_from_string(schedule);
    return c;
  }
};

struct QAOptions {
  std::string schedule = "linear";
  QAConfig cfg;
  void attach(CLI::App* app) {
    app->add_option("--qa-schedule", schedule, "paper-power|linear|zero")->capture_default_str();
    app->add_option("--qa-tau", cfg.tau, "anneal duration")->capture_default_str();
    app->add_option("--qa-dt", cfg.dt, "integrator step")->capture_default_str();
    app->add_option("--qa-gamma", cfg.gamma, "paper-power exponent")->capture_default_str();
    app->add_option("--gamma0", cfg.gamma0, "initial field strength")->capture_default_str();
  }
  QAConfig get() const {
    QAConfig c = cfg;
    c.schedule = gamma_schedule_from_string(schedule);
    return c;
  }
};

InterpolationPath instance_path(const IsingInstance& inst) {
  return InterpolationPath::linear(driver_hamiltonian(inst).scaled(-1.0), problem_hamiltonian(inst));
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string family = "spin-glass";
  int n = 8;
  int count = 1;
  double edge_p = 0.5;
  std::string couplings = "pm1";
  double epsilon = 0.0;
  double width = 1.0;
  double height = 0.0;
  std::string prefix;
};

void run_gen(const Globals& g, const GenArgs& a) {
  if (a.count < 1) throw InvalidArgument("--count must be >= 1");
  std::ostringstream index;
  index << "file,family,n,seed,hash\n";
  const std::string prefix = a.prefix.empty() ? a.family : a.prefix;
  for (int k = 0; k < a.count; ++k) {
    const std::uint64_t seed = derive_seed(g.seed, {static_cast<std::uint64_t>(k)});
    InstanceDocument doc;
    if (a.family == "spin-glass") {
      Rng rng(derive_seed(seed, {0}));
      const auto edges = a.edge_p >= 1.0 ? complete_edges(a.n) : random_edges(a.n, a.edge_p, rng);
      CouplingDistribution dist;
      if (a.couplings == "uniform") dist = CouplingDistribution::uniform(-1.0, 1.0);
      else if (a.couplings != "pm1") throw InvalidArgument("--couplings must be pm1 or uniform");
      doc.instance = gen_spin_glass(a.n, edges, dist, derive_seed(seed, {1}));
      doc.seed = seed;
      doc.params["edge_p"] = a.edge_p;
      doc.params["couplings"] = a.couplings;
    } else if (a.family == "ferro-chain") {
      doc.instance = ferromagnetic_chain(a.n);
      doc.seed = seed;
    } else if (a.family == "exact-cover") {
      doc = document_for(gen_exact_cover(a.n, seed), seed);
    } else if (a.family == "van-dam" || a.family == "hamming-spike") {
      HammingParams p;
      p.n = a.n;
      p.kind = a.family == "van-dam" ? HammingKind::VanDam : HammingKind::Spike;
      p.epsilon = a.epsilon;
      p.width = a.width;
      p.height = a.height;
      doc = document_for(p, seed);
    } else {
      throw InvalidArgument("unknown family '" + a.family + "'");
    }
    char name[64];
    std::snprintf(name, sizeof name, "%s_%03d.json", prefix.c_str(), k);
    const auto path = out_path(g, name);
    write_instance_file(path.string(), doc);
    index << name << ',' << doc.family << ',' << doc.instance.n << ',' << doc.seed << ',' << instance_hash(doc)
          << '\n';
  }
  write_text(out_path(g, prefix + "_index.csv"), index.str());
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string method = "sa";
  std::vector<std::string> instances;
  int runs = 100;
  std::string time = "cost";
  SAOptions sa;
  QAOptions qa;
  double tau = 0.0;
  double tau_factor = 10.0;
  double dt = 0.01;
  int grid = 101;
  int samples = 0;
  int zeno_L = 20;
  double dwell = 0.0;
};

void run_solve(const Globals& g, SolveArgs a) {
  const auto files = expand_instances(a.instances);
  std::ostringstream summary, log;
  if (a.method == "sa" || a.method == "qa") {
    std::vector<BenchInstance> ens;
    for (const auto& f : files) ens.push_back({stem(f), document_cost(read_instance_file(f))});
    SolverSpec spec;
    spec.name = a.method;
    spec.kind = a.method == "sa" ? SolverKind::SA : SolverKind::QA;
    spec.sa = a.sa.get();
    spec.qa = a.qa.get();
    BenchConfig cfg;
    cfg.runs = a.runs;
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    cfg.time = a.time == "wall" ? TimeModel::Wall : TimeModel::CostUnits;
    const auto out = run_benchmark(ens, spec, cfg);
    summary << "instance,method,runs,successes,s,ground_energy,best_energy,mean_energy\n";
    for (std::size_t i = 0; i < ens.size(); ++i) {
      double best = std::numeric_limits<double>::infinity(), mean = 0.0;
      for (int r = 0; r < a.runs; ++r) {
        const auto& rec = out.records[i * static_cast<std::size_t>(a.runs) + static_cast<std::size_t>(r)];
        best = std::min(best, rec.best_energy);
        mean += rec.best_energy / a.runs;
      }
      const auto& o = out.report.instances[i];
      summary << o.id << ',' << a.method << ',' << o.runs << ',' << o.successes << ',' << format_double(o.s()) << ','
              << format_double(out.ground[i].energy) << ',' << format_double(best) << ',' << format_double(mean)
              << '\n';
    }
    for (const auto& r : out.records) log << to_json(r).dump() << '\n';
    write_text(out_path(g, "runs_" + a.method + ".jsonl"), log.str());
  } else if (a.method == "adiabatic") {
    summary << "instance,method,tau,dt,estimate,min_gap,success,steps\n";
    for (const auto& f : files) {
      const auto doc = read_instance_file(f);
      const auto path = instance_path(doc.instance);
      const auto prof = gap_profile(path, a.grid);
      const double est = adiabatic_time_estimate(prof);
      const double tau = a.tau > 0.0 ? a.tau : a.tau_factor * est;
      AdiabaticOptions opts;
      opts.samples = a.samples;
      const auto res = run_adiabatic(path, tau, a.dt, opts);
      summary << stem(f) << ",adiabatic," << format_double(tau) << ',' << format_double(a.dt) << ','
              << format_double(est) << ',' << format_double(prof.min_gap()) << ',' << format_double(res.success)
              << ',' << res.steps << '\n';
      if (a.samples > 0) write_text(out_path(g, "trace_" + stem(f) + ".csv"), res.trace.to_csv());
    }
  } else if (a.method == "zeno") {
    summary << "instance,method,L,runs,mean_dwell,min_gap,mean_fidelity,cost_bound\n";
    for (const auto& f : files) {
      const auto doc = read_instance_file(f);
      ZenoSchedule sched;
      sched.hamiltonians =
          zeno_interpolation(driver_hamiltonian(doc.instance).scaled(-1.0), problem_hamiltonian(doc.instance), a.zeno_L);
      const StateVector psi0 = driver_ground_state(doc.instance);
      // Mean dwell defaults to 10/gap, found with a throwaway zero-dwell pass.
      double dwell = a.dwell;
      double min_gap = 0.0;
      {
        ZenoSchedule probe = sched;
        probe.dwell = DwellDistribution::fixed(0.0);
        probe.min_dwell_factor = 0.0;
        Rng rng(0);
        min_gap = zeno_run(probe, psi0, rng).min_gap;
      }
      if (!(dwell > 0.0)) dwell = 10.0 / min_gap;
      sched.dwell = DwellDistribution::exponential(dwell);
      double fid = 0.0;
      for (int r = 0; r < a.runs; ++r) {
        Rng rng(derive_seed(g.seed, {static_cast<std::uint64_t>(r)}));
        fid += zeno_run(sched, psi0, rng).fidelity / a.runs;
      }
      summary << stem(f) << ",zeno," << a.zeno_L << ',' << a.runs << ',' << format_double(dwell) << ','
              << format_double(min_gap) << ',' << format_double(fid) << ','
              << format_double(zeno_cost(a.zeno_L, sched.p, min_gap)) << '\n';
    }
  } else {
    throw InvalidArgument("unknown method '" + a.method + "'");
  }
  std::cout << summary.str();
  write_text(out_path(g, "solve_" + a.method + ".csv"), summary.str());
}

// ---------------------------------------------------------------- gap

struct GapArgs {
  std::string instance;
  std::string circuit;
  int grid = 101;
};

void run_gap(const Globals& g, const GapArgs& a) {
  if (a.instance.empty() == a.circuit.empty()) throw InvalidArgument("give exactly one of --instance, --circuit");
  const InterpolationPath path = a.instance.empty() ? compile_to_path(read_circuit_file(a.circuit))
                                                    : instance_path(read_instance_file(a.instance).instance);
  const auto prof = gap_profile(path, a.grid);
  const std::string name = stem(a.instance.empty() ? a.circuit : a.instance);
  write_text(out_path(g, "gap_" + name + ".csv"), prof.to_csv());
  std::ostringstream s;
  s << "source,grid,min_gap,s_at_min,max_m,estimate\n";
  s << name << ',' << a.grid << ',' << format_double(prof.min_gap()) << ','
    << format_double(prof.s[prof.argmin_gap()]) << ',' << format_double(prof.max_m()) << ',';
  try {
    s << format_double(adiabatic_time_estimate(prof));
  } catch (const DegeneracyError&) {
    s << "inf";
  }
  s << '\n';
  std::cout << s.str();
  write_text(out_path(g, "gap_summary_" + name + ".csv"), s.str());
}

// ---------------------------------------------------------------- compile-circuit

struct CompileArgs {
  std::string circuit;
  std::uint64_t input = 0;
  int pad = 0;
  bool run = false;
  double tau_factor = 10.0;
  double dt = 0.01;
  int grid = 101;
};

void run_compile(const Globals& g, const CompileArgs& a) {
  QuantumCircuit circ = read_circuit_file(a.circuit);
  if (a.pad > 0) circ = pad_identities(circ, a.pad);
  const int n = circ.n_qubits();
  const StateVector input = StateVector::qubit_basis(n, a.input);
  const auto hist = history_vector(circ, input);
  const auto ham = clock_hamiltonian(circ, true);
  const HermitianOperator H = ham.total();
  const double residual = H.apply(hist.eta.amplitudes()).norm();
  const RMatrix T = reduced_toeplitz(circ, input);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(T);
  const double gap = es.eigenvalues()[1] - es.eigenvalues()[0];
  const int L = circ.length();

  std::ostringstream out_state;
  out_state << "basis,re,im,prob\n";
  const CVector& fin = hist.alphas.back();
  for (Index b = 0; b < fin.size(); ++b)
    out_state << b << ',' << format_double(fin[b].real()) << ',' << format_double(fin[b].imag()) << ','
              << format_double(std::norm(fin[b])) << '\n';
  const std::string name = stem(a.circuit);
  write_text(out_path(g, "circuit_output_" + name + ".csv"), out_state.str());

  std::ostringstream s;
  s << "circuit,qubits,L,dim,history_residual,toeplitz_gap,predicted_gap,estimate,tau,success\n";
  s << name << ',' << n << ',' << L << ',' << ham.dim() << ',' << format_double(residual) << ','
    << format_double(gap) << ',' << format_double(1.0 - std::cos(M_PI / (L + 1))) << ',';
  if (a.run) {
    const auto path = compile_to_path(circ);
    const double est = adiabatic_time_estimate(gap_profile(path, a.grid));
    const double tau = a.tau_factor * est;
    const double dt = std::max(a.dt, tau / 20000.0);
    const auto res = run_adiabatic(path, tau, dt);
    s << format_double(est) << ',' << format_double(tau) << ',' << format_double(res.success) << '\n';
  } else {
    s << ",,\n";
  }
  std::cout << s.str();
  write_text(out_path(g, "compile_" + name + ".csv"), s.str());
}

// ---------------------------------------------------------------- embed

struct EmbedArgs {
  std::string graph;
  std::string instance;
  std::string validate;
  int rows = 8;
  int cols = 8;
  EmbedOptions opts;
  double chain_strength = 0.0;
};

void run_embed(const Globals& g, EmbedArgs a) {
  if (a.graph.empty() == a.instance.empty()) throw InvalidArgument("give exactly one of --graph, --instance");
  std::optional<InstanceDocument> doc;
  Graph logical;
  if (!a.graph.empty()) {
    logical = read_edge_list_file(a.graph);
  } else {
    doc = read_instance_file(a.instance);
    logical = Graph::from_instance(doc->instance);
  }
  const ChimeraGraph hw(a.rows, a.cols);
  const std::string name = stem(a.graph.empty() ? a.instance : a.graph);

  if (!a.validate.empty()) {
    const auto v = validate_embedding(read_chain_list_file(a.validate), logical, hw);
    std::cout << v.to_text() << "\n";
    if (!v.ok) throw InvalidArgument("embedding is invalid");
    return;
  }
  a.opts.threads = g.threads;
  const auto res = find_embedding(logical, hw, g.seed, a.opts);
  std::ostringstream s;
  s << "source,hardware,success,logical,physical,max_chain,size_guidance,restart,passes\n";
  s << name << ",chimera-" << a.rows << 'x' << a.cols << ',' << (res.success ? 1 : 0) << ',' << logical.size() << ','
    << res.used_vertices << ',' << res.embedding.max_chain_length() << ',' << res.size_guidance << ',' << res.restart
    << ',' << res.passes << '\n';
  std::cout << s.str();
  write_text(out_path(g, "embed_" + name + ".csv"), s.str());
  if (!res.success) {
    std::cerr << res.diagnostics << "\n";
    throw Error("embedding failed");
  }
  write_text(out_path(g, "chains_" + name + ".txt"), write_chain_list(res.embedding));
  if (doc) {
    std::optional<double> strength;
    if (a.chain_strength > 0.0) strength = a.chain_strength;
    const auto e = embed_instance(doc->instance, res.embedding, hw, strength);
    InstanceDocument phys;
    phys.family = "ising";
    phys.seed = doc->seed;
    phys.instance = e.physical;
    phys.params["embedded_from"] = name;
    phys.params["chain_strength"] = e.chain_strength;
    phys.params["hardware_vertex"] = e.hardware_vertex;
    write_instance_file(out_path(g, "embedded_" + name + ".json").string(), phys);
  }
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<std::string> instances;
  std::string solver = "sa";
  std::string name;
  int runs = 100;
  std::string time = "cost";
  double hamming_gamma = 2.0;
  int bins = 10;
  SAOptions sa;
  QAOptions qa;
};

void run_bench(const Globals& g, const BenchArgs& a) {
  const auto files = expand_instances(a.instances);
  std::vector<BenchInstance> ens;
  for (const auto& f : files) ens.push_back({stem(f), document_cost(read_instance_file(f))});
  SolverSpec spec;
  spec.name = a.name.empty() ? a.solver : a.name;
  if (a.solver == "sa") spec.kind = SolverKind::SA;
  else if (a.solver == "qa") spec.kind = SolverKind::QA;
  else throw InvalidArgument("--solver must be sa or qa");
  spec.sa = a.sa.get();
  spec.qa = a.qa.get();
  BenchConfig cfg;
  cfg.runs = a.runs;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.keep_configs = true;
  if (a.time == "wall") cfg.time = TimeModel::Wall;
  else if (a.time != "cost") throw InvalidArgument("--time must be cost or wall");
  const auto out = run_benchmark(ens, spec, cfg);

  const std::string tag = spec.name;
  write_text(out_path(g, "report_" + tag + ".csv"), out.report.to_csv());
  std::ostringstream log;
  for (const auto& r : out.records) log << to_json(r).dump() << '\n';
  write_text(out_path(g, "runs_" + tag + ".jsonl"), log.str());
  const auto hist = success_histogram(out.report.success_values(), a.bins);
  write_text(out_path(g, "histogram_" + tag + ".csv"), hist.to_csv());
  std::vector<HammingInput> hin;
  for (std::size_t i = 0; i < ens.size(); ++i) hin.push_back({ens[i].id, out.configs[i], out.ground[i].minimizers});
  const auto ham = hamming_tunneling_diagnostic(hin, a.hamming_gamma);
  write_text(out_path(g, "hamming_" + tag + ".csv"), ham.rows_csv());
  write_text(out_path(g, "hamming_summary_" + tag + ".csv"), ham.summary_csv());
  std::cout << tag << ": " << hist.summary() << "\n";
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string a;
  std::string b;
  double quantile = 0.5;
  double p = 0.99;
  int bins = 10;
};

void run_report(const Globals& g, const ReportArgs& a) {
  const auto A = SolverReport::read_csv_file(a.a);
  const auto B = SolverReport::read_csv_file(a.b);
  const auto r = speedup_metrics(A, B, a.quantile, a.p);
  const std::string tag = A.solver + "_vs_" + B.solver;
  write_text(out_path(g, "speedup_" + tag + ".csv"), r.to_csv());
  write_text(out_path(g, "quotients_" + tag + ".csv"), r.quotients_csv());
  std::cout << r.to_csv();
  for (const auto* rep : {&A, &B}) {
    const auto h = success_histogram(rep->success_values(), a.bins);
    std::cout << rep->solver << ": " << h.summary() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aqclab: adiabatic and annealing experiments"};
  app.set_config("--config", "", "key = value configuration file (TOML or INI)");
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.require_subcommand(1);
  app.fallthrough();

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "generate problem instances");
  c_gen->add_option("--family", gen.family, "spin-glass|ferro-chain|exact-cover|van-dam|hamming-spike")
      ->capture_default_str();
  c_gen->add_option("--n", gen.n, "number of spins")->capture_default_str();
  c_gen->add_option("--count", gen.count, "number of instances")->capture_default_str();
  c_gen->add_option("--edge-p", gen.edge_p, "spin-glass edge probability (>= 1 gives the complete graph)")
      ->capture_default_str();
  c_gen->add_option("--couplings", gen.couplings, "pm1|uniform")->capture_default_str();
  c_gen->add_option("--epsilon", gen.epsilon, "van-dam epsilon")->capture_default_str();
  c_gen->add_option("--width", gen.width, "hamming-spike width")->capture_default_str();
  c_gen->add_option("--height", gen.height, "hamming-spike height")->capture_default_str();
  c_gen->add_option("--prefix", gen.prefix, "file name prefix (defaults to the family)");

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "solve instances with one method");
  c_solve->add_option("method", solve.method, "sa|qa|adiabatic|zeno")->required();
  c_solve->add_option("--instance", solve.instances, "instance files or directories")->required();
  c_solve->add_option("--runs", solve.runs, "runs per instance (sa, qa, zeno)")->capture_default_str();
  c_solve->add_option("--time", solve.time, "cost|wall time per run")->capture_default_str();
  solve.sa.attach(c_solve);
  solve.qa.attach(c_solve);
  c_solve->add_option("--tau", solve.tau, "adiabatic duration (0: tau-factor x estimate)")->capture_default_str();
  c_solve->add_option("--tau-factor", solve.tau_factor, "multiple of the gap estimate")->capture_default_str();
  c_solve->add_option("--dt", solve.dt, "adiabatic step")->capture_default_str();
  c_solve->add_option("--grid", solve.grid, "gap profile grid")->capture_default_str();
  c_solve->add_option("--samples", solve.samples, "trace samples (0: no trace)")->capture_default_str();
  c_solve->add_option("--zeno-L", solve.zeno_L, "Zeno steps")->capture_default_str();
  c_solve->add_option("--dwell", solve.dwell, "mean Zeno dwell (0: 10/gap)")->capture_default_str();

  GapArgs gap;
  auto* c_gap = app.add_subcommand("gap", "gap profile along the interpolation path");
  c_gap->add_option("--instance", gap.instance, "instance file");
  c_gap->add_option("--circuit", gap.circuit, "circuit file");
  c_gap->add_option("--grid", gap.grid, "grid points")->capture_default_str();

  CompileArgs comp;
  auto* c_comp = app.add_subcommand("compile-circuit", "clock Hamiltonian of a circuit");
  c_comp->add_option("circuit", comp.circuit, "circuit file")->required();
  c_comp->add_option("--input", comp.input, "input basis state bits")->capture_default_str();
  c_comp->add_option("--pad", comp.pad, "append identity gates")->capture_default_str();
  c_comp->add_flag("--run", comp.run, "run the adiabatic evolution");
  c_comp->add_option("--tau-factor", comp.tau_factor, "multiple of the gap estimate")->capture_default_str();
  c_comp->add_option("--dt", comp.dt, "integrator step")->capture_default_str();
  c_comp->add_option("--grid", comp.grid, "gap profile grid")->capture_default_str();

  EmbedArgs emb;
  auto* c_emb = app.add_subcommand("embed", "minor-embed into Chimera");
  c_emb->add_option("--graph", emb.graph, "edge-list file");
  c_emb->add_option("--instance", emb.instance, "instance file");
  c_emb->add_option("--rows", emb.rows, "Chimera rows")->capture_default_str();
  c_emb->add_option("--cols", emb.cols, "Chimera columns")->capture_default_str();
  c_emb->add_option("--restarts", emb.opts.max_restarts, "restarts")->capture_default_str();
  c_emb->add_option("--passes", emb.opts.max_passes, "rip-up passes per restart")->capture_default_str();
  c_emb->add_option("--chain-strength", emb.chain_strength, "chain coupling (0: 2 max|J|)")->capture_default_str();
  c_emb->add_option("--validate", emb.validate, "check an existing chain-list file instead of embedding");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "success-probability ensemble");
  c_bench->add_option("--instance", bench.instances, "instance files or directories")->required();
  c_bench->add_option("--solver", bench.solver, "sa|qa")->capture_default_str();
  c_bench->add_option("--name", bench.name, "report name (defaults to the solver)");
  c_bench->add_option("--runs", bench.runs, "runs per instance")->capture_default_str();
  c_bench->add_option("--time", bench.time, "cost|wall time per run")->capture_default_str();
  c_bench->add_option("--hamming-gamma", bench.hamming_gamma, "tunnelling weight base")->capture_default_str();
  c_bench->add_option("--bins", bench.bins, "histogram bins")->capture_default_str();
  bench.sa.attach(c_bench);
  bench.qa.attach(c_bench);

  ReportArgs rep;
  auto* c_rep = app.add_subcommand("report", "speed-up and histogram summary of two reports");
  c_rep->add_option("--a", rep.a, "report CSV of solver A")->required();
  c_rep->add_option("--b", rep.b, "report CSV of solver B")->required();
  c_rep->add_option("--quantile", rep.quantile, "hardness quantile")->capture_default_str();
  c_rep->add_option("--p", rep.p, "target probability")->capture_default_str();
  c_rep->add_option("--bins", rep.bins, "histogram bins")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*c_gen) run_gen(g, gen);
    else if (*c_solve) run_solve(g, solve);
    else if (*c_gap) run_gap(g, gap);
    else if (*c_comp) run_compile(g, comp);
    else if (*c_emb) run_embed(g, emb);
    else if (*c_bench) run_bench(g, bench);
    else if (*c_rep) run_report(g, rep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
