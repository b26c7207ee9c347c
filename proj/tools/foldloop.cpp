#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "foldloop/config.hpp"
#include "foldloop/costs.hpp"
#include "foldloop/errors.hpp"
#include "foldloop/expr.hpp"
#include "foldloop/factory.hpp"
#include "foldloop/layout.hpp"
#include "foldloop/loopsim.hpp"
#include "foldloop/protocols.hpp"
#include "foldloop/surface_code.hpp"

using namespace foldloop;
using nlohmann::json;

namespace {

enum ExitCode {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kBadConfig = 3,
  kBadFixture = 4,
  kBadRequest = 5,
  kRuntime = 6,
};

struct Output {
  bool as_json = false;
  json doc;
  std::ostringstream text;
  bool pass = true;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    pass = pass && ok;
    doc["checks"].push_back({{"check", name}, {"pass", ok}, {"detail", detail}});
    text << (ok ? "PASS  " : "FAIL  ") << name;
    if (!detail.empty()) text << "  (" << detail << ")";
    text << "\n";
  }
};

json exact(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_double(r)}}; }

json expr_json(const LinearExpr& e, const SymbolValues& values) {
  json v;
  for (const auto& [name, k] : e.terms())
    if (values.count(name)) v[name] = to_string(values.at(name));
  return {{"expr", e.str()}, {"values", v}, {"ns", exact(e.evaluate(values))}};
}

json schedule_json(const TimedSchedule& s) {
  json events = json::array();
  for (const auto& e : s.events())
    events.push_back({{"start", to_string(e.start)},
                      {"duration", to_string(e.duration)},
                      {"action", e.action},
                      {"loop", e.loop},
                      {"tokens", e.tokens}});
  return {{"events", events}, {"makespan_ns", exact(s.makespan())}, {"shuttle_ns", exact(s.shuttle_time())}};
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("not an integer list: " + text);
    out.push_back(v);
  }
  return out;
}

void run_verify(Output& out, const Config& cfg, int d, const std::string& gate) {
  auto results = verify_protocols(d, gate, cfg.seed);
  for (const auto& r : results) out.check(r.check, r.pass, "expected " + r.expected + ", observed " + r.observed);
}

void run_cycle_time(Output& out, const Config& cfg, int n) {
  const TimingParams& p = cfg.params;
  SymbolValues v = symbol_values(p);
  LinearExpr e = cycle_time_expr();
  out.text << "T_cyc(2)     " << e.str(v) << "\n";
  out.doc["t_cyc_2"] = expr_json(e, v);

  auto embedding = embed_stack({build_patch(3, PatchKind::kFolded)}, p);
  Rational simulated = simulate_cycle(embedding, p).makespan();
  out.text << "simulated    " << format_ns(simulated) << "\n";
  out.doc["simulated_ns"] = exact(simulated);
  out.check("closed form equals event simulation", simulated == e.evaluate(v));

  Rational load = Rational(n, p.meas_devices) * p.t_meas;
  Rational star = effective_cycle_time(n, p);
  out.text << "T_cyc*(" << n << ")" << std::string(n < 10 ? 5 : 4, ' ') << "ceil_us(max(T_cyc(2), " << n << "/"
           << p.meas_devices << "·T_meas) + slack) = ceil_us(max(" << to_string(e.evaluate(v)) << ", "
           << to_string(load) << ") + " << to_string(p.slack) << ") = " << format_ns(star) << "\n";
  out.doc["t_cyc_star"] = {{"n", n},
                           {"expr", "ceil_us(max(T_cyc(2), n/m·T_meas) + slack)"},
                           {"measurement_load_ns", exact(load)},
                           {"slack_ns", exact(p.slack)},
                           {"ns", exact(star)}};
}

void run_gate_times(Output& out, const Config& cfg, int n, int d) {
  const TimingParams& p = cfg.params;
  out.text << "n = " << n << ", d = " << d << "\n";
  for (Architecture arch : {Architecture::kPipelinedFolded, Architecture::kPipelinedRotated, Architecture::kStandard,
                            Architecture::kInterloop}) {
    for (CostGate gate : {CostGate::kCycle, CostGate::kS, CostGate::kH, CostGate::kCnot, CostGate::kSwap,
                          CostGate::kSwapMove}) {
      std::string label = to_string(arch) + " " + to_string(gate);
      try {
        GateTime t = gate_time(gate, arch, n, d, p);
        out.text << label << std::string(label.size() < 32 ? 32 - label.size() : 1, ' ') << t.str() << "\n";
        json entry = expr_json(t.expr, t.values);
        entry["architecture"] = to_string(arch);
        entry["gate"] = to_string(gate);
        out.doc["gates"].push_back(entry);
      } catch (const UnsupportedCombination&) {
      }
    }
  }
  LinearExpr rw = rearrange_worst(n);
  out.text << "rearrange worst case (n=" << n << ")   " << rw.str(symbol_values(p)) << "\n";
  out.doc["rearrange_worst"] = expr_json(rw, symbol_values(p));
}

void run_simulate(Output& out, const Config& cfg, const std::map<std::string, std::string>& opt) {
  const TimingParams& p = cfg.params;
  const std::string protocol = opt.at("protocol");
  int n = std::stoi(opt.at("n"));
  Rational offset = parse_rational(opt.at("offset"));
  TimedSchedule schedule;
  if (protocol == "cycle") {
    schedule = simulate_cycle(embed_stack({build_patch(3, PatchKind::kFolded)}, p), p);
    Rational closed = cycle_time(p);
    out.check("makespan equals 27/8·T_loop + 2·T_1q + 4·T_2q + T_meas", schedule.makespan() == closed,
              format_ns(closed));
  } else if (protocol == "swap") {
    std::map<std::string, IntraLoopGate> gates = {
        {"cnot", IntraLoopGate::kCnot}, {"cz", IntraLoopGate::kCz}, {"swap", IntraLoopGate::kSwap}};
    if (!gates.count(opt.at("gate"))) throw std::invalid_argument("unknown gate " + opt.at("gate"));
    SwapOptions so{opt.at("physical") == "1", parse_rational(opt.at("resync"))};
    schedule = swap_protocol(LoopState::evenly_spaced(n, offset), std::stoi(opt.at("a")), std::stoi(opt.at("b")),
                             gates.at(opt.at("gate")), p, so)
                   .schedule;
  } else if (protocol == "rearrange") {
    auto target = parse_ints(opt.at("target"));
    if (target.empty()) throw std::invalid_argument("rearrange needs --target");
    auto strategy = opt.at("strategy") == "optimized" ? RearrangeStrategy::kOptimized : RearrangeStrategy::kScheme;
    auto run = rearrange(LoopState::evenly_spaced(static_cast<int>(target.size()), offset), target, p, strategy);
    schedule = run.schedule;
    LinearExpr bound = rearrange_worst(static_cast<int>(target.size()));
    out.text << "bound        " << bound.str(symbol_values(p)) << "\n";
  } else if (protocol == "cnot-stack") {
    schedule = cnot_stack(n, std::stoi(opt.at("i")), std::stoi(opt.at("j")), offset, p).schedule;
  } else if (protocol == "pipeline") {
    int rounds = std::stoi(opt.at("rounds"));
    auto rows = pipeline_model(n, p, rounds);
    out.text << "round  completion            average\n";
    for (const auto& r : rows) {
      std::string c = format_ns(r.completion);
      out.text << std::string(r.round < 10 ? 4 : r.round < 100 ? 3 : 2, ' ') << r.round << "   " << c
               << std::string(c.size() < 22 ? 22 - c.size() : 1, ' ') << format_ns(r.average) << "\n";
      out.doc["rounds"].push_back(
          {{"round", r.round}, {"completion_ns", exact(r.completion)}, {"average_ns", exact(r.average)}});
    }
    Rational limit = std::max(cycle_time(p), Rational(n, p.meas_devices) * p.t_meas);
    out.text << "limit        max(T_cyc(2), n/m·T_meas) = " << format_ns(limit) << "\n";
    out.doc["limit_ns"] = exact(limit);
    return;
  } else {
    throw std::invalid_argument("unknown protocol " + protocol);
  }
  schedule.check_exclusive();
  out.text << schedule.table();
  out.text << "makespan     " << format_ns(schedule.makespan()) << "\n";
  out.text << "shuttle      " << format_ns(schedule.shuttle_time()) << " = "
           << to_string(schedule.shuttle_time() / p.t_loop) << "·T_loop\n";
  out.doc["schedule"] = schedule_json(schedule);
}

void run_worst_case(Output& out, const Config& cfg, const std::string& name, int n, int points,
                    const std::string& strategy_name) {
  const TimingParams& p = cfg.params;
  SearchProtocol protocol = parse_search_protocol(name);
  if (points == 0) points = 8 * n;
  auto strategy = strategy_name == "scheme" ? RearrangeStrategy::kScheme : RearrangeStrategy::kOptimized;
  WorstCase w = worst_case_search(protocol, n, points, p, strategy);
  std::ostringstream witness;
  for (std::size_t k = 0; k < w.witness.size(); ++k) witness << (k ? "," : "") << w.witness[k];
  out.text << "protocol     " << to_string(w.protocol) << "\n";
  out.text << "n            " << w.n << " (" << w.points << " lattice points per lap, " << w.configurations
           << " configurations)\n";
  out.text << "worst case   " << to_string(w.shuttle) << "·T_loop shuttle, makespan " << format_ns(w.makespan) << "\n";
  out.text << "witness      offset " << to_string(w.offset) << ", " << witness.str() << "\n";
  out.doc["result"] = {{"protocol", to_string(w.protocol)}, {"n", w.n},
                       {"points", w.points},                {"configurations", w.configurations},
                       {"shuttle_t_loop", to_string(w.shuttle)}, {"makespan_ns", exact(w.makespan)},
                       {"offset", to_string(w.offset)},     {"witness", w.witness}};
  SymbolValues v = symbol_values(p);
  switch (protocol) {
    case SearchProtocol::kSwap: {
      LinearExpr closed = swap_time_expr();
      out.text << "closed form  " << closed.str(v) << "\n";
      out.check("search maximum equals 5/4·T_loop + T_2q", w.makespan == closed.evaluate(v));
      break;
    }
    case SearchProtocol::kCnotStack: {
      LinearExpr closed = cnot_time_expr(n);
      out.text << "closed form  " << closed.str(v) << "\n";
      out.check("search maximum equals T_CNOT(" + std::to_string(n) + ")", w.makespan == closed.evaluate(v));
      break;
    }
    case SearchProtocol::kRearrange: {
      LinearExpr closed = rearrange_worst(n);
      out.text << "closed form  " << closed.str(v) << "\n";
      out.check("search maximum within the rearrangement bound", w.makespan <= closed.evaluate(v),
                to_string(w.shuttle) + " vs " + to_string(closed.evaluate(v) / p.t_loop));
      break;
    }
  }
}

void run_factory(Output& out, const Config& cfg, const std::string& variant_name, int d, bool verify,
                 bool dump_circuit) {
  FactoryVariant variant = parse_factory_variant(variant_name);
  FactoryReport report = factory_runtime(variant, cfg.params, d);
  out.text << report.summary();
  out.doc["report"] = report.to_json();
  out.check("runtime expression re-evaluates exactly", report.expanded.evaluate(report.values) == report.runtime);
  FactoryCircuit circuit = ccz_factory_spec(variant);
  if (dump_circuit) out.text << circuit.circuit().str();
  if (verify) {
    FactoryVerification v = verify_factory(circuit);
    out.doc["verification"] = {{"pass", v.pass},
                               {"branches", v.branches},
                               {"min_fidelity", v.min_fidelity},
                               {"min_postselection", v.min_postselection},
                               {"message", v.message}};
    out.check("CCZ output on every measurement branch", v.pass, v.message);
  }
}

void run_table1(Output& out, const Config& cfg, int d) {
  CostReport report = table1(cfg.params, d);
  out.text << report.table();
  out.doc["report"] = report.to_json();
}

void run_layout(Output& out, const std::string& path, int max_swaps) {
  LayoutFixture fx = load_fixture(path);
  out.text << "fixture      " << fx.name << "\n" << fx.layout.render();
  for (const auto& r : fx.requests) out.text << "request      " << to_string(r) << "\n";
  Routing routing = routable(fx.layout, fx.requests);
  out.doc["fixture"] = fx.name;
  out.doc["routing"] = to_json(routing);
  out.text << "routable     " << (routing.feasible ? "yes" : "no") << " (" << routing.nodes << " nodes)\n";
  if (!routing.feasible) out.text << "certificate  " << routing.certificate << "\n";
  std::string problem = check_routing(fx.layout, fx.requests, routing);
  out.check("witness paths re-verified", problem.empty(), problem);
  if (fx.expect.routable)
    out.check(std::string("routable = ") + (*fx.expect.routable ? "yes" : "no"), routing.feasible == *fx.expect.routable);

  int budget = max_swaps >= 0 ? max_swaps : fx.expect.max_swaps;
  if (fx.expect.swaps || max_swaps >= 0 || !routing.feasible) {
    SwapPlan plan = plan_with_swaps(fx.layout, fx.requests, budget);
    out.doc["plan"] = to_json(plan);
    if (plan.feasible) {
      out.text << "swap plan    " << plan.swaps.size() << " swaps (" << plan.states << " layouts visited)\n";
      for (const auto& s : plan.swaps)
        out.text << "  patch " << s.patch << " layer " << s.from.layer << " -> " << s.to.layer << " at (" << s.from.row
                 << "," << s.from.col << ")\n";
      out.text << plan.final_layout.render();
      std::string bad = check_routing(plan.final_layout, fx.requests, plan.routing);
      out.check("plan routing re-verified", bad.empty(), bad);
    } else {
      out.text << "swap plan    none within " << budget << " swaps (" << plan.states << " layouts visited)\n";
    }
    if (fx.expect.swaps)
      out.check("minimal plan uses " + std::to_string(*fx.expect.swaps) + " swaps",
                plan.feasible && static_cast<int>(plan.swaps.size()) == *fx.expect.swaps);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timing, resource and protocol checks for looped-pipeline folded surface codes", "foldloop"};
  app.require_subcommand(1);
  std::string config_path;
  Output out;
  app.add_option("--config", config_path, "JSON parameter file");
  app.add_flag("--json", out.as_json, "Emit a JSON report instead of text");

  int d = 3;
  std::string gate = "all";
  auto* verify = app.add_subcommand("verify", "Check the logical action of the transversal protocols");
  verify->add_option("--d", d, "Code distance")->check(CLI::PositiveNumber);
  verify->add_option("--gate", gate, "S, H, CNOT, SWAP or all");

  int n = 2;
  auto* cycle = app.add_subcommand("cycle-time", "Code cycle time and effective cycle time");
  cycle->add_option("--n", n, "Qubits per loop");

  int gn = 16, gd = 25;
  auto* gates = app.add_subcommand("gate-times", "Logical gate times on every architecture");
  gates->add_option("--n", gn, "Qubits per loop");
  gates->add_option("--d", gd, "Code distance");

  std::map<std::string, std::string> sim = {{"protocol", "cycle"}, {"n", "2"}, {"offset", "0"}, {"a", "0"},
                                            {"b", "1"},           {"gate", "cnot"}, {"physical", "0"},
                                            {"resync", "0"},      {"target", ""}, {"strategy", "scheme"},
                                            {"i", "0"},           {"j", "1"},     {"rounds", "50"}};
  bool physical = false;
  auto* simulate = app.add_subcommand("simulate", "Event trace of a loop protocol");
  simulate->add_option("--protocol", sim["protocol"], "cycle, swap, rearrange, cnot-stack or pipeline");
  simulate->add_option("--n", sim["n"], "Qubits per loop");
  simulate->add_option("--offset", sim["offset"], "Position of token 0 (or CNOT phase) as a fraction of the lap");
  simulate->add_option("--a", sim["a"], "swap: first token");
  simulate->add_option("--b", sim["b"], "swap: second token");
  simulate->add_option("--gate", sim["gate"], "swap: cnot, cz or swap");
  simulate->add_flag("--physical-swap", physical, "swap: exchange positions instead of gating");
  simulate->add_option("--resync", sim["resync"], "swap: re-synchronization dwell in ns");
  simulate->add_option("--target", sim["target"], "rearrange: comma-separated target order");
  simulate->add_option("--strategy", sim["strategy"], "rearrange: scheme or optimized");
  simulate->add_option("--i", sim["i"], "cnot-stack: control patch");
  simulate->add_option("--j", sim["j"], "cnot-stack: target patch");
  simulate->add_option("--rounds", sim["rounds"], "pipeline: rounds");

  std::string wc_protocol = "swap", wc_strategy = "optimized";
  int wc_n = 8, wc_points = 0;
  auto* worst = app.add_subcommand("worst-case", "Exhaustive worst case over a position lattice");
  worst->add_option("--protocol", wc_protocol, "swap, rearrange or cnot_stack");
  worst->add_option("--n", wc_n, "Qubits per loop");
  worst->add_option("--points", wc_points, "Lattice points per lap (default 8n)");
  worst->add_option("--strategy", wc_strategy, "rearrange: scheme or optimized");

  std::string variant = "folded";
  int fd = 25;
  bool fverify = false, fcircuit = false;
  auto* factory = app.add_subcommand("factory", "8T-to-CCZ factory runtime report");
  factory->add_option("--variant", variant, "folded or rotated");
  factory->add_option("--d", fd, "Code distance");
  factory->add_flag("--verify", fverify, "Simulate every measurement branch");
  factory->add_flag("--circuit", fcircuit, "Print the logical circuit");

  int td = 25;
  auto* t1 = app.add_subcommand("table1", "Space and time overheads of logical gates");
  t1->add_option("--d", td, "Code distance");

  std::string fixture;
  int max_swaps = -1;
  auto* layout = app.add_subcommand("layout", "Routability of merge requests in a layer stack");
  layout->add_option("--fixture", fixture, "Layout fixture file")->required();
  layout->add_option("--max-swaps", max_swaps, "Swap budget (default from the fixture)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Config cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "foldloop: " << e.what() << "\n";
    return kBadConfig;
  }

  std::string command = app.get_subcommands().front()->get_name();
  out.doc = report_header(command, cfg);
  try {
    if (verify->parsed()) run_verify(out, cfg, d, gate);
    if (cycle->parsed()) run_cycle_time(out, cfg, n);
    if (gates->parsed()) run_gate_times(out, cfg, gn, gd);
    if (simulate->parsed()) {
      sim["physical"] = physical ? "1" : "0";
      run_simulate(out, cfg, sim);
    }
    if (worst->parsed()) run_worst_case(out, cfg, wc_protocol, wc_n, wc_points, wc_strategy);
    if (factory->parsed()) run_factory(out, cfg, variant, fd, fverify, fcircuit);
    if (t1->parsed()) run_table1(out, cfg, td);
    if (layout->parsed()) run_layout(out, fixture, max_swaps);
  } catch (const ParseError& e) {
    std::cerr << "foldloop: " << e.what() << "\n";
    return kBadFixture;
  } catch (const std::invalid_argument& e) {
    std::cerr << "foldloop: " << e.what() << "\n";
    return kBadRequest;
  } catch (const std::exception& e) {
    std::cerr << "foldloop: " << e.what() << "\n";
    return kRuntime;
  }

  out.doc["pass"] = out.pass;
  if (out.as_json)
    std::cout << out.doc.dump(2) << "\n";
  else
    std::cout << out.text.str();
  return out.pass ? kOk : kCheckFailed;
}
