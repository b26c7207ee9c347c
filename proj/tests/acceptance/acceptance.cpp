// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "foldloop/costs.hpp"
#include "foldloop/factory.hpp"
#include "foldloop/layout.hpp"
#include "foldloop/loopsim.hpp"
#include "foldloop/pauli_group.hpp"
#include "foldloop/protocols.hpp"
#include "foldloop/surface_code.hpp"
#include "foldloop/tableau.hpp"

#ifndef FOLDLOOP_FIXTURE_DIR
#define FOLDLOOP_FIXTURE_DIR "tests/fixtures"
#endif

using namespace foldloop;

namespace {

struct Criterion {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
  void note(const std::string& what) { notes.push_back("      " + what); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << x;
  return s.str();
}

// --- 1 -------------------------------------------------------------------

Criterion logical_actions() {
  Criterion c;
  auto t0 = Clock::now();
  for (int d : {3, 5}) {
    auto results = verify_protocols(d, "all", 7);
    bool dense_seen = false;
    for (const auto& r : results) {
      c.expect(r.pass, r.check + ": " + r.observed);
      dense_seen = dense_seen || r.check.find("dense") != std::string::npos;
    }
    if (d == 3) c.expect(dense_seen, "d=3 S and H cross-checked on the statevector engine");
  }
  double t = seconds_since(t0);
  c.expect(t < 60, "runtime " + fmt(t, 2) + " s < 60 s");
  return c;
}

// --- 2 -------------------------------------------------------------------

// Planar (unrotated) distance-d code: data on (i, j) with i + j even in a
// (2d-1) x (2d-1) grid, one check type on odd rows, the other on odd columns.
struct PlanarProfile {
  std::size_t qubits = 0;
  std::map<std::size_t, std::size_t> type_a;
  std::map<std::size_t, std::size_t> type_b;
};

PlanarProfile planar_profile(int d) {
  PlanarProfile p;
  const int L = 2 * d - 1;
  auto data = [&](int i, int j) { return i >= 0 && j >= 0 && i < L && j < L && (i + j) % 2 == 0; };
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (data(i, j)) ++p.qubits;
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      if ((i + j) % 2 == 0) continue;
      std::size_t w = data(i - 1, j) + data(i + 1, j) + data(i, j - 1) + data(i, j + 1);
      ++(i % 2 == 1 ? p.type_a : p.type_b)[w];
    }
  return p;
}

Criterion midcycle_structure() {
  Criterion c;
  for (int d : {3, 5}) {
    PlanarProfile planar = planar_profile(d);
    for (PatchKind kind : {PatchKind::kRotated, PatchKind::kFolded}) {
      PatchSpec patch = build_patch(d, kind);
      MidcycleGroup mid = midcycle_group(patch);
      std::string tag = std::string("d=") + std::to_string(d) + " " + patch_kind_name(kind);
      c.expect(mid.active_qubits.size() == planar.qubits,
               tag + ": " + std::to_string(mid.active_qubits.size()) + " active qubits, planar code has " +
                   std::to_string(planar.qubits));
      auto x = mid.weight_profile(CheckType::kX);
      auto z = mid.weight_profile(CheckType::kZ);
      bool same = (x == planar.type_a && z == planar.type_b) || (x == planar.type_b && z == planar.type_a);
      std::size_t gens = mid.x_generators.size() + mid.z_generators.size();
      c.expect(same, tag + ": " + std::to_string(gens) + " generators, weight profile matches the planar code");

      PauliGroup g(patch.num_qubits());
      for (const auto* set : {&mid.x_generators, &mid.z_generators})
        for (const auto& p : *set) g.add(p);
      bool commute = true;
      for (const auto& a : mid.x_generators)
        for (const auto& b : mid.z_generators) commute = commute && a.commutes(b);
      c.expect(commute && g.rank() == gens, tag + ": generators commute and are independent");

      // Remaining two layers plus the closing basis change bring the round back to its start.
      std::vector<PauliString> gens_end = mid.propagated;
      ScheduledCircuit tail(patch.num_qubits());
      int step = append_check_layers(tail, patch, 0, 2, 3, 0);
      append_check_suffix(tail, patch, 0, step);
      for (auto& p : gens_end)
        for (const auto& op : tail.ops())
          if (!is_measurement(op.gate) && op.gate != Gate::kReset) conjugate(p, op.gate, op.targets);
      std::vector<PauliString> start = round_start_generators(patch);
      c.expect(PauliGroup(patch.num_qubits(), gens_end).same_group(PauliGroup(patch.num_qubits(), start)),
               tag + ": round trip restores the rotated group");
    }
  }
  return c;
}

// --- 3 -------------------------------------------------------------------

Rational cd(const Rational& a, const Rational& b) {
  Rational x = frac(a - b);
  return std::min(x, Rational(1) - x);
}

Criterion timing_closed_forms() {
  Criterion c;
  auto t0 = Clock::now();
  TimingParams p;

  Rational oracle = Rational(27, 8) * 400 + 2 * 200 + 4 * 100 + 1000;
  Rational sim = simulate_cycle(embed_stack({build_patch(3, PatchKind::kFolded)}, p), p).makespan();
  c.expect(oracle == 3150 && sim == oracle && cycle_time(p) == oracle,
           "T_cyc(2): simulated " + to_string(sim) + " ns, closed form " + to_string(cycle_time(p)) + " ns");

  // Swap shuttle oracle: nearer token first, then one lap segment out and back.
  for (int n : {2, 4, 8}) {
    int points = 4 * n;
    Rational worst(0);
    for (int s = 0; s < points / n; ++s)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          Rational pa = frac(Rational(a, n) + Rational(s, points));
          Rational pb = frac(Rational(b, n) + Rational(s, points));
          worst = std::max(worst, std::min(cd(pa, 0), cd(pb, 0)) + 2 * cd(pa, pb));
        }
    WorstCase w = worst_case_search(SearchProtocol::kSwap, n, points, p);
    c.expect(w.shuttle == Rational(5, 4) && worst == Rational(5, 4),
             "swap n=" + std::to_string(n) + ": search " + to_string(w.shuttle) + "·T_loop, oracle " +
                 to_string(worst) + "·T_loop");
  }
  {
    LoopState quarter = LoopState::evenly_spaced(4, Rational(1, 4));
    LoopRun run = swap_protocol(quarter, 0, 2, IntraLoopGate::kCnot, p);
    c.expect(run.schedule.shuttle_time() == Rational(5, 4) * p.t_loop,
             "swap with tokens at 1/4 and 3/4: " + to_string(run.schedule.shuttle_time() / p.t_loop) + "·T_loop");
  }

  {
    LoopState start = LoopState::evenly_spaced(8, Rational(1, 16));
    LoopRun run = rearrange(start, {2, 6, 3, 7, 0, 4, 1, 5}, p);
    Rational t = run.schedule.makespan();
    c.expect(t == Rational(61, 16) * 400 && t == 1525,
             "rearrange n=8, target 3 7 4 8 1 5 2 6: " + to_string(t / p.t_loop) + "·T_loop = " + to_string(t) +
                 " ns");
    WorstCase best = worst_case_search(SearchProtocol::kRearrange, 8, 64, p, RearrangeStrategy::kOptimized);
    c.expect(best.shuttle <= Rational(61, 16),
             "rearrange n=8 exhaustive over " + std::to_string(best.configurations) + " starts: " +
                 to_string(best.shuttle) + "·T_loop <= 61/16");
  }

  for (int n : {2, 4, 8, 12, 16}) {
    Rational closed = (Rational(9, 4) - Rational(7, 2 * n)) * 400 + 2 * 100;
    try {
      WorstCase w = worst_case_search(SearchProtocol::kCnotStack, n, 8 * n, p);
      c.expect(w.makespan == closed, "T_CNOT(" + std::to_string(n) + "): search " + to_string(w.makespan) +
                                      " ns, closed form " + to_string(closed) + " ns");
    } catch (const std::invalid_argument& e) {
      c.expect(false, "T_CNOT(" + std::to_string(n) + "): closed form " + to_string(closed) +
                          " ns, no simulation (" + e.what() + ")");
    }
  }
  double t = seconds_since(t0);
  c.expect(t < 300, "runtime " + fmt(t, 2) + " s < 300 s");
  return c;
}

// --- 4 -------------------------------------------------------------------

Criterion congestion() {
  Criterion c;
  TimingParams p;
  auto rows16 = pipeline_model(16, p, 50);
  double avg = to_double(rows16.back().average);
  double target = 16000.0 / 3.0;
  c.expect(std::abs(avg - target) / target < 0.01,
           "n=16 round 50 average " + fmt(avg / 1000) + " us vs 16/3 = " + fmt(target / 1000) + " us");
  auto rows12 = pipeline_model(12, p, 50);
  bool steady = true;
  for (std::size_t k = 40; k < rows12.size(); ++k)
    steady = steady && rows12[k].completion - rows12[k - 1].completion == Rational(12, 3) * p.t_meas;
  c.expect(steady, "n=12 per-round period over rounds 40..50 is exactly (12/3)·T_meas = 4 us");
  auto rows2 = pipeline_model(2, p, 10);
  c.expect(rows2.back().average == cycle_time(p), "n=2 average " + to_string(rows2.back().average) + " ns = T_cyc(2)");
  return c;
}

// --- 5 -------------------------------------------------------------------

Criterion gate_times() {
  Criterion c;
  TimingParams p;
  auto ns = [&](CostGate g, int n) { return gate_time(g, Architecture::kPipelinedFolded, n, 25, p).ns; };
  c.expect(effective_cycle_time(16, p) == 6000, "T_cyc*(16) = " + to_string(effective_cycle_time(16, p)) + " ns");
  c.expect(effective_cycle_time(12, p) == 5000, "T_cyc*(12) = " + to_string(effective_cycle_time(12, p)) + " ns");
  c.expect(ns(CostGate::kS, 16) == 6600, "T_S = " + to_decimal(ns(CostGate::kS, 16) / 1000) + " us");
  c.expect(ns(CostGate::kH, 16) == 6800, "T_H = " + to_decimal(ns(CostGate::kH, 16) / 1000) + " us");
  c.expect(ns(CostGate::kCnot, 16) == Rational(10125, 10),
           "T_CNOT(16) = " + to_decimal(ns(CostGate::kCnot, 16) / 1000) + " us");
  return c;
}

// --- 6 -------------------------------------------------------------------

Criterion factory() {
  Criterion c;
  TimingParams p;
  FactoryReport folded = factory_runtime(FactoryVariant::kFolded, p, 25);
  FactoryReport rotated = factory_runtime(FactoryVariant::kRotated, p, 25);
  double f_us = to_double(folded.runtime) / 1000, r_us = to_double(rotated.runtime) / 1000;
  c.expect(std::abs(f_us - 216) <= 1, "folded runtime " + fmt(f_us) + " us (216 +- 1)");
  c.expect(std::abs(r_us - 279) <= 1, "rotated runtime " + fmt(r_us) + " us (279 +- 1)");
  double ratio = to_double(rotated.spacetime / folded.spacetime);
  c.expect(std::abs(ratio - 2.6) <= 0.05, "spacetime ratio " + fmt(ratio, 3) + " (2.6 +- 0.05)");
  Rational err(28, 100'000'000'000'000);
  c.expect(folded.output_error == err && rotated.output_error == err,
           "output error " + to_string(folded.output_error) + " = 2.8e-13");
  c.expect(cultivation_cycles(1e-7, 25, 8, 8) == 22 && folded.cultivation_cycles == 22, "cultivation, 8 qubits: 22");
  c.expect(cultivation_cycles(1e-7, 25, 8, 12) == 15 && rotated.cultivation_cycles == 15,
           "cultivation, 12 qubits: 15");
  auto t0 = Clock::now();
  for (FactoryVariant v : {FactoryVariant::kFolded, FactoryVariant::kRotated}) {
    FactoryVerification ver = verify_factory(ccz_factory_spec(v));
    c.expect(ver.pass, to_string(v) + ": " + std::to_string(ver.branches) + " branches, min fidelity " +
                           fmt(ver.min_fidelity, 12));
  }
  double t = seconds_since(t0);
  c.expect(t < 120, "verification runtime " + fmt(t, 2) + " s < 120 s");
  return c;
}

// --- 7 -------------------------------------------------------------------

Criterion table_one() {
  Criterion c;
  TimingParams p;
  const int d = 25;
  CostReport t = table1(p, d);
  using A = Architecture;
  const Rational us(1000);
  struct Cell {
    std::string gate;
    A arch;
    Affine runtime;
    Rational space;
  };
  // Runtime per_d and constant in ns, from the table's formulas at T_cyc = 3 us.
  const Rational tcyc(3000);
  const Rational tc16 = effective_cycle_time(16, p), tc12 = effective_cycle_time(12, p);
  std::vector<Cell> cells = {
      {"H", A::kStandard, {3 * tcyc, 0}, 2},
      {"S", A::kStandard, {Rational(3, 2) * tcyc, 0}, 2},
      {"CNOT", A::kStandard, {2 * tcyc, 0}, 3},
      {"factory", A::kStandard, {5 * tcyc, 0}, 12},
      {"H", A::kPipelinedRotated, {3 * tcyc, 0}, 2},
      {"S", A::kPipelinedRotated, {Rational(3, 2) * tcyc, 0}, 1},
      {"CNOT", A::kPipelinedRotated, {0, us}, 1},
      {"factory", A::kPipelinedRotated, {tc12, 27 * tc12 + 19 * us}, 1},
      {"H", A::kPipelinedFolded, {0, tcyc}, Rational(1, 2)},
      {"S", A::kPipelinedFolded, {0, tcyc}, Rational(1, 2)},
      {"CNOT", A::kPipelinedFolded, {0, us}, Rational(1, 2)},
      {"factory", A::kPipelinedFolded, {0, 33 * tc16 + 18 * us}, Rational(1, 2)},
  };
  for (const auto& cell : cells) {
    const CostEntry& e = t.entry(cell.gate, cell.arch);
    bool ok = e.runtime.per_d == cell.runtime.per_d && e.runtime.constant == cell.runtime.constant &&
              e.space == cell.space;
    c.expect(ok, cell.gate + " / " + to_string(cell.arch) + ": " + e.formula + ", space " + to_decimal(e.space));
  }
  struct Row {
    std::string gate;
    A versus;
    Affine factor;
  };
  std::vector<Row> rows = {
      {"H", A::kStandard, {12, 0}},         {"S", A::kStandard, {6, 0}},
      {"CNOT", A::kStandard, {36, 0}},      {"factory", A::kStandard, {Rational(5, 3), 0}},
      {"H", A::kPipelinedRotated, {12, 0}}, {"S", A::kPipelinedRotated, {3, 0}},
      {"CNOT", A::kPipelinedRotated, {0, 2}},
  };
  for (const auto& row : rows) {
    const Saving& s = t.saving(row.gate, row.versus);
    c.expect(s.factor.per_d == row.factor.per_d && s.factor.constant == row.factor.constant,
             row.gate + " vs " + to_string(row.versus) + ": " + s.factor.decimal());
  }
  // From the rows themselves: (rt_rot * S_rot) / (rt_fold * S_fold), recomputed here.
  const Affine& rot = t.entry("factory", A::kPipelinedRotated).runtime;
  const Affine& fold = t.entry("factory", A::kPipelinedFolded).runtime;
  Affine expect{rot.per_d / (fold.constant * Rational(1, 2)), rot.constant / (fold.constant * Rational(1, 2))};
  const Saving& fs = t.saving("factory", A::kPipelinedRotated);
  double at25 = to_double(fs.factor.at(d));
  c.expect(fs.factor.per_d == expect.per_d && fs.factor.constant == expect.constant &&
               fs.factor.decimal() == "0.046·d + 1.426" && std::abs(at25 - 2.58) < 0.005,
           "factory vs pipelined_rotated: " + fs.factor.str() + " = " + fs.factor.decimal() + ", " + fmt(at25, 3) +
               " at d=25");
  return c;
}

// --- 8 -------------------------------------------------------------------

Criterion layout() {
  Criterion c;
  const std::string dir = FOLDLOOP_FIXTURE_DIR;
  LayoutFixture a = load_fixture(dir + "/blocked_stack.txt");
  Routing ra = routable(a.layout, a.requests);
  c.expect(!ra.feasible, "blocked stack: infeasible after " + std::to_string(ra.nodes) + " search nodes");
  SwapPlan pa = plan_with_swaps(a.layout, a.requests, 8);
  c.expect(!pa.feasible, "blocked stack: no swap plan within 8 swaps (" + std::to_string(pa.states) + " layouts)");

  LayoutFixture b = load_fixture(dir + "/checkerboard_swaps.txt");
  SwapPlan pb = plan_with_swaps(b.layout, b.requests, 8);
  c.expect(pb.feasible && pb.swaps.size() == 4 && check_routing(pb.final_layout, b.requests, pb.routing).empty() &&
               pb.routing.paths.size() == 4,
           "checkerboard: minimal plan of " + std::to_string(pb.swaps.size()) + " swaps, 4 witness paths re-verified");

  // Freeing cells never turns a routable instance unroutable.
  std::mt19937_64 rng(20260);
  int trials = 1000, flips = 0, feasible_before = 0;
  for (int trial = 0; trial < trials; ++trial) {
    LayerStackLayout l(5, 5, 1);
    std::vector<Cell> free_cells;
    for (int r = 0; r < 5; ++r)
      for (int col = 0; col < 5; ++col) free_cells.push_back({0, r, col});
    std::shuffle(free_cells.begin(), free_cells.end(), rng);
    int patches = 6 + static_cast<int>(rng() % 5);
    for (int k = 0; k < patches; ++k)
      l.place(free_cells[static_cast<std::size_t>(k)], {k + 1, rng() % 2 ? Orientation::kXZ : Orientation::kZX});
    std::vector<MergeRequest> req = {{1, rng() % 2 ? 'X' : 'Z', 2, rng() % 2 ? 'X' : 'Z', {}},
                                     {3, rng() % 2 ? 'X' : 'Z', 4, rng() % 2 ? 'X' : 'Z', {}}};
    bool before = routable(l, req).feasible;
    feasible_before += before;
    LayerStackLayout more = l;
    for (int k = 5; k < patches; ++k)
      if (rng() % 2) more.clear(free_cells[static_cast<std::size_t>(k)]);
    bool after = routable(more, req).feasible;
    if (before && !after) ++flips;
  }
  c.expect(flips == 0, "monotonicity: " + std::to_string(trials) + " trials (" + std::to_string(feasible_before) +
                           " routable before freeing), " + std::to_string(flips) + " flips");
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::string title;
    std::function<Criterion()> run;
  };
  std::vector<Entry> suite = {
      {1, "logical-action verification of transversal S, H, CNOT, SWAP", logical_actions},
      {2, "mid-cycle planar-code structure and round trip", midcycle_structure},
      {3, "timing closed forms equal simulation", timing_closed_forms},
      {4, "congestion model", congestion},
      {5, "gate times at silicon defaults", gate_times},
      {6, "CCZ factory runtime, error and verification", factory},
      {7, "space and time overhead table", table_one},
      {8, "layout routability and swap plans", layout},
  };
  int failed = 0;
  for (const auto& e : suite) {
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    failed += !c.pass;
    std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << e.id << ": " << e.title << "\n";
    for (const auto& n : c.notes) std::cout << "        " << n << "\n";
  }
  std::cout << (suite.size() - static_cast<std::size_t>(failed)) << "/" << suite.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
