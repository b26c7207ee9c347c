#include "foldloop/factory.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "foldloop/costs.hpp"
#include "foldloop/dense.hpp"

namespace foldloop {

namespace {

Op make(Gate g, std::vector<std::uint32_t> targets, std::vector<Condition> conditions = {}) {
  return Op{g, std::move(targets), Rational(0), std::move(conditions), {}};
}

Op cnot(std::uint32_t control, std::uint32_t target) { return make(Gate::kCnot, {control, target}); }

// Slices 1-4 are shared by both variants.
std::vector<std::vector<Op>> preamble() {
  return {
      {cnot(1, 0), cnot(2, 3)},
      {cnot(0, 2), cnot(3, 1)},
      {cnot(1, 0), cnot(2, 3)},
      {cnot(0, 4), cnot(1, 5), cnot(2, 6), cnot(3, 7)},
  };
}

std::vector<Op> tail_slice_a() { return {cnot(1, 0), cnot(3, 2)}; }
std::vector<Op> tail_slice_b() { return {cnot(3, 1)}; }

const Rational kPTarget(1, 10000000);

nlohmann::json rational_json(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_double(r)}}; }

std::string scientific(const Rational& r) {
  std::ostringstream out;
  out.precision(2);
  out << to_double(r);
  return out.str();
}

}  // namespace

std::string to_string(FactoryVariant variant) { return variant == FactoryVariant::kFolded ? "folded" : "rotated"; }

FactoryVariant parse_factory_variant(const std::string& name) {
  if (name == "folded") return FactoryVariant::kFolded;
  if (name == "rotated") return FactoryVariant::kRotated;
  throw std::invalid_argument("unknown factory variant: " + name);
}

std::size_t FactoryCircuit::count(Gate g) const {
  std::size_t n = 0;
  for (const auto& slice : slices)
    for (const auto& op : slice)
      if (op.gate == g) n += op.gate == Gate::kCnot ? op.targets.size() / 2 : op.targets.size();
  for (const auto& op : final_layer)
    if (op.gate == g) n += op.targets.size();
  return n;
}

std::size_t FactoryCircuit::num_measurements() const { return count(Gate::kMeasure) + count(Gate::kMeasureY); }

ScheduledCircuit FactoryCircuit::circuit(bool t_inputs_as_t) const {
  ScheduledCircuit c(logical_qubits);
  for (auto q : t_inputs) {
    c.append(Gate::kReset, {q});
    if (t_inputs_as_t) {
      c.append(Gate::kH, {q});
      c.append(Gate::kT, {q});
    }
  }
  for (auto q : zero_inputs) c.append(Gate::kReset, {q});
  for (std::size_t k = 0; k < slices.size(); ++k)
    for (const auto& op : slices[k]) c.append(op.gate, op.targets, Rational(static_cast<std::int64_t>(k) + 1), op.conditions);
  for (const auto& op : final_layer)
    c.append(op.gate, op.targets, Rational(static_cast<std::int64_t>(slices.size()) + 1), op.conditions);
  return c;
}

void FactoryCircuit::validate() const {
  std::size_t records = 0;
  auto check_op = [&](const Op& op, std::set<std::uint32_t>& used) {
    for (auto q : op.targets) {
      if (q >= logical_qubits) throw std::logic_error("factory op targets a missing qubit");
      if (!used.insert(q).second) throw std::logic_error("factory slice reuses a qubit");
    }
    for (const auto& cond : op.conditions)
      if (cond.record >= records) throw std::logic_error("factory condition refers to a later measurement");
  };
  for (const auto& slice : slices) {
    std::set<std::uint32_t> used;
    std::size_t slice_records = 0;
    for (const auto& op : slice)
      if (is_measurement(op.gate)) slice_records += op.targets.size();
    // Measurements in a slice may steer the same slice's corrections.
    records += slice_records;
    for (const auto& op : slice) check_op(op, used);
  }
  std::set<std::uint32_t> used;
  for (const auto& op : final_layer) check_op(op, used);
}

FactoryCircuit ccz_factory_spec(FactoryVariant variant) {
  FactoryCircuit f;
  f.variant = variant;
  f.t_inputs = {0, 1, 2, 3, 4, 5, 6, 7};
  f.slices = preamble();
  if (variant == FactoryVariant::kFolded) {
    f.logical_qubits = 8;
    std::vector<Op> s5 = {make(Gate::kMeasure, {4, 5, 6, 7})};
    for (std::uint32_t k = 0; k < 4; ++k) s5.push_back(make(Gate::kS, {k}, {{k, true}}));
    f.slices.push_back(s5);
  } else {
    f.logical_qubits = 12;
    f.zero_inputs = {8, 9, 10, 11};
    std::vector<Op> s5 = {make(Gate::kMeasure, {4, 5, 6, 7})};
    for (std::uint32_t k = 0; k < 4; ++k) s5.push_back(make(Gate::kCnot, {k, k + 8}, {{k, true}}));
    f.slices.push_back(s5);
    // Y outcome 0 is the +1 eigenvalue; the correction only applies where the ancilla was entangled.
    std::vector<Op> s6 = {make(Gate::kMeasureY, {8, 9, 10, 11})};
    for (std::uint32_t k = 0; k < 4; ++k) s6.push_back(make(Gate::kZ, {k}, {{k, true}, {4 + k, false}}));
    f.slices.push_back(s6);
  }
  f.slices.push_back(tail_slice_a());
  f.slices.push_back(tail_slice_b());
  f.final_layer = {make(Gate::kX, {0, 1, 2})};
  f.validate();
  return f;
}

FactoryVerification verify_factory(const FactoryCircuit& factory, bool t_inputs, double tolerance) {
  factory.validate();
  const ScheduledCircuit c = factory.circuit(t_inputs);
  const std::size_t m = c.num_measurements();
  if (m > 16) throw std::invalid_argument("too many measurement branches to enumerate");

  // |CCZ> = CCZ |+++> on q0..q2.
  std::vector<Amplitude> ccz(8);
  for (std::size_t b = 0; b < 8; ++b) ccz[b] = Amplitude((b == 7 ? -1.0 : 1.0) / std::sqrt(8.0), 0.0);

  FactoryVerification out;
  out.pass = true;
  std::mt19937_64 rng(0);
  double total_probability = 0;
  for (std::size_t branch = 0; branch < (std::size_t{1} << m); ++branch) {
    std::vector<bool> forced(m);
    for (std::size_t k = 0; k < m; ++k) forced[k] = (branch >> k) & 1;
    DenseState state(c.num_qubits());
    DenseRun run = run_dense(c, state, rng, forced);
    double p = 1;
    for (double q : run.probability) p *= q;
    if (p < 1e-12) continue;
    total_probability += p;
    ++out.branches;

    double post = state.project(PauliString::single(c.num_qubits(), 3, 'X'), false);
    out.min_postselection = std::min(out.min_postselection, post);
    double fidelity = 0;
    if (post > 1e-12) {
      const auto& amps = state.amplitudes();
      for (std::size_t rest = 0; rest < amps.size(); rest += 8) {
        Amplitude overlap = 0;
        for (std::size_t b = 0; b < 8; ++b) overlap += std::conj(ccz[b]) * amps[rest + b];
        fidelity += std::norm(overlap);
      }
    }
    if (out.worst_record.empty() || fidelity < out.min_fidelity) {
      out.min_fidelity = fidelity;
      out.worst_record = run.record;
    }
    if (fidelity < 1 - tolerance && out.pass) {
      out.pass = false;
      std::ostringstream msg;
      msg << "branch with record ";
      for (bool bit : run.record) msg << (bit ? '1' : '0');
      msg << " reaches fidelity " << fidelity << " after post-selection probability " << post;
      out.message = msg.str();
    }
  }
  if (std::abs(total_probability - 1) > 1e-9 && out.pass) {
    out.pass = false;
    out.message = "branch probabilities do not sum to one";
  }
  if (out.pass) out.message = "all " + std::to_string(out.branches) + " branches distill |CCZ>";
  return out;
}

int cultivation_cycles(double p_target, int d, int num_states, int num_qubits) {
  if (std::abs(p_target - 1e-7) > 1e-19) throw std::invalid_argument("cultivation volume is tabulated only for p = 1e-7");
  if (d < 1 || num_states < 1 || num_qubits < 1) throw std::invalid_argument("cultivation inputs must be positive");
  const Rational volume(30000);
  Rational cycles = Rational(num_states) * volume / Rational(std::int64_t{num_qubits} * 2 * (d + 1) * (d + 1));
  return static_cast<int>(floor(cycles + Rational(1, 2)));
}

FactoryForm factory_form(FactoryVariant variant, const TimingParams& params, int d) {
  const SymbolValues v = symbol_values(params);
  FactoryForm f;
  if (variant == FactoryVariant::kFolded) {
    f.loop_occupancy = 16;
    int cul = cultivation_cycles(1e-7, d, 8, 8);
    f.t_star_const = Rational(cul + 7 + 4);
    f.constant_ns = Rational(13) * cnot_time_expr(16).evaluate(v) + 2 * params.t_meas +
                    4 * (Rational(5, 4) * params.t_loop + params.t_2q);
  } else {
    f.loop_occupancy = 12;
    int cul = cultivation_cycles(1e-7, d, 8, 12);
    f.t_star_per_d = 1;
    f.t_star_const = Rational(cul + 8 + 4);
    f.constant_ns = 2 * params.t_meas + Rational(17) * cnot_time_expr(12).evaluate(v);
  }
  return f;
}

FactoryReport factory_runtime(FactoryVariant variant, const TimingParams& params, int d) {
  params.validate();
  if (d < 1 || d % 2 == 0) throw std::invalid_argument("factory runtime needs an odd distance");
  FactoryReport r;
  r.variant = variant;
  r.distance = d;
  r.form = factory_form(variant, params, d);
  const int n = r.form.loop_occupancy;
  r.loop_occupancy = n;
  const std::string tstar = effective_cycle_symbol(n);
  const std::string tcnot = cnot_symbol(n);
  const Rational tstar_ns = effective_cycle_time(n, params);

  r.values = symbol_values(params);
  r.values[tstar] = tstar_ns;
  r.values[tcnot] = cnot_time_expr(n).evaluate(r.values);
  const FactoryCircuit circuit = ccz_factory_spec(variant);

  if (variant == FactoryVariant::kFolded) {
    r.cultivation_cycles = cultivation_cycles(1e-7, d, 8, 8);
    r.values["T_S"] = gate_time(CostGate::kS, Architecture::kPipelinedFolded, n, d, params).ns;
    r.runtime_expr = LinearExpr::symbol("T_cul") + LinearExpr::symbol(tcnot, Rational(13)) +
                     LinearExpr::symbol(tstar, Rational(7)) + LinearExpr::symbol("T_meas", Rational(2)) +
                     LinearExpr::symbol("T_S", Rational(4));
    r.expanded = r.runtime_expr
                     .substitute("T_cul", LinearExpr::symbol(tstar, Rational(r.cultivation_cycles)))
                     .substitute(tcnot, cnot_time_expr(n))
                     .substitute("T_S", LinearExpr::symbol(tstar) + LinearExpr::symbol("T_loop", Rational(5, 4)) +
                                            LinearExpr::symbol("T_2q"));
    r.space = Rational(1, 2);
  } else {
    r.cultivation_cycles = cultivation_cycles(1e-7, d, 8, 12);
    r.runtime_expr = LinearExpr::symbol("T_cul") + LinearExpr::symbol(tstar, Rational(8)) +
                     LinearExpr::symbol("T_meas", Rational(2)) + LinearExpr::symbol(tcnot, Rational(17)) +
                     LinearExpr::symbol(tstar, Rational(d + 4));
    r.expanded = r.runtime_expr.substitute("T_cul", LinearExpr::symbol(tstar, Rational(r.cultivation_cycles)))
                     .substitute(tcnot, cnot_time_expr(n));
    r.space = Rational(1);
  }
  r.values["T_cul"] = Rational(r.cultivation_cycles) * tstar_ns;
  r.runtime = r.runtime_expr.evaluate(r.values);
  if (r.expanded.evaluate(r.values) != r.runtime) throw std::logic_error("factory expansion disagrees");
  r.spacetime = r.runtime * r.space;
  r.output_error = Rational(28) * kPTarget * kPTarget;

  // Everything shares one port per loop, so the timeline is serial.
  Rational t{0};
  auto put = [&](const std::string& action, std::vector<int> qubits, const Rational& dur) {
    r.timeline.add({t, dur, action, 0, std::move(qubits)});
    t += dur;
  };
  std::vector<int> all;
  for (std::size_t q = 0; q < circuit.logical_qubits; ++q) all.push_back(static_cast<int>(q));
  put("cultivate", {0, 1, 2, 3, 4, 5, 6, 7}, r.values["T_cul"]);
  std::size_t record = 0;
  for (const auto& slice : circuit.slices) {
    for (const auto& op : slice) {
      std::vector<int> qs(op.targets.begin(), op.targets.end());
      if (op.gate == Gate::kCnot) {
        put("CNOT", qs, r.values[tcnot]);
      } else if (op.gate == Gate::kS) {
        put("S", qs, r.values["T_S"]);
      } else if (op.gate == Gate::kMeasure) {
        std::size_t batches = (qs.size() + params.meas_devices - 1) / static_cast<std::size_t>(params.meas_devices);
        put("M", qs, Rational(static_cast<std::int64_t>(batches)) * params.t_meas);
        record += qs.size();
      } else if (op.gate == Gate::kMeasureY) {
        std::size_t batches = (qs.size() + params.meas_devices - 1) / static_cast<std::size_t>(params.meas_devices);
        put("MY", qs, Rational(static_cast<std::int64_t>(batches)) * (Rational(d, 2) + 2) * tstar_ns);
        record += qs.size();
      }
    }
    put("check_round", all, tstar_ns);
  }
  if (r.timeline.makespan() != r.runtime) throw std::logic_error("factory timeline disagrees with the runtime");
  r.timeline.check_exclusive();
  return r;
}

std::string FactoryReport::summary() const {
  std::ostringstream out;
  out << "factory " << to_string(variant) << " d=" << distance << " n=" << loop_occupancy << "\n";
  out << "  runtime       " << runtime_expr.str() << "\n";
  out << "                = " << expanded.str() << "\n";
  out << "                = " << format_ns(runtime) << " = " << to_decimal(runtime / 1000, 4) << " us\n";
  out << "  cultivation   " << cultivation_cycles << " cycles\n";
  out << "  form          ";
  if (form.t_star_per_d != 0) out << "(" << to_string(form.t_star_per_d) << "\xC2\xB7" << "d + " << to_string(form.t_star_const) << ")";
  else out << to_string(form.t_star_const);
  out << "\xC2\xB7" << effective_cycle_symbol(loop_occupancy) << " + " << to_decimal(form.constant_ns / 1000, 4) << " us\n";
  out << "  space         " << to_decimal(space) << "\n";
  out << "  spacetime     " << to_decimal(spacetime / 1000, 4) << " us\n";
  out << "  output error  " << scientific(output_error) << "\n";
  return out.str();
}

nlohmann::json FactoryReport::to_json() const {
  nlohmann::json values_doc;
  for (const auto& [k, v] : values) values_doc[k] = rational_json(v);
  nlohmann::json timeline_doc = nlohmann::json::array();
  for (const auto& e : timeline.events())
    timeline_doc.push_back({{"start_ns", to_string(e.start)}, {"duration_ns", to_string(e.duration)}, {"action", e.action}, {"qubits", e.tokens}});
  return {{"variant", to_string(variant)},
          {"distance", distance},
          {"loop_occupancy", loop_occupancy},
          {"cultivation_cycles", cultivation_cycles},
          {"runtime_expr", runtime_expr.str()},
          {"runtime_expanded", expanded.str()},
          {"symbols", values_doc},
          {"runtime_ns", rational_json(runtime)},
          {"space", rational_json(space)},
          {"spacetime_ns", rational_json(spacetime)},
          {"output_error", {{"exact", to_string(output_error)}, {"decimal", scientific(output_error)}}},
          {"form",
           {{"t_star_per_d", to_string(form.t_star_per_d)},
            {"t_star_const", to_string(form.t_star_const)},
            {"constant_ns", rational_json(form.constant_ns)}}},
          {"timeline", timeline_doc}};
}

}  // namespace foldloop
