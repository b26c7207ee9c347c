#include "foldloop/circuit.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace foldloop {

namespace {

struct GateInfo {
  Gate gate;
  const char* name;
  std::size_t arity;
};

constexpr GateInfo kGates[] = {
    {Gate::kH, "H", 1},        {Gate::kS, "S", 1},          {Gate::kSDag, "S_DAG", 1},
    {Gate::kX, "X", 1},        {Gate::kY, "Y", 1},          {Gate::kZ, "Z", 1},
    {Gate::kT, "T", 1},        {Gate::kTDag, "T_DAG", 1},   {Gate::kCnot, "CNOT", 2},
    {Gate::kCz, "CZ", 2},      {Gate::kSwap, "SWAP", 2},    {Gate::kReset, "R", 1},
    {Gate::kMeasure, "M", 1},  {Gate::kMeasureY, "MY", 1},   {Gate::kMeasurePauli, "MPP", 1},
};

const GateInfo& info(Gate g) {
  for (const auto& gi : kGates)
    if (gi.gate == g) return gi;
  throw std::logic_error("unknown gate");
}

}  // namespace

const char* gate_name(Gate g) { return info(g).name; }

Gate gate_from_name(const std::string& name) {
  for (const auto& gi : kGates)
    if (name == gi.name) return gi.gate;
  throw std::invalid_argument("unknown gate name '" + name + "'");
}

std::size_t gate_arity(Gate g) { return info(g).arity; }

bool is_measurement(Gate g) {
  return g == Gate::kMeasure || g == Gate::kMeasureY || g == Gate::kMeasurePauli;
}

bool is_clifford(Gate g) { return g != Gate::kT && g != Gate::kTDag; }

std::size_t ScheduledCircuit::append(Gate g, std::vector<std::uint32_t> targets, Rational time,
                                     std::vector<Condition> conditions) {
  if (g == Gate::kMeasurePauli) throw std::invalid_argument("use append_pauli_measurement for MPP");
  std::size_t arity = gate_arity(g);
  if (targets.empty() || targets.size() % arity != 0)
    throw std::invalid_argument(std::string("bad target count for ") + gate_name(g));
  for (std::size_t k = 0; k < targets.size(); k += arity) {
    for (std::size_t j = 0; j < arity; ++j)
      if (targets[k + j] >= num_qubits_) throw std::out_of_range("target qubit out of range");
    if (arity == 2 && targets[k] == targets[k + 1])
      throw std::invalid_argument(std::string("repeated target in ") + gate_name(g));
  }
  for (const auto& c : conditions)
    if (c.record >= num_measurements_) throw std::invalid_argument("condition references a future measurement");
  std::size_t first = num_measurements_;
  if (is_measurement(g)) num_measurements_ += targets.size();
  ops_.push_back(Op{g, std::move(targets), time, std::move(conditions), {}});
  return first;
}

std::size_t ScheduledCircuit::append_pauli_measurement(const std::string& paulis, std::vector<std::uint32_t> targets,
                                                       Rational time) {
  if (targets.empty() || paulis.size() != targets.size())
    throw std::invalid_argument("MPP needs one Pauli per target");
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (targets[k] >= num_qubits_) throw std::out_of_range("target qubit out of range");
    if (paulis[k] != 'X' && paulis[k] != 'Y' && paulis[k] != 'Z') throw std::invalid_argument("MPP Pauli must be X, Y or Z");
    for (std::size_t j = 0; j < k; ++j)
      if (targets[j] == targets[k]) throw std::invalid_argument("repeated target in MPP");
  }
  Op op{Gate::kMeasurePauli, std::move(targets), time, {}, paulis};
  ops_.push_back(std::move(op));
  return num_measurements_++;
}

void ScheduledCircuit::append_circuit(const ScheduledCircuit& other, Rational time_offset) {
  if (other.num_qubits_ > num_qubits_) throw std::invalid_argument("appended circuit is wider");
  std::size_t shift = num_measurements_;
  for (const auto& op : other.ops_) {
    if (op.gate == Gate::kMeasurePauli) {
      append_pauli_measurement(op.paulis, op.targets, op.time + time_offset);
      continue;
    }
    std::vector<Condition> conds = op.conditions;
    for (auto& c : conds) c.record += shift;
    append(op.gate, op.targets, op.time + time_offset, std::move(conds));
  }
}

std::size_t ScheduledCircuit::count(Gate g) const {
  std::size_t n = 0;
  for (const auto& op : ops_)
    if (op.gate == g) n += g == Gate::kMeasurePauli ? 1 : op.targets.size() / gate_arity(g);
  return n;
}

Rational ScheduledCircuit::makespan() const {
  Rational m(0);
  for (const auto& op : ops_) m = std::max(m, op.time);
  return m;
}

void ScheduledCircuit::dump(std::ostream& out) const {
  out << "QUBITS " << num_qubits_ << "\n";
  for (const auto& op : ops_) {
    out << to_string(op.time) << ' ' << gate_name(op.gate);
    for (std::size_t k = 0; k < op.targets.size(); ++k) {
      out << ' ';
      if (op.gate == Gate::kMeasurePauli) out << op.paulis[k];
      out << op.targets[k];
    }
    if (!op.conditions.empty()) {
      out << " if";
      for (const auto& c : op.conditions) out << " m" << c.record << '=' << (c.value ? 1 : 0);
    }
    out << '\n';
  }
}

std::string ScheduledCircuit::str() const {
  std::ostringstream ss;
  dump(ss);
  return ss.str();
}

ScheduledCircuit ScheduledCircuit::parse(std::istream& in) {
  std::string line;
  ScheduledCircuit c;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (!have_header) {
      if (first != "QUBITS") throw std::invalid_argument("circuit text must start with QUBITS");
      ls >> c.num_qubits_;
      have_header = true;
      continue;
    }
    std::string name;
    ls >> name;
    Gate g = gate_from_name(name);
    std::vector<std::uint32_t> targets;
    std::vector<Condition> conds;
    std::string paulis;
    std::string tok;
    bool in_cond = false;
    while (ls >> tok) {
      if (tok == "if") {
        in_cond = true;
      } else if (in_cond) {
        auto eq = tok.find('=');
        if (tok.size() < 4 || tok[0] != 'm' || eq == std::string::npos) throw std::invalid_argument("bad condition '" + tok + "'");
        conds.push_back(Condition{std::stoul(tok.substr(1, eq - 1)), tok.substr(eq + 1) == "1"});
      } else if (g == Gate::kMeasurePauli) {
        paulis += tok.at(0);
        targets.push_back(static_cast<std::uint32_t>(std::stoul(tok.substr(1))));
      } else {
        targets.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      }
    }
    if (g == Gate::kMeasurePauli)
      c.append_pauli_measurement(paulis, std::move(targets), parse_rational(first));
    else
      c.append(g, std::move(targets), parse_rational(first), std::move(conds));
  }
  if (!have_header) throw std::invalid_argument("empty circuit text");
  return c;
}

}  // namespace foldloop
