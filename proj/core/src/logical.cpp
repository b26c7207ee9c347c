#include "foldloop/logical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "foldloop/errors.hpp"
#include "foldloop/tableau.hpp"

namespace foldloop {

namespace {

PauliString embed(const PauliString& p, std::size_t width) {
  PauliString out(width);
  for (std::size_t q = 0; q < p.num_qubits(); ++q) out.set_pauli(q, p.pauli_at(q));
  out.set_phase(p.phase());
  return out;
}

PauliString pair_with_ref(const PauliString& phys, std::size_t width, std::size_t ref, char c) {
  PauliString out = embed(phys, width);
  out.set_pauli(ref, c);
  return out;
}

std::vector<PauliString> all_logical_paulis(std::size_t k) {
  std::vector<PauliString> out;
  std::size_t total = std::size_t{1} << (2 * k);
  static const char kChars[4] = {'_', 'X', 'Y', 'Z'};
  for (std::size_t code = 1; code < total; ++code) {
    PauliString p(k);
    for (std::size_t q = 0; q < k; ++q) p.set_pauli(q, kChars[(code >> (2 * q)) & 3]);
    out.push_back(p);
  }
  return out;
}

}  // namespace

PauliString LogicalSpec::lift(const PauliString& logical) const {
  PauliString out(width);
  for (std::size_t q = 0; q < logical.num_qubits(); ++q) {
    char c = logical.pauli_at(q);
    if (c == 'X') out *= logical_x.at(q);
    if (c == 'Z') out *= logical_z.at(q);
    if (c == 'Y') {
      PauliString y = logical_x.at(q) * logical_z.at(q);
      y.set_phase(y.phase() + 1);
      out *= y;
    }
  }
  out.set_phase(out.phase() + logical.phase());
  return out;
}

LogicalSpec stack_spec(const std::vector<PatchSpec>& patches) {
  LogicalSpec spec;
  for (const auto& p : patches) spec.width += p.num_qubits();
  std::size_t offset = 0;
  for (const auto& p : patches) {
    for (std::size_t k = 0; k < p.stabilizers.size(); ++k) {
      spec.input_stabilizers.push_back(p.stabilizer_pauli(k, spec.width, offset));
      spec.output_stabilizers.push_back(p.stabilizer_pauli(k, spec.width, offset));
    }
    for (const auto& pl : p.plaquettes) spec.input_stabilizers.push_back(PauliString::single(spec.width, offset + pl.ancilla, 'Z'));
    spec.logical_x.push_back(p.logical_x_pauli(spec.width, offset));
    spec.logical_z.push_back(p.logical_z_pauli(spec.width, offset));
    offset += p.num_qubits();
  }
  return spec;
}

bool LogicalAction::same_up_to_pauli(const LogicalAction& other) const {
  auto strip = [](PauliString p) {
    p.set_phase(0);
    return p;
  };
  if (x_images.size() != other.x_images.size()) return false;
  for (std::size_t q = 0; q < x_images.size(); ++q) {
    if (strip(x_images[q]) != strip(other.x_images[q])) return false;
    if (strip(z_images[q]) != strip(other.z_images[q])) return false;
  }
  return true;
}

LogicalAction logical_action(const ScheduledCircuit& circuit, const LogicalSpec& spec, std::uint64_t seed) {
  const std::size_t k = spec.num_logical();
  const std::size_t width = spec.width + k;
  if (circuit.num_qubits() > spec.width) throw std::invalid_argument("circuit wider than the logical spec");
  std::mt19937_64 rng(seed);
  Tableau t(width);
  auto force = [&](const PauliString& p) {
    auto r = t.measure(p, rng, false);
    if (r.outcome) throw std::invalid_argument("input stabilizers are inconsistent: " + p.str());
  };
  for (const auto& s : spec.input_stabilizers) force(embed(s, width));
  for (std::size_t q = 0; q < k; ++q) {
    force(pair_with_ref(spec.logical_x[q], width, spec.width + q, 'X'));
    force(pair_with_ref(spec.logical_z[q], width, spec.width + q, 'Z'));
  }

  TableauRun run = run_tableau(circuit, t, rng);
  for (std::size_t m = 0; m < run.record.size(); ++m) {
    if (spec.free_records.count(m)) continue;
    if (!run.deterministic[m]) throw CodespaceViolation("measurement " + std::to_string(m) + " is random");
    if (run.record[m]) throw CodespaceViolation("measurement " + std::to_string(m) + " flipped");
  }
  for (const auto& s : spec.output_stabilizers)
    if (!t.stabilized_by(embed(s, width))) throw CodespaceViolation("output stabilizer lost: " + s.str());

  LogicalAction out;
  out.record = run.record;
  auto candidates = all_logical_paulis(k);
  for (std::size_t q = 0; q < k; ++q) {
    for (char ref : {'X', 'Z'}) {
      bool found = false;
      for (const auto& cand : candidates) {
        PauliString probe = pair_with_ref(spec.lift(cand), width, spec.width + q, ref);
        auto v = t.peek(probe);
        if (!v.has_value()) continue;
        PauliString image = cand;
        image.set_phase(*v ? 2 : 0);
        (ref == 'X' ? out.x_images : out.z_images).push_back(image);
        found = true;
        break;
      }
      if (!found)
        throw CodespaceViolation(std::string("image of logical ") + ref + std::to_string(q) + " is not a logical operator");
    }
  }
  out.name = clifford_name(out.x_images, out.z_images);
  return out;
}

namespace {

struct NamedGate {
  const char* name;
  std::size_t k;
  std::vector<std::pair<Gate, std::vector<std::uint32_t>>> ops;
};

const std::vector<NamedGate>& named_gates() {
  static const std::vector<NamedGate> kGates = {
      {"I", 1, {}},
      {"X", 1, {{Gate::kX, {0}}}},
      {"Y", 1, {{Gate::kY, {0}}}},
      {"Z", 1, {{Gate::kZ, {0}}}},
      {"S", 1, {{Gate::kS, {0}}}},
      {"S_DAG", 1, {{Gate::kSDag, {0}}}},
      {"H", 1, {{Gate::kH, {0}}}},
      {"I", 2, {}},
      {"CNOT(0->1)", 2, {{Gate::kCnot, {0, 1}}}},
      {"CNOT(1->0)", 2, {{Gate::kCnot, {1, 0}}}},
      {"CZ", 2, {{Gate::kCz, {0, 1}}}},
      {"SWAP", 2, {{Gate::kSwap, {0, 1}}}},
  };
  return kGates;
}

}  // namespace

std::pair<std::vector<PauliString>, std::vector<PauliString>> clifford_images(const std::string& name, std::size_t k) {
  for (const auto& g : named_gates()) {
    if (g.name != name || g.k != k) continue;
    std::vector<PauliString> xs, zs;
    for (std::size_t q = 0; q < k; ++q) {
      PauliString x = PauliString::single(k, q, 'X');
      PauliString z = PauliString::single(k, q, 'Z');
      for (const auto& [gate, targets] : g.ops) {
        conjugate(x, gate, targets);
        conjugate(z, gate, targets);
      }
      xs.push_back(x);
      zs.push_back(z);
    }
    return {xs, zs};
  }
  throw std::invalid_argument("unknown logical gate '" + name + "' on " + std::to_string(k) + " qubits");
}

std::string clifford_name(const std::vector<PauliString>& x_images, const std::vector<PauliString>& z_images) {
  for (const auto& g : named_gates()) {
    if (g.k != x_images.size()) continue;
    auto [xs, zs] = clifford_images(g.name, g.k);
    if (xs == x_images && zs == z_images) return g.name;
  }
  return "unknown";
}

std::vector<std::pair<Amplitude, PauliString>> logical_pauli_sum(const std::string& name, std::size_t k) {
  auto P = [k](const std::string& text) {
    PauliString p(k);
    for (std::size_t q = 0; q < text.size(); ++q) p.set_pauli(q, text[q]);
    return p;
  };
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude one(1, 0), i(0, 1);
  if (k == 1) {
    if (name == "I") return {{one, P("_")}};
    if (name == "X" || name == "Y" || name == "Z") return {{one, P(name)}};
    if (name == "S") return {{(one + i) / 2.0, P("_")}, {(one - i) / 2.0, P("Z")}};
    if (name == "S_DAG") return {{(one - i) / 2.0, P("_")}, {(one + i) / 2.0, P("Z")}};
    if (name == "H") return {{r, P("X")}, {r, P("Z")}};
  }
  if (k == 2) {
    if (name == "I") return {{one, P("__")}};
    if (name == "CNOT(0->1)") return {{0.5, P("__")}, {0.5, P("Z_")}, {0.5, P("_X")}, {-0.5, P("ZX")}};
    if (name == "CNOT(1->0)") return {{0.5, P("__")}, {0.5, P("_Z")}, {0.5, P("X_")}, {-0.5, P("XZ")}};
    if (name == "CZ") return {{0.5, P("__")}, {0.5, P("Z_")}, {0.5, P("_Z")}, {-0.5, P("ZZ")}};
    if (name == "SWAP") return {{0.5, P("__")}, {0.5, P("XX")}, {0.5, P("YY")}, {0.5, P("ZZ")}};
  }
  throw std::invalid_argument("no Pauli expansion for '" + name + "'");
}

DenseCheck dense_logical_check(const ScheduledCircuit& circuit, const LogicalSpec& spec, const std::string& expected,
                               std::uint64_t seed) {
  const std::size_t k = spec.num_logical();
  const std::size_t width = spec.width + k;
  if (width > DenseState::kMaxQubits) throw std::invalid_argument("register too wide for the dense oracle");
  DenseState psi(width);
  for (const auto& s : spec.input_stabilizers) psi.project(embed(s, width), false);
  for (std::size_t q = 0; q < k; ++q) {
    psi.project(pair_with_ref(spec.logical_x[q], width, spec.width + q, 'X'), false);
    psi.project(pair_with_ref(spec.logical_z[q], width, spec.width + q, 'Z'), false);
  }

  DenseState want = psi;
  std::vector<std::pair<Amplitude, PauliString>> terms;
  for (const auto& [c, p] : logical_pauli_sum(expected, k)) terms.emplace_back(c, embed(spec.lift(p), width));
  want.apply_pauli_sum(terms);
  want.normalize();

  std::mt19937_64 rng(seed);
  std::vector<bool> zeros(circuit.num_measurements(), false);
  DenseRun run = run_dense(circuit, psi, rng, zeros);
  DenseCheck out;
  for (std::size_t m = 0; m < run.probability.size(); ++m)
    if (!spec.free_records.count(m)) out.min_record_probability = std::min(out.min_record_probability, run.probability[m]);
  out.fidelity = want.fidelity(psi);
  return out;
}

}  // namespace foldloop
