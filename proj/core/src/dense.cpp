#include "foldloop/dense.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace foldloop {

namespace {

constexpr Amplitude kI(0.0, 1.0);

Amplitude i_power(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::uint64_t low_word(const std::vector<std::uint64_t>& w) { return w.empty() ? 0 : w[0]; }

}  // namespace

DenseState::DenseState(std::size_t num_qubits) : n_(num_qubits) {
  if (num_qubits > kMaxQubits) throw std::invalid_argument("dense state limited to 20 qubits");
  amps_.assign(std::size_t{1} << n_, Amplitude(0));
  amps_[0] = 1;
}

DenseState DenseState::from_amplitudes(std::vector<Amplitude> amps) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < amps.size()) ++n;
  if ((std::size_t{1} << n) != amps.size()) throw std::invalid_argument("amplitude count is not a power of two");
  DenseState s(n);
  s.amps_ = std::move(amps);
  return s;
}

void DenseState::apply_1q(std::size_t q, const Amplitude m[2][2]) {
  std::size_t bit = std::size_t{1} << q;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) continue;
    Amplitude a0 = amps_[b];
    Amplitude a1 = amps_[b | bit];
    amps_[b] = m[0][0] * a0 + m[0][1] * a1;
    amps_[b | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void DenseState::apply(Gate g, const std::vector<std::uint32_t>& t) {
  for (auto q : t)
    if (q >= n_) throw std::out_of_range("qubit index out of range");
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude w = std::polar(1.0, M_PI / 4);
  switch (g) {
    case Gate::kH: {
      const Amplitude m[2][2] = {{r, r}, {r, -r}};
      for (auto q : t) apply_1q(q, m);
      return;
    }
    case Gate::kS:
    case Gate::kSDag:
    case Gate::kT:
    case Gate::kTDag:
    case Gate::kZ: {
      Amplitude ph = g == Gate::kS ? kI : g == Gate::kSDag ? -kI : g == Gate::kT ? w : g == Gate::kTDag ? std::conj(w) : Amplitude(-1);
      for (auto q : t) {
        std::size_t bit = std::size_t{1} << q;
        for (std::size_t b = 0; b < amps_.size(); ++b)
          if (b & bit) amps_[b] *= ph;
      }
      return;
    }
    case Gate::kX: {
      const Amplitude m[2][2] = {{0, 1}, {1, 0}};
      for (auto q : t) apply_1q(q, m);
      return;
    }
    case Gate::kY: {
      const Amplitude m[2][2] = {{0, -kI}, {kI, 0}};
      for (auto q : t) apply_1q(q, m);
      return;
    }
    case Gate::kCnot:
      for (std::size_t k = 0; k + 1 < t.size(); k += 2) {
        std::size_t cb = std::size_t{1} << t[k], tb = std::size_t{1} << t[k + 1];
        for (std::size_t b = 0; b < amps_.size(); ++b)
          if ((b & cb) && !(b & tb)) std::swap(amps_[b], amps_[b | tb]);
      }
      return;
    case Gate::kCz:
      for (std::size_t k = 0; k + 1 < t.size(); k += 2) {
        std::size_t ab = std::size_t{1} << t[k], bb = std::size_t{1} << t[k + 1];
        for (std::size_t b = 0; b < amps_.size(); ++b)
          if ((b & ab) && (b & bb)) amps_[b] = -amps_[b];
      }
      return;
    case Gate::kSwap:
      for (std::size_t k = 0; k + 1 < t.size(); k += 2) {
        std::size_t ab = std::size_t{1} << t[k], bb = std::size_t{1} << t[k + 1];
        for (std::size_t b = 0; b < amps_.size(); ++b)
          if ((b & ab) && !(b & bb)) std::swap(amps_[b], amps_[(b ^ ab) | bb]);
      }
      return;
    default:
      throw std::invalid_argument(std::string("gate ") + gate_name(g) + " is not unitary");
  }
}

void DenseState::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size mismatch");
  std::uint64_t xm = low_word(p.x_words());
  std::uint64_t zm = low_word(p.z_words());
  Amplitude global = i_power(p.phase() + std::popcount(xm & zm));
  std::vector<Amplitude> out(amps_.size());
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    Amplitude a = amps_[b] * global;
    if (std::popcount(b & zm) & 1) a = -a;
    out[b ^ xm] = a;
  }
  amps_ = std::move(out);
}

void DenseState::apply_pauli_sum(const std::vector<std::pair<Amplitude, PauliString>>& terms) {
  std::vector<Amplitude> acc(amps_.size(), Amplitude(0));
  for (const auto& [c, p] : terms) {
    DenseState copy = *this;
    copy.apply_pauli(p);
    for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += c * copy.amps_[b];
  }
  amps_ = std::move(acc);
}

double DenseState::probability(const PauliString& p, bool outcome) const {
  DenseState copy = *this;
  copy.apply_pauli(p);
  double expectation = inner(copy).real();
  double nrm = norm();
  return (nrm * nrm + (outcome ? -expectation : expectation)) / (2 * nrm * nrm);
}

double DenseState::project(const PauliString& p, bool outcome) {
  double prob = probability(p, outcome);
  DenseState copy = *this;
  copy.apply_pauli(p);
  double sign = outcome ? -1.0 : 1.0;
  for (std::size_t b = 0; b < amps_.size(); ++b) amps_[b] = 0.5 * (amps_[b] + sign * copy.amps_[b]);
  if (prob > 0) normalize();
  return prob;
}

MeasureResult DenseState::measure(const PauliString& p, std::mt19937_64& rng, std::optional<bool> forced) {
  double p1 = probability(p, true);
  bool deterministic = p1 < 1e-12 || p1 > 1 - 1e-12;
  bool outcome;
  if (deterministic) {
    outcome = p1 > 0.5;
  } else if (forced.has_value()) {
    outcome = *forced;
  } else {
    outcome = std::uniform_real_distribution<double>(0, 1)(rng) < p1;
  }
  project(p, outcome);
  return MeasureResult{outcome, deterministic};
}

double DenseState::norm() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void DenseState::normalize() {
  double nrm = norm();
  if (nrm == 0) throw std::runtime_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= nrm;
}

Amplitude DenseState::inner(const DenseState& other) const {
  if (other.n_ != n_) throw std::invalid_argument("state size mismatch");
  Amplitude s(0);
  for (std::size_t b = 0; b < amps_.size(); ++b) s += std::conj(amps_[b]) * other.amps_[b];
  return s;
}

double DenseState::fidelity(const DenseState& other) const { return std::norm(inner(other)); }

DenseRun run_dense(const ScheduledCircuit& circuit, DenseState& state, std::mt19937_64& rng,
                   const std::vector<bool>& forced) {
  if (circuit.num_qubits() > state.num_qubits()) throw std::invalid_argument("circuit wider than state");
  DenseRun run;
  auto next_forced = [&]() -> std::optional<bool> {
    std::size_t k = run.record.size();
    if (k < forced.size()) return static_cast<bool>(forced[k]);
    return std::nullopt;
  };
  auto record = [&](const PauliString& p) {
    auto f = next_forced();
    bool outcome;
    double prob;
    if (f.has_value()) {
      outcome = *f;
      prob = state.probability(p, outcome);
      if (prob > 0) state.project(p, outcome);
    } else {
      auto r = state.measure(p, rng);
      outcome = r.outcome;
      prob = r.deterministic ? 1.0 : state.probability(p, outcome);
    }
    run.record.push_back(outcome);
    run.probability.push_back(prob);
  };
  std::size_t n = state.num_qubits();
  for (const auto& op : circuit.ops()) {
    bool fire = true;
    for (const auto& c : op.conditions) fire = fire && run.record.at(c.record) == c.value;
    switch (op.gate) {
      case Gate::kMeasure:
        for (auto q : op.targets) record(PauliString::single(n, q, 'Z'));
        break;
      case Gate::kMeasureY:
        for (auto q : op.targets) record(PauliString::single(n, q, 'Y'));
        break;
      case Gate::kMeasurePauli: {
        PauliString p(n);
        for (std::size_t k = 0; k < op.targets.size(); ++k) p.set_pauli(op.targets[k], op.paulis[k]);
        record(p);
        break;
      }
      case Gate::kReset:
        if (fire)
          for (auto q : op.targets) {
            PauliString z = PauliString::single(n, q, 'Z');
            if (state.measure(z, rng).outcome) state.apply(Gate::kX, {q});
          }
        break;
      default:
        if (fire) state.apply(op.gate, op.targets);
    }
  }
  return run;
}

double fidelity_with_stabilizer_state(const DenseState& dense, const Tableau& tableau) {
  if (dense.num_qubits() != tableau.num_qubits()) throw std::invalid_argument("state size mismatch");
  DenseState projected = dense;
  double total = 1.0;
  for (std::size_t k = 0; k < tableau.num_qubits(); ++k) {
    double p = projected.probability(tableau.stabilizer(k), false);
    total *= p;
    if (p < 1e-15) return 0.0;
    projected.project(tableau.stabilizer(k), false);
  }
  return total;
}

}  // namespace foldloop
