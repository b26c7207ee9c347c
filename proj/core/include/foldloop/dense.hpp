#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "foldloop/circuit.hpp"
#include "foldloop/pauli.hpp"
#include "foldloop/tableau.hpp"

namespace foldloop {

using Amplitude = std::complex<double>;

// State vector on at most kMaxQubits qubits; qubit q is bit q of the basis index.
class DenseState {
 public:
  static constexpr std::size_t kMaxQubits = 20;

  explicit DenseState(std::size_t num_qubits);
  static DenseState from_amplitudes(std::vector<Amplitude> amps);

  std::size_t num_qubits() const { return n_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude amplitude(std::size_t basis) const { return amps_.at(basis); }

  void apply(Gate g, const std::vector<std::uint32_t>& targets);
  void apply_1q(std::size_t q, const Amplitude m[2][2]);
  void apply_pauli(const PauliString& p);
  // |psi> <- sum_k c_k P_k |psi>, not renormalized.
  void apply_pauli_sum(const std::vector<std::pair<Amplitude, PauliString>>& terms);

  // Probability of the (-1)^outcome eigenspace of a Hermitian Pauli.
  double probability(const PauliString& p, bool outcome) const;
  // Projects onto that eigenspace and renormalizes; returns the pre-projection probability.
  double project(const PauliString& p, bool outcome);
  MeasureResult measure(const PauliString& p, std::mt19937_64& rng, std::optional<bool> forced = std::nullopt);

  double norm() const;
  void normalize();
  Amplitude inner(const DenseState& other) const;  // <this|other>
  double fidelity(const DenseState& other) const;  // |<this|other>|^2 for normalized states

 private:
  std::size_t n_;
  std::vector<Amplitude> amps_;
};

struct DenseRun {
  std::vector<bool> record;
  std::vector<double> probability;  // probability of the recorded outcome
};
// `forced` supplies outcomes in record order; missing entries are sampled.
DenseRun run_dense(const ScheduledCircuit& circuit, DenseState& state, std::mt19937_64& rng,
                   const std::vector<bool>& forced = {});

// Fidelity of a dense state with the stabilizer state held by a tableau of the same width.
double fidelity_with_stabilizer_state(const DenseState& dense, const Tableau& tableau);

}  // namespace foldloop
