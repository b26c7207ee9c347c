#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "foldloop/circuit.hpp"
#include "foldloop/pauli.hpp"

namespace foldloop {

struct MeasureResult {
  bool outcome = false;  // true for the -1 eigenvalue
  bool deterministic = false;
};

// Aaronson-Gottesman tableau: rows [0, n) are destabilizers, [n, 2n) stabilizers.
class Tableau {
 public:
  explicit Tableau(std::size_t num_qubits);

  std::size_t num_qubits() const { return n_; }

  void h(std::size_t q);
  void s(std::size_t q);
  void s_dag(std::size_t q);
  void x(std::size_t q);
  void y(std::size_t q);
  void z(std::size_t q);
  void cnot(std::size_t control, std::size_t target);
  void cz(std::size_t a, std::size_t b);
  void swap(std::size_t a, std::size_t b);

  // Unitary gates only; T throws UnsupportedGateError.
  void apply(Gate g, const std::vector<std::uint32_t>& targets);
  void apply_pauli(const PauliString& p);

  // Measures a Hermitian Pauli product. `forced` picks the outcome of a random measurement.
  MeasureResult measure(const PauliString& p, std::mt19937_64& rng, std::optional<bool> forced = std::nullopt);
  MeasureResult measure_z(std::size_t q, std::mt19937_64& rng, std::optional<bool> forced = std::nullopt);
  MeasureResult measure_y(std::size_t q, std::mt19937_64& rng, std::optional<bool> forced = std::nullopt);
  void reset(std::size_t q, std::mt19937_64& rng);

  // Outcome of measuring p when it is determined by the state, otherwise nullopt.
  std::optional<bool> peek(const PauliString& p) const;
  // True when +p stabilizes the state.
  bool stabilized_by(const PauliString& p) const;

  PauliString stabilizer(std::size_t k) const { return row(n_ + k); }
  PauliString destabilizer(std::size_t k) const { return row(k); }
  std::vector<PauliString> stabilizers() const;

  // Checks the symplectic pairing between destabilizer and stabilizer rows.
  bool valid() const;

 private:
  std::uint64_t* xrow(std::size_t r) { return &xs_[r * words_]; }
  std::uint64_t* zrow(std::size_t r) { return &zs_[r * words_]; }
  const std::uint64_t* xrow(std::size_t r) const { return &xs_[r * words_]; }
  const std::uint64_t* zrow(std::size_t r) const { return &zs_[r * words_]; }
  bool anticommutes_with(std::size_t r, const PauliString& p) const;
  // row h <- row h * row i, for commuting rows.
  void rowmul(std::size_t h, std::size_t i);
  PauliString row(std::size_t r) const;
  void set_row(std::size_t r, const PauliString& p);

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  std::vector<std::uint8_t> signs_;
};

// Runs a circuit on a tableau. Returns the measurement record.
struct TableauRun {
  std::vector<bool> record;
  std::vector<bool> deterministic;
};
TableauRun run_tableau(const ScheduledCircuit& circuit, Tableau& state, std::mt19937_64& rng);

// Heisenberg conjugation p <- U p U^dagger for Clifford unitaries.
void conjugate(PauliString& p, Gate g, const std::vector<std::uint32_t>& targets);

}  // namespace foldloop
