#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "foldloop/pauli.hpp"

namespace foldloop {

// Abelian group of Hermitian Paulis kept in row-echelon form over GF(2) with exact signs.
class PauliGroup {
 public:
  explicit PauliGroup(std::size_t num_qubits) : n_(num_qubits) {}
  PauliGroup(std::size_t num_qubits, const std::vector<PauliString>& generators);

  std::size_t num_qubits() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<PauliString>& generators() const { return rows_; }

  // Adds a generator; returns false when it was already dependent.
  bool add(const PauliString& p);

  // Reduces p against the pivots. The remainder is identity (phase 0 or 2) iff +-p is in the group.
  PauliString reduce(const PauliString& p) const;
  bool contains_up_to_sign(const PauliString& p) const;
  // +1 when +p is in the group, -1 when -p is, nullopt otherwise.
  std::optional<int> sign_of(const PauliString& p) const;

  bool same_group(const PauliGroup& other) const;

 private:
  // Pivot column: x bits come first (column q), then z bits (column n + q).
  static std::optional<std::size_t> leading(const PauliString& p, std::size_t n);
  static bool bit(const PauliString& p, std::size_t col, std::size_t n);

  std::size_t n_;
  std::vector<PauliString> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace foldloop
