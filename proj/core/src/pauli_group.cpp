#include "foldloop/pauli_group.hpp"

#include <stdexcept>

namespace foldloop {

PauliGroup::PauliGroup(std::size_t num_qubits, const std::vector<PauliString>& generators) : n_(num_qubits) {
  for (const auto& g : generators) add(g);
}

bool PauliGroup::bit(const PauliString& p, std::size_t col, std::size_t n) {
  return col < n ? p.x(col) : p.z(col - n);
}

std::optional<std::size_t> PauliGroup::leading(const PauliString& p, std::size_t n) {
  for (std::size_t c = 0; c < 2 * n; ++c)
    if (bit(p, c, n)) return c;
  return std::nullopt;
}

PauliString PauliGroup::reduce(const PauliString& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size mismatch");
  PauliString r = p;
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (bit(r, pivots_[k], n_)) r *= rows_[k];
  return r;
}

bool PauliGroup::add(const PauliString& p) {
  if (!p.hermitian()) throw std::invalid_argument("group generators must be Hermitian");
  PauliString r = reduce(p);
  auto lead = leading(r, n_);
  if (!lead) return false;
  for (const auto& row : rows_)
    if (!row.commutes(r)) throw std::invalid_argument("generators do not commute");
  // Keep the echelon form fully reduced so reduce() is a single pass.
  for (auto& row : rows_)
    if (bit(row, *lead, n_)) row *= r;
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < *lead) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), r);
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), *lead);
  return true;
}

bool PauliGroup::contains_up_to_sign(const PauliString& p) const { return reduce(p).is_identity(); }

std::optional<int> PauliGroup::sign_of(const PauliString& p) const {
  PauliString r = reduce(p);
  if (!r.is_identity()) return std::nullopt;
  if (r.phase() == 0) return 1;
  if (r.phase() == 2) return -1;
  throw std::logic_error("non-Hermitian remainder");
}

bool PauliGroup::same_group(const PauliGroup& other) const {
  if (other.n_ != n_ || other.rank() != rank()) return false;
  for (const auto& g : other.rows_)
    if (sign_of(g) != std::optional<int>(1)) return false;
  return true;
}

}  // namespace foldloop
