#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace foldloop {

// Pauli operator i^phase * prod_q X^x_q Z^z_q with (x,z)=(1,1) read as Y.
// Bits are packed 64 per word.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);

  // Parses "+XYZ_", "-IZZ", "iX". '_' and 'I' both mean identity.
  static PauliString from_text(const std::string& text);
  static PauliString single(std::size_t num_qubits, std::size_t qubit, char pauli);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_words() const { return xs_.size(); }

  bool x(std::size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
  bool z(std::size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
  void set_x(std::size_t q, bool v);
  void set_z(std::size_t q, bool v);
  char pauli_at(std::size_t q) const;
  void set_pauli(std::size_t q, char pauli);

  // Power of i in front of the operator, 0..3.
  int phase() const { return phase_; }
  void set_phase(int p) { phase_ = p & 3; }
  // True when the operator is Hermitian with sign -1.
  bool negative() const { return phase_ == 2; }
  bool hermitian() const { return (phase_ & 1) == 0; }

  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  bool commutes(const PauliString& other) const;
  bool is_identity() const;

  // this <- this * rhs, tracking the phase exactly.
  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }

  bool operator==(const PauliString& other) const = default;

  std::string str() const;

  std::vector<std::uint64_t>& x_words() { return xs_; }
  std::vector<std::uint64_t>& z_words() { return zs_; }
  const std::vector<std::uint64_t>& x_words() const { return xs_; }
  const std::vector<std::uint64_t>& z_words() const { return zs_; }

 private:
  std::size_t num_qubits_ = 0;
  int phase_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
};

// Multiplies (x1,z1) by (x2,z2) in place over `words` words and returns the
// extra power of i produced. Shared with the tableau row arithmetic.
int mul_words_log_i(std::uint64_t* x1, std::uint64_t* z1, const std::uint64_t* x2, const std::uint64_t* z2,
                    std::size_t words);

}  // namespace foldloop
