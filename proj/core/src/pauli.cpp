#include "foldloop/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace foldloop {

PauliString::PauliString(std::size_t num_qubits)
    : num_qubits_(num_qubits), xs_((num_qubits + 63) / 64, 0), zs_((num_qubits + 63) / 64, 0) {}

PauliString PauliString::from_text(const std::string& text) {
  std::size_t i = 0;
  int phase = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') phase = 2;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    phase += 1;
    ++i;
  }
  PauliString p(text.size() - i);
  for (std::size_t q = 0; i < text.size(); ++i, ++q) p.set_pauli(q, text[i]);
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, char pauli) {
  PauliString p(num_qubits);
  p.set_pauli(qubit, pauli);
  return p;
}

void PauliString::set_x(std::size_t q, bool v) {
  std::uint64_t m = std::uint64_t{1} << (q & 63);
  xs_[q >> 6] = v ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
}

void PauliString::set_z(std::size_t q, bool v) {
  std::uint64_t m = std::uint64_t{1} << (q & 63);
  zs_[q >> 6] = v ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

char PauliString::pauli_at(std::size_t q) const {
  static const char kNames[4] = {'_', 'X', 'Z', 'Y'};
  return kNames[x(q) | (z(q) << 1)];
}

void PauliString::set_pauli(std::size_t q, char pauli) {
  if (q >= num_qubits_) throw std::out_of_range("qubit index out of range");
  switch (pauli) {
    case 'I':
    case '_': set_x(q, false); set_z(q, false); break;
    case 'X': set_x(q, true); set_z(q, false); break;
    case 'Y': set_x(q, true); set_z(q, true); break;
    case 'Z': set_x(q, false); set_z(q, true); break;
    default: throw std::invalid_argument(std::string("bad Pauli character '") + pauli + "'");
  }
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < xs_.size(); ++k) w += std::popcount(xs_[k] | zs_[k]);
  return w;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < num_qubits_; ++q)
    if (x(q) || z(q)) out.push_back(q);
  return out;
}

bool PauliString::commutes(const PauliString& other) const {
  if (other.num_qubits_ != num_qubits_) throw std::invalid_argument("Pauli size mismatch");
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < xs_.size(); ++k) acc ^= (xs_[k] & other.zs_[k]) ^ (zs_[k] & other.xs_[k]);
  return (std::popcount(acc) & 1) == 0;
}

bool PauliString::is_identity() const {
  for (std::size_t k = 0; k < xs_.size(); ++k)
    if (xs_[k] | zs_[k]) return false;
  return true;
}

int mul_words_log_i(std::uint64_t* x1, std::uint64_t* z1, const std::uint64_t* x2, const std::uint64_t* z2,
                    std::size_t words) {
  std::uint64_t cnt1 = 0;
  std::uint64_t cnt2 = 0;
  for (std::size_t k = 0; k < words; ++k) {
    std::uint64_t old_x1 = x1[k];
    std::uint64_t old_z1 = z1[k];
    x1[k] ^= x2[k];
    z1[k] ^= z2[k];
    std::uint64_t x1z2 = old_x1 & z2[k];
    std::uint64_t anti = (x2[k] & old_z1) ^ x1z2;
    cnt2 ^= (cnt1 ^ x1[k] ^ z1[k] ^ x1z2) & anti;
    cnt1 ^= anti;
  }
  int s = std::popcount(cnt1);
  s ^= std::popcount(cnt2) << 1;
  return s & 3;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  if (rhs.num_qubits_ != num_qubits_) throw std::invalid_argument("Pauli size mismatch");
  int extra = mul_words_log_i(xs_.data(), zs_.data(), rhs.xs_.data(), rhs.zs_.data(), xs_.size());
  phase_ = (phase_ + rhs.phase_ + extra) & 3;
  return *this;
}

std::string PauliString::str() const {
  static const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase_];
  for (std::size_t q = 0; q < num_qubits_; ++q) out += pauli_at(q);
  return out;
}

}  // namespace foldloop
