#include "foldloop/tableau.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "foldloop/errors.hpp"

namespace foldloop {

namespace {

inline bool get_bit(const std::uint64_t* w, std::size_t q) { return (w[q >> 6] >> (q & 63)) & 1; }
inline void flip_bit(std::uint64_t* w, std::size_t q) { w[q >> 6] ^= std::uint64_t{1} << (q & 63); }
inline void put_bit(std::uint64_t* w, std::size_t q, bool v) {
  std::uint64_t m = std::uint64_t{1} << (q & 63);
  w[q >> 6] = v ? (w[q >> 6] | m) : (w[q >> 6] & ~m);
}

}  // namespace

Tableau::Tableau(std::size_t num_qubits)
    : n_(num_qubits),
      words_((num_qubits + 63) / 64),
      xs_(2 * num_qubits * words_, 0),
      zs_(2 * num_qubits * words_, 0),
      signs_(2 * num_qubits, 0) {
  for (std::size_t q = 0; q < n_; ++q) {
    flip_bit(xrow(q), q);
    flip_bit(zrow(n_ + q), q);
  }
}

void Tableau::h(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool xb = get_bit(xrow(r), q);
    bool zb = get_bit(zrow(r), q);
    signs_[r] ^= xb & zb;
    put_bit(xrow(r), q, zb);
    put_bit(zrow(r), q, xb);
  }
}

void Tableau::s(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool xb = get_bit(xrow(r), q);
    bool zb = get_bit(zrow(r), q);
    signs_[r] ^= xb & zb;
    if (xb) flip_bit(zrow(r), q);
  }
}

void Tableau::s_dag(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool xb = get_bit(xrow(r), q);
    bool zb = get_bit(zrow(r), q);
    signs_[r] ^= xb & !zb;
    if (xb) flip_bit(zrow(r), q);
  }
}

void Tableau::x(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) signs_[r] ^= get_bit(zrow(r), q);
}

void Tableau::y(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) signs_[r] ^= get_bit(xrow(r), q) ^ get_bit(zrow(r), q);
}

void Tableau::z(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) signs_[r] ^= get_bit(xrow(r), q);
}

void Tableau::cnot(std::size_t c, std::size_t t) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool xc = get_bit(xrow(r), c);
    bool zc = get_bit(zrow(r), c);
    bool xt = get_bit(xrow(r), t);
    bool zt = get_bit(zrow(r), t);
    signs_[r] ^= xc & zt & !(xt ^ zc);
    if (xc) flip_bit(xrow(r), t);
    if (zt) flip_bit(zrow(r), c);
  }
}

void Tableau::cz(std::size_t a, std::size_t b) {
  h(b);
  cnot(a, b);
  h(b);
}

void Tableau::swap(std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    bool xa = get_bit(xrow(r), a), za = get_bit(zrow(r), a);
    bool xb = get_bit(xrow(r), b), zb = get_bit(zrow(r), b);
    put_bit(xrow(r), a, xb);
    put_bit(zrow(r), a, zb);
    put_bit(xrow(r), b, xa);
    put_bit(zrow(r), b, za);
  }
}

void Tableau::apply(Gate g, const std::vector<std::uint32_t>& t) {
  for (auto q : t)
    if (q >= n_) throw std::out_of_range("qubit index out of range");
  switch (g) {
    case Gate::kH: for (auto q : t) h(q); return;
    case Gate::kS: for (auto q : t) s(q); return;
    case Gate::kSDag: for (auto q : t) s_dag(q); return;
    case Gate::kX: for (auto q : t) x(q); return;
    case Gate::kY: for (auto q : t) y(q); return;
    case Gate::kZ: for (auto q : t) z(q); return;
    case Gate::kCnot: for (std::size_t k = 0; k + 1 < t.size(); k += 2) cnot(t[k], t[k + 1]); return;
    case Gate::kCz: for (std::size_t k = 0; k + 1 < t.size(); k += 2) cz(t[k], t[k + 1]); return;
    case Gate::kSwap: for (std::size_t k = 0; k + 1 < t.size(); k += 2) swap(t[k], t[k + 1]); return;
    case Gate::kT:
    case Gate::kTDag:
      throw UnsupportedGateError(std::string("gate ") + gate_name(g) + " is not Clifford");
    default:
      throw std::invalid_argument(std::string("gate ") + gate_name(g) + " is not unitary");
  }
}

void Tableau::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size mismatch");
  for (std::size_t r = 0; r < 2 * n_; ++r) signs_[r] ^= anticommutes_with(r, p);
}

bool Tableau::anticommutes_with(std::size_t r, const PauliString& p) const {
  const auto& px = p.x_words();
  const auto& pz = p.z_words();
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < words_; ++k) acc ^= (xrow(r)[k] & pz[k]) ^ (zrow(r)[k] & px[k]);
  return std::popcount(acc) & 1;
}

void Tableau::rowmul(std::size_t h, std::size_t i) {
  int extra = mul_words_log_i(xrow(h), zrow(h), xrow(i), zrow(i), words_);
  int total = (2 * signs_[h] + 2 * signs_[i] + extra) & 3;
  if (total & 1) throw std::logic_error("row product is not Hermitian");
  signs_[h] = total == 2;
}

PauliString Tableau::row(std::size_t r) const {
  PauliString p(n_);
  for (std::size_t k = 0; k < words_; ++k) {
    p.x_words()[k] = xrow(r)[k];
    p.z_words()[k] = zrow(r)[k];
  }
  p.set_phase(signs_[r] ? 2 : 0);
  return p;
}

void Tableau::set_row(std::size_t r, const PauliString& p) {
  for (std::size_t k = 0; k < words_; ++k) {
    xrow(r)[k] = p.x_words()[k];
    zrow(r)[k] = p.z_words()[k];
  }
  signs_[r] = p.negative();
}

std::vector<PauliString> Tableau::stabilizers() const {
  std::vector<PauliString> out;
  out.reserve(n_);
  for (std::size_t k = 0; k < n_; ++k) out.push_back(stabilizer(k));
  return out;
}

std::optional<bool> Tableau::peek(const PauliString& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size mismatch");
  if (!p.hermitian()) throw std::invalid_argument("measured Pauli must be Hermitian");
  for (std::size_t r = n_; r < 2 * n_; ++r)
    if (anticommutes_with(r, p)) return std::nullopt;
  PauliString acc(n_);
  for (std::size_t k = 0; k < n_; ++k)
    if (anticommutes_with(k, p)) acc *= stabilizer(k);
  // acc = +-p up to the sign carried by p itself.
  bool acc_negative = acc.phase() == 2;
  return acc_negative != p.negative();
}

bool Tableau::stabilized_by(const PauliString& p) const {
  auto v = peek(p);
  return v.has_value() && !*v;
}

MeasureResult Tableau::measure(const PauliString& p, std::mt19937_64& rng, std::optional<bool> forced) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size mismatch");
  if (!p.hermitian()) throw std::invalid_argument("measured Pauli must be Hermitian");
  std::size_t pivot = 2 * n_;
  for (std::size_t r = n_; r < 2 * n_; ++r) {
    if (anticommutes_with(r, p)) {
      pivot = r;
      break;
    }
  }
  if (pivot == 2 * n_) return MeasureResult{*peek(p), true};
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    if (r == pivot || r == pivot - n_) continue;
    if (anticommutes_with(r, p)) rowmul(r, pivot);
  }
  bool outcome = forced.has_value() ? *forced : static_cast<bool>(rng() & 1);
  for (std::size_t k = 0; k < words_; ++k) {
    xrow(pivot - n_)[k] = xrow(pivot)[k];
    zrow(pivot - n_)[k] = zrow(pivot)[k];
  }
  signs_[pivot - n_] = signs_[pivot];
  PauliString q = p;
  q.set_phase((p.phase() + (outcome ? 2 : 0)) & 3);
  set_row(pivot, q);
  return MeasureResult{outcome, false};
}

MeasureResult Tableau::measure_z(std::size_t q, std::mt19937_64& rng, std::optional<bool> forced) {
  return measure(PauliString::single(n_, q, 'Z'), rng, forced);
}

MeasureResult Tableau::measure_y(std::size_t q, std::mt19937_64& rng, std::optional<bool> forced) {
  return measure(PauliString::single(n_, q, 'Y'), rng, forced);
}

void Tableau::reset(std::size_t q, std::mt19937_64& rng) {
  if (measure_z(q, rng).outcome) x(q);
}

bool Tableau::valid() const {
  for (std::size_t a = 0; a < 2 * n_; ++a) {
    PauliString pa = row(a);
    for (std::size_t b = a + 1; b < 2 * n_; ++b) {
      bool should_anticommute = (a < n_ && b == a + n_);
      if (anticommutes_with(b, pa) != should_anticommute) return false;
    }
  }
  return true;
}

TableauRun run_tableau(const ScheduledCircuit& circuit, Tableau& state, std::mt19937_64& rng) {
  if (circuit.num_qubits() > state.num_qubits()) throw std::invalid_argument("circuit wider than state");
  TableauRun run;
  for (const auto& op : circuit.ops()) {
    bool fire = true;
    for (const auto& c : op.conditions) fire = fire && run.record.at(c.record) == c.value;
    switch (op.gate) {
      case Gate::kMeasure:
      case Gate::kMeasureY:
        for (auto q : op.targets) {
          auto r = op.gate == Gate::kMeasure ? state.measure_z(q, rng) : state.measure_y(q, rng);
          run.record.push_back(r.outcome);
          run.deterministic.push_back(r.deterministic);
        }
        break;
      case Gate::kMeasurePauli: {
        PauliString p(state.num_qubits());
        for (std::size_t k = 0; k < op.targets.size(); ++k) p.set_pauli(op.targets[k], op.paulis[k]);
        auto r = state.measure(p, rng);
        run.record.push_back(r.outcome);
        run.deterministic.push_back(r.deterministic);
        break;
      }
      case Gate::kReset:
        if (fire)
          for (auto q : op.targets) state.reset(q, rng);
        break;
      default:
        if (fire) state.apply(op.gate, op.targets);
    }
  }
  return run;
}

void conjugate(PauliString& p, Gate g, const std::vector<std::uint32_t>& t) {
  auto apply1 = [&p](std::size_t q, auto&& fn) {
    bool xb = p.x(q), zb = p.z(q);
    int phase = p.phase();
    fn(xb, zb, phase);
    p.set_x(q, xb);
    p.set_z(q, zb);
    p.set_phase(phase);
  };
  switch (g) {
    case Gate::kH:
      for (auto q : t) apply1(q, [](bool& x, bool& z, int& ph) { if (x && z) ph += 2; std::swap(x, z); });
      return;
    case Gate::kS:
      for (auto q : t) apply1(q, [](bool& x, bool& z, int& ph) { if (x && z) ph += 2; z ^= x; });
      return;
    case Gate::kSDag:
      for (auto q : t) apply1(q, [](bool& x, bool& z, int& ph) { if (x && !z) ph += 2; z ^= x; });
      return;
    case Gate::kX:
      for (auto q : t) apply1(q, [](bool&, bool& z, int& ph) { if (z) ph += 2; });
      return;
    case Gate::kY:
      for (auto q : t) apply1(q, [](bool& x, bool& z, int& ph) { if (x ^ z) ph += 2; });
      return;
    case Gate::kZ:
      for (auto q : t) apply1(q, [](bool& x, bool&, int& ph) { if (x) ph += 2; });
      return;
    case Gate::kCnot:
      for (std::size_t k = 0; k + 1 < t.size(); k += 2) {
        std::size_t c = t[k], u = t[k + 1];
        bool xc = p.x(c), zc = p.z(c), xt = p.x(u), zt = p.z(u);
        if (xc && zt && !(xt ^ zc)) p.set_phase(p.phase() + 2);
        p.set_x(u, xt ^ xc);
        p.set_z(c, zc ^ zt);
      }
      return;
    case Gate::kCz:
      for (std::size_t k = 0; k + 1 < t.size(); k += 2) {
        conjugate(p, Gate::kH, {t[k + 1]});
        conjugate(p, Gate::kCnot, {t[k], t[k + 1]});
        conjugate(p, Gate::kH, {t[k + 1]});
      }
      return;
    case Gate::kSwap:
      for (std::size_t k = 0; k + 1 < t.size(); k += 2) {
        char a = p.pauli_at(t[k]), b = p.pauli_at(t[k + 1]);
        p.set_pauli(t[k], b);
        p.set_pauli(t[k + 1], a);
      }
      return;
    default:
      throw UnsupportedGateError(std::string("cannot conjugate by ") + gate_name(g));
  }
}

}  // namespace foldloop
