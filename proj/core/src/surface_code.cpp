#include "foldloop/surface_code.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "foldloop/pauli_group.hpp"
#include "foldloop/tableau.hpp"

namespace foldloop {

const char* patch_kind_name(PatchKind k) { return k == PatchKind::kRotated ? "rotated" : "folded"; }

PatchKind patch_kind_from_name(const std::string& name) {
  if (name == "rotated") return PatchKind::kRotated;
  if (name == "folded") return PatchKind::kFolded;
  throw std::invalid_argument("unknown patch kind '" + name + "'");
}

PatchSpec build_patch(int d, PatchKind kind) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("distance must be odd and at least 3, got " + std::to_string(d));
  PatchSpec p;
  p.distance = d;
  p.kind = kind;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (kind == PatchKind::kRotated || r <= c) p.data_sites.push_back({r, c});

  std::size_t next_ancilla = p.num_data();
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) {
      Plaquette pl;
      pl.i = i;
      pl.j = j;
      pl.type = (i + j) % 2 == 0 ? CheckType::kX : CheckType::kZ;
      const int rows[4] = {i - 1, i - 1, i, i};
      const int cols[4] = {j - 1, j, j - 1, j};
      int weight = 0;
      for (int k = 0; k < 4; ++k) {
        if (rows[k] >= 0 && rows[k] < d && cols[k] >= 0 && cols[k] < d) {
          pl.corners[k] = rows[k] * d + cols[k];
          ++weight;
        }
      }
      bool keep = weight == 4;
      if (weight == 2) {
        bool horizontal_edge = i == 0 || i == d;
        keep = horizontal_edge ? pl.type == CheckType::kX : pl.type == CheckType::kZ;
        pl.boundary = true;
      }
      if (!keep) continue;
      pl.ancilla = next_ancilla++;
      Stabilizer s;
      s.type = pl.type;
      for (int k = 0; k < 4; ++k)
        if (pl.corners[k] >= 0) s.support.push_back(static_cast<std::size_t>(pl.corners[k]));
      std::sort(s.support.begin(), s.support.end());
      p.stabilizers.push_back(s);
      p.plaquettes.push_back(pl);
    }
  }
  for (int r = 0; r < d; ++r) p.logical_x.push_back(p.data_index(r, 0));
  for (int c = 0; c < d; ++c) p.logical_z.push_back(p.data_index(0, c));
  if (kind == PatchKind::kFolded) {
    p.fold_map.resize(p.num_data());
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) p.fold_map[p.data_index(r, c)] = p.data_index(c, r);
  }
  return p;
}

const Plaquette* PatchSpec::plaquette_at(int i, int j) const {
  for (const auto& pl : plaquettes)
    if (pl.i == i && pl.j == j) return &pl;
  return nullptr;
}

PauliString PatchSpec::stabilizer_pauli(std::size_t k, std::size_t width, std::size_t offset) const {
  PauliString p(width);
  char c = stabilizers.at(k).type == CheckType::kX ? 'X' : 'Z';
  for (auto q : stabilizers[k].support) p.set_pauli(offset + q, c);
  return p;
}

PauliString PatchSpec::logical_x_pauli(std::size_t width, std::size_t offset) const {
  PauliString p(width);
  for (auto q : logical_x) p.set_pauli(offset + q, 'X');
  return p;
}

PauliString PatchSpec::logical_z_pauli(std::size_t width, std::size_t offset) const {
  PauliString p(width);
  for (auto q : logical_z) p.set_pauli(offset + q, 'Z');
  return p;
}

PauliString PatchSpec::logical_y_pauli(std::size_t width, std::size_t offset) const {
  PauliString p = logical_x_pauli(width, offset);
  for (auto q : logical_z) p.set_pauli(offset + q, p.x(offset + q) ? 'Y' : 'Z');
  return p;
}

std::vector<std::pair<std::size_t, std::size_t>> PatchSpec::data_fold_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (int r = 0; r < distance; ++r)
    for (int c = r + 1; c < distance; ++c) out.emplace_back(data_index(r, c), data_index(c, r));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> PatchSpec::ancilla_fold_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (int i = 1; i < distance; ++i)
    for (int j = i + 1; j < distance; ++j) out.emplace_back(plaquette_at(i, j)->ancilla, plaquette_at(j, i)->ancilla);
  return out;
}

std::vector<std::size_t> PatchSpec::crease_qubits() const {
  std::vector<std::size_t> out{data_index(0, 0)};
  for (int k = 1; k < distance; ++k) {
    out.push_back(plaquette_at(k, k)->ancilla);
    out.push_back(data_index(k, k));
  }
  return out;
}

std::vector<std::size_t> PatchSpec::boundary_ancillas() const {
  std::vector<std::size_t> out;
  for (const auto& pl : plaquettes)
    if (pl.boundary) out.push_back(pl.ancilla);
  return out;
}

std::vector<std::size_t> PatchSpec::x_ancillas() const {
  std::vector<std::size_t> out;
  for (const auto& pl : plaquettes)
    if (pl.type == CheckType::kX) out.push_back(pl.ancilla);
  return out;
}

std::vector<std::size_t> PatchSpec::z_ancillas() const {
  std::vector<std::size_t> out;
  for (const auto& pl : plaquettes)
    if (pl.type == CheckType::kZ) out.push_back(pl.ancilla);
  return out;
}

std::array<CnotLayer, 4> check_layers(const PatchSpec& patch, std::size_t offset) {
  std::array<CnotLayer, 4> layers;
  for (int k = 0; k < 4; ++k) {
    for (const auto& pl : patch.plaquettes) {
      Corner corner = pl.type == CheckType::kX ? kXCheckOrder[k] : kZCheckOrder[k];
      int data = pl.corners[corner];
      if (data < 0) continue;
      auto a = static_cast<std::uint32_t>(offset + pl.ancilla);
      auto q = static_cast<std::uint32_t>(offset + static_cast<std::size_t>(data));
      if (pl.type == CheckType::kX)
        layers[k].emplace_back(a, q);
      else
        layers[k].emplace_back(q, a);
    }
  }
  return layers;
}

namespace {

std::vector<std::uint32_t> shifted(const std::vector<std::size_t>& qs, std::size_t offset) {
  std::vector<std::uint32_t> out;
  for (auto q : qs) out.push_back(static_cast<std::uint32_t>(q + offset));
  return out;
}

}  // namespace

int append_check_prefix(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int step) {
  std::vector<std::size_t> all;
  for (const auto& pl : patch.plaquettes) all.push_back(pl.ancilla);
  c.append(Gate::kReset, shifted(all, offset), Rational(step));
  c.append(Gate::kH, shifted(patch.x_ancillas(), offset), Rational(step + 1));
  return step + 2;
}

int append_check_layers(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int first, int last,
                        int step) {
  auto layers = check_layers(patch, offset);
  for (int k = first; k <= last; ++k) {
    std::vector<std::uint32_t> t;
    for (auto [ctrl, tgt] : layers[k]) {
      t.push_back(ctrl);
      t.push_back(tgt);
    }
    c.append(Gate::kCnot, t, Rational(step++));
  }
  return step;
}

int append_check_suffix(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int step) {
  std::vector<std::size_t> all;
  for (const auto& pl : patch.plaquettes) all.push_back(pl.ancilla);
  c.append(Gate::kH, shifted(patch.x_ancillas(), offset), Rational(step));
  c.append(Gate::kMeasure, shifted(all, offset), Rational(step + 1));
  return step + 2;
}

ScheduledCircuit check_circuit(const PatchSpec& patch) {
  ScheduledCircuit c(patch.num_qubits());
  int step = append_check_prefix(c, patch, 0, 0);
  step = append_check_layers(c, patch, 0, 0, 3, step);
  append_check_suffix(c, patch, 0, step);
  return c;
}

std::vector<PauliString> round_start_generators(const PatchSpec& patch) {
  std::size_t n = patch.num_qubits();
  std::vector<PauliString> gens;
  for (std::size_t k = 0; k < patch.stabilizers.size(); ++k) gens.push_back(patch.stabilizer_pauli(k, n));
  for (const auto& pl : patch.plaquettes) gens.push_back(PauliString::single(n, pl.ancilla, 'Z'));
  return gens;
}

std::map<std::size_t, std::size_t> MidcycleGroup::weight_profile(CheckType type) const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& g : type == CheckType::kX ? x_generators : z_generators) ++out[g.weight()];
  return out;
}

MidcycleGroup midcycle_group(const PatchSpec& patch) {
  const int d = patch.distance;
  const std::size_t n = patch.num_qubits();
  ScheduledCircuit half(n);
  int step = append_check_prefix(half, patch, 0, 0);
  append_check_layers(half, patch, 0, 0, 1, step);

  MidcycleGroup out;
  out.distance = d;
  out.propagated = round_start_generators(patch);
  for (auto& g : out.propagated)
    for (const auto& op : half.ops())
      if (op.gate != Gate::kReset) conjugate(g, op.gate, op.targets);
  PauliGroup group(n, out.propagated);

  std::vector<bool> is_product(n, false);
  for (const auto& pl : patch.plaquettes) {
    for (char c : {'X', 'Z'}) {
      if (group.sign_of(PauliString::single(n, pl.ancilla, c)) == std::optional<int>(1)) {
        out.product_qubits.emplace_back(pl.ancilla, c);
        is_product[pl.ancilla] = true;
      }
    }
  }
  for (std::size_t q = 0; q < n; ++q)
    if (!is_product[q]) out.active_qubits.push_back(q);

  auto anc = [&](int i, int j) { return patch.plaquette_at(i, j)->ancilla; };
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c + 1 < d; ++c) {
      PauliString g(n);
      g.set_pauli(patch.data_index(r, c), 'X');
      g.set_pauli(patch.data_index(r, c + 1), 'X');
      if (r >= 1) g.set_pauli(anc(r, c + 1), 'X');
      if (r + 1 <= d - 1) g.set_pauli(anc(r + 1, c + 1), 'X');
      out.x_generators.push_back(g);
    }
  }
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r + 1 < d; ++r) {
      PauliString g(n);
      g.set_pauli(patch.data_index(r, c), 'Z');
      g.set_pauli(patch.data_index(r + 1, c), 'Z');
      if (c >= 1) g.set_pauli(anc(r + 1, c), 'Z');
      if (c + 1 <= d - 1) g.set_pauli(anc(r + 1, c + 1), 'Z');
      out.z_generators.push_back(g);
    }
  }

  PauliGroup rebuilt(n);
  for (const auto& [q, c] : out.product_qubits) rebuilt.add(PauliString::single(n, q, c));
  for (const auto* gens : {&out.x_generators, &out.z_generators}) {
    for (const auto& g : *gens) {
      if (group.sign_of(g) != std::optional<int>(1))
        throw std::logic_error("mid-cycle generator " + g.str() + " is not in the propagated group");
      rebuilt.add(g);
    }
  }
  if (!rebuilt.same_group(group)) throw std::logic_error("mid-cycle generators do not span the propagated group");
  return out;
}

const Loop& LoopEmbedding::loop_at(LoopRole role, int row, int col) const {
  for (const auto& l : loops)
    if (l.role == role && l.row == row && l.col == col) return l;
  throw std::out_of_range("no loop at (" + std::to_string(row) + ", " + std::to_string(col) + ")");
}

LoopEmbedding embed_stack(const std::vector<PatchSpec>& patches, const TimingParams& params) {
  if (patches.empty()) throw std::invalid_argument("stack needs at least one patch");
  const PatchSpec& first = patches.front();
  for (const auto& p : patches) {
    if (p.kind != first.kind) throw std::invalid_argument("stack mixes rotated and folded patches");
    if (p.distance != first.distance) throw std::invalid_argument("stack mixes code distances");
  }
  LoopEmbedding e;
  e.kind = first.kind;
  e.distance = first.distance;
  e.num_patches = static_cast<int>(patches.size());
  const int d = first.distance;
  const bool folded = first.kind == PatchKind::kFolded;

  auto fill = [&](Loop& loop, auto&& occupant) {
    for (int layer = 0; layer < 2; ++layer)
      for (int p = 0; p < e.num_patches; ++p) {
        auto q = occupant(patches[static_cast<std::size_t>(p)], layer);
        if (q.has_value()) loop.slots.push_back(LoopSlot{p, layer, *q});
      }
  };

  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (folded && r > c) continue;
      Loop loop;
      loop.row = r;
      loop.col = c;
      loop.role = LoopRole::kData;
      loop.speed = folded && r == c ? SpeedClass::kDouble : SpeedClass::kNormal;
      fill(loop, [&](const PatchSpec& p, int layer) -> std::optional<std::size_t> {
        if (layer == 0) return p.data_index(r, c);
        if (folded && r != c) return p.data_index(c, r);
        return std::nullopt;
      });
      e.loops.push_back(loop);
    }
  }
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) {
      if (folded && i > j) continue;
      Loop loop;
      loop.row = i;
      loop.col = j;
      loop.role = LoopRole::kAncilla;
      loop.speed = folded && i == j ? SpeedClass::kDouble : SpeedClass::kNormal;
      fill(loop, [&](const PatchSpec& p, int layer) -> std::optional<std::size_t> {
        const Plaquette* pl = nullptr;
        if (layer == 0) pl = p.plaquette_at(i, j);
        else if (folded && i != j) pl = p.plaquette_at(j, i);
        if (pl == nullptr) return std::nullopt;
        return pl->ancilla;
      });
      if (!loop.slots.empty()) e.loops.push_back(loop);
    }
  }
  for (auto& loop : e.loops) {
    loop.lap_time = loop.speed == SpeedClass::kDouble ? params.t_loop / 2 : params.t_loop;
    if (loop.role == LoopRole::kData)
      e.qubits_per_loop = std::max(e.qubits_per_loop, static_cast<int>(loop.slots.size()));
  }
  return e;
}

nlohmann::json to_json(const PatchSpec& patch) {
  nlohmann::json doc;
  doc["distance"] = patch.distance;
  doc["kind"] = patch_kind_name(patch.kind);
  doc["num_qubits"] = patch.num_qubits();
  auto& sites = doc["data_sites"] = nlohmann::json::array();
  for (const auto& s : patch.data_sites) sites.push_back({s.row, s.col});
  auto& stabs = doc["stabilizers"] = nlohmann::json::array();
  for (std::size_t k = 0; k < patch.stabilizers.size(); ++k) {
    const auto& pl = patch.plaquettes[k];
    stabs.push_back({{"type", pl.type == CheckType::kX ? "X" : "Z"},
                     {"plaquette", {pl.i, pl.j}},
                     {"ancilla", pl.ancilla},
                     {"support", patch.stabilizers[k].support}});
  }
  doc["logical_x"] = patch.logical_x;
  doc["logical_z"] = patch.logical_z;
  doc["fold_map"] = patch.fold_map;
  return doc;
}

PatchSpec patch_from_json(const nlohmann::json& doc) {
  PatchSpec p = build_patch(doc.at("distance").get<int>(), patch_kind_from_name(doc.at("kind").get<std::string>()));
  if (to_json(p) != doc) throw std::invalid_argument("patch document does not match its distance and kind");
  return p;
}

namespace {

const char* role_name(LoopRole r) { return r == LoopRole::kData ? "data" : "ancilla"; }
const char* speed_name(SpeedClass s) { return s == SpeedClass::kNormal ? "normal" : "double"; }

}  // namespace

nlohmann::json to_json(const LoopEmbedding& e) {
  nlohmann::json doc;
  doc["kind"] = patch_kind_name(e.kind);
  doc["distance"] = e.distance;
  doc["num_patches"] = e.num_patches;
  doc["qubits_per_loop"] = e.qubits_per_loop;
  auto& loops = doc["loops"] = nlohmann::json::array();
  for (const auto& l : e.loops) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : l.slots) slots.push_back({s.patch, s.layer, s.qubit});
    loops.push_back({{"row", l.row},
                     {"col", l.col},
                     {"role", role_name(l.role)},
                     {"speed_class", speed_name(l.speed)},
                     {"lap_time_ns", to_string(l.lap_time)},
                     {"slots", slots}});
  }
  return doc;
}

LoopEmbedding embedding_from_json(const nlohmann::json& doc) {
  LoopEmbedding e;
  e.kind = patch_kind_from_name(doc.at("kind").get<std::string>());
  e.distance = doc.at("distance").get<int>();
  e.num_patches = doc.at("num_patches").get<int>();
  e.qubits_per_loop = doc.at("qubits_per_loop").get<int>();
  for (const auto& l : doc.at("loops")) {
    Loop loop;
    loop.row = l.at("row").get<int>();
    loop.col = l.at("col").get<int>();
    std::string role = l.at("role").get<std::string>();
    if (role != "data" && role != "ancilla") throw std::invalid_argument("unknown loop role '" + role + "'");
    loop.role = role == "data" ? LoopRole::kData : LoopRole::kAncilla;
    std::string speed = l.at("speed_class").get<std::string>();
    if (speed != "normal" && speed != "double") throw std::invalid_argument("unknown speed class '" + speed + "'");
    loop.speed = speed == "normal" ? SpeedClass::kNormal : SpeedClass::kDouble;
    loop.lap_time = parse_rational(l.at("lap_time_ns").get<std::string>());
    for (const auto& s : l.at("slots"))
      loop.slots.push_back(LoopSlot{s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<std::size_t>()});
    e.loops.push_back(std::move(loop));
  }
  return e;
}

}  // namespace foldloop
