#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "foldloop/circuit.hpp"
#include "foldloop/pauli.hpp"
#include "foldloop/timing.hpp"

namespace foldloop {

enum class PatchKind { kRotated, kFolded };
enum class CheckType { kX, kZ };

const char* patch_kind_name(PatchKind k);
PatchKind patch_kind_from_name(const std::string& name);

struct Site {
  int row = 0;
  int col = 0;
  auto operator<=>(const Site&) const = default;
};

// Corner slots of a plaquette on the dual grid.
enum Corner { kTopLeft = 0, kTopRight = 1, kBottomLeft = 2, kBottomRight = 3 };

// X checks sweep TL, TR, BL, BR; Z checks sweep TL, BL, TR, BR.
inline constexpr std::array<Corner, 4> kXCheckOrder = {kTopLeft, kTopRight, kBottomLeft, kBottomRight};
inline constexpr std::array<Corner, 4> kZCheckOrder = {kTopLeft, kBottomLeft, kTopRight, kBottomRight};

// Plaquette (i, j), 0 <= i, j <= d, touches data (i-1, j-1), (i-1, j), (i, j-1), (i, j).
struct Plaquette {
  int i = 0;
  int j = 0;
  CheckType type = CheckType::kX;
  std::array<int, 4> corners{-1, -1, -1, -1};  // data qubit index or -1
  std::size_t ancilla = 0;                     // qubit index
  bool boundary = false;
};

struct Stabilizer {
  CheckType type = CheckType::kX;
  std::vector<std::size_t> support;  // data qubit indices
};

// Data qubit (r, c) has index r*d + c. Ancillas follow in plaquette order.
struct PatchSpec {
  int distance = 3;
  PatchKind kind = PatchKind::kRotated;
  std::vector<Site> data_sites;  // folded keeps row <= col
  std::vector<Plaquette> plaquettes;
  std::vector<Stabilizer> stabilizers;
  std::vector<std::size_t> logical_x;  // left column
  std::vector<std::size_t> logical_z;  // top row
  std::vector<std::size_t> fold_map;   // involution on data qubits, folded only

  std::size_t num_data() const { return static_cast<std::size_t>(distance * distance); }
  std::size_t num_qubits() const { return num_data() + plaquettes.size(); }
  std::size_t data_index(int row, int col) const { return static_cast<std::size_t>(row * distance + col); }
  Site data_site(std::size_t q) const { return Site{static_cast<int>(q) / distance, static_cast<int>(q) % distance}; }
  const Plaquette* plaquette_at(int i, int j) const;

  // Operators on a register of `width` qubits with this patch starting at `offset`.
  PauliString stabilizer_pauli(std::size_t k, std::size_t width, std::size_t offset = 0) const;
  PauliString logical_x_pauli(std::size_t width, std::size_t offset = 0) const;
  PauliString logical_z_pauli(std::size_t width, std::size_t offset = 0) const;
  // Y at the shared corner, X on the rest of the column, Z on the rest of the row; equals i*X_L*Z_L.
  PauliString logical_y_pauli(std::size_t width, std::size_t offset = 0) const;

  // Pairs (r, c) / (c, r) with r < c.
  std::vector<std::pair<std::size_t, std::size_t>> data_fold_pairs() const;
  // Bulk ancillas (i, j) / (j, i) with i < j.
  std::vector<std::pair<std::size_t, std::size_t>> ancilla_fold_pairs() const;
  // Qubits on the crease in crease order: data(0,0), anc(1,1), data(1,1), ..., data(d-1,d-1).
  std::vector<std::size_t> crease_qubits() const;
  std::vector<std::size_t> boundary_ancillas() const;
  std::vector<std::size_t> x_ancillas() const;
  std::vector<std::size_t> z_ancillas() const;
};

// Rejects even or sub-3 distances with std::invalid_argument.
PatchSpec build_patch(int distance, PatchKind kind);

// CNOT layers of one stabilizer round as (control, target) pairs.
using CnotLayer = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
std::array<CnotLayer, 4> check_layers(const PatchSpec& patch, std::size_t offset = 0);

// Pieces of the round so protocols can splice operations into the middle.
// Each returns the next free time step.
int append_check_prefix(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int step);
int append_check_layers(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int first, int last, int step);
int append_check_suffix(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int step);

// Reset, basis change, 4 CNOT layers, basis change, measurement.
ScheduledCircuit check_circuit(const PatchSpec& patch);

// Stabilizer group right after the first two CNOT layers.
struct MidcycleGroup {
  int distance = 3;
  std::vector<std::size_t> active_qubits;                    // data plus absorbed bulk ancillas
  std::vector<std::pair<std::size_t, char>> product_qubits;  // boundary ancillas and their 1-qubit stabilizer
  std::vector<PauliString> x_generators;                     // on the full patch register
  std::vector<PauliString> z_generators;
  std::vector<PauliString> propagated;  // the code and ancilla generators pushed through the layers

  // weight -> count over generators of one type, counted on active qubits.
  std::map<std::size_t, std::size_t> weight_profile(CheckType type) const;
};
MidcycleGroup midcycle_group(const PatchSpec& patch);

// Generators of the stabilizer group before a round: code checks plus ancilla
// initial states (Z on every ancilla), on the patch register.
std::vector<PauliString> round_start_generators(const PatchSpec& patch);

enum class LoopRole { kData, kAncilla };
enum class SpeedClass { kNormal, kDouble };

struct LoopSlot {
  int patch = 0;
  int layer = 0;  // 0 for the upper triangle and the crease, 1 for reflected sites
  std::size_t qubit = 0;  // index within the patch register
  bool operator==(const LoopSlot&) const = default;
};

struct Loop {
  int row = 0;
  int col = 0;
  LoopRole role = LoopRole::kData;
  SpeedClass speed = SpeedClass::kNormal;
  Rational lap_time{0};
  std::vector<LoopSlot> slots;  // all layer-0 occupants by patch, then all layer-1 occupants
};

struct LoopEmbedding {
  PatchKind kind = PatchKind::kRotated;
  int distance = 3;
  int num_patches = 0;
  int qubits_per_loop = 0;  // n, the occupancy of off-diagonal data loops
  std::vector<Loop> loops;

  const Loop& loop_at(LoopRole role, int row, int col) const;
};

// Rejects empty input and mixed kinds or distances.
LoopEmbedding embed_stack(const std::vector<PatchSpec>& patches, const TimingParams& params);

nlohmann::json to_json(const PatchSpec& patch);
PatchSpec patch_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const LoopEmbedding& embedding);
LoopEmbedding embedding_from_json(const nlohmann::json& doc);

}  // namespace foldloop
