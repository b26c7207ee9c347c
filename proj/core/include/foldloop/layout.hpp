#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace foldloop {

enum class LayerRole { kMemory, kShortRange, kMidRange, kLongRange };

std::string to_string(LayerRole role);
LayerRole parse_layer_role(const std::string& name);

// Which logical operator each pair of boundary sides exposes.
enum class Orientation {
  kXZ,  // X on top and bottom, Z on left and right
  kZX,  // Z on top and bottom, X on left and right
};

struct PatchCell {
  int id = 0;
  Orientation orientation = Orientation::kXZ;
  bool operator==(const PatchCell&) const = default;
};

struct Cell {
  int layer = 0;
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

class LayerStackLayout {
 public:
  LayerStackLayout() = default;
  LayerStackLayout(int width, int height, int num_layers);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_layers() const { return num_layers_; }
  LayerRole role(int layer) const { return roles_.at(static_cast<std::size_t>(layer)); }
  void set_role(int layer, LayerRole role) { roles_.at(static_cast<std::size_t>(layer)) = role; }

  bool in_bounds(int row, int col) const { return row >= 0 && col >= 0 && row < height_ && col < width_; }
  const std::optional<PatchCell>& at(const Cell& c) const;
  bool free(const Cell& c) const { return !at(c).has_value(); }
  // Throws std::invalid_argument if the cell is taken or the id already sits on that layer.
  void place(const Cell& c, PatchCell patch);
  void clear(const Cell& c);
  std::optional<Cell> find(int patch_id) const;
  std::vector<int> patch_ids() const;
  std::size_t patch_count() const;

  bool operator==(const LayerStackLayout&) const = default;

  // Cell grid per layer: "." free, otherwise "<id><x|z>" where x means X on top/bottom.
  std::string render() const;

 private:
  std::size_t index(const Cell& c) const;

  int width_ = 0;
  int height_ = 0;
  int num_layers_ = 0;
  std::vector<LayerRole> roles_;
  std::vector<std::optional<PatchCell>> cells_;
};

// Free cells adjacent to the patch on sides exposing `op` ('X' or 'Z'), same layer.
std::vector<Cell> access_cells(const LayerStackLayout& layout, const Cell& patch, char op);

enum class LayoutKind { kHallway, kCheckerboard, kEmpty };

struct Dims {
  int width = 4;
  int height = 4;
  int layers = 2;
};

// hallway: patches on cells with even row and column, layer by layer.
// checkerboard: even/even cells then odd/odd cells, layer by layer; unused layers stay free.
// Throws std::invalid_argument on overflow.
LayerStackLayout generate_layout(LayoutKind kind, const std::vector<PatchCell>& patches, const Dims& dims);

struct MergeRequest {
  int patch_a = 0;
  char op_a = 'Z';
  int patch_b = 0;
  char op_b = 'Z';
  std::optional<int> layer;  // default: the layer holding both patches
  bool operator==(const MergeRequest&) const = default;
};

std::string to_string(const MergeRequest& r);

struct Routing {
  bool feasible = false;
  std::vector<std::vector<Cell>> paths;  // one per request, in request order
  std::int64_t nodes = 0;                // search nodes expanded
  std::string certificate;               // why no routing exists
};

// Exhaustive search for vertex-disjoint free-cell paths. Throws
// std::invalid_argument for unknown patch ids and std::runtime_error if the
// node budget runs out.
Routing routable(const LayerStackLayout& layout, const std::vector<MergeRequest>& requests,
                 std::int64_t node_budget = 50'000'000);

// Re-checks witness paths from scratch; returns an empty string when valid.
std::string check_routing(const LayerStackLayout& layout, const std::vector<MergeRequest>& requests,
                          const Routing& routing);

struct SwapMove {
  int patch = 0;
  Cell from;
  Cell to;
};

struct SwapPlan {
  bool feasible = false;
  std::vector<SwapMove> swaps;
  Routing routing;
  LayerStackLayout final_layout;
  std::int64_t states = 0;  // layouts visited
};

// Breadth-first over vertical swaps of a patch into the free cell directly
// above or below it. Throws std::invalid_argument if max_swaps > 8.
SwapPlan plan_with_swaps(const LayerStackLayout& layout, const std::vector<MergeRequest>& requests, int max_swaps);

struct LayoutExpectation {
  std::optional<bool> routable;
  std::optional<int> swaps;
  int max_swaps = 8;
};

struct LayoutFixture {
  std::string name;
  LayerStackLayout layout;
  std::vector<MergeRequest> requests;
  LayoutExpectation expect;
};

// Line format:
//   name <text>
//   dims <width> <height> <layers>
//   role <layer> <memory|short_range|mid_range|long_range>
//   patch <layer> <row> <col> <id> <XZ|ZX>
//   request <id> <X|Z> <id> <X|Z> [layer]
//   expect routable <yes|no>
//   expect swaps <k|none> [budget]
// '#' starts a comment. Throws ParseError with the line number.
LayoutFixture parse_fixture(std::istream& in);
LayoutFixture load_fixture(const std::string& path);

nlohmann::json to_json(const Routing& routing);
nlohmann::json to_json(const SwapPlan& plan);

}  // namespace foldloop
