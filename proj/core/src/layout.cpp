#include "foldloop/layout.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "foldloop/errors.hpp"

namespace foldloop {

namespace {

constexpr int kDr[4] = {-1, 1, 0, 0};
constexpr int kDc[4] = {0, 0, -1, 1};

std::string cell_str(const Cell& c) {
  return "(" + std::to_string(c.layer) + "," + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

struct Resolved {
  std::vector<Cell> starts;
  std::vector<Cell> ends;
};

class Router {
 public:
  Router(const LayerStackLayout& layout, std::vector<Resolved> requests, std::int64_t budget)
      : layout_(layout), requests_(std::move(requests)), budget_(budget),
        used_(static_cast<std::size_t>(layout.num_layers() * layout.width() * layout.height()), 0) {}

  bool solve() { return place(0); }
  std::int64_t nodes() const { return nodes_; }
  const std::vector<std::vector<Cell>>& paths() const { return paths_; }

 private:
  std::size_t idx(const Cell& c) const {
    return static_cast<std::size_t>((c.layer * layout_.height() + c.row) * layout_.width() + c.col);
  }
  bool open(const Cell& c) const {
    return layout_.in_bounds(c.row, c.col) && layout_.free(c) && !used_[idx(c)];
  }
  bool is_end(std::size_t k, const Cell& c) const {
    const auto& e = requests_[k].ends;
    return std::find(e.begin(), e.end(), c) != e.end();
  }
  int distance_to_end(std::size_t k, const Cell& c) const {
    int best = 1 << 20;
    for (const auto& e : requests_[k].ends) best = std::min(best, std::abs(e.row - c.row) + std::abs(e.col - c.col));
    return best;
  }

  // Necessary condition: every remaining request still has some path on its own.
  bool reachable(std::size_t k) const {
    std::vector<char> seen(used_.size(), 0);
    std::deque<Cell> queue;
    for (const auto& s : requests_[k].starts)
      if (open(s) && !seen[idx(s)]) {
        seen[idx(s)] = 1;
        queue.push_back(s);
      }
    while (!queue.empty()) {
      Cell c = queue.front();
      queue.pop_front();
      if (is_end(k, c)) return true;
      for (int dir = 0; dir < 4; ++dir) {
        Cell n{c.layer, c.row + kDr[dir], c.col + kDc[dir]};
        if (open(n) && !seen[idx(n)]) {
          seen[idx(n)] = 1;
          queue.push_back(n);
        }
      }
    }
    return false;
  }

  bool place(std::size_t k) {
    for (std::size_t j = k; j < requests_.size(); ++j)
      if (!reachable(j)) return false;
    if (k == requests_.size()) return true;
    for (const auto& s : requests_[k].starts) {
      if (!open(s)) continue;
      used_[idx(s)] = 1;
      paths_.push_back({s});
      if (extend(k)) return true;
      paths_.pop_back();
      used_[idx(s)] = 0;
    }
    return false;
  }

  bool extend(std::size_t k) {
    if (++nodes_ > budget_) throw std::runtime_error("routing search exceeded its node budget");
    const Cell cur = paths_.back().back();
    if (is_end(k, cur) && place(k + 1)) return true;
    std::vector<Cell> next;
    for (int dir = 0; dir < 4; ++dir) {
      Cell n{cur.layer, cur.row + kDr[dir], cur.col + kDc[dir]};
      if (open(n)) next.push_back(n);
    }
    std::stable_sort(next.begin(), next.end(),
                     [&](const Cell& a, const Cell& b) { return distance_to_end(k, a) < distance_to_end(k, b); });
    for (const auto& n : next) {
      used_[idx(n)] = 1;
      paths_.back().push_back(n);
      if (extend(k)) return true;
      paths_.back().pop_back();
      used_[idx(n)] = 0;
    }
    return false;
  }

  const LayerStackLayout& layout_;
  std::vector<Resolved> requests_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::vector<char> used_;
  std::vector<std::vector<Cell>> paths_;
};

// Layer on which the request is evaluated, or nullopt if the patches do not share one.
std::optional<int> request_layer(const LayerStackLayout& layout, const MergeRequest& r, Cell& a, Cell& b) {
  if (r.patch_a == r.patch_b) throw std::invalid_argument("a merge request needs two distinct patches");
  if (r.op_a != 'X' && r.op_a != 'Z') throw std::invalid_argument("merge operators must be X or Z");
  if (r.op_b != 'X' && r.op_b != 'Z') throw std::invalid_argument("merge operators must be X or Z");
  auto fa = layout.find(r.patch_a);
  auto fb = layout.find(r.patch_b);
  if (!fa) throw std::invalid_argument("unknown patch id " + std::to_string(r.patch_a));
  if (!fb) throw std::invalid_argument("unknown patch id " + std::to_string(r.patch_b));
  a = *fa;
  b = *fb;
  if (a.layer != b.layer) return std::nullopt;
  if (r.layer && *r.layer != a.layer) return std::nullopt;
  return a.layer;
}

nlohmann::json cell_json(const Cell& c) { return nlohmann::json::array({c.layer, c.row, c.col}); }

}  // namespace

std::string to_string(LayerRole role) {
  switch (role) {
    case LayerRole::kMemory: return "memory";
    case LayerRole::kShortRange: return "short_range";
    case LayerRole::kMidRange: return "mid_range";
    case LayerRole::kLongRange: return "long_range";
  }
  return "?";
}

LayerRole parse_layer_role(const std::string& name) {
  for (LayerRole r : {LayerRole::kMemory, LayerRole::kShortRange, LayerRole::kMidRange, LayerRole::kLongRange})
    if (to_string(r) == name) return r;
  throw std::invalid_argument("unknown layer role: " + name);
}

LayerStackLayout::LayerStackLayout(int width, int height, int num_layers)
    : width_(width), height_(height), num_layers_(num_layers) {
  if (width < 1 || height < 1 || num_layers < 1) throw std::invalid_argument("layout dimensions must be positive");
  roles_.assign(static_cast<std::size_t>(num_layers), LayerRole::kMidRange);
  cells_.assign(static_cast<std::size_t>(width * height * num_layers), std::nullopt);
}

std::size_t LayerStackLayout::index(const Cell& c) const {
  if (c.layer < 0 || c.layer >= num_layers_ || !in_bounds(c.row, c.col))
    throw std::out_of_range("cell " + cell_str(c) + " outside the layout");
  return static_cast<std::size_t>((c.layer * height_ + c.row) * width_ + c.col);
}

const std::optional<PatchCell>& LayerStackLayout::at(const Cell& c) const { return cells_[index(c)]; }

void LayerStackLayout::place(const Cell& c, PatchCell patch) {
  auto& slot = cells_[index(c)];
  if (slot) throw std::invalid_argument("cell " + cell_str(c) + " is already taken");
  if (find(patch.id)) throw std::invalid_argument("patch " + std::to_string(patch.id) + " is already placed");
  slot = patch;
}

void LayerStackLayout::clear(const Cell& c) { cells_[index(c)].reset(); }

std::optional<Cell> LayerStackLayout::find(int patch_id) const {
  for (int l = 0; l < num_layers_; ++l)
    for (int r = 0; r < height_; ++r)
      for (int c = 0; c < width_; ++c) {
        const auto& p = cells_[index({l, r, c})];
        if (p && p->id == patch_id) return Cell{l, r, c};
      }
  return std::nullopt;
}

std::vector<int> LayerStackLayout::patch_ids() const {
  std::vector<int> ids;
  for (const auto& p : cells_)
    if (p) ids.push_back(p->id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t LayerStackLayout::patch_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const auto& p) { return p.has_value(); }));
}

std::string LayerStackLayout::render() const {
  std::ostringstream out;
  for (int l = 0; l < num_layers_; ++l) {
    out << "layer " << l << " " << to_string(roles_[static_cast<std::size_t>(l)]) << "\n";
    for (int r = 0; r < height_; ++r) {
      for (int c = 0; c < width_; ++c) {
        const auto& p = at({l, r, c});
        std::string s = p ? std::to_string(p->id) + (p->orientation == Orientation::kXZ ? "x" : "z") : ".";
        out << (c ? " " : "") << std::string(s.size() < 4 ? 4 - s.size() : 0, ' ') << s;
      }
      out << "\n";
    }
  }
  return out.str();
}

std::vector<Cell> access_cells(const LayerStackLayout& layout, const Cell& patch, char op) {
  const auto& p = layout.at(patch);
  if (!p) throw std::invalid_argument("no patch at " + cell_str(patch));
  std::vector<Cell> out;
  for (int dir = 0; dir < 4; ++dir) {
    bool vertical_side = dir < 2;  // top or bottom boundary
    char exposed = (vertical_side == (p->orientation == Orientation::kXZ)) ? 'X' : 'Z';
    if (exposed != op) continue;
    Cell n{patch.layer, patch.row + kDr[dir], patch.col + kDc[dir]};
    if (layout.in_bounds(n.row, n.col) && layout.free(n)) out.push_back(n);
  }
  return out;
}

LayerStackLayout generate_layout(LayoutKind kind, const std::vector<PatchCell>& patches, const Dims& dims) {
  LayerStackLayout layout(dims.width, dims.height, dims.layers);
  std::vector<std::pair<int, int>> sites;
  if (kind == LayoutKind::kHallway) {
    for (int r = 0; r < dims.height; r += 2)
      for (int c = 0; c < dims.width; c += 2) sites.push_back({r, c});
  } else if (kind == LayoutKind::kCheckerboard) {
    for (int parity = 0; parity < 2; ++parity)
      for (int r = parity; r < dims.height; r += 2)
        for (int c = parity; c < dims.width; c += 2) sites.push_back({r, c});
  }
  const std::size_t per_layer = sites.size();
  if (patches.size() > per_layer * static_cast<std::size_t>(dims.layers))
    throw std::invalid_argument("layout overflow: " + std::to_string(patches.size()) + " patches do not fit");
  for (std::size_t k = 0; k < patches.size(); ++k) {
    int layer = static_cast<int>(k / per_layer);
    auto [r, c] = sites[k % per_layer];
    layout.place({layer, r, c}, patches[k]);
  }
  for (int l = 0; l < dims.layers; ++l) {
    bool empty = per_layer == 0 || patches.size() <= static_cast<std::size_t>(l) * per_layer;
    LayerRole role = kind == LayoutKind::kHallway ? LayerRole::kMidRange : LayerRole::kShortRange;
    layout.set_role(l, empty ? LayerRole::kLongRange : role);
  }
  return layout;
}

std::string to_string(const MergeRequest& r) {
  std::string s = std::string(1, r.op_a) + std::to_string(r.patch_a) + " " + std::string(1, r.op_b) +
                  std::to_string(r.patch_b);
  if (r.layer) s += " @" + std::to_string(*r.layer);
  return s;
}

Routing routable(const LayerStackLayout& layout, const std::vector<MergeRequest>& requests, std::int64_t node_budget) {
  Routing out;
  std::vector<Resolved> resolved;
  for (const auto& r : requests) {
    Cell a, b;
    auto layer = request_layer(layout, r, a, b);
    if (!layer) {
      out.certificate = "patches " + std::to_string(r.patch_a) + " and " + std::to_string(r.patch_b) +
                        " do not share the requested layer";
      return out;
    }
    Resolved res{access_cells(layout, a, r.op_a), access_cells(layout, b, r.op_b)};
    if (res.starts.empty() || res.ends.empty()) {
      out.certificate = "request " + to_string(r) + " has no free cell on a matching boundary";
      return out;
    }
    resolved.push_back(std::move(res));
  }
  Router router(layout, std::move(resolved), node_budget);
  out.feasible = router.solve();
  out.nodes = router.nodes();
  if (out.feasible)
    out.paths = router.paths();
  else
    out.certificate = "no vertex-disjoint path set exists; exhaustive search expanded " + std::to_string(out.nodes) +
                      " nodes";
  return out;
}

std::string check_routing(const LayerStackLayout& layout, const std::vector<MergeRequest>& requests,
                          const Routing& routing) {
  if (!routing.feasible) return "";
  if (routing.paths.size() != requests.size()) return "path count differs from request count";
  std::set<Cell> seen;
  for (std::size_t k = 0; k < requests.size(); ++k) {
    const auto& path = routing.paths[k];
    const auto& r = requests[k];
    if (path.empty()) return "empty path for " + to_string(r);
    auto a = layout.find(r.patch_a);
    auto b = layout.find(r.patch_b);
    if (!a || !b) return "unknown patch in " + to_string(r);
    auto adjacent_on = [&](const Cell& patch, char op, const Cell& c) {
      const auto& p = layout.at(patch);
      if (c.layer != patch.layer) return false;
      int dr = c.row - patch.row, dc = c.col - patch.col;
      if (std::abs(dr) + std::abs(dc) != 1) return false;
      bool top_bottom = dr != 0;
      bool x_top_bottom = p->orientation == Orientation::kXZ;
      return (top_bottom == x_top_bottom ? 'X' : 'Z') == op;
    };
    if (!adjacent_on(*a, r.op_a, path.front())) return "path for " + to_string(r) + " starts on the wrong boundary";
    if (!adjacent_on(*b, r.op_b, path.back())) return "path for " + to_string(r) + " ends on the wrong boundary";
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Cell& c = path[i];
      if (c.layer < 0 || c.layer >= layout.num_layers() || !layout.in_bounds(c.row, c.col))
        return "path leaves the layout";
      if (!layout.free(c)) return "path crosses a patch at " + cell_str(c);
      if (!seen.insert(c).second) return "paths share cell " + cell_str(c);
      if (i > 0) {
        const Cell& p = path[i - 1];
        if (p.layer != c.layer || std::abs(p.row - c.row) + std::abs(p.col - c.col) != 1)
          return "path is not connected at " + cell_str(c);
      }
    }
  }
  return "";
}

SwapPlan plan_with_swaps(const LayerStackLayout& layout, const std::vector<MergeRequest>& requests, int max_swaps) {
  if (max_swaps < 0 || max_swaps > 8) throw std::invalid_argument("swap budget must be between 0 and 8");
  struct Node {
    LayerStackLayout layout;
    int parent;
    SwapMove move;
    int depth;
  };
  std::vector<Node> nodes;
  std::set<std::string> seen;
  nodes.push_back({layout, -1, {}, 0});
  seen.insert(layout.render());
  SwapPlan plan;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    ++plan.states;
    Routing routing = routable(nodes[head].layout, requests);
    if (routing.feasible) {
      plan.feasible = true;
      plan.routing = std::move(routing);
      plan.final_layout = nodes[head].layout;
      for (int k = static_cast<int>(head); nodes[static_cast<std::size_t>(k)].parent >= 0;
           k = nodes[static_cast<std::size_t>(k)].parent)
        plan.swaps.push_back(nodes[static_cast<std::size_t>(k)].move);
      std::reverse(plan.swaps.begin(), plan.swaps.end());
      return plan;
    }
    if (nodes[head].depth == max_swaps) continue;
    const LayerStackLayout current = nodes[head].layout;
    const int depth = nodes[head].depth;
    for (int l = 0; l < current.num_layers(); ++l)
      for (int r = 0; r < current.height(); ++r)
        for (int c = 0; c < current.width(); ++c) {
          const auto& p = current.at({l, r, c});
          if (!p) continue;
          for (int to : {l - 1, l + 1}) {
            if (to < 0 || to >= current.num_layers() || !current.free({to, r, c})) continue;
            LayerStackLayout next = current;
            PatchCell moved = *p;
            next.clear({l, r, c});
            next.place({to, r, c}, moved);
            if (!seen.insert(next.render()).second) continue;
            nodes.push_back({std::move(next), static_cast<int>(head), {moved.id, {l, r, c}, {to, r, c}}, depth + 1});
          }
        }
  }
  plan.routing.certificate = "no plan within " + std::to_string(max_swaps) + " swaps after visiting " +
                             std::to_string(plan.states) + " layouts";
  return plan;
}

LayoutFixture parse_fixture(std::istream& in) {
  LayoutFixture fx;
  std::string line;
  int lineno = 0;
  bool have_dims = false;
  auto fail = [&](const std::string& what) {
    throw ParseError("fixture line " + std::to_string(lineno) + ": " + what);
  };
  auto parse_op = [&](const std::string& s) {
    if (s != "X" && s != "Z") fail("operator must be X or Z, got '" + s + "'");
    return s[0];
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    try {
      if (key == "name") {
        std::getline(ls >> std::ws, fx.name);
      } else if (key == "dims") {
        int w, h, l;
        if (!(ls >> w >> h >> l)) fail("dims needs width height layers");
        fx.layout = LayerStackLayout(w, h, l);
        have_dims = true;
      } else if (key == "role") {
        int l;
        std::string role;
        if (!have_dims) fail("role before dims");
        if (!(ls >> l >> role)) fail("role needs layer and name");
        if (l < 0 || l >= fx.layout.num_layers()) fail("role layer out of range");
        fx.layout.set_role(l, parse_layer_role(role));
      } else if (key == "patch") {
        int l, r, c, id;
        std::string orient;
        if (!have_dims) fail("patch before dims");
        if (!(ls >> l >> r >> c >> id >> orient)) fail("patch needs layer row col id orientation");
        if (orient != "XZ" && orient != "ZX") fail("orientation must be XZ or ZX");
        fx.layout.place({l, r, c}, {id, orient == "XZ" ? Orientation::kXZ : Orientation::kZX});
      } else if (key == "request") {
        std::string a, oa, b, ob;
        MergeRequest req;
        if (!(ls >> a >> oa >> b >> ob)) fail("request needs id op id op");
        req.patch_a = std::stoi(a);
        req.op_a = parse_op(oa);
        req.patch_b = std::stoi(b);
        req.op_b = parse_op(ob);
        int layer;
        if (ls >> layer) req.layer = layer;
        fx.requests.push_back(req);
      } else if (key == "expect") {
        std::string what, value;
        if (!(ls >> what >> value)) fail("expect needs a key and a value");
        if (what == "routable") {
          if (value != "yes" && value != "no") fail("expect routable takes yes or no");
          fx.expect.routable = value == "yes";
        } else if (what == "swaps") {
          if (value != "none") fx.expect.swaps = std::stoi(value);
          int budget;
          if (ls >> budget) fx.expect.max_swaps = budget;
        } else {
          fail("unknown expectation '" + what + "'");
        }
      } else {
        fail("unknown keyword '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!have_dims) throw ParseError("fixture has no dims line");
  return fx;
}

LayoutFixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fixture " + path);
  LayoutFixture fx = parse_fixture(in);
  if (fx.name.empty()) fx.name = path;
  return fx;
}

nlohmann::json to_json(const Routing& routing) {
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& p : routing.paths) {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& c : p) path.push_back(cell_json(c));
    paths.push_back(path);
  }
  return {{"feasible", routing.feasible}, {"nodes", routing.nodes}, {"paths", paths}, {"certificate", routing.certificate}};
}

nlohmann::json to_json(const SwapPlan& plan) {
  nlohmann::json swaps = nlohmann::json::array();
  for (const auto& s : plan.swaps)
    swaps.push_back({{"patch", s.patch}, {"from", cell_json(s.from)}, {"to", cell_json(s.to)}});
  return {{"feasible", plan.feasible}, {"swaps", swaps}, {"states", plan.states}, {"routing", to_json(plan.routing)}};
}

}  // namespace foldloop
