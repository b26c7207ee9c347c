#include "foldloop/loopsim.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "foldloop/errors.hpp"

namespace foldloop {

namespace {

Rational abs_rational(const Rational& r) { return r < 0 ? -r : r; }

// Signed rotation that brings position p to the entrance along the shorter way.
Rational rotation_to_entrance(const Rational& p) {
  Rational x = frac(p);
  return x <= Rational(1, 2) ? -x : Rational(1) - x;
}

// Signed rotation that moves position p to q along the shorter way.
Rational rotation_between(const Rational& p, const Rational& q) {
  Rational x = frac(q - p);
  return x <= Rational(1, 2) ? x : x - Rational(1);
}

int first_token(const Event& e) { return e.tokens.empty() ? -1 : *std::min_element(e.tokens.begin(), e.tokens.end()); }

// Mutable view of a single loop used to emit events.
class LoopDriver {
 public:
  LoopDriver(LoopState state, Rational lap, int loop_id = 0)
      : state_(std::move(state)), lap_(std::move(lap)), loop_id_(loop_id) {}

  Rational now() const { return now_; }
  void set_now(const Rational& t) { now_ = t; }
  LoopState& state() { return state_; }
  TimedSchedule& schedule() { return schedule_; }

  std::vector<int> track_ids() const {
    std::vector<int> ids;
    for (const auto& t : state_.occupants) ids.push_back(t.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  void rotate(const Rational& delta) {
    if (delta == 0 || state_.occupants.empty()) return;
    Rational d = abs_rational(delta) * lap_;
    schedule_.add({now_, d, "rotate", loop_id_, track_ids()});
    for (auto& t : state_.occupants) t.position = frac(t.position + delta);
    now_ += d;
  }

  Rational rotate_to_entrance(int id) {
    Rational delta = rotation_to_entrance(state_.token(id).position);
    rotate(delta);
    return delta;
  }

  void move(int id, const Rational& to) {
    auto& tok = find(id);
    Rational delta = rotation_between(tok.position, to);
    if (delta == 0) return;
    Rational d = abs_rational(delta) * lap_;
    schedule_.add({now_, d, "move", loop_id_, {id}});
    tok.position = frac(to);
    now_ += d;
  }

  void enter(int id) {
    auto it = std::find_if(state_.occupants.begin(), state_.occupants.end(), [&](const Token& t) { return t.id == id; });
    if (it == state_.occupants.end()) throw std::logic_error("token not on the track");
    if (it->position != 0) throw std::logic_error("token entering away from the entrance");
    state_.occupants.erase(it);
    state_.port.push_back(id);
    schedule_.add({now_, Rational(0), "enter", loop_id_, {id}});
  }

  void exit(int id) {
    if (state_.port.empty() || state_.port.back() != id) throw std::logic_error("port exit out of LIFO order");
    for (const auto& t : state_.occupants)
      if (t.position == 0) throw std::logic_error("entrance occupied on exit");
    state_.port.pop_back();
    state_.occupants.push_back({id, Rational(0)});
    schedule_.add({now_, Rational(0), "exit", loop_id_, {id}});
  }

  void hold(const std::string& action, std::vector<int> tokens, const Rational& duration) {
    schedule_.add({now_, duration, action, loop_id_, std::move(tokens)});
    now_ += duration;
  }

 private:
  Token& find(int id) {
    for (auto& t : state_.occupants)
      if (t.id == id) return t;
    throw std::logic_error("token not on the track");
  }

  LoopState state_;
  Rational lap_;
  int loop_id_;
  Rational now_{0};
  TimedSchedule schedule_;
};

const char* gate_name(IntraLoopGate g) {
  switch (g) {
    case IntraLoopGate::kCnot: return "CNOT";
    case IntraLoopGate::kCz: return "CZ";
    case IntraLoopGate::kSwap: return "SWAP";
  }
  return "?";
}

void append_shifted(TimedSchedule& into, const TimedSchedule& from, const Rational& offset) {
  for (Event e : from.events()) {
    e.start += offset;
    into.add(std::move(e));
  }
}

// Throws unless the track holds every token evenly spaced in `target` order.
void check_cyclic_order(const LoopState& state, const std::vector<int>& target) {
  const int n = static_cast<int>(target.size());
  if (!state.port.empty() || static_cast<int>(state.occupants.size()) != n)
    throw std::logic_error("rearrangement left tokens in the port");
  for (int i = 0; i < n; ++i) {
    Rational gap = frac(state.token(target[(i + 1) % n]).position - state.token(target[i]).position);
    if (gap != Rational(1, n)) throw std::logic_error("rearrangement produced the wrong order");
  }
}

std::vector<int> anticlockwise_order(const LoopState& state) {
  std::vector<Token> sorted = state.occupants;
  std::sort(sorted.begin(), sorted.end(), [](const Token& a, const Token& b) { return a.position < b.position; });
  std::vector<int> ids;
  for (const auto& t : sorted) ids.push_back(t.id);
  return ids;
}

bool cyclically_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  auto it = std::find(b.begin(), b.end(), a[0]);
  if (it == b.end()) return false;
  std::size_t s = static_cast<std::size_t>(it - b.begin());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[(s + i) % b.size()]) return false;
  return true;
}

struct RearrangePlan {
  std::vector<int> order;  // fill order; the last entry stays on the track
  int direction = 1;
};

Rational plan_shuttle(const LoopState& loop, const RearrangePlan& plan) {
  const int n = static_cast<int>(plan.order.size());
  std::map<int, Rational> pos;
  for (const auto& t : loop.occupants) pos[t.id] = t.position;
  Rational rot{0}, total{0};
  for (int k = 0; k + 1 < n; ++k) {
    Rational p = frac(pos[plan.order[k]] + rot);
    total += circular_distance(p, Rational(0));
    rot -= p;
  }
  Rational p = frac(pos[plan.order.back()] + rot);
  total += circular_distance(p, frac(Rational(plan.direction, n)));
  return total + Rational(n - 2, n);
}

std::vector<RearrangePlan> candidate_plans(const LoopState& loop, const std::vector<int>& target,
                                           RearrangeStrategy strategy) {
  const int n = static_cast<int>(target.size());
  std::vector<RearrangePlan> plans;
  auto rotated = [&](const std::vector<int>& seq, int s) {
    std::vector<int> out(seq.begin() + s, seq.end());
    out.insert(out.end(), seq.begin(), seq.begin() + s);
    return out;
  };
  if (strategy == RearrangeStrategy::kScheme) {
    int best = 0;
    auto key = [&](int id) {
      const Rational& p = loop.token(id).position;
      return std::make_pair(circular_distance(p, Rational(0)), p <= Rational(1, 2) ? 0 : 1);
    };
    for (int s = 1; s < n; ++s)
      if (key(target[s]) < key(target[best])) best = s;
    plans.push_back({rotated(target, best), 1});
    return plans;
  }
  std::vector<int> reversed(target.rbegin(), target.rend());
  for (int s = 0; s < n; ++s) plans.push_back({rotated(target, s), 1});
  for (int s = 0; s < n; ++s) plans.push_back({rotated(reversed, s), -1});
  return plans;
}

// Shortest-path distance to the entrance on an integer lattice of `points` per lap.
inline std::int64_t lattice_distance(std::int64_t p, std::int64_t points) {
  p %= points;
  if (p < 0) p += points;
  return std::min(p, points - p);
}

inline std::int64_t lattice_mod(std::int64_t p, std::int64_t points) {
  p %= points;
  return p < 0 ? p + points : p;
}

std::int64_t lattice_rearrange(const std::vector<std::int64_t>& pos, const std::vector<int>& seq, int start,
                               int direction, std::int64_t points) {
  const int n = static_cast<int>(seq.size());
  std::int64_t rot = 0, total = 0;
  for (int k = 0; k + 1 < n; ++k) {
    std::int64_t p = lattice_mod(pos[seq[(start + k) % n]] + rot, points);
    total += std::min(p, points - p);
    rot -= p;
  }
  std::int64_t p = lattice_mod(pos[seq[(start + n - 1) % n]] + rot, points);
  total += lattice_distance(direction * (points / n) - p, points);
  return total + (n - 2) * (points / n);
}

std::int64_t lattice_rearrange_best(const std::vector<std::int64_t>& pos, const std::vector<int>& perm,
                                    std::vector<int>& reversed, RearrangeStrategy strategy, std::int64_t points) {
  const int n = static_cast<int>(perm.size());
  if (strategy == RearrangeStrategy::kScheme) {
    int best = 0;
    auto key = [&](int id) {
      std::int64_t p = pos[id];
      return std::make_pair(std::min(p, points - p), 2 * p <= points ? 0 : 1);
    };
    for (int s = 1; s < n; ++s)
      if (key(perm[s]) < key(perm[best])) best = s;
    return lattice_rearrange(pos, perm, best, 1, points);
  }
  std::copy(perm.rbegin(), perm.rend(), reversed.begin());
  std::int64_t best = -1;
  for (int s = 0; s < n; ++s) {
    std::int64_t a = lattice_rearrange(pos, perm, s, 1, points);
    std::int64_t b = lattice_rearrange(pos, reversed, s, -1, points);
    std::int64_t m = std::min(a, b);
    if (best < 0 || m < best) best = m;
  }
  return best;
}

std::int64_t lattice_gate(std::int64_t pa, std::int64_t pb, std::int64_t& rot, std::int64_t points) {
  std::int64_t a = lattice_mod(pa + rot, points);
  std::int64_t b = lattice_mod(pb + rot, points);
  if (lattice_distance(b, points) < lattice_distance(a, points)) std::swap(a, b);
  std::int64_t t = lattice_distance(a, points) + 2 * lattice_distance(a - b, points);
  rot -= a;
  return t;
}

std::int64_t lattice_cnot_stack(int n, int i, int j, std::int64_t phase, std::int64_t points) {
  const int k = n / 2;
  const std::int64_t step = points / n;
  auto slot = [&](int s) { return lattice_mod(s * step + phase, points); };
  std::int64_t best = -1;
  for (int order = 0; order < 2; ++order) {
    std::int64_t rot = 0, t = 0;
    int first[2] = {i, j}, second[2] = {k + i, k + j};
    if (order == 1) std::swap(first, second);
    t += lattice_gate(slot(first[0]), slot(first[1]), rot, points);
    t += lattice_gate(slot(second[0]), slot(second[1]), rot, points);
    if (best < 0 || t < best) best = t;
  }
  return best;
}

void check_lattice(int n, int points) {
  if (n < 2) throw std::invalid_argument("worst-case search needs n >= 2");
  if (points < 4 * n) throw std::invalid_argument("lattice must have at least 4n points per lap");
  if (points % n != 0) throw std::invalid_argument("lattice points per lap must be a multiple of n");
}

// Scripted check round of one folded patch. Corners A, B, C, D sit at
// 0, 1/4, 1/2, 3/4 of each loop; the port is between B and C.
struct ScriptStep {
  Rational move;  // anticlockwise, fraction of a lap
  std::vector<int> gate;  // tokens taking part in a CNOT after the move
};

struct LoopScript {
  int loop = 0;
  std::vector<Token> tokens;
  std::vector<ScriptStep> first_half;
  std::vector<ScriptStep> second_half;
};

std::vector<LoopScript> cycle_scripts() {
  const Rational a{0}, c{1, 2};
  std::vector<LoopScript> scripts;
  // Loop I: yellow from A, blue from C.
  scripts.push_back({1,
                     {{0, a}, {1, c}},
                     {{Rational(0), {0}}, {Rational(1, 2), {1}}, {Rational(1, 4), {0, 1}}},
                     {{Rational(1, 4), {0, 1}}, {Rational(1, 2), {0}}}});
  // Loop II: blue from C, gates at A then D.
  scripts.push_back({2,
                     {{2, c}},
                     {{Rational(1, 2), {2}}, {Rational(3, 4), {2}}},
                     {{Rational(1, 2), {2}}, {Rational(1, 4), {2}}}});
  // Loop III: yellow from A, ends the round at C.
  scripts.push_back({3,
                     {{3, a}},
                     {{Rational(0), {3}}, {Rational(1, 4), {3}}},
                     {{Rational(1, 2), {3}}, {Rational(3, 4), {3}}}});
  return scripts;
}

TimedSchedule cycle_schedule(const TimingParams& params) {
  const Rational port{3, 8};
  auto scripts = cycle_scripts();
  std::vector<int> all;
  for (const auto& s : scripts)
    for (const auto& t : s.tokens) all.push_back(t.id);

  TimedSchedule out;
  out.add({Rational(0), params.t_1q, "H", 0, all});
  Rational barrier = params.t_1q;

  std::vector<LoopDriver> drivers;
  for (const auto& s : scripts) {
    LoopState st;
    st.occupants = s.tokens;
    drivers.emplace_back(st, params.t_loop, s.loop);
  }
  for (int half = 0; half < 2; ++half) {
    Rational next = barrier;
    for (std::size_t k = 0; k < scripts.size(); ++k) {
      auto& drv = drivers[k];
      drv.set_now(barrier);
      for (const auto& step : half == 0 ? scripts[k].first_half : scripts[k].second_half) {
        drv.rotate(step.move);
        drv.hold("CNOT", step.gate, params.t_2q);
      }
      next = std::max(next, drv.now());
    }
    barrier = next;
  }
  out.add({barrier, params.t_1q, "H", 0, all});
  barrier += params.t_1q;

  for (std::size_t k = 0; k < scripts.size(); ++k) {
    auto& drv = drivers[k];
    drv.set_now(barrier);
    // Rotate forward; each token drops into the port as it passes the entrance.
    std::vector<std::pair<Rational, int>> arrivals;
    for (const auto& t : drv.state().occupants) arrivals.push_back({frac(port - t.position), t.id});
    std::sort(arrivals.begin(), arrivals.end());
    Rational rotated{0};
    for (const auto& [dist, id] : arrivals) {
      if (dist > rotated) {
        drv.hold("rotate", drv.track_ids(), (dist - rotated) * params.t_loop);
        for (auto& t : drv.state().occupants) t.position = frac(t.position + dist - rotated);
        rotated = dist;
      }
      auto& occ = drv.state().occupants;
      occ.erase(std::find_if(occ.begin(), occ.end(), [&](const Token& t) { return t.id == id; }));
      drv.state().port.push_back(id);
      drv.schedule().add({drv.now(), Rational(0), "enter", scripts[k].loop, {id}});
    }
    std::vector<Rational> devices(static_cast<std::size_t>(params.meas_devices), drv.now());
    std::vector<int> ids = drv.state().port;
    std::sort(ids.begin(), ids.end());
    for (int id : ids) {
      auto dev = std::min_element(devices.begin(), devices.end());
      drv.schedule().add({*dev, params.t_meas, "M", scripts[k].loop, {id}});
      *dev += params.t_meas;
    }
    append_shifted(out, drv.schedule(), Rational(0));
  }
  return out;
}

}  // namespace

LoopState LoopState::evenly_spaced(int n, const Rational& offset) {
  if (n < 1) throw std::invalid_argument("a loop needs at least one token");
  LoopState s;
  for (int q = 0; q < n; ++q) s.occupants.push_back({q, frac(Rational(q, n) + offset)});
  return s;
}

const Token& LoopState::token(int id) const {
  for (const auto& t : occupants)
    if (t.id == id) return t;
  throw std::invalid_argument("token " + std::to_string(id) + " is not on the track");
}

bool LoopState::in_port(int id) const { return std::find(port.begin(), port.end(), id) != port.end(); }

void LoopState::validate() const {
  std::set<int> ids;
  std::set<Rational> positions;
  for (const auto& t : occupants) {
    if (t.position < 0 || t.position >= 1) throw std::invalid_argument("token position outside [0, 1)");
    if (!ids.insert(t.id).second) throw std::invalid_argument("duplicate token id");
    if (!positions.insert(t.position).second) throw std::invalid_argument("two tokens share a position");
  }
  for (int id : port)
    if (!ids.insert(id).second) throw std::invalid_argument("duplicate token id");
}

void TimedSchedule::add(Event event) {
  auto key = [](const Event& e) { return std::make_pair(e.start, first_token(e)); };
  auto it = std::upper_bound(events_.begin(), events_.end(), event,
                             [&](const Event& a, const Event& b) { return key(a) < key(b); });
  events_.insert(it, std::move(event));
}

Rational TimedSchedule::makespan() const {
  Rational m{0};
  for (const auto& e : events_) m = std::max(m, e.end());
  return m;
}

Rational TimedSchedule::shuttle_time() const {
  Rational total{0};
  for (const auto& e : events_)
    if (e.action == "rotate" || e.action == "move" || e.action == "enter" || e.action == "exit" ||
        e.action == "exchange" || e.action == "resync")
      total += e.duration;
  return total;
}

void TimedSchedule::check_exclusive() const {
  std::map<int, std::vector<const Event*>> by_token;
  for (const auto& e : events_)
    for (int t : e.tokens) by_token[t].push_back(&e);
  for (const auto& [tok, list] : by_token)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const Event& a = *list[i];
        const Event& b = *list[j];
        if (a.start < b.end() && b.start < a.end())
          throw std::logic_error("token " + std::to_string(tok) + " is in overlapping events");
      }
}

std::string TimedSchedule::table() const {
  std::ostringstream out;
  out << std::left << std::setw(14) << "start" << std::setw(12) << "duration" << std::setw(10) << "action"
      << std::setw(6) << "loop"
      << "tokens\n";
  for (const auto& e : events_) {
    std::string toks;
    for (std::size_t i = 0; i < e.tokens.size(); ++i) toks += (i ? "," : "") + std::to_string(e.tokens[i]);
    out << std::setw(14) << to_string(e.start) << std::setw(12) << to_string(e.duration) << std::setw(10) << e.action
        << std::setw(6) << e.loop << toks << "\n";
  }
  return out.str();
}

LoopRun swap_protocol(const LoopState& loop, int a, int b, IntraLoopGate gate, const TimingParams& params,
                      const SwapOptions& options) {
  loop.validate();
  if (!loop.port.empty()) throw PortOccupiedError("port is not empty");
  if (a == b) throw std::invalid_argument("swap protocol needs two distinct tokens");
  const Rational da = circular_distance(loop.token(a).position, Rational(0));
  const Rational db = circular_distance(loop.token(b).position, Rational(0));
  if (db < da) std::swap(a, b);

  LoopDriver drv(loop, params.t_loop);
  drv.rotate_to_entrance(a);
  drv.enter(a);
  Rational back = drv.rotate_to_entrance(b);
  if (options.physical_swap) {
    auto& occ = drv.state().occupants;
    occ.erase(std::find_if(occ.begin(), occ.end(), [&](const Token& t) { return t.id == b; }));
    drv.state().port.pop_back();
    drv.state().port.push_back(b);
    occ.push_back({a, Rational(0)});
    drv.hold("exchange", {a, b}, Rational(0));
    drv.rotate(-back);
    drv.exit(b);
    drv.hold("resync", {a}, options.resync);
  } else {
    drv.enter(b);
    drv.hold(gate_name(gate), {a, b}, params.t_2q);
    drv.exit(b);
    drv.rotate(-back);
    drv.exit(a);
  }
  drv.schedule().check_exclusive();
  return {drv.schedule(), drv.state()};
}

LoopRun rearrange(const LoopState& loop, const std::vector<int>& target, const TimingParams& params,
                  RearrangeStrategy strategy) {
  loop.validate();
  if (!loop.port.empty()) throw PortOccupiedError("port is not empty");
  const int n = static_cast<int>(loop.occupants.size());
  {
    std::vector<int> a = target, b;
    for (const auto& t : loop.occupants) b.push_back(t.id);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("target is not a permutation of the loop's tokens");
  }
  std::vector<int> current = anticlockwise_order(loop);
  for (int i = 0; i < n; ++i) {
    Rational gap = frac(loop.token(current[(i + 1) % n]).position - loop.token(current[i]).position);
    if (gap != Rational(1, n)) throw std::invalid_argument("rearrangement needs an evenly spaced loop");
  }
  if (cyclically_equal(target, current)) return {TimedSchedule{}, loop};

  auto plans = candidate_plans(loop, target, strategy);
  const RearrangePlan* best = &plans[0];
  Rational best_time = plan_shuttle(loop, plans[0]);
  for (std::size_t k = 1; k < plans.size(); ++k) {
    Rational t = plan_shuttle(loop, plans[k]);
    if (t < best_time) {
      best_time = t;
      best = &plans[k];
    }
  }

  LoopDriver drv(loop, params.t_loop);
  for (int k = 0; k + 1 < n; ++k) {
    drv.rotate_to_entrance(best->order[k]);
    drv.enter(best->order[k]);
  }
  drv.move(best->order.back(), frac(Rational(best->direction, n)));
  for (int k = n - 2; k >= 0; --k) {
    drv.exit(best->order[k]);
    if (k > 0) drv.rotate(Rational(best->direction, n));
  }
  check_cyclic_order(drv.state(), target);
  if (drv.schedule().makespan() != best_time * params.t_loop)
    throw std::logic_error("rearrangement trace disagrees with its plan");
  drv.schedule().check_exclusive();
  return {drv.schedule(), drv.state()};
}

LoopRun cnot_stack(int n, int i, int j, const Rational& phase, const TimingParams& params) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("a folded stack loop needs an even n >= 4");
  const int k = n / 2;
  if (i == j || i < 0 || j < 0 || i >= k || j >= k) throw std::invalid_argument("patch index out of range");
  LoopState start = LoopState::evenly_spaced(n, phase);
  std::optional<LoopRun> best;
  for (int order = 0; order < 2; ++order) {
    std::pair<int, int> first{i, j}, second{k + i, k + j};
    if (order == 1) std::swap(first, second);
    LoopRun g1 = swap_protocol(start, first.first, first.second, IntraLoopGate::kCnot, params);
    LoopRun g2 = swap_protocol(g1.final_state, second.first, second.second, IntraLoopGate::kCnot, params);
    LoopRun run{g1.schedule, g2.final_state};
    append_shifted(run.schedule, g2.schedule, g1.schedule.makespan());
    if (!best || run.schedule.makespan() < best->schedule.makespan()) best = std::move(run);
  }
  return *best;
}

TimedSchedule simulate_cycle(const LoopEmbedding& embedding, const TimingParams& params) {
  if (embedding.kind != PatchKind::kFolded || embedding.num_patches != 1)
    throw UnsupportedCombination("cycle tracing covers a single folded patch; use pipeline_model for larger stacks");
  params.validate();
  TimedSchedule s = cycle_schedule(params);
  s.check_exclusive();
  return s;
}

std::vector<PipelineRound> pipeline_model(int n, const TimingParams& params, int rounds) {
  if (n < 2) throw std::invalid_argument("pipeline model needs n >= 2");
  if (rounds < 1) throw std::invalid_argument("pipeline model needs at least one round");
  params.validate();
  const Rational compute = cycle_schedule(params).makespan() - params.t_meas;

  struct Pending {
    Rational ready;
    int token;
    int round;
  };
  std::vector<Pending> pending;
  for (int q = 0; q < n; ++q) pending.push_back({compute, q, 1});
  std::vector<Rational> devices(static_cast<std::size_t>(params.meas_devices), Rational(0));
  std::vector<Rational> completion(static_cast<std::size_t>(rounds) + 1, Rational(0));

  while (!pending.empty()) {
    auto dev = std::min_element(devices.begin(), devices.end());
    Rational free_at = *dev;
    Rational earliest = std::min_element(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
                          return a.ready < b.ready;
                        })->ready;
    Rational horizon = std::max(free_at, earliest);
    auto pick = pending.end();
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      if (it->ready > horizon) continue;
      if (pick == pending.end() || std::tie(it->round, it->ready, it->token) < std::tie(pick->round, pick->ready, pick->token))
        pick = it;
    }
    Pending p = *pick;
    pending.erase(pick);
    Rational start = std::max(free_at, p.ready);
    Rational end = start + params.t_meas;
    *dev = end;
    completion[static_cast<std::size_t>(p.round)] = std::max(completion[static_cast<std::size_t>(p.round)], end);
    if (p.round < rounds) pending.push_back({end + compute, p.token, p.round + 1});
  }

  std::vector<PipelineRound> out;
  for (int r = 1; r <= rounds; ++r) {
    const Rational& c = completion[static_cast<std::size_t>(r)];
    out.push_back({r, c, c / Rational(r)});
  }
  return out;
}

WorstCase worst_case_search(SearchProtocol protocol, int n, int points, const TimingParams& params,
                            RearrangeStrategy strategy) {
  check_lattice(n, points);
  WorstCase best;
  best.protocol = protocol;
  best.n = n;
  best.points = points;
  const std::int64_t step = points / n;
  std::int64_t best_units = -1;

  switch (protocol) {
    case SearchProtocol::kSwap: {
      for (std::int64_t off = 0; off < step; ++off)
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) {
            std::int64_t pa = a * step + off, pb = b * step + off;
            if (lattice_distance(pb, points) < lattice_distance(pa, points)) std::swap(pa, pb);
            std::int64_t t = lattice_distance(pa, points) + 2 * lattice_distance(pa - pb, points);
            ++best.configurations;
            if (t > best_units) {
              best_units = t;
              best.offset = Rational(off, points);
              best.witness = lattice_distance(b * step + off, points) < lattice_distance(a * step + off, points)
                                 ? std::vector<int>{b, a}
                                 : std::vector<int>{a, b};
            }
          }
      best.shuttle = Rational(best_units, points);
      best.makespan = best.shuttle * params.t_loop + params.t_2q;
      break;
    }
    case SearchProtocol::kRearrange: {
      if (n > 10) throw std::invalid_argument("exhaustive rearrangement search is limited to n <= 10");
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::vector<int> reversed(static_cast<std::size_t>(n));
      std::vector<std::int64_t> pos(static_cast<std::size_t>(n));
      best_units = 0;
      best.witness.clear();
      for (std::int64_t off = 0; off < step; ++off) {
        for (int q = 0; q < n; ++q) pos[static_cast<std::size_t>(q)] = q * step + off;
        std::iota(perm.begin(), perm.end(), 0);
        do {
          ++best.configurations;
          bool identity = true;
          for (int q = 0; q < n; ++q) identity = identity && perm[static_cast<std::size_t>(q)] == q;
          if (identity) continue;
          std::int64_t t = lattice_rearrange_best(pos, perm, reversed, strategy, points);
          if (t > best_units) {
            best_units = t;
            best.offset = Rational(off, points);
            best.witness = perm;
          }
        } while (std::next_permutation(perm.begin() + 1, perm.end()));
      }
      best.shuttle = Rational(best_units, points);
      best.makespan = best.shuttle * params.t_loop;
      break;
    }
    case SearchProtocol::kCnotStack: {
      if (n < 4 || n % 2 != 0) throw std::invalid_argument("a folded stack loop needs an even n >= 4");
      const int k = n / 2;
      for (std::int64_t phase = 0; phase < points; ++phase)
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            ++best.configurations;
            std::int64_t t = lattice_cnot_stack(n, i, j, phase, points);
            if (t > best_units) {
              best_units = t;
              best.offset = Rational(phase, points);
              best.witness = {i, j};
            }
          }
      best.shuttle = Rational(best_units, points);
      best.makespan = best.shuttle * params.t_loop + 2 * params.t_2q;
      break;
    }
  }
  return best;
}

std::string to_string(SearchProtocol protocol) {
  switch (protocol) {
    case SearchProtocol::kSwap: return "swap";
    case SearchProtocol::kRearrange: return "rearrange";
    case SearchProtocol::kCnotStack: return "cnot_stack";
  }
  return "?";
}

SearchProtocol parse_search_protocol(const std::string& name) {
  if (name == "swap") return SearchProtocol::kSwap;
  if (name == "rearrange") return SearchProtocol::kRearrange;
  if (name == "cnot_stack" || name == "cnot-stack") return SearchProtocol::kCnotStack;
  throw std::invalid_argument("unknown protocol: " + name);
}

}  // namespace foldloop
