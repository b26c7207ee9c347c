#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "foldloop/rational.hpp"
#include "foldloop/surface_code.hpp"
#include "foldloop/timing.hpp"

namespace foldloop {

// Positions are fractions of the loop perimeter, measured anticlockwise from
// the port entrance.
struct Token {
  int id = 0;
  Rational position{0};
};

struct LoopState {
  std::vector<Token> occupants;  // tokens on the track
  std::vector<int> port;         // LIFO, back() is the top

  // n tokens with token q at q/n + offset.
  static LoopState evenly_spaced(int n, const Rational& offset = Rational(0));

  const Token& token(int id) const;
  bool in_port(int id) const;
  void validate() const;  // throws std::invalid_argument on duplicate ids or positions
};

struct Event {
  Rational start{0};
  Rational duration{0};
  std::string action;
  int loop = 0;
  std::vector<int> tokens;

  Rational end() const { return start + duration; }
};

class TimedSchedule {
 public:
  void add(Event event);
  const std::vector<Event>& events() const { return events_; }
  Rational makespan() const;
  // Total duration of rotate, move and port events.
  Rational shuttle_time() const;
  // Throws std::logic_error if a token is in two overlapping events.
  void check_exclusive() const;
  // Columns: start, duration, action, loop, tokens. Times in ns as "p/q".
  std::string table() const;

 private:
  std::vector<Event> events_;
};

struct LoopRun {
  TimedSchedule schedule;
  LoopState final_state;
};

enum class IntraLoopGate { kCnot, kCz, kSwap };

struct SwapOptions {
  // Exchange positions instead of applying a gate in the port; the loop is
  // left unevenly spaced and pays `resync` of port dwell to recover.
  bool physical_swap = false;
  Rational resync{0};
};

// Four-step port protocol between tokens a and b. The one closer to the
// entrance goes in first. Throws PortOccupiedError if the port is not empty
// and std::invalid_argument if a == b or either token is missing.
LoopRun swap_protocol(const LoopState& loop, int a, int b, IntraLoopGate gate, const TimingParams& params,
                      const SwapOptions& options = {});

enum class RearrangeStrategy {
  kScheme,     // start at the token nearest the entrance, fill in target order
  kOptimized,  // best start and orientation over all cyclic rotations
};

// Brings an evenly spaced loop into the cyclic order `target` (token ids,
// anticlockwise). Throws std::invalid_argument if target is not a permutation
// of the occupants, or the loop is not evenly spaced.
LoopRun rearrange(const LoopState& loop, const std::vector<int>& target, const TimingParams& params,
                  RearrangeStrategy strategy = RearrangeStrategy::kScheme);

// Two physical gates between patches i and j of an n-token data loop: slots
// (i, j) on layer 0 and (n/2 + i, n/2 + j) on layer 1. Slot s starts at s/n + phase.
// Throws std::invalid_argument if n < 4, n is odd, i == j or an index is out of range.
LoopRun cnot_stack(int n, int i, int j, const Rational& phase, const TimingParams& params);

// One check round of a single folded patch. Throws UnsupportedCombination for
// anything other than one folded patch.
TimedSchedule simulate_cycle(const LoopEmbedding& embedding, const TimingParams& params);

struct PipelineRound {
  int round = 0;
  Rational completion{0};  // last measurement of this round
  Rational average{0};     // completion / round
};

// Every token computes for T_cyc(2) - T_meas, then queues for one of m
// measurement devices. Throws std::invalid_argument if n < 2 or rounds < 1.
std::vector<PipelineRound> pipeline_model(int n, const TimingParams& params, int rounds);

enum class SearchProtocol { kSwap, kRearrange, kCnotStack };

struct WorstCase {
  SearchProtocol protocol = SearchProtocol::kSwap;
  int n = 0;
  int points = 0;             // lattice points per lap
  Rational shuttle{0};        // in units of T_loop
  Rational makespan{0};       // ns, including gate time
  Rational offset{0};         // position of token 0
  std::vector<int> witness;   // swap: {a, b}; rearrange: target; cnot_stack: {i, j}
  std::int64_t configurations = 0;
};

// Exhaustive sweep over every start on a lattice of `points` positions per lap
// (points must be a multiple of n and at least 4n). Rearrange is limited to
// n <= 10 and uses the optimized strategy unless told otherwise.
WorstCase worst_case_search(SearchProtocol protocol, int n, int points, const TimingParams& params,
                            RearrangeStrategy strategy = RearrangeStrategy::kOptimized);

std::string to_string(SearchProtocol protocol);
SearchProtocol parse_search_protocol(const std::string& name);

}  // namespace foldloop
