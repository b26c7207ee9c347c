#pragma once

#include <cstdint>

#include "foldloop/rational.hpp"

namespace foldloop {

// Hardware time constants in nanoseconds. Loop positions are fractions of the perimeter.
struct TimingParams {
  Rational t_loop{400};
  Rational t_1q{200};
  Rational t_2q{100};
  Rational t_meas{1000};
  Rational t_int{200};
  int meas_devices = 3;
  Rational slack{500};  // added before rounding T_cyc*(n) up to whole microseconds
  Rational standard_cycle{3000};  // code cycle of the standard, non-looped architecture

  static TimingParams silicon() { return TimingParams{}; }

  // Throws std::invalid_argument on negative times, a non-positive loop or
  // inter-loop time, or a non-positive device count.
  void validate() const;
};

}  // namespace foldloop
