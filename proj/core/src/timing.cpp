#include "foldloop/timing.hpp"

#include <stdexcept>

namespace foldloop {

void TimingParams::validate() const {
  if (t_loop <= 0) throw std::invalid_argument("t_loop_ns must be positive");
  if (t_1q < 0) throw std::invalid_argument("t_1q_ns must not be negative");
  if (t_2q < 0) throw std::invalid_argument("t_2q_ns must not be negative");
  if (t_meas < 0) throw std::invalid_argument("t_meas_ns must not be negative");
  if (t_int <= 0) throw std::invalid_argument("t_int_ns must be positive");
  if (meas_devices <= 0) throw std::invalid_argument("meas_devices must be positive");
  if (standard_cycle <= 0) throw std::invalid_argument("standard_cycle_ns must be positive");
  if (slack < 0) throw std::invalid_argument("slack_us must not be negative");
}

}  // namespace foldloop
