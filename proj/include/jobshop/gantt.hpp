#pragma once

#include <stdexcept>
#include <string>

#include "jobshop/instance.hpp"
#include "jobshop/schedule.hpp"

namespace jobshop {

enum class GanttFormat { Svg, Text };

class InfeasibleScheduleError : public std::runtime_error {
 public:
  explicit InfeasibleScheduleError(const std::string& what);
};

// Renders one row per machine, time running left to right. The schedule
// is verified first; infeasible input is rejected, never drawn.
std::string emit_gantt(const Instance& inst, const Schedule& sched,
                       GanttFormat format);

}  // namespace jobshop
