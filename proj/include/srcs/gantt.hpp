#ifndef SRCS_GANTT_HPP
#define SRCS_GANTT_HPP

#include "srcs/core.hpp"

#include <string>

namespace srcs {

/// Static SVG: x is time, y is resource units. Each job is a rectangle of
/// width p and height r stacked into the lowest free band; colors come from
/// greedy interval coloring in start order. Throws std::invalid_argument on
/// an infeasible schedule.
std::string gantt_svg(const Instance &ins, const Schedule &sched);

}  // namespace srcs

#endif
