#pragma once

#include <iosfwd>
#include <string>

#include "gangfreq/task.hpp"

namespace gangfreq {

// Task-file document:
//   {"tasks": [{"e": <real>, "p": <integer>, "speedup": [<real>, ...]}, ...]}
// All speedup lists must have equal length. Loading runs full model
// validation; saving uses the canonical layout (keys in the order e, p,
// speedup; reals with up to 12 significant digits), so save(load(save(x)))
// reproduces save(x) byte for byte.
TaskSystem load_tasks(std::istream& in);
TaskSystem load_tasks_file(const std::string& path);

void save_tasks(const TaskSystem& system, std::ostream& out);
void save_tasks_file(const TaskSystem& system, const std::string& path);
std::string save_tasks_string(const TaskSystem& system);

}  // namespace gangfreq
