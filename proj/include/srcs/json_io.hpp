#ifndef SRCS_JSON_IO_HPP
#define SRCS_JSON_IO_HPP

#include "srcs/core.hpp"

#include <string>

namespace srcs {

// Instance JSON: {"m": int, "R": int, "jobs": [{"id": int, "p": "num/den", "r": int}]}
// Schedule JSON: {"starts": {"<id>": "num/den"}}
// Rationals serialize as "num/den" strings; plain integers are accepted too.

std::string instance_to_json(const Instance &ins);
Instance instance_from_json(const std::string &text);

std::string schedule_to_json(const Schedule &sched);
Schedule schedule_from_json(const std::string &text);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

}  // namespace srcs

#endif
