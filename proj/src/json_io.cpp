#include "srcs/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace srcs {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Rational rational_from_json(const json &v, const std::string &what) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    auto q = parse_rational(v.get<std::string>());
    if (q) return *q;
  }
  throw std::invalid_argument("bad rational for " + what);
}

Int int_from_json(const json &v, const std::string &what) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_string()) return Int(v.get<std::string>());
  throw std::invalid_argument("bad integer for " + what);
}

}  // namespace

std::string instance_to_json(const Instance &ins) {
  ordered_json out;
  out["m"] = ins.m.str();
  out["R"] = ins.R.str();
  out["jobs"] = ordered_json::array();
  for (const auto &j : ins.jobs) {
    ordered_json jj;
    jj["id"] = j.id;
    jj["p"] = to_string(j.p);
    jj["r"] = j.r.str();
    out["jobs"].push_back(jj);
  }
  return out.dump(2) + "\n";
}

Instance instance_from_json(const std::string &text) {
  json in = json::parse(text);
  Instance ins;
  ins.m = int_from_json(in.at("m"), "m");
  ins.R = int_from_json(in.at("R"), "R");
  for (const auto &jj : in.at("jobs")) {
    Job j;
    j.id = jj.at("id").get<int>();
    j.p = rational_from_json(jj.at("p"), "p");
    j.r = int_from_json(jj.at("r"), "r");
    ins.jobs.push_back(j);
  }
  ins.validate();
  return ins;
}

std::string schedule_to_json(const Schedule &sched) {
  ordered_json out;
  out["starts"] = ordered_json::object();
  for (const auto &[id, s] : sched.starts)
    out["starts"][std::to_string(id)] = to_string(s);
  return out.dump(2) + "\n";
}

Schedule schedule_from_json(const std::string &text) {
  json in = json::parse(text);
  Schedule sched;
  for (const auto &[key, v] : in.at("starts").items())
    sched.starts[std::stoi(key)] = rational_from_json(v, "start of " + key);
  return sched;
}

std::string read_file(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace srcs
