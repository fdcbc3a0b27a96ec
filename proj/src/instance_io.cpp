#include "rebal/instance_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rebal {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("instance file, line " + std::to_string(line_no) +
                           ": " + why);
}

}  // namespace

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "instance " << instance.users.size() << ' ' << instance.locations.size()
      << ' ' << num(instance.range_h) << ' ' << num(instance.budget) << '\n';
  for (const UserSpec& u : instance.users) {
    out << "user " << u.id << ' ' << num(u.destination.x) << ' '
        << num(u.destination.y) << ' ' << num(u.private_cost) << '\n';
  }
  for (const LocationSpec& l : instance.locations) {
    out << "location " << l.id << ' ' << num(l.position.x) << ' '
        << num(l.position.y) << '\n';
  }
  for (const TaskSpec& t : instance.tasks) {
    out << "task " << t.id << ' ' << t.location << ' ' << t.rank << ' '
        << num(t.revenue) << '\n';
  }
  for (const auto& [u, t] : instance.edges) {
    out << "edge " << u << ' ' << t << '\n';
  }
  return out.str();
}

void write_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << serialize_instance(instance);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Instance parse_instance(std::istream& in) {
  Instance inst;
  bool saw_header = false;
  std::size_t expect_users = 0, expect_locations = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "instance") {
      if (saw_header) fail(line_no, "duplicate header");
      if (!(ls >> expect_users >> expect_locations >> inst.range_h >>
            inst.budget)) {
        fail(line_no, "malformed header");
      }
      saw_header = true;
    } else if (tag == "user") {
      UserSpec u{};
      if (!(ls >> u.id >> u.destination.x >> u.destination.y >> u.private_cost)) {
        fail(line_no, "malformed user line");
      }
      inst.users.push_back(u);
    } else if (tag == "location") {
      LocationSpec l{};
      if (!(ls >> l.id >> l.position.x >> l.position.y)) {
        fail(line_no, "malformed location line");
      }
      inst.locations.push_back(l);
    } else if (tag == "task") {
      TaskSpec t{};
      if (!(ls >> t.id >> t.location >> t.rank >> t.revenue)) {
        fail(line_no, "malformed task line");
      }
      inst.tasks.push_back(t);
    } else if (tag == "edge") {
      UserId u;
      TaskId t;
      if (!(ls >> u >> t)) fail(line_no, "malformed edge line");
      inst.edges.emplace_back(u, t);
    } else {
      fail(line_no, "unknown record '" + tag + "'");
    }
  }
  if (!saw_header) throw std::runtime_error("instance file: missing header");
  if (inst.users.size() != expect_users ||
      inst.locations.size() != expect_locations) {
    throw std::runtime_error("instance file: header counts do not match body");
  }
  std::sort(inst.edges.begin(), inst.edges.end());
  inst.validate();
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return parse_instance(in);
}

}  // namespace rebal
