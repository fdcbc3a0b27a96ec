#pragma once

#include <iosfwd>
#include <string>

#include "rebal/instance.hpp"

namespace rebal {

/// Line-oriented plain-text instance format, lossless to full double
/// precision. Layout:
///
///   instance <n_users> <n_locations> <range_h> <budget>
///   user <id> <x> <y> <cost>
///   location <id> <x> <y>
///   task <id> <location_id> <rank> <revenue>
///   edge <user_id> <task_id>
///
/// Blank lines and lines starting with '#' are ignored on read.
std::string serialize_instance(const Instance& instance);
void write_instance(const Instance& instance, const std::string& path);

Instance parse_instance(std::istream& in);
Instance read_instance(const std::string& path);

}  // namespace rebal
