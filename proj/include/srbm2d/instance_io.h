#pragma once

#include <string>
#include <string_view>

#include "srbm2d/srbm.h"

namespace srbm2d {

struct InstanceFile {
  std::string name;
  SrbmData data;
};

/// Parses {"sigma": [[..],[..]], "mu": [..], "r": [[..],[..]], "name": ".."}.
/// Throws Error(kParseError) naming the line/column or the offending field.
/// Nothing beyond the shape is checked; see validate().
InstanceFile parse_instance(std::string_view text);

/// Reads and parses a file; the name defaults to the file stem.
InstanceFile load_instance(const std::string& path);

std::string instance_to_json(const InstanceFile& inst);

}  // namespace srbm2d
