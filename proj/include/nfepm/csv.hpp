#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nfepm {

// Shortest decimal that round-trips to the same double.
std::string fmt_double(double x);

// Leading `# key = value` lines.
void write_header(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace nfepm
