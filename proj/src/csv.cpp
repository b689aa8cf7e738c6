#include "nfepm/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace nfepm {

std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_header(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta) {
    for (const auto& [k, v] : meta) os << "# " << k << " = " << v << '\n';
}

}  // namespace nfepm
