#include "cqgen/hash.hpp"

#include <cstdio>

namespace cqgen {

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf);
}

}  // namespace cqgen
