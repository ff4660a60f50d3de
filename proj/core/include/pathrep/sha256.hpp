#pragma once

#include <string>
#include <string_view>

namespace pathrep {

/// SHA-256 digest of `data`, as a lowercase hex string.
std::string sha256_hex(std::string_view data);

} // namespace pathrep
