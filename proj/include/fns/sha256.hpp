#pragma once

#include <cstdint>
#include <string>

namespace fns {

// SHA-256 digest as lowercase hex. Self-contained (FIPS 180-4).
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_file_hex(const std::string& path);

}  // namespace fns
