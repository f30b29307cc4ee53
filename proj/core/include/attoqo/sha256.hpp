#pragma once

#include <cstdint>
#include <string>

namespace attoqo {

// SHA-256 of a byte string, returned as lowercase hex. Used for manifest
// digests of output files and configuration hashes.
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_file_hex(const std::string& path);

} // namespace attoqo
