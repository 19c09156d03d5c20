#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace vps {

// SHA-256 digest as 64 lowercase hex characters.
std::string sha256_hex(std::string_view bytes);

std::string sha256_hex_file(const std::filesystem::path& path); // io_error

} // namespace vps
