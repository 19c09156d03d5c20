#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace vps {

// Minimal TOML-style key/value configuration:
//
//   # comment
//   [section]
//   key = value            -> stored under "section.key"
//
// Values are kept as trimmed strings ("quoted strings" are unquoted) and
// converted by the typed getters on demand. Unknown keys are preserved, so
// config files may carry entries for several tools.
class Config {
public:
    Config() = default;

    static Config from_file(const std::filesystem::path& path); // io_error, parse_error
    static Config from_string(std::string_view text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;   // parse_error
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    void set(const std::string& key, const std::string& value) { entries_[key] = value; }

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace vps
