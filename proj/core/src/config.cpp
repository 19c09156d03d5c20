#include "vps/config.hpp"

#include <charconv>

#include "vps/csv.hpp"
#include "vps/errors.hpp"

namespace vps {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Config Config::from_file(const std::filesystem::path& path) {
    return from_string(read_text_file(path), path.string());
}

Config Config::from_string(std::string_view text, const std::string& origin) {
    Config cfg;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw parse_error(origin + ":" + std::to_string(line_no) +
                                  ": malformed section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw parse_error(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (!section.empty()) key = section + "." + key;
        cfg.entries_[key] = std::string(value);
    }
    return cfg;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return parse_double(it->second, "config key '" + key + "'");
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::uint64_t value = 0;
    const char* first = it->second.data();
    const char* last = first + it->second.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last || it->second.empty()) {
        throw parse_error("config key '" + key + "': '" + it->second +
                          "' is not an unsigned integer");
    }
    return value;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw parse_error("config key '" + key + "': expected 'true' or 'false'");
}

} // namespace vps
