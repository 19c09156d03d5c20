#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vps/dataset.hpp"

namespace vps {

// Shortest decimal representation that parses back to the identical double.
std::string format_double(double v);

// Strict full-token parse. `context` is prepended to error messages.
double parse_double(std::string_view token, const std::string& context);

// RFC-4180 field quoting: fields containing comma, quote or newline are
// wrapped in double quotes with embedded quotes doubled.
std::string csv_field(std::string_view raw);

// Splits one RFC-4180 line into unquoted fields.
std::vector<std::string> split_csv_line(std::string_view line, const std::string& context);

// --- dataset files ------------------------------------------------------
//
// Canonical dataset CSV: header with input then target column names, one
// sample per row, shortest round-trip floats, LF line endings. A `.meta`
// sidecar (same stem) records seed, provenance, column split and the digest
// of the CSV bytes, as key = value lines.

std::string dataset_to_csv(const Dataset& ds);

// sha256 of the canonical CSV bytes, prefixed "sha256:".
std::string dataset_digest(const Dataset& ds);

// Writes the CSV and its sidecar; `extra_meta` entries are appended to the
// sidecar (sorted by key).
void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path,
                       const std::map<std::string, std::string>& extra_meta = {});

// Reads a dataset CSV. The input/target split comes from the sidecar when
// present, else is inferred from the known column layouts
// (phi,sh,rho -> vp and phi,rho -> vp,vs).
Dataset read_dataset_csv(const std::filesystem::path& path);

// --- well-log files -----------------------------------------------------

enum class LogSchema { Case1, Case2 };

// Required log columns: Case1 depth,phi,sh,rho[,vp]; Case2 depth,phi,rho[,vp,vs].
// Columns are matched by name, order-insensitive; unknown columns are
// ignored except `lith`, which populates labels.
struct LoadedLog {
    Dataset data;                    // inputs + any target columns present
    std::vector<double> depth;       // one entry per row
    std::vector<std::string> labels; // empty when the file has no lith column
};

LoadedLog read_log_csv(const std::filesystem::path& path, LogSchema schema);

// Writes depth,<inputs>,<targets>[,lith]; depth is the row index when the
// log was generated rather than measured.
void write_log_csv(const LabeledLog& log, const std::filesystem::path& path);

// --- small helpers ------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path); // io_error
void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace vps
