#pragma once

#include <stdexcept>

namespace vps {

// File could not be opened, read or written.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed content in a file or string (CSV, config, model file).
// Messages carry location context (line / row / column) where available.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vector / matrix / column-count mismatch between two artifacts.
struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vps
