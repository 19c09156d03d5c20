#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "vps/network.hpp"

namespace vps {

// Training provenance embedded in the model file.
struct ModelProvenance {
    std::string dataset_digest = "none"; // "sha256:<hex>" or "none"
    std::uint64_t shuffle_seed = 0;
};

inline constexpr int kModelFormatVersion = 1;

// Self-describing text format, version 1:
//
//   vps-model version 1
//   input_dim = 3
//   output_dim = 1
//   hidden = 9,15,9
//   activation = tanh
//   init_seed = 42
//   shuffle_seed = 43
//   dataset_digest = sha256:...
//   [input_stats]   -> "min = ..." / "max = ..." rows
//   [output_stats]
//   [layer 0]       -> "in =", "out =", `out` w-rows, one b-row
//   ...
//   [end]
//
// Floats are printed with shortest round-trip precision, so a loaded model
// predicts bit-identically to the saved one.
void save_model(const Network& net, const std::filesystem::path& path,
                const ModelProvenance& provenance = {});

// Validates the version, section structure, dimension chaining and
// finiteness of every number before returning. Throws parse_error (naming
// the offending section or value), io_error or dimension_error.
Network load_model(const std::filesystem::path& path,
                   ModelProvenance* provenance_out = nullptr);

} // namespace vps
