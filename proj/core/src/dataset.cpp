#include "vps/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

std::string_view provenance_name(Provenance p) {
    switch (p) {
    case Provenance::Case1: return "case1";
    case Provenance::Case2: return "case2";
    case Provenance::ExternalCsv: return "external_csv";
    }
    throw std::invalid_argument("unknown provenance value");
}

Provenance provenance_from_name(std::string_view name) {
    if (name == "case1") return Provenance::Case1;
    if (name == "case2") return Provenance::Case2;
    if (name == "external_csv") return Provenance::ExternalCsv;
    throw std::invalid_argument("unknown provenance name: " + std::string(name));
}

Dataset::Dataset(std::vector<std::string> input_names, std::vector<std::string> target_names,
                 Provenance provenance, std::uint64_t seed)
    : input_names_(std::move(input_names)),
      target_names_(std::move(target_names)),
      provenance_(provenance),
      seed_(seed) {
    // Target-free datasets are allowed: logs without recorded targets are
    // still usable for prediction.
    if (input_names_.empty()) {
        throw std::invalid_argument("Dataset: input column list must be nonempty");
    }
}

void Dataset::reserve(std::size_t n) {
    inputs_.reserve(n * input_dim());
    targets_.reserve(n * target_dim());
}

void Dataset::push_row(std::span<const double> input, std::span<const double> target) {
    if (input.size() != input_dim() || target.size() != target_dim()) {
        throw dimension_error("Dataset::push_row: row width does not match column names");
    }
    inputs_.insert(inputs_.end(), input.begin(), input.end());
    targets_.insert(targets_.end(), target.begin(), target.end());
    ++rows_;
}

std::vector<double> Dataset::target_column(std::size_t col) const {
    if (col >= target_dim()) {
        throw dimension_error("Dataset::target_column: column out of range");
    }
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        out[i] = targets_[i * target_dim() + col];
    }
    return out;
}

void Dataset::validate() const {
    for (double v : inputs_) {
        if (!std::isfinite(v)) throw std::domain_error("Dataset: non-finite input value");
    }
    for (double v : targets_) {
        if (!std::isfinite(v)) throw std::domain_error("Dataset: non-finite target value");
    }
}

} // namespace vps
