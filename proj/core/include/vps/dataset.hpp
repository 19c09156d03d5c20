#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vps {

enum class Provenance { Case1, Case2, ExternalCsv };

std::string_view provenance_name(Provenance p);
Provenance provenance_from_name(std::string_view name); // throws std::invalid_argument

// Ordered regression samples with named input and target columns.
// Rows are stored row-major in two flat arrays. Construction with a fixed
// seed and parameters is bit-reproducible within a build.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> input_names, std::vector<std::string> target_names,
            Provenance provenance, std::uint64_t seed);

    std::size_t rows() const { return rows_; }
    std::size_t input_dim() const { return input_names_.size(); }
    std::size_t target_dim() const { return target_names_.size(); }

    const std::vector<std::string>& input_names() const { return input_names_; }
    const std::vector<std::string>& target_names() const { return target_names_; }
    Provenance provenance() const { return provenance_; }
    std::uint64_t seed() const { return seed_; }

    void reserve(std::size_t n);
    // Throws dimension_error if the spans do not match the column counts.
    void push_row(std::span<const double> input, std::span<const double> target);

    std::span<const double> input_row(std::size_t i) const {
        return {inputs_.data() + i * input_dim(), input_dim()};
    }
    std::span<const double> target_row(std::size_t i) const {
        return {targets_.data() + i * target_dim(), target_dim()};
    }

    // Flat row-major storage, rows() x input_dim() / target_dim().
    const std::vector<double>& inputs() const { return inputs_; }
    const std::vector<double>& targets() const { return targets_; }

    // One target column as a contiguous copy.
    std::vector<double> target_column(std::size_t col) const;

    // Throws std::domain_error if any stored value is NaN or infinite.
    void validate() const;

private:
    std::vector<std::string> input_names_;
    std::vector<std::string> target_names_;
    std::vector<double> inputs_;
    std::vector<double> targets_;
    std::size_t rows_ = 0;
    Provenance provenance_ = Provenance::ExternalCsv;
    std::uint64_t seed_ = 0;
};

// A dataset with one label per row: a lithology name for block-structured
// logs, a depth index rendered as text for depth-ordered logs.
struct LabeledLog {
    Dataset data;
    std::vector<std::string> labels;
};

} // namespace vps
