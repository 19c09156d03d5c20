#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vps {

// Architecture of a fully connected feedforward net: tanh hidden layers,
// linear output layer. The hidden list may be empty (a single affine map).
struct NetworkSpec {
    std::size_t input_dim = 0;
    std::size_t output_dim = 0;
    std::vector<std::size_t> hidden;
    std::uint64_t init_seed = 0;

    void validate() const; // throws std::invalid_argument on any zero width

    // "9,15,9"; empty string for no hidden layers.
    std::string hidden_to_string() const;

    // Parses "9, 15, 9" (spaces optional). Throws parse_error on empty
    // tokens or non-numeric input.
    static std::vector<std::size_t> parse_hidden(std::string_view text);
};

// Per-column min/max used to map values to and from [-1, 1].
struct NormStats {
    std::vector<double> min;
    std::vector<double> max;

    std::size_t dim() const { return min.size(); }

    // Fits over the given row indices of a flat row-major matrix. Constant
    // columns are widened to max = min + 1 so the stats stay invertible.
    static NormStats fit(const std::vector<double>& rowmajor, std::size_t dim,
                         std::span<const std::size_t> rows);

    void validate() const; // throws std::domain_error unless max > min per column

    double normalize(double v, std::size_t col) const {
        return 2.0 * (v - min[col]) / (max[col] - min[col]) - 1.0;
    }
    double denormalize(double v, std::size_t col) const {
        return (v + 1.0) * 0.5 * (max[col] - min[col]) + min[col];
    }
};

// Scratch buffers for forward/backward passes; reuse across samples to keep
// the training loop allocation-free.
struct Workspace {
    std::vector<std::vector<double>> act;   // act[0] = input, act[k+1] = layer k output
    std::vector<std::vector<double>> delta; // per-layer output deltas
};

class Network {
public:
    struct Layer {
        std::size_t in = 0;
        std::size_t out = 0;
        std::vector<double> w; // out x in, row-major
        std::vector<double> b; // out
    };

    Network() = default;

    // Weights drawn uniformly from +-sqrt(6 / (fan_in + fan_out)), biases
    // zero; fully determined by spec.init_seed. Normalization stats are
    // unset until set_normalization (train() fits and sets them).
    static Network init(const NetworkSpec& spec);

    const NetworkSpec& spec() const { return spec_; }
    const std::vector<Layer>& layers() const { return layers_; }
    std::vector<Layer>& layers() { return layers_; }

    std::size_t parameter_count() const;

    bool has_stats() const { return in_stats_.has_value(); }
    void set_normalization(NormStats in, NormStats out);
    const NormStats& input_stats() const;  // throws std::logic_error when unset
    const NormStats& output_stats() const;

    // Full prediction in original units: normalize, propagate, denormalize.
    // Throws dimension_error on length mismatch, std::logic_error when the
    // stats are unset.
    std::vector<double> forward(std::span<const double> x) const;

    // Propagation in normalized space only; no stats required.
    void forward_normalized(std::span<const double> xn, std::span<double> out,
                            Workspace& ws) const;
    std::vector<double> forward_normalized(std::span<const double> xn) const;

    Workspace make_workspace() const;

private:
    NetworkSpec spec_;
    std::vector<Layer> layers_;
    std::optional<NormStats> in_stats_;
    std::optional<NormStats> out_stats_;
};

// Mean of squared componentwise differences. Throws dimension_error on
// length mismatch or empty vectors.
double loss_mse(std::span<const double> pred, std::span<const double> target);

// Parameter-shaped gradient accumulators.
struct Gradients {
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> b;

    static Gradients like(const Network& net);
    void zero();
};

// Batch-mean loss_mse over `nrows` normalized samples (row-major xn: nrows x
// input_dim, yn: nrows x output_dim) and its exact reverse-mode gradients
// with respect to every weight and bias. Returns the loss.
double loss_and_gradients(const Network& net, std::span<const double> xn,
                          std::span<const double> yn, std::size_t nrows, Gradients& grads,
                          Workspace& ws);

// Batch-mean loss_mse only.
double batch_loss(const Network& net, std::span<const double> xn, std::span<const double> yn,
                  std::size_t nrows, Workspace& ws);

// Row-wise forward in original units; preserves order. Returns a flat
// nrows x output_dim matrix.
std::vector<double> predict_batch(const Network& net, std::span<const double> inputs,
                                  std::size_t nrows);

} // namespace vps
