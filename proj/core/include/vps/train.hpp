#pragma once

#include <cstdint>
#include <vector>

#include "vps/dataset.hpp"
#include "vps/network.hpp"

namespace vps {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct TrainConfig {
    std::size_t epochs = 500;
    std::size_t batch_size = 128;
    double learning_rate = 1e-3;
    AdamConfig adam;
    double val_fraction = 0.1;
    std::size_t patience = 20;
    std::uint64_t shuffle_seed = 0;

    void validate() const; // throws std::invalid_argument
};

enum class TrainStatus {
    MaxEpochs,    // ran the full epoch budget
    EarlyStopped, // no validation improvement for `patience` epochs
    Diverged,     // non-finite loss; the best parameters so far are kept
};

struct TrainReport {
    std::vector<double> train_loss; // normalized-space MSE per epoch
    std::vector<double> val_loss;
    std::size_t best_epoch = 0;
    double best_val_loss = 0.0;
    std::vector<double> final_epsilon; // per-target normalized RMSE on validation, original units
    TrainStatus status = TrainStatus::MaxEpochs;

    bool diverged() const { return status == TrainStatus::Diverged; }
    std::size_t epochs_run() const { return val_loss.size(); }
};

// Minibatch Adam on the normalized data:
//   - splits rows into validation (val_fraction, at least one row each side)
//     using a shuffle drawn from shuffle_seed,
//   - fits min/max normalization on the training split only,
//   - shuffles batches every epoch, keeps the best-validation parameters,
//   - stops early after `patience` epochs without improvement,
//   - aborts with Diverged status on any non-finite loss.
// On return `net` holds the best parameters and the fitted stats.
// Single-threaded and fully reproducible from (net, data, cfg).
TrainReport train(Network& net, const Dataset& data, const TrainConfig& cfg);

std::string_view train_status_name(TrainStatus status);

} // namespace vps
