#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vps/dataset.hpp"
#include "vps/network.hpp"
#include "vps/train.hpp"

namespace vps {

// Normalized root-mean-squared error:
//   sqrt(mean((pred - target)^2)) / max(|target|)
// over the evaluated set. Throws dimension_error on length mismatch or empty
// input and std::domain_error when every target is zero.
double normalized_rmse(std::span<const double> pred, std::span<const double> target);

// One sample of a prediction trace; error is signed and normalized by the
// largest |target| of the evaluated set.
struct TraceEntry {
    double target = 0.0;
    double pred = 0.0;
    double error = 0.0;
};

std::vector<TraceEntry> per_sample_trace(std::span<const double> pred,
                                         std::span<const double> target);

struct ZoneStat {
    std::string label;
    std::size_t count = 0;
    double mean_abs_error = 0.0;
};

// Mean |normalized error| per distinct label, ordered by first appearance;
// `worst` indexes the zone with the largest mean (first on ties).
struct ZoneSummary {
    std::vector<ZoneStat> zones;
    std::size_t worst = 0;
};

ZoneSummary zone_summary(std::span<const TraceEntry> trace,
                         std::span<const std::string> labels);

// Per-target epsilon plus per-sample traces for a whole dataset.
struct EvalReport {
    std::vector<double> epsilon;              // one per target column
    std::vector<std::vector<TraceEntry>> trace; // one trace per target column
};

EvalReport evaluate(const Network& net, const Dataset& data);

// Trace CSV in the well-log layouts:
//   one target:  sno,Vtarget,Vobserved,normerror
//   two targets: sno,Vpt,Vpo,Vst,Vso,Vperror,Vserror
// Other widths use a generic sno,<name>_target,<name>_pred,<name>_error set.
std::string trace_to_csv(const EvalReport& report);

std::string zone_summary_to_csv(const std::vector<ZoneSummary>& per_target,
                                const std::vector<std::string>& target_names);

// --- architecture sweep ---------------------------------------------------

struct SweepEntry {
    NetworkSpec spec;
    std::vector<double> median_epsilon; // per target; empty when no seed converged
    std::size_t seeds_total = 0;
    std::size_t seeds_converged = 0;
};

struct SweepResult {
    std::vector<std::string> target_names;
    std::vector<SweepEntry> entries; // in submitted order
};

struct SeededModel {
    std::uint64_t seed = 0;
    Network net;
};

// Trains every spec once per seed (init_seed = seed, shuffle_seed = seed + 1)
// and reports the per-target median validation epsilon over the converged
// runs. Diverged runs are recorded in the counters and excluded from the
// median. When `last_entry_models` is non-null it receives the trained
// network of every converged seed of the final spec (the customary trace
// source).
SweepResult sweep(const std::vector<NetworkSpec>& specs, const Dataset& data,
                  const TrainConfig& cfg, std::span<const std::uint64_t> seeds,
                  std::vector<SeededModel>* last_entry_models = nullptr);

// spec,eps_<T1>[,eps_<T2>...],n_seeds with RFC-4180 quoting of spec strings.
std::string sweep_to_csv(const SweepResult& result);

// Middle element (mean of the middle two for even sizes). Throws
// std::invalid_argument on empty input.
double median(std::vector<double> values);

} // namespace vps
