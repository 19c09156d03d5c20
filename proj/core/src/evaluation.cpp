#include "vps/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "vps/csv.hpp"
#include "vps/errors.hpp"

namespace vps {

namespace {

double max_abs(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

} // namespace

double normalized_rmse(std::span<const double> pred, std::span<const double> target) {
    if (pred.size() != target.size() || pred.empty()) {
        throw dimension_error("normalized_rmse: lengths must match and be nonzero");
    }
    const double scale = max_abs(target);
    if (!(scale > 0.0)) {
        throw std::domain_error("normalized_rmse: all-zero target, normalizer undefined");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(pred.size())) / scale;
}

std::vector<TraceEntry> per_sample_trace(std::span<const double> pred,
                                         std::span<const double> target) {
    if (pred.size() != target.size() || pred.empty()) {
        throw dimension_error("per_sample_trace: lengths must match and be nonzero");
    }
    const double scale = max_abs(target);
    if (!(scale > 0.0)) {
        throw std::domain_error("per_sample_trace: all-zero target, normalizer undefined");
    }
    std::vector<TraceEntry> trace(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        trace[i] = {target[i], pred[i], (pred[i] - target[i]) / scale};
    }
    return trace;
}

ZoneSummary zone_summary(std::span<const TraceEntry> trace,
                         std::span<const std::string> labels) {
    if (trace.size() != labels.size()) {
        throw dimension_error("zone_summary: labels length must match trace length");
    }
    ZoneSummary summary;
    std::map<std::string, std::size_t> index; // label -> zone position
    for (std::size_t i = 0; i < trace.size(); ++i) {
        auto [it, inserted] = index.try_emplace(labels[i], summary.zones.size());
        if (inserted) {
            summary.zones.push_back({labels[i], 0, 0.0});
        }
        ZoneStat& zone = summary.zones[it->second];
        zone.count += 1;
        zone.mean_abs_error += std::fabs(trace[i].error);
    }
    for (ZoneStat& zone : summary.zones) {
        zone.mean_abs_error /= static_cast<double>(zone.count);
    }
    for (std::size_t z = 1; z < summary.zones.size(); ++z) {
        if (summary.zones[z].mean_abs_error > summary.zones[summary.worst].mean_abs_error) {
            summary.worst = z;
        }
    }
    return summary;
}

EvalReport evaluate(const Network& net, const Dataset& data) {
    if (data.input_dim() != net.spec().input_dim) {
        throw dimension_error("evaluate: dataset input columns do not match network");
    }
    if (data.target_dim() != net.spec().output_dim) {
        throw dimension_error("evaluate: dataset target columns do not match network");
    }
    if (data.rows() == 0) {
        throw dimension_error("evaluate: dataset is empty");
    }
    const std::size_t dout = data.target_dim();
    const std::vector<double> preds = predict_batch(net, data.inputs(), data.rows());

    EvalReport report;
    report.epsilon.resize(dout);
    report.trace.resize(dout);
    std::vector<double> pred_col(data.rows());
    for (std::size_t c = 0; c < dout; ++c) {
        for (std::size_t r = 0; r < data.rows(); ++r) {
            pred_col[r] = preds[r * dout + c];
        }
        const std::vector<double> tgt_col = data.target_column(c);
        report.epsilon[c] = normalized_rmse(pred_col, tgt_col);
        report.trace[c] = per_sample_trace(pred_col, tgt_col);
    }
    return report;
}

std::string trace_to_csv(const EvalReport& report) {
    if (report.trace.empty()) {
        throw dimension_error("trace_to_csv: report holds no trace");
    }
    const std::size_t rows = report.trace[0].size();
    std::string out;
    if (report.trace.size() == 1) {
        out = "sno,Vtarget,Vobserved,normerror\n";
        for (std::size_t i = 0; i < rows; ++i) {
            const TraceEntry& e = report.trace[0][i];
            out += std::to_string(i + 1) + ',' + format_double(e.target) + ',' +
                   format_double(e.pred) + ',' + format_double(e.error) + '\n';
        }
    } else if (report.trace.size() == 2) {
        out = "sno,Vpt,Vpo,Vst,Vso,Vperror,Vserror\n";
        for (std::size_t i = 0; i < rows; ++i) {
            const TraceEntry& p = report.trace[0][i];
            const TraceEntry& s = report.trace[1][i];
            out += std::to_string(i + 1) + ',' + format_double(p.target) + ',' +
                   format_double(p.pred) + ',' + format_double(s.target) + ',' +
                   format_double(s.pred) + ',' + format_double(p.error) + ',' +
                   format_double(s.error) + '\n';
        }
    } else {
        out = "sno";
        for (std::size_t c = 0; c < report.trace.size(); ++c) {
            const std::string n = "t" + std::to_string(c);
            out += "," + n + "_target," + n + "_pred," + n + "_error";
        }
        out += '\n';
        for (std::size_t i = 0; i < rows; ++i) {
            out += std::to_string(i + 1);
            for (const auto& trace : report.trace) {
                out += ',' + format_double(trace[i].target) + ',' + format_double(trace[i].pred) +
                       ',' + format_double(trace[i].error);
            }
            out += '\n';
        }
    }
    return out;
}

std::string zone_summary_to_csv(const std::vector<ZoneSummary>& per_target,
                                const std::vector<std::string>& target_names) {
    if (per_target.size() != target_names.size() || per_target.empty()) {
        throw dimension_error("zone_summary_to_csv: need one summary per target");
    }
    std::string out = "zone,n";
    for (const auto& name : target_names) {
        out += ",mean_abs_error_" + name;
    }
    out += '\n';
    const std::size_t zones = per_target[0].zones.size();
    for (const auto& summary : per_target) {
        if (summary.zones.size() != zones) {
            throw dimension_error("zone_summary_to_csv: summaries disagree on zones");
        }
    }
    for (std::size_t z = 0; z < zones; ++z) {
        out += csv_field(per_target[0].zones[z].label);
        out += ',' + std::to_string(per_target[0].zones[z].count);
        for (const auto& summary : per_target) {
            out += ',' + format_double(summary.zones[z].mean_abs_error);
        }
        out += '\n';
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median: empty input");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

SweepResult sweep(const std::vector<NetworkSpec>& specs, const Dataset& data,
                  const TrainConfig& cfg, std::span<const std::uint64_t> seeds,
                  std::vector<SeededModel>* last_entry_models) {
    if (specs.empty() || seeds.empty()) {
        throw std::invalid_argument("sweep: need at least one spec and one seed");
    }
    SweepResult result;
    result.target_names = data.target_names();
    if (last_entry_models) last_entry_models->clear();

    for (std::size_t si = 0; si < specs.size(); ++si) {
        const bool last = si + 1 == specs.size();
        SweepEntry entry;
        entry.spec = specs[si];
        entry.seeds_total = seeds.size();

        std::vector<std::vector<double>> eps_per_target(data.target_dim());
        for (const std::uint64_t seed : seeds) {
            NetworkSpec spec = specs[si];
            spec.init_seed = seed;
            Network net = Network::init(spec);
            TrainConfig run_cfg = cfg;
            run_cfg.shuffle_seed = seed + 1;
            const TrainReport report = train(net, data, run_cfg);
            if (report.diverged()) continue;
            entry.seeds_converged += 1;
            for (std::size_t c = 0; c < data.target_dim(); ++c) {
                eps_per_target[c].push_back(report.final_epsilon[c]);
            }
            if (last && last_entry_models) {
                last_entry_models->push_back({seed, std::move(net)});
            }
        }
        if (entry.seeds_converged > 0) {
            for (auto& eps : eps_per_target) {
                entry.median_epsilon.push_back(median(eps));
            }
        }
        result.entries.push_back(std::move(entry));
    }
    return result;
}

namespace {

std::string epsilon_header_name(const std::string& target_name) {
    std::string upper = target_name;
    if (!upper.empty() && upper[0] >= 'a' && upper[0] <= 'z') {
        upper[0] = static_cast<char>(upper[0] - 'a' + 'A');
    }
    return "eps_" + upper;
}

} // namespace

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "spec";
    for (const auto& name : result.target_names) {
        out += ',' + epsilon_header_name(name);
    }
    out += ",n_seeds\n";
    for (const auto& entry : result.entries) {
        const std::string spec_str =
            entry.spec.hidden.empty() ? "-" : entry.spec.hidden_to_string();
        out += csv_field(spec_str);
        if (entry.median_epsilon.empty()) {
            for (std::size_t c = 0; c < result.target_names.size(); ++c) out += ",diverged";
        } else {
            for (double eps : entry.median_epsilon) out += ',' + format_double(eps);
        }
        out += ',' + std::to_string(entry.seeds_converged) + '\n';
    }
    return out;
}

} // namespace vps
