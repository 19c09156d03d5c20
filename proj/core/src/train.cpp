#include "vps/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "vps/errors.hpp"
#include "vps/evaluation.hpp"
#include "vps/rng.hpp"

namespace vps {

void TrainConfig::validate() const {
    if (epochs == 0) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
    if (batch_size == 0) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
    if (patience == 0) throw std::invalid_argument("TrainConfig: patience must be >= 1");
    if (!(learning_rate > 0.0)) {
        throw std::invalid_argument("TrainConfig: learning_rate must be positive");
    }
    if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
        throw std::invalid_argument("TrainConfig: val_fraction must lie in (0, 1)");
    }
}

std::string_view train_status_name(TrainStatus status) {
    switch (status) {
    case TrainStatus::MaxEpochs: return "max_epochs";
    case TrainStatus::EarlyStopped: return "early_stopped";
    case TrainStatus::Diverged: return "diverged";
    }
    return "unknown";
}

namespace {

// Adam state per layer, flat like the parameters.
struct AdamState {
    std::vector<std::vector<double>> mw, vw, mb, vb;
    std::uint64_t steps = 0;

    explicit AdamState(const Network& net) {
        for (const auto& layer : net.layers()) {
            mw.emplace_back(layer.w.size(), 0.0);
            vw.emplace_back(layer.w.size(), 0.0);
            mb.emplace_back(layer.b.size(), 0.0);
            vb.emplace_back(layer.b.size(), 0.0);
        }
    }

    void step(Network& net, const Gradients& grads, double lr, const AdamConfig& cfg) {
        ++steps;
        const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(steps));
        const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(steps));
        for (std::size_t k = 0; k < net.layers().size(); ++k) {
            update(net.layers()[k].w, grads.w[k], mw[k], vw[k], lr, cfg, bc1, bc2);
            update(net.layers()[k].b, grads.b[k], mb[k], vb[k], lr, cfg, bc1, bc2);
        }
    }

private:
    static void update(std::vector<double>& param, const std::vector<double>& grad,
                       std::vector<double>& m, std::vector<double>& v, double lr,
                       const AdamConfig& cfg, double bc1, double bc2) {
        for (std::size_t i = 0; i < param.size(); ++i) {
            const double g = grad[i];
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            param[i] -= lr * mhat / (std::sqrt(vhat) + cfg.eps);
        }
    }
};

std::vector<Network::Layer> snapshot(const Network& net) { return net.layers(); }

void restore(Network& net, const std::vector<Network::Layer>& saved) { net.layers() = saved; }

} // namespace

TrainReport train(Network& net, const Dataset& data, const TrainConfig& cfg) {
    cfg.validate();
    if (data.rows() == 0) {
        throw std::invalid_argument("train: dataset is empty");
    }
    if (data.rows() < 2) {
        throw std::invalid_argument("train: need at least two rows to split off validation");
    }
    const std::size_t din = net.spec().input_dim;
    const std::size_t dout = net.spec().output_dim;
    if (data.input_dim() != din || data.target_dim() != dout) {
        throw dimension_error("train: dataset columns do not match network dimensions");
    }
    data.validate();

    Rng rng(cfg.shuffle_seed);

    // validation split: shuffled row indices, first chunk becomes validation
    std::vector<std::size_t> order(data.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::size_t n_val = static_cast<std::size_t>(
        std::llround(cfg.val_fraction * static_cast<double>(data.rows())));
    n_val = std::clamp<std::size_t>(n_val, 1, data.rows() - 1);
    std::vector<std::size_t> val_idx(order.begin(), order.begin() + n_val);
    std::vector<std::size_t> train_idx(order.begin() + n_val, order.end());

    // normalization fitted on the training split only
    NormStats in_stats = NormStats::fit(data.inputs(), din, train_idx);
    NormStats out_stats = NormStats::fit(data.targets(), dout, train_idx);
    net.set_normalization(in_stats, out_stats);

    // pre-normalize everything once
    std::vector<double> xn(data.rows() * din);
    std::vector<double> yn(data.rows() * dout);
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < din; ++c) {
            xn[r * din + c] = in_stats.normalize(data.inputs()[r * din + c], c);
        }
        for (std::size_t c = 0; c < dout; ++c) {
            yn[r * dout + c] = out_stats.normalize(data.targets()[r * dout + c], c);
        }
    }

    // contiguous copies of the validation rows
    std::vector<double> val_x(n_val * din);
    std::vector<double> val_y(n_val * dout);
    for (std::size_t i = 0; i < n_val; ++i) {
        const std::size_t r = val_idx[i];
        std::copy_n(xn.data() + r * din, din, val_x.data() + i * din);
        std::copy_n(yn.data() + r * dout, dout, val_y.data() + i * dout);
    }

    Workspace ws = net.make_workspace();
    Gradients grads = Gradients::like(net);
    AdamState adam(net);

    std::vector<double> batch_x(cfg.batch_size * din);
    std::vector<double> batch_y(cfg.batch_size * dout);

    TrainReport report;
    report.best_val_loss = std::numeric_limits<double>::infinity();
    std::vector<Network::Layer> best_layers = snapshot(net);
    std::size_t epochs_since_improve = 0;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(train_idx);
        double epoch_loss_sum = 0.0;
        for (std::size_t start = 0; start < train_idx.size(); start += cfg.batch_size) {
            const std::size_t count = std::min(cfg.batch_size, train_idx.size() - start);
            for (std::size_t i = 0; i < count; ++i) {
                const std::size_t r = train_idx[start + i];
                std::copy_n(xn.data() + r * din, din, batch_x.data() + i * din);
                std::copy_n(yn.data() + r * dout, dout, batch_y.data() + i * dout);
            }
            const double loss = loss_and_gradients(
                net, std::span<const double>(batch_x.data(), count * din),
                std::span<const double>(batch_y.data(), count * dout), count, grads, ws);
            epoch_loss_sum += loss * static_cast<double>(count);
            adam.step(net, grads, cfg.learning_rate, cfg.adam);
        }
        const double train_loss = epoch_loss_sum / static_cast<double>(train_idx.size());
        const double val_loss = batch_loss(net, val_x, val_y, n_val, ws);
        report.train_loss.push_back(train_loss);
        report.val_loss.push_back(val_loss);

        if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) {
            report.status = TrainStatus::Diverged;
            break;
        }
        if (val_loss < report.best_val_loss) {
            report.best_val_loss = val_loss;
            report.best_epoch = epoch;
            best_layers = snapshot(net);
            epochs_since_improve = 0;
        } else if (++epochs_since_improve >= cfg.patience) {
            report.status = TrainStatus::EarlyStopped;
            break;
        }
    }

    restore(net, best_layers);

    // per-target normalized RMSE on the validation rows, original units
    std::vector<double> val_pred_raw(n_val * dout);
    {
        std::vector<double> out(dout);
        for (std::size_t i = 0; i < n_val; ++i) {
            net.forward_normalized(std::span<const double>(val_x.data() + i * din, din),
                                   out, ws);
            for (std::size_t c = 0; c < dout; ++c) {
                val_pred_raw[i * dout + c] = out_stats.denormalize(out[c], c);
            }
        }
    }
    report.final_epsilon.resize(dout);
    std::vector<double> pred_col(n_val);
    std::vector<double> tgt_col(n_val);
    for (std::size_t c = 0; c < dout; ++c) {
        for (std::size_t i = 0; i < n_val; ++i) {
            pred_col[i] = val_pred_raw[i * dout + c];
            tgt_col[i] = data.targets()[val_idx[i] * dout + c];
        }
        report.final_epsilon[c] = normalized_rmse(pred_col, tgt_col);
    }
    return report;
}

} // namespace vps
