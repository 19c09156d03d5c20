#include "vps/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vps/errors.hpp"
#include "vps/rng.hpp"

namespace vps {

void NetworkSpec::validate() const {
    if (input_dim == 0 || output_dim == 0) {
        throw std::invalid_argument("NetworkSpec: input and output dimensions must be >= 1");
    }
    for (std::size_t w : hidden) {
        if (w == 0) throw std::invalid_argument("NetworkSpec: zero-width hidden layer");
    }
}

std::string NetworkSpec::hidden_to_string() const {
    std::string out;
    for (std::size_t i = 0; i < hidden.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(hidden[i]);
    }
    return out;
}

std::vector<std::size_t> NetworkSpec::parse_hidden(std::string_view text) {
    std::vector<std::size_t> widths;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view token = text.substr(pos, comma - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (token.empty()) {
            throw parse_error("network spec '" + std::string(text) + "': empty layer width");
        }
        std::size_t width = 0;
        for (char c : token) {
            if (c < '0' || c > '9') {
                throw parse_error("network spec '" + std::string(text) +
                                  "': '" + std::string(token) + "' is not a layer width");
            }
            width = width * 10 + static_cast<std::size_t>(c - '0');
        }
        if (width == 0) {
            throw parse_error("network spec '" + std::string(text) + "': zero layer width");
        }
        widths.push_back(width);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    return widths;
}

NormStats NormStats::fit(const std::vector<double>& rowmajor, std::size_t dim,
                         std::span<const std::size_t> rows) {
    if (dim == 0 || rows.empty()) {
        throw std::invalid_argument("NormStats::fit: need at least one row and one column");
    }
    NormStats stats;
    stats.min.assign(dim, std::numeric_limits<double>::infinity());
    stats.max.assign(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t r : rows) {
        for (std::size_t c = 0; c < dim; ++c) {
            const double v = rowmajor[r * dim + c];
            stats.min[c] = std::min(stats.min[c], v);
            stats.max[c] = std::max(stats.max[c], v);
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {
        if (!(stats.max[c] > stats.min[c])) {
            stats.max[c] = stats.min[c] + 1.0; // constant column
        }
    }
    return stats;
}

void NormStats::validate() const {
    if (min.size() != max.size() || min.empty()) {
        throw std::domain_error("NormStats: min/max length mismatch");
    }
    for (std::size_t c = 0; c < min.size(); ++c) {
        if (!(max[c] > min[c]) || !std::isfinite(min[c]) || !std::isfinite(max[c])) {
            throw std::domain_error("NormStats: each column needs finite max > min");
        }
    }
}

Network Network::init(const NetworkSpec& spec) {
    spec.validate();
    Network net;
    net.spec_ = spec;

    std::vector<std::size_t> widths;
    widths.push_back(spec.input_dim);
    widths.insert(widths.end(), spec.hidden.begin(), spec.hidden.end());
    widths.push_back(spec.output_dim);

    Rng rng(spec.init_seed);
    net.layers_.resize(widths.size() - 1);
    for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
        Layer& layer = net.layers_[k];
        layer.in = widths[k];
        layer.out = widths[k + 1];
        layer.w.resize(layer.in * layer.out);
        layer.b.assign(layer.out, 0.0);
        const double limit = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
        for (double& w : layer.w) {
            w = rng.uniform(-limit, limit);
        }
    }
    return net;
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (const Layer& layer : layers_) {
        n += layer.w.size() + layer.b.size();
    }
    return n;
}

void Network::set_normalization(NormStats in, NormStats out) {
    in.validate();
    out.validate();
    if (in.dim() != spec_.input_dim || out.dim() != spec_.output_dim) {
        throw dimension_error("set_normalization: stats do not match network dimensions");
    }
    in_stats_ = std::move(in);
    out_stats_ = std::move(out);
}

const NormStats& Network::input_stats() const {
    if (!in_stats_) throw std::logic_error("Network: normalization stats are unset");
    return *in_stats_;
}

const NormStats& Network::output_stats() const {
    if (!out_stats_) throw std::logic_error("Network: normalization stats are unset");
    return *out_stats_;
}

Workspace Network::make_workspace() const {
    Workspace ws;
    ws.act.resize(layers_.size() + 1);
    ws.delta.resize(layers_.size());
    ws.act[0].resize(spec_.input_dim);
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        ws.act[k + 1].resize(layers_[k].out);
        ws.delta[k].resize(layers_[k].out);
    }
    return ws;
}

void Network::forward_normalized(std::span<const double> xn, std::span<double> out,
                                 Workspace& ws) const {
    if (xn.size() != spec_.input_dim || out.size() != spec_.output_dim) {
        throw dimension_error("forward: input or output span length mismatch");
    }
    std::copy(xn.begin(), xn.end(), ws.act[0].begin());
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        const Layer& layer = layers_[k];
        const std::vector<double>& a = ws.act[k];
        std::vector<double>& z = ws.act[k + 1];
        const bool is_output = k + 1 == layers_.size();
        const double* wrow = layer.w.data();
        for (std::size_t o = 0; o < layer.out; ++o, wrow += layer.in) {
            double sum = layer.b[o];
            for (std::size_t i = 0; i < layer.in; ++i) {
                sum += wrow[i] * a[i];
            }
            z[o] = is_output ? sum : std::tanh(sum);
        }
    }
    const std::vector<double>& last = ws.act[layers_.size()];
    if (out.data() != last.data()) {
        std::copy(last.begin(), last.end(), out.begin());
    }
}

std::vector<double> Network::forward_normalized(std::span<const double> xn) const {
    Workspace ws = make_workspace();
    std::vector<double> out(spec_.output_dim);
    forward_normalized(xn, out, ws);
    return out;
}

std::vector<double> Network::forward(std::span<const double> x) const {
    const NormStats& in = input_stats();
    const NormStats& out = output_stats();
    if (x.size() != spec_.input_dim) {
        throw dimension_error("forward: input length does not match network input dimension");
    }
    std::vector<double> xn(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
        xn[c] = in.normalize(x[c], c);
    }
    std::vector<double> yn = forward_normalized(xn);
    for (std::size_t c = 0; c < yn.size(); ++c) {
        yn[c] = out.denormalize(yn[c], c);
    }
    return yn;
}

double loss_mse(std::span<const double> pred, std::span<const double> target) {
    if (pred.size() != target.size() || pred.empty()) {
        throw dimension_error("loss_mse: prediction and target lengths must match and be nonzero");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        sum += d * d;
    }
    return sum / static_cast<double>(pred.size());
}

Gradients Gradients::like(const Network& net) {
    Gradients g;
    g.w.reserve(net.layers().size());
    g.b.reserve(net.layers().size());
    for (const auto& layer : net.layers()) {
        g.w.emplace_back(layer.w.size(), 0.0);
        g.b.emplace_back(layer.b.size(), 0.0);
    }
    return g;
}

void Gradients::zero() {
    for (auto& v : w) std::fill(v.begin(), v.end(), 0.0);
    for (auto& v : b) std::fill(v.begin(), v.end(), 0.0);
}

double loss_and_gradients(const Network& net, std::span<const double> xn,
                          std::span<const double> yn, std::size_t nrows, Gradients& grads,
                          Workspace& ws) {
    const auto& layers = net.layers();
    const std::size_t din = net.spec().input_dim;
    const std::size_t dout = net.spec().output_dim;
    if (nrows == 0) {
        throw dimension_error("loss_and_gradients: empty batch");
    }
    if (xn.size() != nrows * din || yn.size() != nrows * dout) {
        throw dimension_error("loss_and_gradients: batch size mismatch");
    }
    grads.zero();

    double loss_sum = 0.0;
    const double scale = 1.0 / (static_cast<double>(dout) * static_cast<double>(nrows));
    for (std::size_t r = 0; r < nrows; ++r) {
        net.forward_normalized(xn.subspan(r * din, din),
                               std::span<double>(ws.act[layers.size()]), ws);
        // act[k] already holds each layer's activations for this sample
        const std::vector<double>& pred = ws.act[layers.size()];
        const double* target = yn.data() + r * dout;

        std::vector<double>& dlast = ws.delta[layers.size() - 1];
        for (std::size_t o = 0; o < dout; ++o) {
            const double diff = pred[o] - target[o];
            loss_sum += diff * diff * scale;
            dlast[o] = 2.0 * diff * scale; // output layer is linear
        }

        for (std::size_t k = layers.size(); k-- > 0;) {
            const Network::Layer& layer = layers[k];
            const std::vector<double>& a_prev = ws.act[k];
            const std::vector<double>& delta = ws.delta[k];
            double* gw = grads.w[k].data();
            double* gb = grads.b[k].data();
            for (std::size_t o = 0; o < layer.out; ++o) {
                const double d = delta[o];
                gb[o] += d;
                double* grow = gw + o * layer.in;
                for (std::size_t i = 0; i < layer.in; ++i) {
                    grow[i] += d * a_prev[i];
                }
            }
            if (k == 0) continue;
            // delta for the previous (tanh) layer
            std::vector<double>& dprev = ws.delta[k - 1];
            for (std::size_t i = 0; i < layer.in; ++i) {
                double sum = 0.0;
                const double* wcol = layer.w.data() + i;
                for (std::size_t o = 0; o < layer.out; ++o) {
                    sum += wcol[o * layer.in] * delta[o];
                }
                const double a = a_prev[i];
                dprev[i] = sum * (1.0 - a * a);
            }
        }
    }
    return loss_sum;
}

double batch_loss(const Network& net, std::span<const double> xn, std::span<const double> yn,
                  std::size_t nrows, Workspace& ws) {
    const std::size_t din = net.spec().input_dim;
    const std::size_t dout = net.spec().output_dim;
    if (nrows == 0) {
        throw dimension_error("batch_loss: empty batch");
    }
    if (xn.size() != nrows * din || yn.size() != nrows * dout) {
        throw dimension_error("batch_loss: batch size mismatch");
    }
    std::vector<double> out(dout);
    double loss_sum = 0.0;
    for (std::size_t r = 0; r < nrows; ++r) {
        net.forward_normalized(xn.subspan(r * din, din), out, ws);
        loss_sum += loss_mse(out, yn.subspan(r * dout, dout));
    }
    return loss_sum / static_cast<double>(nrows);
}

std::vector<double> predict_batch(const Network& net, std::span<const double> inputs,
                                  std::size_t nrows) {
    const std::size_t din = net.spec().input_dim;
    const std::size_t dout = net.spec().output_dim;
    if (inputs.size() != nrows * din) {
        throw dimension_error("predict_batch: input matrix does not match network input dim");
    }
    std::vector<double> out;
    out.reserve(nrows * dout);
    for (std::size_t r = 0; r < nrows; ++r) {
        const std::vector<double> y = net.forward(inputs.subspan(r * din, din));
        out.insert(out.end(), y.begin(), y.end());
    }
    return out;
}

} // namespace vps
