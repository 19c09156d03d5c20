#include "vps/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vps/csv.hpp"
#include "vps/errors.hpp"

namespace vps {

namespace {

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += format_double(values[i]);
    }
    return out;
}

// Line-oriented reader with location-aware errors.
struct Reader {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    std::string origin;

    explicit Reader(const std::string& text, std::string origin_) : origin(std::move(origin_)) {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                if (!cur.empty() && cur.back() == '\r') cur.pop_back();
                lines.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(origin + ":" + std::to_string(pos + 1) + ": " + what);
    }

    std::string next(const std::string& expected) {
        while (pos < lines.size() && lines[pos].empty()) ++pos;
        if (pos >= lines.size()) {
            throw parse_error(origin + ": truncated file, expected " + expected);
        }
        return lines[pos++];
    }

    // "key = rest" with a fixed key
    std::string key_value(const std::string& key) {
        const std::string line = next("'" + key + " = ...'");
        const std::string prefix = key + " =";
        if (line.rfind(prefix, 0) != 0) {
            --pos;
            fail("expected '" + key + " = ...', found '" + line + "'");
        }
        std::string value = line.substr(prefix.size());
        if (!value.empty() && value.front() == ' ') value.erase(0, 1);
        return value;
    }

    void section(const std::string& name) {
        const std::string line = next("[" + name + "] section");
        if (line != "[" + name + "]") {
            --pos;
            fail("missing [" + name + "] section, found '" + line + "'");
        }
    }

    std::vector<double> doubles(const std::string& text, std::size_t expected,
                                const std::string& what) {
        std::vector<double> values;
        std::istringstream ss(text);
        std::string token;
        while (ss >> token) {
            values.push_back(parse_double(token, origin + ": " + what));
        }
        if (values.size() != expected) {
            fail(what + ": expected " + std::to_string(expected) + " values, found " +
                 std::to_string(values.size()));
        }
        for (double v : values) {
            if (!std::isfinite(v)) {
                fail(what + ": non-finite value");
            }
        }
        return values;
    }
};

} // namespace

void save_model(const Network& net, const std::filesystem::path& path,
                const ModelProvenance& provenance) {
    if (!net.has_stats()) {
        throw std::invalid_argument("save_model: network is untrained (no normalization stats)");
    }
    const NetworkSpec& spec = net.spec();
    std::string out;
    out += "vps-model version " + std::to_string(kModelFormatVersion) + "\n";
    out += "input_dim = " + std::to_string(spec.input_dim) + "\n";
    out += "output_dim = " + std::to_string(spec.output_dim) + "\n";
    out += "hidden = " + spec.hidden_to_string() + "\n";
    out += "activation = tanh\n";
    out += "init_seed = " + std::to_string(spec.init_seed) + "\n";
    out += "shuffle_seed = " + std::to_string(provenance.shuffle_seed) + "\n";
    out += "dataset_digest = " +
           (provenance.dataset_digest.empty() ? std::string("none") : provenance.dataset_digest) +
           "\n";
    out += "[input_stats]\n";
    out += "min = " + join_doubles(net.input_stats().min) + "\n";
    out += "max = " + join_doubles(net.input_stats().max) + "\n";
    out += "[output_stats]\n";
    out += "min = " + join_doubles(net.output_stats().min) + "\n";
    out += "max = " + join_doubles(net.output_stats().max) + "\n";
    for (std::size_t k = 0; k < net.layers().size(); ++k) {
        const Network::Layer& layer = net.layers()[k];
        out += "[layer " + std::to_string(k) + "]\n";
        out += "in = " + std::to_string(layer.in) + "\n";
        out += "out = " + std::to_string(layer.out) + "\n";
        for (std::size_t o = 0; o < layer.out; ++o) {
            out += "w =";
            for (std::size_t i = 0; i < layer.in; ++i) {
                out += ' ';
                out += format_double(layer.w[o * layer.in + i]);
            }
            out += '\n';
        }
        out += "b = " + join_doubles(layer.b) + "\n";
    }
    out += "[end]\n";
    write_text_file(path, out);
}

Network load_model(const std::filesystem::path& path, ModelProvenance* provenance_out) {
    Reader r(read_text_file(path), path.string());

    const std::string magic = r.next("'vps-model version N' header");
    if (magic.rfind("vps-model version ", 0) != 0) {
        throw parse_error(path.string() + ": not a vps-model file");
    }
    const std::string version_str = magic.substr(std::string("vps-model version ").size());
    int version = 0;
    try {
        version = std::stoi(version_str);
    } catch (const std::exception&) {
        throw parse_error(path.string() + ": malformed version '" + version_str + "'");
    }
    if (version != kModelFormatVersion) {
        throw parse_error(path.string() + ": unsupported model version " + version_str +
                          " (supported: " + std::to_string(kModelFormatVersion) + ")");
    }

    auto parse_size = [&](const std::string& value, const char* what) -> std::size_t {
        try {
            const long long v = std::stoll(value);
            if (v < 0) throw std::out_of_range("negative");
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw parse_error(path.string() + ": malformed " + what + " '" + value + "'");
        }
    };
    auto parse_u64 = [&](const std::string& value, const char* what) -> std::uint64_t {
        try {
            return std::stoull(value);
        } catch (const std::exception&) {
            throw parse_error(path.string() + ": malformed " + what + " '" + value + "'");
        }
    };

    NetworkSpec spec;
    spec.input_dim = parse_size(r.key_value("input_dim"), "input_dim");
    spec.output_dim = parse_size(r.key_value("output_dim"), "output_dim");
    const std::string hidden_str = r.key_value("hidden");
    if (!hidden_str.empty()) {
        spec.hidden = NetworkSpec::parse_hidden(hidden_str);
    }
    const std::string activation = r.key_value("activation");
    if (activation != "tanh") {
        throw parse_error(path.string() + ": unsupported activation '" + activation + "'");
    }
    spec.init_seed = parse_u64(r.key_value("init_seed"), "init_seed");

    ModelProvenance prov;
    prov.shuffle_seed = parse_u64(r.key_value("shuffle_seed"), "shuffle_seed");
    prov.dataset_digest = r.key_value("dataset_digest");
    spec.validate();

    r.section("input_stats");
    NormStats in_stats;
    in_stats.min = r.doubles(r.key_value("min"), spec.input_dim, "[input_stats] min");
    in_stats.max = r.doubles(r.key_value("max"), spec.input_dim, "[input_stats] max");
    r.section("output_stats");
    NormStats out_stats;
    out_stats.min = r.doubles(r.key_value("min"), spec.output_dim, "[output_stats] min");
    out_stats.max = r.doubles(r.key_value("max"), spec.output_dim, "[output_stats] max");

    Network net = Network::init(spec); // establishes the layer chain for spec
    for (std::size_t k = 0; k < net.layers().size(); ++k) {
        Network::Layer& layer = net.layers()[k];
        r.section("layer " + std::to_string(k));
        const std::size_t in = parse_size(r.key_value("in"), "layer in");
        const std::size_t out = parse_size(r.key_value("out"), "layer out");
        if (in != layer.in || out != layer.out) {
            throw parse_error(path.string() + ": [layer " + std::to_string(k) +
                              "] dimensions " + std::to_string(in) + "x" + std::to_string(out) +
                              " do not chain with the declared architecture");
        }
        for (std::size_t o = 0; o < layer.out; ++o) {
            const std::vector<double> row =
                r.doubles(r.key_value("w"), layer.in, "[layer " + std::to_string(k) + "] w row");
            std::copy(row.begin(), row.end(), layer.w.begin() + o * layer.in);
        }
        const std::vector<double> bias =
            r.doubles(r.key_value("b"), layer.out, "[layer " + std::to_string(k) + "] b");
        std::copy(bias.begin(), bias.end(), layer.b.begin());
    }
    r.section("end");

    try {
        in_stats.validate();
        out_stats.validate();
    } catch (const std::domain_error& e) {
        throw parse_error(path.string() + ": invalid normalization stats: " + e.what());
    }
    net.set_normalization(std::move(in_stats), std::move(out_stats));
    if (provenance_out) *provenance_out = prov;
    return net;
}

} // namespace vps
