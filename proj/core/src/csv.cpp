#include "vps/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vps/config.hpp"
#include "vps/errors.hpp"
#include "vps/sha256.hpp"

namespace vps {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, const std::string& context) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last || token.empty()) {
        throw parse_error(context + ": '" + std::string(token) + "' is not a number");
    }
    return value;
}

std::string csv_field(std::string_view raw) {
    if (raw.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(raw);
    }
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::vector<std::string> split_csv_line(std::string_view line, const std::string& context) {
    std::vector<std::string> fields;
    std::string current;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (true) {
        current.clear();
        if (i < n && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < n) {
                if (line[i] == '"') {
                    if (i + 1 < n && line[i + 1] == '"') {
                        current += '"';
                        i += 2;
                    } else {
                        ++i;
                        closed = true;
                        break;
                    }
                } else {
                    current += line[i++];
                }
            }
            if (!closed) throw parse_error(context + ": unterminated quoted field");
            if (i < n && line[i] != ',') {
                throw parse_error(context + ": malformed quoting");
            }
        } else {
            while (i < n && line[i] != ',') current += line[i++];
        }
        fields.push_back(current);
        if (i >= n) break;
        ++i; // consume comma; a trailing comma yields a final empty field
        if (i == n) {
            fields.emplace_back();
            break;
        }
    }
    return fields;
}

namespace {

std::filesystem::path meta_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".meta");
    return p;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split_plain(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Reads non-empty lines, strips a trailing '\r' so CRLF files parse too.
std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
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
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

} // namespace

std::string dataset_to_csv(const Dataset& ds) {
    std::string out;
    std::vector<std::string> header;
    for (const auto& n : ds.input_names()) header.push_back(csv_field(n));
    for (const auto& n : ds.target_names()) header.push_back(csv_field(n));
    out += join(header, ',');
    out += '\n';
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        bool first = true;
        for (double v : ds.input_row(i)) {
            if (!first) out += ',';
            out += format_double(v);
            first = false;
        }
        for (double v : ds.target_row(i)) {
            if (!first) out += ',';
            out += format_double(v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string dataset_digest(const Dataset& ds) {
    return "sha256:" + sha256_hex(dataset_to_csv(ds));
}

void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path,
                       const std::map<std::string, std::string>& extra_meta) {
    const std::string csv = dataset_to_csv(ds);
    write_text_file(path, csv);

    std::string meta;
    meta += "schema = dataset\n";
    meta += "provenance = " + std::string(provenance_name(ds.provenance())) + "\n";
    meta += "seed = " + std::to_string(ds.seed()) + "\n";
    meta += "rows = " + std::to_string(ds.rows()) + "\n";
    meta += "input_names = " + join(ds.input_names(), ',') + "\n";
    meta += "target_names = " + join(ds.target_names(), ',') + "\n";
    meta += "digest = sha256:" + sha256_hex(csv) + "\n";
    for (const auto& [k, v] : extra_meta) {
        meta += k + " = " + v + "\n";
    }
    write_text_file(meta_path(path), meta);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const auto lines = csv_lines(text);
    if (lines.empty()) {
        throw parse_error(path.string() + ": empty file");
    }
    const auto header = split_csv_line(lines[0], path.string() + ": header");

    std::vector<std::string> input_names;
    std::vector<std::string> target_names;
    Provenance prov = Provenance::ExternalCsv;
    std::uint64_t seed = 0;

    const auto mpath = meta_path(path);
    if (std::filesystem::exists(mpath)) {
        const Config meta = Config::from_file(mpath);
        input_names = split_plain(meta.get_string("input_names", ""), ',');
        target_names = split_plain(meta.get_string("target_names", ""), ',');
        prov = provenance_from_name(meta.get_string("provenance", "external_csv"));
        seed = meta.get_u64("seed", 0);
        std::vector<std::string> expected = input_names;
        expected.insert(expected.end(), target_names.begin(), target_names.end());
        if (expected != header) {
            throw parse_error(path.string() + ": header does not match sidecar column names");
        }
    } else {
        // No sidecar: fall back to the two known column layouts.
        const std::vector<std::string> case1 = {"phi", "sh", "rho", "vp"};
        const std::vector<std::string> case2 = {"phi", "rho", "vp", "vs"};
        if (header == case1) {
            input_names = {"phi", "sh", "rho"};
            target_names = {"vp"};
        } else if (header == case2) {
            input_names = {"phi", "rho"};
            target_names = {"vp", "vs"};
        } else {
            throw parse_error(path.string() +
                              ": cannot infer input/target split (no .meta sidecar and "
                              "unrecognized header)");
        }
    }

    Dataset ds(input_names, target_names, prov, seed);
    ds.reserve(lines.size() - 1);
    std::vector<double> in(input_names.size());
    std::vector<double> tgt(target_names.size());
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string context = path.string() + ": row " + std::to_string(li);
        const auto fields = split_csv_line(lines[li], context);
        if (fields.size() != header.size()) {
            throw parse_error(context + ": expected " + std::to_string(header.size()) +
                              " fields, found " + std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < in.size(); ++c) {
            in[c] = parse_double(fields[c], context + ", column '" + header[c] + "'");
        }
        for (std::size_t c = 0; c < tgt.size(); ++c) {
            const std::size_t fc = in.size() + c;
            tgt[c] = parse_double(fields[fc], context + ", column '" + header[fc] + "'");
        }
        ds.push_row(in, tgt);
    }
    return ds;
}

LoadedLog read_log_csv(const std::filesystem::path& path, LogSchema schema) {
    const std::string text = read_text_file(path);
    const auto lines = csv_lines(text);
    if (lines.empty()) {
        throw parse_error(path.string() + ": empty file");
    }
    const auto header = split_csv_line(lines[0], path.string() + ": header");

    const std::vector<std::string> required =
        schema == LogSchema::Case1 ? std::vector<std::string>{"depth", "phi", "sh", "rho"}
                                   : std::vector<std::string>{"depth", "phi", "rho"};
    const std::vector<std::string> optional_targets =
        schema == LogSchema::Case1 ? std::vector<std::string>{"vp"}
                                   : std::vector<std::string>{"vp", "vs"};

    auto find_col = [&](const std::string& name) -> long {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<long>(it - header.begin());
    };

    std::vector<long> required_idx;
    for (const auto& name : required) {
        const long idx = find_col(name);
        if (idx < 0) {
            throw parse_error(path.string() + ": missing column '" + name + "'");
        }
        required_idx.push_back(idx);
    }

    std::vector<long> target_idx;
    std::size_t targets_present = 0;
    for (const auto& name : optional_targets) {
        const long idx = find_col(name);
        target_idx.push_back(idx);
        if (idx >= 0) ++targets_present;
    }
    if (targets_present != 0 && targets_present != optional_targets.size()) {
        throw parse_error(path.string() + ": target columns must appear all together (" +
                          join(optional_targets, ',') + ")");
    }
    const bool has_targets = targets_present == optional_targets.size();
    const long lith_idx = find_col("lith");

    std::vector<std::string> input_names(required.begin() + 1, required.end());
    std::vector<std::string> target_names = has_targets ? optional_targets
                                                        : std::vector<std::string>{};

    LoadedLog log;
    log.data = Dataset(input_names, target_names,
                       schema == LogSchema::Case1 ? Provenance::Case1 : Provenance::Case2, 0);
    std::vector<double> in(input_names.size());
    std::vector<double> tgt(target_names.size());
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string context = path.string() + ": row " + std::to_string(li);
        const auto fields = split_csv_line(lines[li], context);
        if (fields.size() != header.size()) {
            throw parse_error(context + ": expected " + std::to_string(header.size()) +
                              " fields, found " + std::to_string(fields.size()));
        }
        auto cell = [&](long idx) -> double {
            return parse_double(fields[static_cast<std::size_t>(idx)],
                                context + ", column '" + header[static_cast<std::size_t>(idx)] +
                                    "'");
        };
        log.depth.push_back(cell(required_idx[0]));
        for (std::size_t c = 1; c < required_idx.size(); ++c) {
            in[c - 1] = cell(required_idx[c]);
        }
        if (has_targets) {
            for (std::size_t c = 0; c < target_idx.size(); ++c) {
                tgt[c] = cell(target_idx[c]);
            }
        }
        log.data.push_row(in, tgt);
        if (lith_idx >= 0) {
            log.labels.push_back(fields[static_cast<std::size_t>(lith_idx)]);
        }
    }
    return log;
}

void write_log_csv(const LabeledLog& log, const std::filesystem::path& path) {
    const Dataset& ds = log.data;
    const bool with_lith = ds.provenance() == Provenance::Case2 &&
                           log.labels.size() == ds.rows();
    std::string out = "depth";
    for (const auto& n : ds.input_names()) out += "," + csv_field(n);
    for (const auto& n : ds.target_names()) out += "," + csv_field(n);
    if (with_lith) out += ",lith";
    out += '\n';
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        out += std::to_string(i);
        for (double v : ds.input_row(i)) out += "," + format_double(v);
        for (double v : ds.target_row(i)) out += "," + format_double(v);
        if (with_lith) out += "," + csv_field(log.labels[i]);
        out += '\n';
    }
    write_text_file(path, out);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw io_error("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) {
        throw io_error("error while reading file: " + path.string());
    }
    return std::move(ss).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw io_error("cannot open file for writing: " + path.string());
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) {
        throw io_error("error while writing file: " + path.string());
    }
}

} // namespace vps
