#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>

#include "vps/config.hpp"
#include "vps/csv.hpp"
#include "vps/errors.hpp"
#include "vps/evaluation.hpp"
#include "vps/model_io.hpp"
#include "vps/sha256.hpp"
#include "vps/synthgen.hpp"
#include "vps/train.hpp"

namespace fs = std::filesystem;

namespace vpscli {

namespace {

// Resolved run settings: built-in defaults overlaid with the config file.
struct Defaults {
    vps::RhgParams rhg{5500.0, 1500.0, 2.65, 1.03, 3650.0, 0.92};
    vps::Case1Params case1;
    vps::Case1LogParams case1_log;
    std::size_t case2_n_per_lith = 25'000;
    std::size_t case2_block_len = 100;
    std::string mode = "corrected";
    vps::TrainConfig train;
    std::size_t reproduce_seeds = 3;
};

Defaults load_defaults(const std::string& config_path) {
    Defaults d;
    if (config_path.empty()) return d;
    const vps::Config cfg = vps::Config::from_file(config_path);
    d.rhg.v_ma = cfg.get_double("rhg.v_ma", d.rhg.v_ma);
    d.rhg.v_f = cfg.get_double("rhg.v_f", d.rhg.v_f);
    d.rhg.rho_ma = cfg.get_double("rhg.rho_ma", d.rhg.rho_ma);
    d.rhg.rho_f = cfg.get_double("rhg.rho_f", d.rhg.rho_f);
    d.rhg.v_h = cfg.get_double("rhg.v_h", d.rhg.v_h);
    d.rhg.rho_h = cfg.get_double("rhg.rho_h", d.rhg.rho_h);

    d.case1.n = cfg.get_u64("case1.n", d.case1.n);
    d.case1.phi.lo = cfg.get_double("case1.phi_lo", d.case1.phi.lo);
    d.case1.phi.hi = cfg.get_double("case1.phi_hi", d.case1.phi.hi);
    d.case1.sh.lo = cfg.get_double("case1.sh_lo", d.case1.sh.lo);
    d.case1.sh.hi = cfg.get_double("case1.sh_hi", d.case1.sh.hi);
    d.case1.noise_sigma = cfg.get_double("case1.noise_sigma", d.case1.noise_sigma);

    d.case1_log.n = cfg.get_u64("case1_testlog.n", d.case1_log.n);
    d.case1_log.phi = d.case1.phi;
    d.case1_log.sh = d.case1.sh;
    d.case1_log.phi_step = cfg.get_double("case1_testlog.phi_step", d.case1_log.phi_step);
    d.case1_log.sh_step = cfg.get_double("case1_testlog.sh_step", d.case1_log.sh_step);

    d.case2_n_per_lith = cfg.get_u64("case2.n_per_lith", d.case2_n_per_lith);
    d.case2_block_len = cfg.get_u64("case2.testlog_block_len", d.case2_block_len);
    d.mode = cfg.get_string("case2.mode", d.mode);

    d.train.epochs = cfg.get_u64("train.epochs", d.train.epochs);
    d.train.batch_size = cfg.get_u64("train.batch", d.train.batch_size);
    d.train.learning_rate = cfg.get_double("train.lr", d.train.learning_rate);
    d.train.val_fraction = cfg.get_double("train.val_fraction", d.train.val_fraction);
    d.train.patience = cfg.get_u64("train.patience", d.train.patience);

    d.reproduce_seeds = cfg.get_u64("reproduce.seeds", d.reproduce_seeds);
    return d;
}

fs::path ensure_out_dir(const CommonOptions& common) {
    fs::path dir(common.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw vps::io_error("cannot create output directory: " + dir.string());
    }
    return dir;
}

// key = value manifest; every command records its resolved configuration and
// the digests of everything it wrote.
struct Manifest {
    std::map<std::string, std::string> entries;

    void set(const std::string& key, const std::string& value) { entries[key] = value; }
    void set_u64(const std::string& key, std::uint64_t value) {
        entries[key] = std::to_string(value);
    }
    void set_double(const std::string& key, double value) {
        entries[key] = vps::format_double(value);
    }
    void add_artifact(const fs::path& path) {
        entries["artifact." + path.filename().string()] =
            "sha256:" + vps::sha256_hex_file(path);
    }
    void write(const fs::path& path) const {
        std::string out;
        for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
        vps::write_text_file(path, out);
    }
};

void record_common(Manifest& m, const CommonOptions& common, const std::string& command) {
    m.set("command", command);
    m.set_u64("seed", common.seed);
    m.set("config", common.config_path.empty() ? "<built-in>" : common.config_path);
    m.set("out", common.out_dir);
}

void record_rhg(Manifest& m, const vps::RhgParams& p) {
    m.set_double("rhg.v_ma", p.v_ma);
    m.set_double("rhg.v_f", p.v_f);
    m.set_double("rhg.rho_ma", p.rho_ma);
    m.set_double("rhg.rho_f", p.rho_f);
    m.set_double("rhg.v_h", p.v_h);
    m.set_double("rhg.rho_h", p.rho_h);
}

void record_train_cfg(Manifest& m, const vps::TrainConfig& cfg) {
    m.set_u64("train.epochs", cfg.epochs);
    m.set_u64("train.batch", cfg.batch_size);
    m.set_double("train.lr", cfg.learning_rate);
    m.set_double("train.val_fraction", cfg.val_fraction);
    m.set_u64("train.patience", cfg.patience);
}

vps::TrainConfig resolve_train_cfg(const Defaults& d, const TrainOptions& opt) {
    vps::TrainConfig cfg = d.train;
    if (opt.epochs >= 0) cfg.epochs = static_cast<std::size_t>(opt.epochs);
    if (opt.batch >= 0) cfg.batch_size = static_cast<std::size_t>(opt.batch);
    if (opt.lr >= 0.0) cfg.learning_rate = opt.lr;
    if (opt.val_fraction >= 0.0) cfg.val_fraction = opt.val_fraction;
    if (opt.patience >= 0) cfg.patience = static_cast<std::size_t>(opt.patience);
    return cfg;
}

// Loads evaluation data. Auto schema: a leading `depth` column marks a log
// (with `sh` -> hydrate layout), anything else is a dataset CSV.
vps::LabeledLog load_eval_data(const std::string& path, const std::string& schema) {
    const fs::path p(path);
    std::string resolved = schema;
    if (resolved == "auto") {
        const std::string text = vps::read_text_file(p);
        const std::size_t eol = text.find('\n');
        const std::string header = text.substr(0, eol);
        if (header.rfind("depth", 0) == 0) {
            resolved = header.find("sh") != std::string::npos ? "case1-log" : "case2-log";
        } else {
            resolved = "dataset";
        }
    }
    vps::LabeledLog log;
    if (resolved == "dataset") {
        log.data = vps::read_dataset_csv(p);
    } else if (resolved == "case1-log") {
        vps::LoadedLog loaded = vps::read_log_csv(p, vps::LogSchema::Case1);
        log.data = std::move(loaded.data);
        log.labels = std::move(loaded.labels);
    } else if (resolved == "case2-log") {
        vps::LoadedLog loaded = vps::read_log_csv(p, vps::LogSchema::Case2);
        log.data = std::move(loaded.data);
        log.labels = std::move(loaded.labels);
    } else {
        throw std::invalid_argument("unknown schema '" + schema + "'");
    }
    return log;
}

std::vector<vps::NetworkSpec> ladder_specs(int case_no, std::size_t input_dim,
                                           std::size_t output_dim) {
    const std::vector<std::vector<std::size_t>> hidden =
        case_no == 1 ? std::vector<std::vector<std::size_t>>{
                           {5}, {5, 7, 5}, {5, 9, 5}, {7, 11, 7}, {9, 15, 9}}
                     : std::vector<std::vector<std::size_t>>{
                           {4}, {3, 5, 3}, {4, 7, 4}, {4, 7, 10, 7, 4}, {7, 15, 21, 15, 7}};
    std::vector<vps::NetworkSpec> specs;
    for (const auto& h : hidden) {
        vps::NetworkSpec spec;
        spec.input_dim = input_dim;
        spec.output_dim = output_dim;
        spec.hidden = h;
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::string train_report_csv(const vps::TrainReport& report) {
    std::string out = "epoch,train_loss,val_loss\n";
    for (std::size_t e = 0; e < report.epochs_run(); ++e) {
        out += std::to_string(e) + ',' + vps::format_double(report.train_loss[e]) + ',' +
               vps::format_double(report.val_loss[e]) + '\n';
    }
    return out;
}

} // namespace

int run_tables(const CommonOptions& common, const TablesOptions& opt) {
    const vps::RhoLawMode mode = vps::rho_law_mode_from_name(opt.mode);
    const std::string csv = vps::coefficient_table_csv(mode);
    if (opt.out_file.empty()) {
        std::cout << csv;
        return kExitOk;
    }
    const fs::path out_dir = ensure_out_dir(common);
    const fs::path out_path = out_dir / opt.out_file;
    vps::write_text_file(out_path, csv);

    Manifest m;
    record_common(m, common, "tables");
    m.set("mode", opt.mode);
    m.add_artifact(out_path);
    m.write(out_dir / "manifest_tables.txt");
    std::cout << "wrote " << out_path.string() << "\n";
    return kExitOk;
}

int run_gen(const CommonOptions& common, const GenOptions& opt) {
    const Defaults d = load_defaults(common.config_path);
    const fs::path out_dir = ensure_out_dir(common);
    const std::string mode_name = opt.mode.empty() ? d.mode : opt.mode;
    const vps::RhoLawMode mode = vps::rho_law_mode_from_name(mode_name);

    Manifest m;
    record_common(m, common, "gen");
    m.set_u64("case", static_cast<std::uint64_t>(opt.case_no));
    m.set("kind", opt.testlog ? "testlog" : "train");

    fs::path out_path;
    std::size_t rows = 0;
    if (opt.case_no == 1) {
        record_rhg(m, d.rhg);
        if (opt.testlog) {
            vps::Case1LogParams params = d.case1_log;
            if (opt.n >= 0) params.n = static_cast<std::size_t>(opt.n);
            const vps::LabeledLog log = vps::gen_case1_testlog(params, d.rhg, common.seed);
            out_path = out_dir / "case1_testlog.csv";
            vps::write_log_csv(log, out_path);
            rows = log.data.rows();
            m.set_u64("n", params.n);
            m.set_double("phi_step", params.phi_step);
            m.set_double("sh_step", params.sh_step);
        } else {
            vps::Case1Params params = d.case1;
            if (opt.n >= 0) params.n = static_cast<std::size_t>(opt.n);
            if (opt.noise_sigma >= 0.0) params.noise_sigma = opt.noise_sigma;
            const vps::Dataset ds = vps::gen_case1(params, d.rhg, common.seed);
            out_path = out_dir / "case1_train.csv";
            std::map<std::string, std::string> extra;
            extra["phi_lo"] = vps::format_double(params.phi.lo);
            extra["phi_hi"] = vps::format_double(params.phi.hi);
            extra["sh_lo"] = vps::format_double(params.sh.lo);
            extra["sh_hi"] = vps::format_double(params.sh.hi);
            extra["noise_sigma"] = vps::format_double(params.noise_sigma);
            vps::write_dataset_csv(ds, out_path, extra);
            rows = ds.rows();
            m.set_u64("n", params.n);
            m.set_double("noise_sigma", params.noise_sigma);
            m.set_double("phi_lo", params.phi.lo);
            m.set_double("phi_hi", params.phi.hi);
            m.set_double("sh_lo", params.sh.lo);
            m.set_double("sh_hi", params.sh.hi);
        }
    } else if (opt.case_no == 2) {
        m.set("mode", mode_name);
        if (opt.testlog) {
            const std::size_t block =
                opt.n >= 0 ? static_cast<std::size_t>(opt.n) : d.case2_block_len;
            const vps::LabeledLog log = vps::gen_case2_testlog(block, common.seed, mode);
            out_path = out_dir / "case2_testlog.csv";
            vps::write_log_csv(log, out_path);
            rows = log.data.rows();
            m.set_u64("block_len", block);
        } else {
            const std::size_t n =
                opt.n >= 0 ? static_cast<std::size_t>(opt.n) : d.case2_n_per_lith;
            const double sigma = opt.noise_sigma >= 0.0 ? opt.noise_sigma : 0.0;
            const vps::Dataset ds = vps::gen_case2(n, mode, common.seed, sigma);
            out_path = out_dir / "case2_train.csv";
            std::map<std::string, std::string> extra;
            extra["n_per_lith"] = std::to_string(n);
            extra["mode"] = mode_name;
            extra["noise_sigma"] = vps::format_double(sigma);
            vps::write_dataset_csv(ds, out_path, extra);
            rows = ds.rows();
            m.set_u64("n_per_lith", n);
            m.set_double("noise_sigma", sigma);
        }
    } else {
        throw std::invalid_argument("gen: --case must be 1 or 2");
    }

    m.add_artifact(out_path);
    m.write(out_dir / "manifest_gen.txt");
    std::cout << "wrote " << out_path.string() << " (" << rows << " rows)\n";
    return kExitOk;
}

int run_train(const CommonOptions& common, const TrainOptions& opt) {
    const Defaults d = load_defaults(common.config_path);
    const fs::path out_dir = ensure_out_dir(common);

    const vps::Dataset data = vps::read_dataset_csv(opt.data_path);
    vps::NetworkSpec spec;
    spec.input_dim = data.input_dim();
    spec.output_dim = data.target_dim();
    if (!opt.net.empty()) spec.hidden = vps::NetworkSpec::parse_hidden(opt.net);
    spec.init_seed = common.seed;

    vps::TrainConfig cfg = resolve_train_cfg(d, opt);
    cfg.shuffle_seed = common.seed + 1;

    vps::Network net = vps::Network::init(spec);
    const vps::TrainReport report = vps::train(net, data, cfg);

    const fs::path report_path = out_dir / "train_report.csv";
    vps::write_text_file(report_path, train_report_csv(report));

    Manifest m;
    record_common(m, common, "train");
    m.set("data", opt.data_path);
    m.set("data_digest", vps::dataset_digest(data));
    m.set("net", spec.hidden_to_string());
    m.set_u64("init_seed", spec.init_seed);
    m.set_u64("shuffle_seed", cfg.shuffle_seed);
    record_train_cfg(m, cfg);
    m.set("status", std::string(vps::train_status_name(report.status)));
    m.set_u64("epochs_run", report.epochs_run());
    m.set_u64("best_epoch", report.best_epoch);
    for (std::size_t c = 0; c < report.final_epsilon.size(); ++c) {
        m.set_double("epsilon." + data.target_names()[c], report.final_epsilon[c]);
    }

    if (report.diverged()) {
        m.add_artifact(report_path);
        m.write(out_dir / "manifest_train.txt");
        std::cerr << "training diverged (non-finite loss)\n";
        return kExitDiverged;
    }

    const fs::path model_path = out_dir / "model.vpsmodel";
    vps::ModelProvenance prov;
    prov.dataset_digest = vps::dataset_digest(data);
    prov.shuffle_seed = cfg.shuffle_seed;
    vps::save_model(net, model_path, prov);

    m.add_artifact(model_path);
    m.add_artifact(report_path);
    m.write(out_dir / "manifest_train.txt");

    std::cout << "trained " << (spec.hidden.empty() ? "-" : spec.hidden_to_string()) << " for "
              << report.epochs_run() << " epochs (" << vps::train_status_name(report.status)
              << ")\n";
    for (std::size_t c = 0; c < report.final_epsilon.size(); ++c) {
        std::cout << "epsilon(" << data.target_names()[c]
                  << ") = " << vps::format_double(report.final_epsilon[c]) << "\n";
    }
    std::cout << "wrote " << model_path.string() << "\n";
    return kExitOk;
}

int run_eval(const CommonOptions& common, const EvalOptions& opt) {
    const fs::path out_dir = ensure_out_dir(common);
    const vps::Network net = vps::load_model(opt.model_path);
    const vps::LabeledLog log = load_eval_data(opt.data_path, opt.schema);
    if (log.data.target_dim() == 0) {
        throw vps::dimension_error(
            "eval: data has no target columns; nothing to evaluate against");
    }

    const vps::EvalReport report = vps::evaluate(net, log.data);

    const fs::path trace_path =
        opt.trace_out.empty() ? out_dir / "trace.csv" : fs::path(opt.trace_out);
    vps::write_text_file(trace_path, vps::trace_to_csv(report));

    Manifest m;
    record_common(m, common, "eval");
    m.set("model", opt.model_path);
    m.set("data", opt.data_path);
    for (std::size_t c = 0; c < report.epsilon.size(); ++c) {
        m.set_double("epsilon." + log.data.target_names()[c], report.epsilon[c]);
        std::cout << "epsilon(" << log.data.target_names()[c]
                  << ") = " << vps::format_double(report.epsilon[c]) << "\n";
    }
    m.add_artifact(trace_path);

    if (!log.labels.empty()) {
        std::vector<vps::ZoneSummary> summaries;
        for (const auto& trace : report.trace) {
            summaries.push_back(vps::zone_summary(trace, log.labels));
        }
        const fs::path zones_path = out_dir / "zone_summary.csv";
        vps::write_text_file(zones_path,
                             vps::zone_summary_to_csv(summaries, log.data.target_names()));
        m.add_artifact(zones_path);
        for (std::size_t c = 0; c < summaries.size(); ++c) {
            std::cout << "worst zone (" << log.data.target_names()[c]
                      << "): " << summaries[c].zones[summaries[c].worst].label << "\n";
        }
    }
    m.write(out_dir / "manifest_eval.txt");
    std::cout << "wrote " << trace_path.string() << "\n";
    return kExitOk;
}

int run_reproduce(const CommonOptions& common, const ReproduceOptions& opt) {
    const Defaults d = load_defaults(common.config_path);
    const fs::path out_dir = ensure_out_dir(common);
    const vps::RhoLawMode mode = vps::rho_law_mode_from_name(d.mode);
    const std::size_t n_seeds = opt.seeds > 0 ? opt.seeds : d.reproduce_seeds;

    vps::TrainConfig cfg = d.train;
    if (opt.epochs >= 0) cfg.epochs = static_cast<std::size_t>(opt.epochs);

    Manifest m;
    record_common(m, common, "reproduce");
    m.set_u64("case", static_cast<std::uint64_t>(opt.case_no));
    m.set_u64("n_seeds", n_seeds);
    record_train_cfg(m, cfg);

    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < n_seeds; ++i) seeds.push_back(common.seed + i);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        m.set_u64("ladder_seed." + std::to_string(i), seeds[i]);
    }

    // --- corpus ---
    vps::Dataset corpus;
    vps::LabeledLog testlog;
    if (opt.case_no == 1) {
        vps::Case1Params params = d.case1;
        if (opt.n >= 0) params.n = static_cast<std::size_t>(opt.n);
        record_rhg(m, d.rhg);
        m.set_u64("corpus_n", params.n);
        corpus = vps::gen_case1(params, d.rhg, common.seed);
        vps::Case1LogParams log_params = d.case1_log;
        if (opt.testlog_n >= 0) log_params.n = static_cast<std::size_t>(opt.testlog_n);
        testlog = vps::gen_case1_testlog(log_params, d.rhg, common.seed + 1000);
        m.set_u64("testlog_n", log_params.n);
    } else if (opt.case_no == 2) {
        const std::size_t n =
            opt.n >= 0 ? static_cast<std::size_t>(opt.n) : d.case2_n_per_lith;
        m.set_u64("n_per_lith", n);
        m.set("mode", d.mode);
        corpus = vps::gen_case2(n, mode, common.seed);
        const std::size_t block =
            opt.block_len >= 0 ? static_cast<std::size_t>(opt.block_len) : d.case2_block_len;
        testlog = vps::gen_case2_testlog(block, common.seed + 1000, mode);
        m.set_u64("testlog_block_len", block);
    } else {
        throw std::invalid_argument("reproduce: --case must be 1 or 2");
    }
    m.set("corpus_digest", vps::dataset_digest(corpus));
    m.set_u64("corpus_seed", common.seed);
    m.set_u64("testlog_seed", common.seed + 1000);
    if (opt.write_corpus) {
        const fs::path corpus_path = out_dir / "corpus.csv";
        vps::write_dataset_csv(corpus, corpus_path);
        m.add_artifact(corpus_path);
    }

    // --- ladder sweep ---
    const auto specs = ladder_specs(opt.case_no, corpus.input_dim(), corpus.target_dim());
    std::vector<vps::SeededModel> largest_models;
    std::cerr << "sweeping " << specs.size() << " architectures x " << seeds.size()
              << " seeds on " << corpus.rows() << " rows...\n";
    const vps::SweepResult sweep_result =
        vps::sweep(specs, corpus, cfg, seeds, &largest_models);

    const fs::path sweep_path = out_dir / "sweep.csv";
    vps::write_text_file(sweep_path, vps::sweep_to_csv(sweep_result));
    m.add_artifact(sweep_path);
    std::cout << vps::sweep_to_csv(sweep_result);

    const vps::SweepEntry& last = sweep_result.entries.back();
    if (last.seeds_converged == 0) {
        m.write(out_dir / "manifest_reproduce.txt");
        std::cerr << "reproduce: every seed of the largest architecture diverged\n";
        return kExitDiverged;
    }

    // --- traces from the median-epsilon model of the largest architecture ---
    std::size_t median_model = 0;
    {
        std::vector<double> eps;
        for (const auto& seeded : largest_models) {
            const vps::EvalReport r = vps::evaluate(seeded.net, testlog.data);
            eps.push_back(r.epsilon[0]);
        }
        const double med = vps::median(eps);
        for (std::size_t i = 0; i < eps.size(); ++i) {
            if (std::fabs(eps[i] - med) < std::fabs(eps[median_model] - med)) median_model = i;
        }
    }

    const fs::path testlog_path = out_dir / "testlog.csv";
    vps::write_log_csv(testlog, testlog_path);
    m.add_artifact(testlog_path);

    const vps::EvalReport log_report =
        vps::evaluate(largest_models[median_model].net, testlog.data);
    const fs::path trace_path = out_dir / "testlog_trace.csv";
    vps::write_text_file(trace_path, vps::trace_to_csv(log_report));
    m.add_artifact(trace_path);
    for (std::size_t c = 0; c < log_report.epsilon.size(); ++c) {
        m.set_double("testlog_epsilon." + corpus.target_names()[c], log_report.epsilon[c]);
        std::cout << "testlog epsilon(" << corpus.target_names()[c]
                  << ") = " << vps::format_double(log_report.epsilon[c]) << "\n";
    }

    if (opt.case_no == 2) {
        std::vector<vps::ZoneSummary> summaries;
        for (const auto& trace : log_report.trace) {
            summaries.push_back(vps::zone_summary(trace, testlog.labels));
        }
        const fs::path zones_path = out_dir / "zone_summary.csv";
        vps::write_text_file(zones_path,
                             vps::zone_summary_to_csv(summaries, corpus.target_names()));
        m.add_artifact(zones_path);
        for (std::size_t c = 0; c < summaries.size(); ++c) {
            const auto& worst = summaries[c].zones[summaries[c].worst];
            m.set("worst_zone." + corpus.target_names()[c], worst.label);
            std::cout << "worst zone (" << corpus.target_names()[c] << "): " << worst.label
                      << "\n";
        }
    }

    // persist the largest-architecture models
    for (const auto& seeded : largest_models) {
        const fs::path model_path =
            out_dir / ("model_seed" + std::to_string(seeded.seed) + ".vpsmodel");
        vps::ModelProvenance prov;
        prov.dataset_digest = vps::dataset_digest(corpus);
        prov.shuffle_seed = seeded.seed + 1;
        vps::save_model(seeded.net, model_path, prov);
        m.add_artifact(model_path);
    }

    m.write(out_dir / "manifest_reproduce.txt");
    std::cout << "wrote " << sweep_path.string() << "\n";
    return kExitOk;
}

} // namespace vpscli
