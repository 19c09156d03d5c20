#pragma once

#include <cstdint>
#include <string>

namespace vpscli {

// Exit codes, one per error class.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     // bad flags or invalid argument values
inline constexpr int kExitIo = 3;        // missing or unwritable files
inline constexpr int kExitParse = 4;     // malformed CSV / config / model content
inline constexpr int kExitDimension = 5; // model and data disagree on shape
inline constexpr int kExitDiverged = 6;  // training reached a non-finite loss

struct CommonOptions {
    std::uint64_t seed = 42;
    std::string config_path; // empty = built-in defaults
    std::string out_dir = ".";
};

struct TablesOptions {
    std::string mode = "corrected";
    std::string out_file; // empty = stdout
};

struct GenOptions {
    int case_no = 1;
    std::int64_t n = -1;      // <0 = take from config (case 2: per lithology)
    std::string mode;         // empty = from config
    bool testlog = false;
    double noise_sigma = -1.0; // <0 = from config
};

struct TrainOptions {
    std::string data_path;
    std::string net; // hidden widths, e.g. "9,15,9"; empty = no hidden layers
    std::int64_t epochs = -1;
    std::int64_t batch = -1;
    double lr = -1.0;
    double val_fraction = -1.0;
    std::int64_t patience = -1;
};

struct EvalOptions {
    std::string model_path;
    std::string data_path;
    std::string trace_out;      // empty = <out>/trace.csv
    std::string schema = "auto"; // auto | dataset | case1-log | case2-log
};

struct ReproduceOptions {
    int case_no = 1;
    std::uint64_t seeds = 0;      // 0 = from config
    std::int64_t n = -1;          // case 1: corpus rows; case 2: rows per lithology
    std::int64_t epochs = -1;
    std::int64_t block_len = -1;  // case 2 test log
    std::int64_t testlog_n = -1;  // case 1 test log
    bool write_corpus = false;
};

int run_tables(const CommonOptions& common, const TablesOptions& opt);
int run_gen(const CommonOptions& common, const GenOptions& opt);
int run_train(const CommonOptions& common, const TrainOptions& opt);
int run_eval(const CommonOptions& common, const EvalOptions& opt);
int run_reproduce(const CommonOptions& common, const ReproduceOptions& opt);

} // namespace vpscli
