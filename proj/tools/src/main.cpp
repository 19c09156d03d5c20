// vps: rock-physics velocity-porosity toolkit.
//
// Subcommands: tables, gen, train, eval, reproduce. Every run that writes
// files also writes a manifest with the fully resolved configuration and
// sha256 digests of its artifacts, so any output can be regenerated from the
// manifest alone.

#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "vps/errors.hpp"

using namespace vpscli;

int main(int argc, char** argv) {
    CLI::App app{"velocity-porosity transforms, synthetic corpora, and a neural-net emulator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer("exit codes: 0 ok, 2 usage, 3 io, 4 parse, 5 dimension mismatch, 6 diverged");

    CommonOptions common;
    app.add_option("--seed", common.seed, "base seed for sampling, init and shuffling");
    app.add_option("--config", common.config_path, "TOML-style config file with defaults");
    app.add_option("--out", common.out_dir, "output directory");

    TablesOptions tables_opt;
    auto* tables = app.add_subcommand("tables", "dump the lithology coefficient table as CSV");
    tables->add_option("--mode", tables_opt.mode, "rho-law mode: printed|corrected");
    tables->add_option("--file", tables_opt.out_file,
                       "write to this file under --out instead of stdout");

    GenOptions gen_opt;
    auto* gen = app.add_subcommand("gen", "generate a training corpus or synthetic test log");
    gen->add_option("--case", gen_opt.case_no, "1 (hydrate RHG) or 2 (seven lithologies)")
        ->required();
    gen->add_option("--n", gen_opt.n,
                    "samples (case 1: total; case 2: per lithology); 0 = config default");
    gen->add_option("--mode", gen_opt.mode, "rho-law mode: printed|corrected");
    gen->add_flag("--testlog", gen_opt.testlog, "generate a labeled test log instead");
    gen->add_option("--noise-sigma", gen_opt.noise_sigma, "Gaussian input noise sigma");

    TrainOptions train_opt;
    auto* train = app.add_subcommand("train", "train a network on a dataset CSV");
    train->add_option("--data", train_opt.data_path, "dataset CSV (with .meta sidecar)")
        ->required();
    train->add_option("--net", train_opt.net, "hidden widths, e.g. \"9,15,9\" (empty = affine)");
    train->add_option("--epochs", train_opt.epochs, "max training epochs");
    train->add_option("--batch", train_opt.batch, "minibatch size");
    train->add_option("--lr", train_opt.lr, "Adam learning rate");
    train->add_option("--val-fraction", train_opt.val_fraction, "validation fraction (0,1)");
    train->add_option("--patience", train_opt.patience, "early-stopping patience, epochs");

    EvalOptions eval_opt;
    auto* eval = app.add_subcommand("eval", "evaluate a model on a dataset or log CSV");
    eval->add_option("--model", eval_opt.model_path, "model file")->required();
    eval->add_option("--data", eval_opt.data_path, "dataset or log CSV")->required();
    eval->add_option("--trace-out", eval_opt.trace_out, "trace CSV path");
    eval->add_option("--schema", eval_opt.schema, "auto|dataset|case1-log|case2-log");

    ReproduceOptions repro_opt;
    auto* repro = app.add_subcommand(
        "reproduce", "end to end: corpus, five-architecture ladder, traces, zone summary");
    repro->add_option("--case", repro_opt.case_no, "1 or 2")->required();
    repro->add_option("--seeds", repro_opt.seeds, "seeds per architecture (default 3)");
    repro->add_option("--n", repro_opt.n,
                      "corpus size override (case 1: rows; case 2: rows per lithology)");
    repro->add_option("--epochs", repro_opt.epochs, "max training epochs override");
    repro->add_option("--block-len", repro_opt.block_len, "case 2 test-log block length");
    repro->add_option("--testlog-n", repro_opt.testlog_n, "case 1 test-log length");
    repro->add_flag("--write-corpus", repro_opt.write_corpus, "also write the corpus CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*tables) return run_tables(common, tables_opt);
        if (*gen) return run_gen(common, gen_opt);
        if (*train) return run_train(common, train_opt);
        if (*eval) return run_eval(common, eval_opt);
        if (*repro) return run_reproduce(common, repro_opt);
    } catch (const vps::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const vps::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const vps::dimension_error& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid value: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
