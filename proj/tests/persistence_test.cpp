#include <cstring>
#include <string>

#include <doctest.h>

#include "test_support.hpp"
#include "vps/config.hpp"
#include "vps/csv.hpp"
#include "vps/errors.hpp"
#include "vps/model_io.hpp"
#include "vps/rng.hpp"
#include "vps/sha256.hpp"
#include "vps/synthgen.hpp"

using namespace vps;

TEST_CASE("sha256 known-answer vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(sha256_hex(std::string(1000000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("shortest round-trip float formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-2.5) == "-2.5");
    Rng rng(606);
    for (int i = 0; i < 5000; ++i) {
        double v = rng.uniform(-1e6, 1e6);
        if (i % 3 == 0) v = rng.uniform(-1.0, 1.0);
        if (i % 7 == 0) v *= 1e-12;
        const std::string s = format_double(v);
        const double back = parse_double(s, "round trip");
        CHECK(std::memcmp(&back, &v, sizeof v) == 0);
    }
    CHECK_THROWS_AS(parse_double("abc", "x"), parse_error);
    CHECK_THROWS_AS(parse_double("1.5x", "x"), parse_error);
    CHECK_THROWS_AS(parse_double("", "x"), parse_error);
}

TEST_CASE("csv quoting round-trips awkward fields") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("with,comma") == "\"with,comma\"");
    CHECK(csv_field("with\"quote") == "\"with\"\"quote\"");
    const auto fields =
        split_csv_line("\"a,b\",plain,\"q\"\"q\",", "test");
    REQUIRE(fields.size() == 4);
    CHECK(fields[0] == "a,b");
    CHECK(fields[1] == "plain");
    CHECK(fields[2] == "q\"q");
    CHECK(fields[3].empty());
    CHECK_THROWS_AS(split_csv_line("\"open", "test"), parse_error);
}

namespace {

Network trained_like_network() {
    NetworkSpec spec;
    spec.input_dim = 2;
    spec.hidden = {3};
    spec.output_dim = 2;
    spec.init_seed = 1234;
    Network net = Network::init(spec);
    NormStats in;
    in.min = {0.0, -1.0};
    in.max = {1.0, 2.0};
    NormStats out;
    out.min = {-5.0, 100.0};
    out.max = {5.0, 250.0};
    net.set_normalization(in, out);
    return net;
}

} // namespace

TEST_CASE("model save/load round-trips predictions bit-exactly") {
    vpstest::TempDir tmp("model_rt");
    const Network net = trained_like_network();
    const auto path = tmp.path() / "net.vpsmodel";
    ModelProvenance prov;
    prov.dataset_digest = "sha256:0011aabb";
    prov.shuffle_seed = 99;
    save_model(net, path, prov);

    ModelProvenance loaded_prov;
    const Network loaded = load_model(path, &loaded_prov);
    CHECK(loaded_prov.dataset_digest == "sha256:0011aabb");
    CHECK(loaded_prov.shuffle_seed == 99);
    CHECK(loaded.spec().hidden == net.spec().hidden);
    CHECK(loaded.spec().init_seed == net.spec().init_seed);

    Rng rng(777);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> x = {rng.uniform(0.0, 1.0), rng.uniform(-1.0, 2.0)};
        const auto a = net.forward(x);
        const auto b = loaded.forward(x);
        REQUIRE(a.size() == b.size());
        CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    }

    // saving the loaded model reproduces the file byte for byte
    const auto path2 = tmp.path() / "net2.vpsmodel";
    save_model(loaded, path2, loaded_prov);
    CHECK(read_text_file(path) == read_text_file(path2));
}

TEST_CASE("model loading rejects broken files with located errors") {
    vpstest::TempDir tmp("model_err");
    const Network net = trained_like_network();
    const auto path = tmp.path() / "net.vpsmodel";
    save_model(net, path);
    const std::string good = read_text_file(path);

    SUBCASE("untrained networks cannot be saved") {
        const Network raw = Network::init(net.spec());
        CHECK_THROWS_AS(save_model(raw, tmp.path() / "raw.vpsmodel"), std::invalid_argument);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_model(tmp.path() / "absent.vpsmodel"), io_error);
    }

    SUBCASE("unsupported version") {
        std::string bad = good;
        bad.replace(bad.find("version 1"), 9, "version 2");
        write_text_file(path, bad);
        try {
            load_model(path);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("unsupported model version 2") !=
                  std::string::npos);
        }
    }

    SUBCASE("truncation names the missing section") {
        const std::string cut = good.substr(0, good.find("[output_stats]"));
        write_text_file(path, cut);
        try {
            load_model(path);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("output_stats") != std::string::npos);
        }
    }

    SUBCASE("non-finite weights are rejected") {
        std::string bad = good;
        const std::size_t w = bad.find("w = ");
        bad.replace(w + 4, bad.find(' ', w + 4) - w - 4, "nan");
        write_text_file(path, bad);
        try {
            load_model(path);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
        }
    }

    SUBCASE("layer dimensions must chain") {
        std::string bad = good;
        bad.replace(bad.find("out = 3"), 7, "out = 4");
        write_text_file(path, bad);
        CHECK_THROWS_AS(load_model(path), parse_error);
    }

    SUBCASE("degenerate normalization stats are rejected") {
        std::string bad = good;
        // copy the input min row's values over the max row: max == min per column
        const std::size_t section = bad.find("[input_stats]");
        const std::size_t minline = bad.find("min = ", section);
        const std::size_t mineol = bad.find('\n', minline);
        const std::string minvals = bad.substr(minline + 6, mineol - minline - 6);
        const std::size_t maxline = bad.find("max = ", section);
        const std::size_t maxeol = bad.find('\n', maxline);
        bad.replace(maxline + 6, maxeol - maxline - 6, minvals);
        write_text_file(path, bad);
        try {
            load_model(path);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("normalization") != std::string::npos);
        }
    }
}

TEST_CASE("dataset CSV files round-trip with sidecar metadata") {
    vpstest::TempDir tmp("dataset_rt");
    const Dataset ds = gen_case2(25, RhoLawMode::DolomiteSignCorrected, 4242);
    const auto path = tmp.path() / "corpus.csv";
    write_dataset_csv(ds, path, {{"n_per_lith", "25"}});

    CHECK(std::filesystem::exists(tmp.path() / "corpus.meta"));
    const Dataset back = read_dataset_csv(path);
    CHECK(back.rows() == ds.rows());
    CHECK(back.input_names() == ds.input_names());
    CHECK(back.target_names() == ds.target_names());
    CHECK(back.provenance() == ds.provenance());
    CHECK(back.seed() == ds.seed());
    CHECK(back.inputs() == ds.inputs());
    CHECK(back.targets() == ds.targets());

    // canonical writing is idempotent
    const auto path2 = tmp.path() / "again.csv";
    write_dataset_csv(back, path2);
    CHECK(read_text_file(path) == read_text_file(path2));

    // digests are a function of content only
    CHECK(dataset_digest(ds) == dataset_digest(back));
    CHECK(dataset_digest(ds) ==
          dataset_digest(gen_case2(25, RhoLawMode::DolomiteSignCorrected, 4242)));
}

TEST_CASE("dataset CSV reading without a sidecar falls back to known layouts") {
    vpstest::TempDir tmp("dataset_nometa");
    const auto path = tmp.path() / "bare.csv";
    write_text_file(path, "phi,rho,vp,vs\n0.2,2.5,4.0,2.2\n0.3,2.4,3.8,2.1\n");
    const Dataset ds = read_dataset_csv(path);
    CHECK(ds.rows() == 2);
    CHECK(ds.input_dim() == 2);
    CHECK(ds.target_dim() == 2);

    write_text_file(path, "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(read_dataset_csv(path), parse_error);
    write_text_file(path, "");
    CHECK_THROWS_AS(read_dataset_csv(path), parse_error);
}

TEST_CASE("log CSV reading maps columns by name and locates bad cells") {
    vpstest::TempDir tmp("log_read");
    const auto path = tmp.path() / "log.csv";

    SUBCASE("well-formed hydrate log, scrambled column order") {
        write_text_file(path,
                        "rho,phi,depth,sh,vp\n"
                        "2.1,0.30,100,0.0,1550\n"
                        "2.0,0.35,101,0.1,1600\n"
                        "1.9,0.40,102,0.2,1700\n");
        const LoadedLog log = read_log_csv(path, LogSchema::Case1);
        REQUIRE(log.data.rows() == 3);
        CHECK(log.data.input_names() == std::vector<std::string>{"phi", "sh", "rho"});
        CHECK(log.data.target_names() == std::vector<std::string>{"vp"});
        CHECK(log.depth == std::vector<double>{100.0, 101.0, 102.0});
        CHECK(log.data.input_row(1)[0] == 0.35);
        CHECK(log.data.input_row(1)[2] == 2.0);
        CHECK(log.data.target_row(2)[0] == 1700.0);
        CHECK(log.labels.empty());
    }

    SUBCASE("missing required column is named") {
        write_text_file(path, "depth,phi,sh,vp\n1,0.3,0.0,1550\n");
        try {
            read_log_csv(path, LogSchema::Case1);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("'rho'") != std::string::npos);
        }
    }

    SUBCASE("bad cell cites its row") {
        std::string text = "depth,phi,rho\n";
        for (int i = 1; i <= 6; ++i) text += std::to_string(i) + ",0.2,2.5\n";
        text += "7,abc,2.5\n";
        write_text_file(path, text);
        try {
            read_log_csv(path, LogSchema::Case2);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            const std::string msg = e.what();
            CHECK(msg.find("row 7") != std::string::npos);
            CHECK(msg.find("phi") != std::string::npos);
            CHECK(msg.find("abc") != std::string::npos);
        }
    }

    SUBCASE("empty file") {
        write_text_file(path, "");
        CHECK_THROWS_AS(read_log_csv(path, LogSchema::Case1), parse_error);
    }

    SUBCASE("targets must appear together") {
        write_text_file(path, "depth,phi,rho,vp\n1,0.2,2.5,4.0\n");
        CHECK_THROWS_AS(read_log_csv(path, LogSchema::Case2), parse_error);
    }

    SUBCASE("unknown columns are ignored, lith populates labels") {
        write_text_file(path,
                        "depth,phi,rho,vp,vs,lith,junk\n"
                        "0,0.2,2.5,4.0,2.2,chalks,zzz\n"
                        "1,0.1,2.6,4.2,2.3,dolomite,zzz\n");
        const LoadedLog log = read_log_csv(path, LogSchema::Case2);
        CHECK(log.data.rows() == 2);
        CHECK(log.data.target_dim() == 2);
        CHECK(log.labels == std::vector<std::string>{"chalks", "dolomite"});
    }

    SUBCASE("a target-free log loads with zero target columns") {
        write_text_file(path, "depth,phi,rho\n0,0.2,2.5\n");
        const LoadedLog log = read_log_csv(path, LogSchema::Case2);
        CHECK(log.data.target_dim() == 0);
        CHECK(log.data.rows() == 1);
    }
}

TEST_CASE("labeled logs write depth, columns and lithology labels") {
    vpstest::TempDir tmp("log_write");
    const LabeledLog log = gen_case2_testlog(3, 31, RhoLawMode::DolomiteSignCorrected);
    const auto path = tmp.path() / "testlog.csv";
    write_log_csv(log, path);
    const LoadedLog back = read_log_csv(path, LogSchema::Case2);
    CHECK(back.data.rows() == 21);
    CHECK(back.labels == log.labels);
    CHECK(back.data.inputs() == log.data.inputs());
    CHECK(back.data.targets() == log.data.targets());
    CHECK(back.depth.front() == 0.0);
    CHECK(back.depth.back() == 20.0);
}

TEST_CASE("config parsing covers sections, comments, strings and errors") {
    const Config cfg = Config::from_string("# comment\n"
                                           "top = 3\n"
                                           "[rhg]\n"
                                           "v_ma = 5500.0\n"
                                           "name = \"quoted value\"\n"
                                           "flag = true\n",
                                           "inline");
    CHECK(cfg.get_double("top", 0.0) == 3.0);
    CHECK(cfg.get_double("rhg.v_ma", 0.0) == 5500.0);
    CHECK(cfg.get_string("rhg.name", "") == "quoted value");
    CHECK(cfg.get_bool("rhg.flag", false));
    CHECK(cfg.get_double("rhg.absent", 1.25) == 1.25);
    CHECK(cfg.get_u64("top", 0) == 3);

    CHECK_THROWS_AS(Config::from_string("key value\n", "inline"), parse_error);
    CHECK_THROWS_AS(Config::from_string("[broken\n", "inline"), parse_error);
    try {
        Config::from_string("a = 1\nbroken line\n", "inline");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("inline:2") != std::string::npos);
    }
    CHECK_THROWS_AS(Config::from_string("k = x\n", "t").get_double("k", 0.0), parse_error);
    CHECK_THROWS_AS(Config::from_file("/nonexistent/path/cfg.toml"), io_error);
}
