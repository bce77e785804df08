#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "fns/config.hpp"
#include "fns/csv.hpp"
#include "fns/kernel_tables.hpp"
#include "fns/manifest.hpp"
#include "fns/sha256.hpp"
#include "fns/snapshot.hpp"
#include "fns/solver.hpp"
#include "json.hpp"

using namespace fns;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("sha256 reference vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(sha256_hex(std::string(1000000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
    CHECK(sha256_hex("abc", 3) == sha256_hex("abc"));

    TempFile f("test_io_digest.bin");
    spit(f.path, "abc");
    CHECK(sha256_file_hex(f.path) == sha256_hex("abc"));
    CHECK_THROWS_AS(sha256_file_hex("test_io_no_such_file"), std::runtime_error);
}

TEST_CASE("double formatting is shortest-exact and round-trips") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(-0.5) == "-0.5");
    for (double v : {0.1, 1.0 / 3.0, M_PI, 6.02214076e23, 1e-300, -7.25}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("csv tables render and write deterministically") {
    CsvTable tab({"t", "e"});
    tab.add_row({0.25, 1.0 / 3.0});
    tab.add_row_text({"x", "y"});
    CHECK(tab.rows() == 2);
    CHECK(tab.render() == "t,e\n0.25,0.33333333333333331\nx,y\n");

    CHECK_THROWS_AS(tab.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(CsvTable(std::vector<std::string>{}), std::invalid_argument);

    TempFile f("test_io_table.csv");
    tab.write(f.path);
    const std::string first = slurp(f.path);
    CHECK(first == tab.render());
    tab.write(f.path);
    CHECK(slurp(f.path) == first);  // rerun is byte-identical
}

TEST_CASE("snapshot round trip preserves every bit") {
    const TorusGrid g = make_grid(2, 16);
    InitialSpec spec;
    spec.kind = InitialKind::gevrey_random;
    spec.amplitude = 0.05;
    spec.gevrey_radius = 0.7;
    spec.seed = 9;
    const SpectralField u = init_field(g, spec);

    TempFile f("test_io_snap.fns");
    write_snapshot(f.path, u, 1.7, 0.35);

    SnapshotMeta meta;
    const SpectralField v = read_snapshot(f.path, &meta);
    CHECK(meta.gamma == 1.7);
    CHECK(meta.time == 0.35);
    CHECK(v.grid.dim == 2);
    CHECK(v.grid.n == 16);
    CHECK(v.mean_zero);
    CHECK(v.div_free);
    REQUIRE(v.c.size() == u.c.size());
    for (std::size_t a = 0; a < u.c.size(); ++a)
        for (std::size_t i = 0; i < u.c[a].size(); ++i)
            CHECK(v.c[a][i] == u.c[a][i]);
}

TEST_CASE("snapshot reader rejects damaged files") {
    const TorusGrid g = make_grid(2, 16);
    SpectralField u = make_spectral_field(g, 2);
    u.c[0][mode_index(g, {0, 1, 0})] = cplx{0.0, -0.5};
    u.c[0][mode_index(g, {0, -1, 0})] = cplx{0.0, 0.5};
    u.mean_zero = true;
    u.div_free = true;

    TempFile f("test_io_snap_bad.fns");
    write_snapshot(f.path, u, 2.0, 0.0);
    const std::string good = slurp(f.path);

    auto expect_reject = [&](const std::string& bytes) {
        spit(f.path, bytes);
        CHECK_THROWS_AS(read_snapshot(f.path), std::runtime_error);
    };

    std::string bad = good;
    bad[0] = 'X';  // magic
    expect_reject(bad);

    expect_reject(good.substr(0, 10));               // headerless stub
    expect_reject(good.substr(0, good.size() - 8));  // payload cut short
    expect_reject(good + "!");                       // trailing bytes

    bad = good;
    bad[8] = 6;  // n = 6: not a valid grid
    expect_reject(bad);

    CHECK_THROWS_AS(read_snapshot("test_io_missing.fns"), std::runtime_error);

    // restore and confirm the pristine file still reads
    spit(f.path, good);
    CHECK(read_snapshot(f.path).div_free);
}

TEST_CASE("snapshot flags must match the coefficients") {
    const TorusGrid g = make_grid(2, 16);

    SpectralField w = make_spectral_field(g, 2);
    w.c[0][mode_index(g, {1, 0, 0})] = cplx{1.0, 0.0};  // k . u != 0
    w.c[0][mode_index(g, {-1, 0, 0})] = cplx{1.0, 0.0};
    w.mean_zero = true;
    w.div_free = true;  // lie
    TempFile f1("test_io_flag_div.fns");
    write_snapshot(f1.path, w, 1.5, 0.0);
    CHECK_THROWS_AS(read_snapshot(f1.path), std::runtime_error);

    SpectralField m = make_spectral_field(g, 2);
    m.c[0][0] = cplx{1.0, 0.0};  // nonzero mean
    m.mean_zero = true;          // lie
    m.div_free = true;           // the k = 0 mode carries no divergence
    TempFile f2("test_io_flag_mean.fns");
    write_snapshot(f2.path, m, 1.5, 0.0);
    CHECK_THROWS_AS(read_snapshot(f2.path), std::runtime_error);

    // with honest flags the same coefficients round trip
    w.div_free = false;
    TempFile f3("test_io_flag_ok.fns");
    write_snapshot(f3.path, w, 1.5, 0.0);
    const SpectralField back = read_snapshot(f3.path);
    CHECK(!back.div_free);
    CHECK(back.c[0][mode_index(g, {1, 0, 0})] == cplx{1.0, 0.0});
}

TEST_CASE("kernel table round trip preserves header and values") {
    KernelBuildOptions opt;
    opt.padding = 4;
    const KernelTable tab = lemma_kernel_table(1.5, 0.8, 1, 2, 0.5, 0, 6.0, 64, opt);

    TempFile f("test_io_table.fnk");
    write_kernel_table(f.path, tab);
    const KernelTable rt = read_kernel_table(f.path);
    CHECK(rt.gamma == tab.gamma);
    CHECK(rt.t == tab.t);
    CHECK(rt.dim == 1);
    CHECK(rt.deriv_order == 2);
    CHECK(rt.deriv_axis == 0);
    CHECK(rt.frac_order == 0.5);
    CHECK(rt.comp_j == -1);
    CHECK(rt.comp_m == -1);
    CHECK(rt.extent == tab.extent);
    CHECK(rt.samples == tab.samples);
    REQUIRE(rt.values.size() == tab.values.size());
    for (std::size_t i = 0; i < tab.values.size(); ++i)
        CHECK(rt.values[i] == tab.values[i]);

    // oseen component indices survive the trip
    const KernelTable os = oseen_kernel_table(1.8, 1.0, 2, 0, 1, 0, 0.0, 0, 6.0, 32, opt);
    TempFile f2("test_io_oseen.fnk");
    write_kernel_table(f2.path, os);
    const KernelTable os2 = read_kernel_table(f2.path);
    CHECK(os2.comp_j == 0);
    CHECK(os2.comp_m == 1);
    CHECK(os2.values == os.values);
}

TEST_CASE("kernel table reader rejects damaged files") {
    KernelBuildOptions opt;
    opt.padding = 2;
    KernelTable tab = heat_kernel_table(2.0, 0.5, 1, 4.0, 32, opt);
    TempFile f("test_io_table_bad.fnk");
    write_kernel_table(f.path, tab);
    const std::string good = slurp(f.path);

    auto expect_reject = [&](const std::string& bytes) {
        spit(f.path, bytes);
        CHECK_THROWS_AS(read_kernel_table(f.path), std::runtime_error);
    };

    std::string bad = good;
    bad[2] = 'X';
    expect_reject(bad);
    expect_reject(good.substr(0, 12));
    expect_reject(good.substr(0, good.size() - 1));
    expect_reject(good + "??");
    bad = good;
    bad[8] = 33;  // odd sample count
    expect_reject(bad);

    KernelTable broken = tab;
    broken.values.pop_back();
    CHECK_THROWS_AS(write_kernel_table("test_io_unwritten.fnk", broken),
                    std::invalid_argument);
    CHECK_THROWS_AS(read_kernel_table("test_io_missing.fnk"), std::runtime_error);
}

TEST_CASE("config parsing: defaults, full object, round trip") {
    const SolverConfig def = parse_solver_config(json::object());
    CHECK(def.gamma == 1.5);
    CHECK(def.dim == 2);
    CHECK(def.n == 64);
    CHECK(def.t_end == 1.0);
    CHECK(def.dt == 1e-3);
    CHECK(def.method == Method::etd2);
    CHECK(def.output_every == 1);
    CHECK(def.snapshot_every == 0);
    CHECK(def.q_list.empty());
    CHECK(def.picard_tol == 1e-10);
    CHECK(def.picard_max_iter == 12);
    CHECK(def.picard_nodes == 4);
    CHECK(def.initial.kind == InitialKind::taylor_green);
    CHECK(def.initial.amplitude == 1.0);
    CHECK(def.initial.gevrey_radius == 0.5);
    CHECK(def.initial.seed == 1);
    CHECK(def.initial.path.empty());

    const json full = {
        {"gamma", 1.8},
        {"dim", 2},
        {"n", 32},
        {"t_end", 0.5},
        {"dt", 0.0025},
        {"method", "picard"},
        {"output_every", 4},
        {"snapshot_every", 2},
        {"q_list", {6.0, "inf"}},
        {"picard", {{"tol", 1e-9}, {"max_iter", 8}, {"nodes", 5}}},
        {"initial",
         {{"kind", "gevrey_random"},
          {"amplitude", 0.01},
          {"gevrey_radius", 0.8},
          {"seed", 42}}}};
    const SolverConfig cfg = parse_solver_config(full);
    CHECK(cfg.gamma == 1.8);
    CHECK(cfg.n == 32);
    CHECK(cfg.method == Method::picard);
    REQUIRE(cfg.q_list.size() == 2);
    CHECK(cfg.q_list[0] == 6.0);
    CHECK(std::isinf(cfg.q_list[1]));
    CHECK(cfg.picard_tol == 1e-9);
    CHECK(cfg.picard_max_iter == 8);
    CHECK(cfg.picard_nodes == 5);
    CHECK(cfg.initial.kind == InitialKind::gevrey_random);
    CHECK(cfg.initial.seed == 42);

    // canonical dump -> parse -> dump is a fixed point (stable digest)
    const std::string dump1 = config_to_json(cfg).dump();
    const SolverConfig cfg2 = parse_solver_config(config_to_json(cfg));
    CHECK(config_to_json(cfg2).dump() == dump1);
    CHECK(sha256_hex(config_to_json(cfg2).dump()) == sha256_hex(dump1));
}

TEST_CASE("config parsing: errors name the offending key") {
    auto message_of = [](const json& j) -> std::string {
        try {
            parse_solver_config(j);
        } catch (const std::invalid_argument& e) {
            return e.what();
        }
        return "";
    };

    std::string msg = message_of(json{{"gamm", 1.5}});
    CHECK(msg.find("<root>.gamm") != std::string::npos);
    CHECK(msg.find("unknown key") != std::string::npos);

    msg = message_of(json{{"initial", {{"amp", 1.0}}}});
    CHECK(msg.find("initial.amp") != std::string::npos);

    msg = message_of(json{{"gamma", "big"}});
    CHECK(msg.find("gamma") != std::string::npos);
    CHECK(msg.find("expected a number") != std::string::npos);

    msg = message_of(json{{"n", 32.5}});
    CHECK(msg.find("expected an integer") != std::string::npos);

    msg = message_of(json{{"q_list", {"huge"}}});
    CHECK(msg.find("q_list[0]") != std::string::npos);

    msg = message_of(json{{"initial", {{"seed", -1}}}});
    CHECK(msg.find("initial.seed") != std::string::npos);

    msg = message_of(json{{"method", "rk4"}});
    CHECK(msg.find("unknown method") != std::string::npos);

    msg = message_of(json{{"initial", {{"kind", "vortex"}}}});
    CHECK(msg.find("unknown initial kind") != std::string::npos);

    // semantic validation runs behind the syntax checks
    msg = message_of(json{{"gamma", 3.0}});
    CHECK(msg.find("gamma must be in (1, 2]") != std::string::npos);

    msg = message_of(json{{"initial", {{"kind", "file"}}}});
    CHECK(msg.find("initial.path") != std::string::npos);
}

TEST_CASE("config files load with located parse errors") {
    TempFile f("test_io_config.json");
    spit(f.path, R"({"gamma": 1.25, "initial": {"kind": "shear"}})");
    const SolverConfig cfg = load_solver_config(f.path);
    CHECK(cfg.gamma == 1.25);
    CHECK(cfg.initial.kind == InitialKind::shear);

    CHECK_THROWS_AS(load_solver_config("test_io_missing.json"),
                    std::invalid_argument);

    TempFile g("test_io_config_bad.json");
    spit(g.path, "{ nope");
    bool threw = false;
    try {
        load_solver_config(g.path);
    } catch (const std::invalid_argument& e) {
        threw = true;
        CHECK(std::string(e.what()).find(g.path) != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("run manifest records digests of its outputs") {
    CsvTable tab({"k"});
    tab.add_row({3.0});
    TempFile out("test_io_manifest_out.csv");
    tab.write(out.path);

    const json cfgj = config_to_json(SolverConfig{});
    RunManifest man("demo", cfgj);
    man.add_output(out.path);
    man.add_note("rows", 1);
    TempFile mf("test_io_manifest.json");
    man.write(mf.path);

    const json m = json::parse(slurp(mf.path));
    CHECK(m.at("tool") == "fnslab");
    CHECK(m.at("subcommand") == "demo");
    CHECK(m.at("config") == cfgj);
    CHECK(m.at("config_digest") == sha256_hex(cfgj.dump()));
    REQUIRE(m.at("outputs").size() == 1);
    CHECK(m.at("outputs")[0].at("path") == out.path);
    CHECK(m.at("outputs")[0].at("sha256") == sha256_hex(tab.render()));
    CHECK(m.at("notes").at("rows") == 1);

    const std::string started = m.at("started").get<std::string>();
    REQUIRE(started.size() == 20);
    CHECK(started[4] == '-');
    CHECK(started[10] == 'T');
    CHECK(started[13] == ':');
    CHECK(started.back() == 'Z');
}
