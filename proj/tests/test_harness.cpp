#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "chebproj/config.hpp"
#include "chebproj/harness.hpp"
#include "chebproj/mesh_gen.hpp"
#include "chebproj/partition.hpp"
#include "chebproj/projection.hpp"
#include "chebproj/verify.hpp"

using namespace chebproj;

namespace {

std::vector<double> gaps(const std::vector<double>& bp) {
    std::vector<double> g;
    for (std::size_t j = 0; j + 1 < bp.size(); ++j) g.push_back(bp[j + 1] - bp[j]);
    return g;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("chebproj-test-" + tag);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("mesh families produce valid deterministic breakpoints") {
    MeshSpec spec;
    spec.n = 4;

    spec.family = MeshFamily::Uniform;
    CHECK(generate_breakpoints(spec) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});

    spec.family = MeshFamily::Geometric;
    spec.ratio = 2.0;
    {
        const std::vector<double> g = gaps(generate_breakpoints(spec));
        for (std::size_t j = 0; j + 1 < g.size(); ++j)
            CHECK(g[j + 1] / g[j] == doctest::Approx(2.0).epsilon(1e-12));
    }

    spec.family = MeshFamily::Graded;
    spec.power = 2.0;
    {
        const std::vector<double> bp = generate_breakpoints(spec);
        for (int j = 0; j <= 4; ++j)
            CHECK(bp[std::size_t(j)] == doctest::Approx(std::pow(j / 4.0, 2.0)).epsilon(1e-14));
    }

    spec.family = MeshFamily::TwoScale;
    spec.two_scale_big = 1.0;
    spec.two_scale_small = 0.125;
    {
        const std::vector<double> g = gaps(generate_breakpoints(spec));
        CHECK(g[0] / g[1] == doctest::Approx(8.0).epsilon(1e-12));
        CHECK(g[2] / g[1] == doctest::Approx(8.0).epsilon(1e-12));
    }

    spec.family = MeshFamily::RandomUniform;
    spec.seed = 424242;
    const std::vector<double> first = generate_breakpoints(spec);
    CHECK(first == generate_breakpoints(spec));
    spec.seed = 424243;
    CHECK(first != generate_breakpoints(spec));
    CHECK(first.front() == 0.0);
    CHECK(first.back() == 1.0);
    for (std::size_t j = 0; j + 1 < first.size(); ++j) CHECK(first[j + 1] > first[j]);
}

TEST_CASE("mesh generator rejects invalid and collapsing specs") {
    MeshSpec spec;
    spec.n = 1;
    CHECK_THROWS_AS(generate_breakpoints(spec), std::invalid_argument);

    spec.n = 4;
    spec.family = MeshFamily::Geometric;
    spec.ratio = 0.0;
    CHECK_THROWS_AS(generate_breakpoints(spec), std::invalid_argument);

    spec.ratio = 1000.0;
    spec.n = 128;  // lengths span hundreds of decades and underflow
    CHECK_THROWS_AS(generate_breakpoints(spec), std::invalid_argument);

    spec.family = MeshFamily::Graded;
    spec.n = 4;
    spec.power = 0.5;
    CHECK_THROWS_AS(generate_breakpoints(spec), std::invalid_argument);

    CHECK_THROWS_AS(mesh_family_from_name("diadic"), std::invalid_argument);
}

TEST_CASE("config parses sections, lists and overrides") {
    const char* text =
        "# experiment setup\n"
        "[space]\n"
        "k = 2, 3   # two orders\n"
        "preset = exponential\n"
        "rates = 0.5, -0.3, 0.8\n"
        "[mesh]\n"
        "trials = 4\n"
        "seed = 99\n"
        "[output]\n"
        "timing = false\n";
    Config cfg = Config::from_string(text);
    CHECK(cfg.get_int_list("space.k", {}) == std::vector<int>{2, 3});
    CHECK(cfg.get_string("space.preset", "") == "exponential");
    CHECK(cfg.get_double_list("space.rates", {}).size() == 3);
    CHECK(cfg.get_int("mesh.trials", 0) == 4);
    CHECK(cfg.get_u64("mesh.seed", 0) == 99);
    CHECK(cfg.get_bool("output.timing", true) == false);
    CHECK(cfg.get_int("mesh.absent", 7) == 7);

    cfg.set("mesh.trials", "9");
    CHECK(cfg.get_int("mesh.trials", 0) == 9);

    CHECK_THROWS_AS(Config::from_string("[mesh\nx = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(Config::from_string("just words\n"), std::invalid_argument);
    Config bad = Config::from_string("[mesh]\ntrials = many\n");
    CHECK_THROWS_AS(bad.get_int("mesh.trials", 0), std::invalid_argument);
}

TEST_CASE("experiment config validates its keys") {
    Config cfg = Config::from_string("[mesh]\ntrials = 2\n");
    ExperimentConfig ec = ExperimentConfig::from_config(cfg);
    CHECK(ec.trials == 2);
    CHECK(ec.effective_epsilon() == doctest::Approx((ec.b - ec.a) / 8.0));

    CHECK_THROWS_AS(ExperimentConfig::from_config(Config::from_string("[mesh]\ntirals = 2\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_config(Config::from_string("[space]\nk = 9\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        ExperimentConfig::from_config(Config::from_string("[space]\nmax_order = 7\n")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        ExperimentConfig::from_config(Config::from_string("[space]\npreset = mystery\n")),
        std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_config(Config::from_string("[mesh]\ntrials = 0\n")),
                    std::invalid_argument);

    // six orders are allowed when the cap is raised
    Config six = Config::from_string("[space]\nmax_order = 6\nk = 6\n");
    CHECK(ExperimentConfig::from_config(six).orders == std::vector<int>{6});

    ExperimentConfig expcfg;
    expcfg.weight_preset = "exponential";
    expcfg.weight_rates = {0.5};
    CHECK_THROWS_AS(expcfg.make_weights(3), std::invalid_argument);
    expcfg.weight_preset = "perturbed";
    CHECK(expcfg.make_weights(3).order() == 3);
}

TEST_CASE("seed derivation separates cells deterministically") {
    const std::uint64_t base = 1234;
    CHECK(derive_seed(base, 1, 8, 0) == derive_seed(base, 1, 8, 0));
    CHECK(derive_seed(base, 1, 8, 0) != derive_seed(base, 1, 8, 1));
    CHECK(derive_seed(base, 1, 8, 0) != derive_seed(base, 2, 8, 0));
    CHECK(derive_seed(base, 1, 8, 0) != derive_seed(base + 1, 1, 8, 0));
}

TEST_CASE("measure_cell fills passing rows and captures failures") {
    ExperimentConfig cfg;
    cfg.weight_preset = "constant";

    ReportRow row = measure_cell(cfg, 2, MeshFamily::Uniform, 8, 0);
    CHECK(row.error.empty());
    CHECK(row.ok);
    CHECK(row.op_norm > 1.0);
    CHECK(row.op_norm < 10.0);
    CHECK(row.mesh_norm == doctest::Approx(0.125));
    CHECK(row.decay_q < 1.0);
    CHECK(row.min_phi_product > 0.0);
    CHECK(row.h_deviation <= 1e-6);
    CHECK(row.weight_tag == "constant");

    ReportRow one = measure_cell(cfg, 1, MeshFamily::Uniform, 8, 0);
    CHECK(one.ok);
    CHECK(one.op_norm == doctest::Approx(1.0).epsilon(1e-9));

    cfg.geometric_ratio = 1000.0;
    ReportRow bad = measure_cell(cfg, 2, MeshFamily::Geometric, 128, 0);
    CHECK(!bad.ok);
    CHECK(!bad.error.empty());
    CHECK(bad.op_norm == 0.0);
    CHECK(bad.k == 2);
    CHECK(bad.family == "geometric");
}

TEST_CASE("csv writer is schema-tagged and byte-stable") {
    ReportRow row;
    row.k = 2;
    row.weight_tag = "constant";
    row.family = "uniform";
    row.n = 8;
    row.seed = 42;
    row.op_norm = 2.0;
    row.ok = true;
    row.error = "quoted, text";
    row.wall_ms = 17.5;

    auto render = [&](bool timing) {
        std::ostringstream out;
        CsvWriter w(out, timing);
        w.sweep_header();
        w.sweep_row(row);
        return out.str();
    };
    const std::string a = render(false);
    CHECK(a == render(false));
    CHECK(a.rfind("schema,", 0) == 0);
    CHECK(a.find(kReportSchema) != std::string::npos);
    CHECK(a.find("\"quoted, text\"") != std::string::npos);
    CHECK(a.find("17.5") == std::string::npos);    // timing suppressed
    CHECK(render(true).find("17.5") != std::string::npos);
}

TEST_CASE("refinement simulation counts midpoint insertions") {
    CHECK(simulate_refinement_steps({0.25, 0.25, 0.25, 0.25}, 0.125) == 4);
    CHECK(simulate_refinement_steps({0.5, 0.25, 0.25}, 0.13) == 5);
    CHECK(simulate_refinement_steps({0.1, 0.1}, 0.5) == 0);
    CHECK_THROWS_AS(simulate_refinement_steps({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("verify suite passes the classical default and self-test bites") {
    ExperimentConfig cfg;
    cfg.orders = {2};
    cfg.families = {MeshFamily::Uniform};
    cfg.ladder = {16};
    cfg.weight_preset = "constant";
    cfg.verify_self_test = true;

    const VerifyReport rep = run_verify_checks(cfg);
    CHECK(rep.ok);
    bool saw_self_test = false;
    for (const VerifyCheck& c : rep.checks) {
        CHECK(c.status != "fail");
        if (c.name == "self_test_corrupted_alpha") {
            saw_self_test = true;
            CHECK(c.status == "pass");
        }
    }
    CHECK(saw_self_test);
}

TEST_CASE("verify suite skips extremizer checks for order one") {
    ExperimentConfig cfg;
    cfg.orders = {1};
    cfg.families = {MeshFamily::Uniform};
    cfg.ladder = {8};
    const VerifyReport rep = run_verify_checks(cfg);
    CHECK(rep.ok);
    int skips = 0;
    for (const VerifyCheck& c : rep.checks)
        if (c.status == "skip") ++skips;
    CHECK(skips == 3);
}

TEST_CASE("norm sweep writes byte-identical deterministic reports") {
    TempDir tmp("sweep");
    ExperimentConfig cfg;
    cfg.orders = {1, 2};
    cfg.families = {MeshFamily::Uniform, MeshFamily::RandomUniform};
    cfg.ladder = {8};
    cfg.trials = 2;
    cfg.out_dir = tmp.path.string();

    std::ostringstream log;
    CHECK(run_norm_sweep(cfg, log) == 0);
    const std::string csv1 = slurp(tmp.path / "chebproj-sweep.csv");
    const std::string json1 = slurp(tmp.path / "chebproj-sweep.json");
    CHECK(run_norm_sweep(cfg, log) == 0);
    CHECK(slurp(tmp.path / "chebproj-sweep.csv") == csv1);
    CHECK(slurp(tmp.path / "chebproj-sweep.json") == json1);
    CHECK(csv1.find(kReportSchema) != std::string::npos);
    CHECK(json1.find("\"ok\": true") != std::string::npos);
    CHECK(log.str().find("seed: ") != std::string::npos);
}

TEST_CASE("refinement run matches its length-only simulation") {
    TempDir tmp("refine");
    ExperimentConfig cfg;
    cfg.orders = {2};
    cfg.families = {MeshFamily::Uniform};
    cfg.refine_start_n = 4;
    cfg.out_dir = tmp.path.string();

    std::ostringstream log;
    CHECK(run_refinement_experiment(cfg, log) == 0);
    const std::string json = slurp(tmp.path / "chebproj-refine.json");
    CHECK(json.find("\"schedule_match\": true") != std::string::npos);
    CHECK(json.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("refining a mesh keeps coarse spline elements fixed") {
    WeightSystem w = WeightSystem::constant(0.0, 1.0, 2);
    BSplineBasis coarse(Partition({0.0, 0.5, 1.0}, 2), w);
    BSplineBasis fine(Partition({0.0, 0.25, 0.5, 1.0}, 2), w);
    Projector proj(fine);
    auto f = [&](double x) { return coarse.m_spline(1, x); };
    const std::vector<double> c = proj.project(f);
    for (double x : {0.0, 0.1, 0.25, 0.4, 0.55, 0.8, 1.0})
        CHECK(proj.eval(c, x) == doctest::Approx(f(x)).epsilon(1e-8));
}
