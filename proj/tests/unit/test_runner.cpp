#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "mhd2d/errors.hpp"
#include "mhd2d/runner.hpp"
#include "mhd2d/series_io.hpp"
#include "oracles.hpp"

using namespace mhd2d;

namespace {

RunConfig small_config(const std::filesystem::path& dir) {
    RunConfig c;
    c.n = 16;
    c.beta = 1.5;
    c.t_end = 0.2;
    c.output_interval = 0.02;
    c.ic.name = "random_band";
    c.ic.params["k_max"] = 4.0;
    c.ic.seed = 3;
    c.output_dir = dir.string();
    return c;
}

std::vector<char> bytes(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("row counts") {
    CHECK(expected_row_count(1.0, 0.01) == 101);
    CHECK(expected_row_count(2.0, 0.005) == 401);
    CHECK(expected_row_count(0.0, 0.1) == 1);
    CHECK(expected_row_count(0.25, 0.1) == 3);
    CHECK(run_files::checkpoint_name(12) == "checkpoint_000012.bin");
}

TEST_CASE("t_end = 0 gives one record and the initial checkpoint") {
    const auto dir = oracle::scratch("run_t0");
    auto c = small_config(dir);
    c.t_end = 0.0;
    const auto r = run(c);
    CHECK(r.completed());
    CHECK(r.series.size() == 1);
    CHECK(r.final_checkpoint.t == 0.0);
    CHECK(read_series_csv(dir / run_files::kSeries).rows.size() == 1);
    CHECK(std::filesystem::exists(dir / run_files::kFinal));
    CHECK(std::filesystem::exists(dir / run_files::kConfig));
}

TEST_CASE("run hits every output time, including a t_end off the grid") {
    const auto dir = oracle::scratch("run_times");
    auto c = small_config(dir);
    c.t_end = 0.05;
    const auto r = run(c);
    REQUIRE(r.series.size() == 3);
    CHECK(r.series[1].t == 0.02);
    CHECK(r.series[2].t == 0.04);
    CHECK(r.final_checkpoint.t == 0.05);
    for (std::size_t i = 1; i < r.series.size(); ++i) {
        CHECK(r.series[i].int_linf_grad_j >= r.series[i - 1].int_linf_grad_j);
        CHECK(r.series[i].int_l2_lambda_beta_b_sq >= r.series[i - 1].int_l2_lambda_beta_b_sq);
    }
}

TEST_CASE("split and resume equals an uninterrupted run bitwise") {
    const auto full_dir = oracle::scratch("full");
    const auto split_dir = oracle::scratch("split");
    auto full = small_config(full_dir);
    full.checkpoint_interval = 0.1;
    const auto a = run(full);
    REQUIRE(a.completed());
    CHECK(std::filesystem::exists(full_dir / run_files::checkpoint_name(5)));
    CHECK(std::filesystem::exists(full_dir / run_files::checkpoint_name(10)));

    auto first = small_config(split_dir);
    first.checkpoint_interval = 0.1;
    first.t_end = 0.1;
    REQUIRE(run(first).completed());
    ResumeOptions opt;
    opt.t_end = 0.2;
    const auto b = resume(split_dir / run_files::kFinal, opt);
    REQUIRE(b.completed());

    CHECK(bytes(full_dir / run_files::kSeries) == bytes(split_dir / run_files::kSeries));
    CHECK(bytes(full_dir / run_files::kFinal) == bytes(split_dir / run_files::kFinal));
    CHECK(b.series.size() == a.series.size());

    // resuming from a mid-run checkpoint into a fresh directory
    const auto other = oracle::scratch("resumed_elsewhere");
    ResumeOptions opt2;
    opt2.output_dir = other;
    const auto c = resume(full_dir / run_files::checkpoint_name(5), opt2);
    REQUIRE(c.completed());
    CHECK(bytes(full_dir / run_files::kSeries) == bytes(other / run_files::kSeries));
    CHECK(bytes(full_dir / run_files::kFinal) == bytes(other / run_files::kFinal));
}

TEST_CASE("resume rejects a changed config") {
    const auto dir = oracle::scratch("digest");
    auto c = small_config(dir);
    c.t_end = 0.04;
    REQUIRE(run(c).completed());
    ResumeOptions opt;
    auto changed = c;
    changed.cfl_number = 0.3;
    opt.config = changed;
    CHECK_THROWS_AS(resume(dir / run_files::kFinal, opt), ConfigError);
    opt.allow_digest_mismatch = true;
    CHECK(resume(dir / run_files::kFinal, opt).completed());
    CHECK_THROWS_AS(resume(dir / "missing.bin", ResumeOptions{}), IoError);
}

TEST_CASE("numerical abort writes failure.json") {
    const auto dir = oracle::scratch("abort");
    auto c = small_config(dir);
    c.ic.params["u_rms"] = 1e150;
    c.ic.params["b_rms"] = 1e150;
    const auto r = run(c);
    CHECK_FALSE(r.completed());
    REQUIRE(std::filesystem::exists(dir / run_files::kFailure));
    std::ifstream f(dir / run_files::kFailure);
    const auto j = nlohmann::json::parse(f);
    CHECK(j["cause"].get<std::string>().size() > 0);
    CHECK(j.contains("t"));
    CHECK(std::filesystem::exists(dir / run_files::kFinal));
}

TEST_CASE("sweep is independent of concurrency") {
    const auto d1 = oracle::scratch("sweep1");
    const auto d3 = oracle::scratch("sweep3");
    auto c = small_config(d1);
    c.t_end = 0.06;
    const std::vector<double> betas{1.1, 1.5, 2.0};
    const auto m1 = sweep(c, betas, 1);
    c.output_dir = d3.string();
    const auto m3 = sweep(c, {2.0, 1.5, 1.1}, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(m1[i].completed);
        CHECK(m1[i].beta == betas[i]);
        const auto name = "beta_" + format_number(betas[i]);
        CHECK(bytes(d1 / name / run_files::kSeries) == bytes(d3 / name / run_files::kSeries));
    }
    std::ifstream f(d1 / run_files::kManifest);
    const auto manifest = nlohmann::json::parse(f);
    REQUIRE(manifest["runs"].size() == 3);
    CHECK(manifest["runs"][0]["directory"] == "beta_1.1");
    CHECK(manifest["runs"][2]["series"] == "beta_2/series.csv");
    CHECK_THROWS_AS(sweep(c, {}, 1), ConfigError);
}
