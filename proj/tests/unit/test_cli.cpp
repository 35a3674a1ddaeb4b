#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mhd2d/cli.hpp"
#include "mhd2d/config.hpp"
#include "mhd2d/series_io.hpp"
#include "oracles.hpp"

using namespace mhd2d;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check-ranges example") {
    const auto r = cli({"check-ranges", "--beta", "1.5", "--q", "4", "--s", "1.0", "--r", "8"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("admissible") != std::string::npos);
    CHECK(r.out.find("inadmissible") == std::string::npos);
    CHECK(cli({"check-ranges", "--beta", "1.5", "--q", "5"}).code == kExitPropertyViolation);
    CHECK(cli({"check-ranges", "--beta", "0.9", "--q", "2"}).code == kExitPropertyViolation);
}

TEST_CASE("check-lp and check-bernstein") {
    const auto lp = cli({"check-lp", "--n", "64"});
    CHECK(lp.code == kExitOk);
    CHECK(lp.out.find("partition of unity max deviation") != std::string::npos);
    CHECK(cli({"check-bernstein", "--n", "32", "--trials", "10"}).code == kExitOk);
}

TEST_CASE("run, report and resume through the cli") {
    const auto dir = oracle::scratch("cli_run");
    auto r = cli({"run", "--n", "16", "--t-end", "0", "--output-dir", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(read_series_csv(dir / "series.csv").rows.size() == 1);

    r = cli({"run", "--n", "16", "--t-end", "0.04", "--output-interval", "0.02", "--ic", "single_mode_b",
             "--set", "ic.amplitude=2", "--ndjson", "--output-dir", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(std::filesystem::exists(dir / "series.ndjson"));
    r = cli({"report", (dir / "series.csv").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("linf_grad_j") != std::string::npos);

    r = cli({"resume", (dir / "final.bin").string(), "--t-end", "0.06"});
    CHECK(r.code == kExitOk);
    CHECK(read_series_csv(dir / "series.csv").rows.size() == 4);
}

TEST_CASE("config file with command-line override") {
    const auto dir = oracle::scratch("cli_config");
    std::ofstream(dir / "cfg.txt") << "n = 16\nt_end = 0.02\noutput_interval = 0.01\nbeta = 1.2\n";
    const auto r = cli({"run", "--config", (dir / "cfg.txt").string(), "--beta", "1.7", "--output-dir",
                        (dir / "out").string()});
    CHECK(r.code == kExitOk);
    const auto cfg = RunConfig::from_file(dir / "out" / "config.txt");
    CHECK(cfg.beta == 1.7);
    CHECK(cfg.n == 16);
}

TEST_CASE("output directory from the environment") {
    const auto dir = oracle::scratch("cli_env");
    ::setenv(kOutputDirEnv, (dir / "from_env").string().c_str(), 1);
    const auto r = cli({"run", "--n", "16", "--t-end", "0"});
    ::unsetenv(kOutputDirEnv);
    CHECK(r.code == kExitOk);
    CHECK(std::filesystem::exists(dir / "from_env" / "series.csv"));
}

TEST_CASE("exit codes") {
    const auto dir = oracle::scratch("cli_codes");
    CHECK(cli({"run", "--beta", "3", "--output-dir", dir.string()}).code == kExitConfig);
    CHECK(cli({"run", "--set", "nonsense=1", "--output-dir", dir.string()}).code == kExitConfig);
    CHECK(cli({"frobnicate"}).code == kExitConfig);
    CHECK(cli({}).code == kExitConfig);
    CHECK(cli({"resume", (dir / "missing.bin").string()}).code == kExitIo);
    CHECK(cli({"report", (dir / "missing.csv").string()}).code == kExitIo);
    CHECK(cli({"run", "--n", "16", "--set", "ic=random_band", "--set", "ic.k_max=4", "--set", "ic.u_rms=1e150", "--set", "ic.b_rms=1e150",
               "--t-end", "0.1", "--output-dir", (dir / "blowup").string()})
              .code == kExitNumerical);
    std::ofstream(dir / "nan.csv") << "t,a\n0,1\n0.1,nan\n";
    CHECK(cli({"report", (dir / "nan.csv").string()}).code == kExitPropertyViolation);
    CHECK(cli({"--help"}).code == kExitOk);
}
