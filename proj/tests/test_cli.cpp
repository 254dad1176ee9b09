#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "equical/cli.hpp"
#include "equical/tables.hpp"

using namespace equical;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& body)
        : path("cli_test_" + name) {
        write_file(path, body);
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kBaseCdpSpec = R"({
  "schema": "equical/1",
  "type": "cdp",
  "phase2": {"p_soc": 0.55, "p_inv": 0.75, "alpha": 0.10, "power": 0.80},
  "phase3": {"fwer": 0.05, "hr_alt": 0.7, "soc_median_months": 10,
             "info_fractions": [0.7, 1.0], "power": 0.90}
})";

const char* kGsSpec = R"({
  "schema": "equical/1",
  "type": "gs",
  "fwer": 0.05, "hr_alt": 0.7, "soc_median_months": 10,
  "info_fractions": [0.7, 1.0],
  "n_total": 680, "event_fractions": [0.36, 0.52], "power": 0.90
})";

}  // namespace

TEST_CASE("reproduce writes deterministic csv files") {
    for (const std::string target :
         {"table1", "table2", "table3", "table4", "figure1"}) {
        std::string path = "cli_out_" + target + ".csv";
        CliResult first = run({"reproduce", target, "--out", path});
        CHECK(first.code == 0);
        std::string body = read_file(path);
        CHECK_FALSE(body.empty());

        CliResult second = run({"reproduce", target, "--out", path});
        CHECK(second.code == 0);
        CHECK(read_file(path) == body);
        std::remove(path.c_str());
    }

    CliResult t1 = run({"reproduce", "table1", "--out", "cli_out_t1.csv"});
    CHECK(t1.code == 0);
    CHECK(read_file("cli_out_t1.csv") == table1_csv());
    std::remove("cli_out_t1.csv");
}

TEST_CASE("reproduce error paths") {
    CliResult unknown = run({"reproduce", "table9"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown") != std::string::npos);

    CliResult bad_path = run({"reproduce", "table1", "--out", "/no/such/dir/x.csv"});
    CHECK(bad_path.code == 3);
}

TEST_CASE("eval reports the base CDP odds") {
    TempFile spec("base_cdp.json", kBaseCdpSpec);
    CliResult res = run({"eval", "--spec", spec.path});
    CHECK(res.code == 0);
    // r01(-2,-3) = 4.5 * 9.5 = 42.75, displayed as 43.
    CHECK(res.out.find("r01(-2,-3): 43") != std::string::npos);
    CHECK(res.out.find("r10(+2,+3)") != std::string::npos);
}

TEST_CASE("eval reports the group-sequential negative odds") {
    TempFile spec("gs.json", kGsSpec);
    CliResult res = run({"eval", "--spec", spec.path});
    CHECK(res.code == 0);
    CHECK(res.out.find("negative: r01 = 9.5") != std::string::npos);
    CHECK(res.out.find("HR CV") != std::string::npos);
}

TEST_CASE("eval flags anti-informative outcomes and still succeeds") {
    TempFile spec("anti.json", R"({
      "schema": "equical/1", "type": "two_prop",
      "p_soc": 0.60, "p_inv": 0.50, "alpha": 0.10, "n_per_arm": 50
    })");
    CliResult res = run({"eval", "--spec", spec.path});
    CHECK(res.code == 0);
    CHECK(res.out.find("anti-informative") != std::string::npos);
}

TEST_CASE("eval appends simulation columns on request") {
    TempFile spec("sim.json", R"({
      "schema": "equical/1", "type": "two_prop",
      "p_soc": 0.55, "p_inv": 0.75, "alpha": 0.10, "power": 0.80
    })");
    CliResult res = run({"eval", "--spec", spec.path, "--simulate", "2000",
                         "--seed", "7"});
    CHECK(res.code == 0);
    CHECK(res.out.find("simulation (2000 replicates, seed 7)") != std::string::npos);
    CHECK(res.out.find("rejection under null") != std::string::npos);

    // Same seed, same appended numbers.
    CliResult again = run({"eval", "--spec", spec.path, "--simulate", "2000",
                           "--seed", "7"});
    CHECK(again.out == res.out);
}

TEST_CASE("eval validation failures exit with the usage code") {
    TempFile unknown_key("bad_key.json", R"({
      "schema": "equical/1", "type": "gs",
      "fwer": 0.05, "hr_alt": 0.7, "soc_median_months": 10,
      "info_fractions": [0.7, 1.0], "power": 0.90, "accrual": 24
    })");
    CliResult res = run({"eval", "--spec", unknown_key.path});
    CHECK(res.code == 2);
    CHECK(res.err.find("accrual") != std::string::npos);

    TempFile bad_prob("bad_prob.json", R"({
      "schema": "equical/1", "type": "two_prop",
      "p_soc": 0.55, "p_inv": 1.75, "alpha": 0.10, "power": 0.80
    })");
    CHECK(run({"eval", "--spec", bad_prob.path}).code == 2);

    TempFile bad_schema("bad_schema.json", R"({"schema": "other", "type": "gs"})");
    CHECK(run({"eval", "--spec", bad_schema.path}).code == 2);

    TempFile not_json("not.json", "{ this is not json");
    CHECK(run({"eval", "--spec", not_json.path}).code == 2);

    CHECK(run({"eval", "--spec", "missing_file.json"}).code == 3);
}

TEST_CASE("calibrate worked examples") {
    CliResult bp11_res = run({"calibrate", "--model", "bp11", "--percentile",
                              "0.95", "--alpha", "0.05"});
    CHECK(bp11_res.code == 0);
    CHECK(bp11_res.out.find("required power") != std::string::npos);
    CHECK(bp11_res.out.find("95.00%") != std::string::npos);

    CliResult infeasible = run({"calibrate", "--model", "bp0505", "--percentile",
                                "0.95", "--alpha", "0.05"});
    CHECK(infeasible.code == 0);
    CHECK(infeasible.out.find("INFEASIBLE") != std::string::npos);
    CHECK(infeasible.out.find("0.62%") != std::string::npos);

    CliResult median = run({"calibrate", "--model", "bp11", "--percentile", "0.5",
                            "--alpha", "0.05"});
    CHECK(median.code == 0);
    CHECK(median.out.find("5.00%") != std::string::npos);

    CliResult max_a = run({"calibrate", "--model", "bp12", "--percentile", "0.95",
                           "--power", "1.0"});
    CHECK(max_a.code == 0);
    CHECK(max_a.out.find("max alpha") != std::string::npos);
    CHECK(max_a.out.find("28.80%") != std::string::npos);
}

TEST_CASE("calibrate usage errors") {
    CHECK(run({"calibrate", "--model", "bp11", "--percentile", "0.95", "--alpha",
               "0.05", "--power", "0.9"})
              .code == 2);
    CHECK(run({"calibrate", "--model", "bp11", "--percentile", "0.95"}).code == 2);
    CHECK(run({"calibrate", "--model", "nope", "--percentile", "0.95", "--alpha",
               "0.05"})
              .code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}
