#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wsn/cli.hpp"
#include "wsn/model.hpp"

using namespace wsn;

namespace {

struct TempDir {
    std::string path;
    explicit TempDir(std::string p) : path(std::move(p)) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::string write_config(const std::string& dir, const std::string& body) {
    const std::string path = dir + "/config.json";
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("cmd_run writes reports and exits 0") {
    TempDir dir("test_out_cli_run");
    RunOptions opt;
    opt.config_path = write_config(dir.path, R"({"max_rounds": 20})");
    opt.out_dir = dir.path + "/out";

    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitOk);
    CHECK(std::filesystem::exists(opt.out_dir + "/rounds.csv"));
    CHECK(std::filesystem::exists(opt.out_dir + "/summary.csv"));
    CHECK(!std::filesystem::exists(opt.out_dir + "/ledger.csv"));
    CHECK(out.str().find("layered") != std::string::npos);
}

TEST_CASE("trace adds the ledger and topology dumps") {
    TempDir dir("test_out_cli_trace");
    RunOptions opt;
    opt.config_path = write_config(dir.path, R"({"max_rounds": 5})");
    opt.out_dir = dir.path + "/out";
    opt.trace = true;

    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitOk);
    CHECK(std::filesystem::exists(opt.out_dir + "/ledger.csv"));
    CHECK(std::filesystem::exists(opt.out_dir + "/deployment.csv"));
    CHECK(std::filesystem::exists(opt.out_dir + "/clusters.csv"));
    CHECK(std::filesystem::exists(opt.out_dir + "/routes.csv"));

    const std::string ledger = slurp(opt.out_dir + "/ledger.csv");
    CHECK(ledger.rfind("round,node,action,bits,distance_m,joules\n", 0) == 0);
}

TEST_CASE("flag overrides beat file values") {
    TempDir dir("test_out_cli_override");
    RunOptions opt;
    opt.config_path = write_config(
        dir.path, R"({"max_rounds": 10, "protocol": "layered", "seed": 5})");
    opt.out_dir = dir.path + "/out";
    opt.protocol = "leach";
    opt.seed = 99;

    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitOk);
    CHECK(out.str().find("protocol leach, seed 99") != std::string::npos);
}

TEST_CASE("malformed json exits 2 with position info") {
    TempDir dir("test_out_cli_badjson");
    RunOptions opt;
    opt.config_path = write_config(dir.path, "{ \"node_count\": \n oops }");
    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitConfig);
    CHECK(err.str().find("parse error") != std::string::npos);
    CHECK(err.str().find("line") != std::string::npos);
}

TEST_CASE("validation failure exits 2 naming the field") {
    TempDir dir("test_out_cli_badfield");
    RunOptions opt;
    opt.config_path = write_config(dir.path, R"({"node_count": 0})");
    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitConfig);
    CHECK(err.str().find("node_count") != std::string::npos);
}

TEST_CASE("unknown key exits 2 naming the key") {
    TempDir dir("test_out_cli_unknown");
    RunOptions opt;
    opt.config_path = write_config(dir.path, R"({"node_cuont": 50})");
    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitConfig);
    CHECK(err.str().find("node_cuont") != std::string::npos);
}

TEST_CASE("missing config file exits 1") {
    RunOptions opt;
    opt.config_path = "does_not_exist_anywhere.json";
    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitIo);
}

TEST_CASE("bad protocol override exits 2") {
    TempDir dir("test_out_cli_badproto");
    RunOptions opt;
    opt.config_path = write_config(dir.path, "{}");
    opt.protocol = "heed";
    std::ostringstream out, err;
    CHECK(cmd_run(opt, out, err) == kExitConfig);
    CHECK(err.str().find("protocol") != std::string::npos);
}

TEST_CASE("cmd_compare writes the comparison artifacts") {
    TempDir dir("test_out_cli_compare");
    CompareOptions opt;
    opt.config_path = write_config(dir.path, R"({"max_rounds": 15})");
    opt.out_dir = dir.path + "/out";
    opt.seeds = 2;

    std::ostringstream out, err;
    CHECK(cmd_compare(opt, out, err) == kExitOk);
    CHECK(std::filesystem::exists(opt.out_dir + "/comparison.csv"));
    CHECK(std::filesystem::exists(opt.out_dir + "/alive.svg"));
    CHECK(std::filesystem::exists(opt.out_dir + "/residual.svg"));
    CHECK(out.str().find("leach") != std::string::npos);
    CHECK(out.str().find("uniform") != std::string::npos);
    CHECK(out.str().find("layered") != std::string::npos);
}

TEST_CASE("cmd_compare with one protocol and one seed") {
    TempDir dir("test_out_cli_compare1");
    CompareOptions opt;
    opt.config_path = write_config(dir.path, R"({"max_rounds": 15})");
    opt.out_dir = dir.path + "/out";
    opt.seeds = 1;
    opt.protocols = {"leach"};

    std::ostringstream out, err;
    CHECK(cmd_compare(opt, out, err) == kExitOk);
    const std::string csv = slurp(opt.out_dir + "/comparison.csv");
    CHECK(csv.find("run,leach,") != std::string::npos);
    CHECK(csv.find("uniform") == std::string::npos);
}

TEST_CASE("cmd_compare rejects unknown protocol tokens") {
    TempDir dir("test_out_cli_compare_bad");
    CompareOptions opt;
    opt.config_path = write_config(dir.path, "{}");
    opt.seeds = 1;
    opt.protocols = {"pegasis"};
    std::ostringstream out, err;
    CHECK(cmd_compare(opt, out, err) == kExitConfig);
}

TEST_CASE("two identical runs are byte-identical on disk") {
    TempDir dir("test_out_cli_determinism");
    const std::string cfg_path =
        write_config(dir.path, R"({"max_rounds": 25, "seed": 7})");

    for (const char* sub : {"/a", "/b"}) {
        RunOptions opt;
        opt.config_path = cfg_path;
        opt.out_dir = dir.path + sub;
        opt.trace = true;
        std::ostringstream out, err;
        REQUIRE(cmd_run(opt, out, err) == kExitOk);
    }
    CHECK(slurp(dir.path + "/a/rounds.csv") == slurp(dir.path + "/b/rounds.csv"));
    CHECK(slurp(dir.path + "/a/summary.csv") == slurp(dir.path + "/b/summary.csv"));
    CHECK(slurp(dir.path + "/a/ledger.csv") == slurp(dir.path + "/b/ledger.csv"));
}
