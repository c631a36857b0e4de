#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace wsn {

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct RunOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;     // flag > file > default
    std::optional<std::string> protocol;   // "leach" | "layered"
    std::string out_dir = "./out";
    bool trace = false;
};

struct CompareOptions {
    std::string config_path;
    int seeds = 1;
    std::vector<std::string> protocols;    // empty -> leach,uniform,layered
    std::string out_dir = "./out";
    std::optional<std::uint64_t> seed;     // base seed override
    int threads = 0;                       // 0 -> hardware concurrency
};

// The CLI is a shell over these; they never touch argv or call exit().
int cmd_run(const RunOptions& opt, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);
int cmd_compare(const CompareOptions& opt, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

}  // namespace wsn
