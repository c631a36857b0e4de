#include <CLI11.hpp>

#include "wsn/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Round-based clustered wireless sensor network simulator"};
    app.require_subcommand(1);

    wsn::RunOptions run_opt;
    std::uint64_t run_seed = 0;
    std::string run_protocol;
    CLI::App* run = app.add_subcommand("run", "Run one simulation");
    run->add_option("--config", run_opt.config_path, "JSON scenario file")->required();
    CLI::Option* seed_flag = run->add_option("--seed", run_seed, "Seed override");
    CLI::Option* proto_flag =
        run->add_option("--protocol", run_protocol, "Protocol override (leach|layered)");
    run->add_option("--out", run_opt.out_dir, "Output directory (default ./out)");
    run->add_flag("--trace", run_opt.trace,
                  "Also write ledger.csv, deployment.csv, clusters.csv, routes.csv");

    wsn::CompareOptions cmp_opt;
    std::uint64_t cmp_seed = 0;
    std::string cmp_protocols;
    CLI::App* cmp = app.add_subcommand("compare", "Compare protocols across seeds");
    cmp->add_option("--config", cmp_opt.config_path, "JSON scenario file")->required();
    cmp->add_option("--seeds", cmp_opt.seeds, "Number of seeds")->required();
    CLI::Option* protos_flag = cmp->add_option(
        "--protocols", cmp_protocols, "Comma-separated: leach,uniform,layered");
    cmp->add_option("--out", cmp_opt.out_dir, "Output directory (default ./out)");
    CLI::Option* base_flag = cmp->add_option("--seed", cmp_seed, "Base seed override");
    cmp->add_option("--threads", cmp_opt.threads, "Worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? wsn::kExitOk : wsn::kExitConfig;
    }

    if (run->parsed()) {
        if (*seed_flag) run_opt.seed = run_seed;
        if (*proto_flag) run_opt.protocol = run_protocol;
        return wsn::cmd_run(run_opt);
    }

    if (*base_flag) cmp_opt.seed = cmp_seed;
    if (*protos_flag) {
        std::stringstream ss(cmp_protocols);
        std::string token;
        while (std::getline(ss, token, ','))
            if (!token.empty()) cmp_opt.protocols.push_back(token);
    }
    return wsn::cmd_compare(cmp_opt);
}
