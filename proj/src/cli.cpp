#include "wsn/cli.hpp"

#include <filesystem>
#include <fstream>

#include "wsn/engine.hpp"
#include "wsn/format.hpp"
#include "wsn/metrics.hpp"
#include "wsn/model.hpp"

#include <json.hpp>

namespace wsn {

namespace {

// Loads + validates, reporting violations on `err`. Returns nullopt and
// sets `code` on any failure.
std::optional<NetworkConfig> load_validated(const std::string& path,
                                            std::ostream& err, int& code) {
    ValidationResult issues;
    NetworkConfig cfg;
    try {
        cfg = load_config_file(path, issues);
    } catch (const nlohmann::json::parse_error& e) {
        err << "config parse error: " << e.what() << "\n";
        code = kExitConfig;
        return std::nullopt;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        code = kExitIo;
        return std::nullopt;
    }
    for (const auto& w : issues.warnings)
        err << "warning: " << w.field << ": " << w.message << "\n";
    if (!issues.ok()) {
        for (const auto& v : issues.violations)
            err << "config error: " << v.field << ": " << v.message << "\n";
        code = kExitConfig;
        return std::nullopt;
    }
    return cfg;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

void write_trace_files(const RunOutput& out, const std::string& dir) {
    write_text(dir + "/ledger.csv", ledger_csv(out.final_state.ledger));
    write_text(dir + "/deployment.csv", deployment_csv(out.final_state.deployment));
    write_text(dir + "/clusters.csv",
               "round,node,head,layer_of_head\n" + out.final_state.cluster_trace);
    write_text(dir + "/routes.csv",
               "round,head,next_hop,path_len\n" + out.final_state.route_trace);
}

}  // namespace

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    auto cfg = load_validated(opt.config_path, err, code);
    if (!cfg) return code;

    if (opt.seed) cfg->seed = *opt.seed;
    if (opt.protocol) {
        auto p = parse_protocol(*opt.protocol);
        if (!p) {
            err << "config error: protocol: unknown protocol '" << *opt.protocol
                << "' (expected leach or layered)\n";
            return kExitConfig;
        }
        cfg->protocol = *p;
    }

    try {
        RunOutput result = run_simulation(*cfg, opt.trace);
        write_reports(result.summary, result.reports, opt.out_dir,
                      protocol_name(cfg->protocol));
        if (opt.trace) write_trace_files(result, opt.out_dir);

        const SimulationSummary& s = result.summary;
        out << "protocol " << protocol_name(cfg->protocol) << ", seed "
            << cfg->seed << ": " << result.reports.size() << " rounds, fnd="
            << (s.fnd_round ? std::to_string(*s.fnd_round) : "-") << " hnd="
            << (s.hnd_round ? std::to_string(*s.hnd_round) : "-") << " lnd="
            << (s.lnd_round ? std::to_string(*s.lnd_round) : "-")
            << ", delivery_ratio=" << fmt_double(s.delivery_ratio) << "\n";
    } catch (const EngineInvariantViolation& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const RoutingLoopDetected& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    auto cfg = load_validated(opt.config_path, err, code);
    if (!cfg) return code;

    if (opt.seed) cfg->seed = *opt.seed;
    if (opt.seeds < 1) {
        err << "config error: seeds: must be >= 1\n";
        return kExitConfig;
    }

    std::vector<ProtocolVariant> variants;
    if (opt.protocols.empty()) {
        variants = default_variants(*cfg);
    } else {
        for (const std::string& token : opt.protocols) {
            auto v = parse_variant(token, *cfg);
            if (!v) {
                err << "config error: protocols: unknown protocol '" << token
                    << "' (expected leach, uniform or layered)\n";
                return kExitConfig;
            }
            variants.push_back(*v);
        }
    }

    std::vector<std::uint64_t> seeds;
    seeds.reserve(opt.seeds);
    for (int i = 0; i < opt.seeds; ++i)
        seeds.push_back(derive_seed(cfg->seed, static_cast<std::uint64_t>(i)));

    try {
        ComparisonTable table = compare_runs(*cfg, variants, seeds, opt.threads);
        write_comparison(table, opt.out_dir);
        for (const std::string& label : table.protocol_labels) {
            const ProtocolAggregate& a = table.aggregates.at(label);
            out << label << ": median fnd="
                << (a.median_fnd ? fmt_double(*a.median_fnd) : "-") << " lnd="
                << (a.median_lnd ? fmt_double(*a.median_lnd) : "-")
                << " delivery_ratio=" << fmt_double(a.median_delivery_ratio)
                << " ch_load_cv=" << fmt_double(a.median_ch_load_cv) << "\n";
        }
    } catch (const EngineInvariantViolation& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const RoutingLoopDetected& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace wsn
