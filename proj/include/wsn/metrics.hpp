#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsn/model.hpp"

namespace wsn {

struct HeadLoad {
    int members = 0;          // excluding the head itself
    int relayed_packets = 0;  // aggregates forwarded for other clusters
    double joules = 0.0;      // everything this head spent this round
};

struct RoundReport {
    int round = 0;
    int alive = 0;
    double residual_total = 0.0;
    double dissipated_this_round = 0.0;
    std::int64_t packets_delivered = 0; // this round
    std::int64_t packets_generated = 0; // this round
    int head_count = 0;
    std::map<int, double> per_layer_mean_cluster_size;
    std::map<int, HeadLoad> per_head_load;
};

struct SimulationSummary {
    std::optional<int> fnd_round;
    std::optional<int> hnd_round;
    std::optional<int> lnd_round;
    std::int64_t total_delivered = 0;
    std::int64_t total_generated = 0;
    double delivery_ratio = 0.0;
    std::optional<double> joules_per_delivered_packet;
    double ch_load_cv = 0.0; // CV of per-head joules across all rounds
};

// Milestones scanned off the alive series: first round alive < N, first
// alive <= N/2, first alive == 0. Empty input leaves everything unset.
SimulationSummary summarize(const std::vector<RoundReport>& reports, int node_count);

// A protocol column of the comparison: LEACH, or LAYERED with an
// optional c_unequal override ("uniform" = LAYERED with c = 0).
struct ProtocolVariant {
    std::string label;
    ProtocolChoice protocol = ProtocolChoice::Layered;
    std::optional<double> c_unequal;
};

std::vector<ProtocolVariant> default_variants(const NetworkConfig& cfg);
std::optional<ProtocolVariant> parse_variant(const std::string& token,
                                             const NetworkConfig& cfg);

struct RunCell {
    std::string protocol;
    std::uint64_t seed = 0;
    SimulationSummary summary;
};

// Medians and strict-win rates per metric. Lifetime metrics treat an
// unset milestone as "outlived the run" (best possible).
struct ProtocolAggregate {
    std::optional<double> median_fnd;
    std::optional<double> median_lnd;
    double median_delivery_ratio = 0.0;
    std::optional<double> median_joules_per_packet;
    double median_ch_load_cv = 0.0;
    double win_fnd = 0.0;
    double win_lnd = 0.0;
    double win_delivery_ratio = 0.0;
    double win_joules_per_packet = 0.0;
    double win_ch_load_cv = 0.0;
};

struct ComparisonTable {
    std::vector<std::string> protocol_labels;
    std::vector<std::uint64_t> seeds;
    std::vector<RunCell> cells; // protocol-major, seed-minor
    std::map<std::string, ProtocolAggregate> aggregates;
    // first seed's per-round series per protocol, for the charts
    std::map<std::string, std::vector<RoundReport>> chart_series;
};

// Runs every (variant, seed) pair, fanning out across threads; results
// are merged by (protocol, seed) so scheduling cannot affect output.
ComparisonTable compare_runs(const NetworkConfig& cfg,
                             const std::vector<ProtocolVariant>& variants,
                             const std::vector<std::uint64_t>& seeds,
                             int threads = 0);

// rounds.csv + summary.csv + alive.svg + residual.svg
void write_reports(const SimulationSummary& summary,
                   const std::vector<RoundReport>& reports,
                   const std::string& out_dir, const std::string& series_label);

// comparison.csv + charts over the per-protocol series
void write_comparison(const ComparisonTable& table, const std::string& out_dir);

std::string rounds_csv(const std::vector<RoundReport>& reports);
std::string summary_csv(const SimulationSummary& summary);
std::string comparison_csv(const ComparisonTable& table);
std::string line_chart_svg(const std::string& title, const std::string& y_label,
                           const std::map<std::string, std::vector<std::pair<double, double>>>& series);

}  // namespace wsn
