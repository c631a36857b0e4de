#include "wsn/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wsn/engine.hpp"
#include "wsn/format.hpp"

namespace wsn {

SimulationSummary summarize(const std::vector<RoundReport>& reports, int node_count) {
    SimulationSummary s;
    if (reports.empty()) return s;

    double dissipated = 0.0;
    std::vector<double> head_joules;
    for (const RoundReport& r : reports) {
        if (!s.fnd_round && r.alive < node_count) s.fnd_round = r.round;
        if (!s.hnd_round && r.alive <= node_count / 2.0) s.hnd_round = r.round;
        if (!s.lnd_round && r.alive == 0) s.lnd_round = r.round;
        s.total_delivered += r.packets_delivered;
        s.total_generated += r.packets_generated;
        dissipated += r.dissipated_this_round;
        for (const auto& [head, load] : r.per_head_load)
            head_joules.push_back(load.joules);
    }
    s.delivery_ratio =
        s.total_generated > 0
            ? static_cast<double>(s.total_delivered) / static_cast<double>(s.total_generated)
            : 0.0;
    if (s.total_delivered > 0)
        s.joules_per_delivered_packet = dissipated / static_cast<double>(s.total_delivered);

    if (!head_joules.empty()) {
        double mean = 0.0;
        for (double j : head_joules) mean += j;
        mean /= static_cast<double>(head_joules.size());
        double var = 0.0;
        for (double j : head_joules) var += (j - mean) * (j - mean);
        var /= static_cast<double>(head_joules.size());
        s.ch_load_cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    }
    return s;
}

std::vector<ProtocolVariant> default_variants(const NetworkConfig& cfg) {
    return {{"leach", ProtocolChoice::Leach, std::nullopt},
            {"uniform", ProtocolChoice::Layered, 0.0},
            {"layered", ProtocolChoice::Layered, cfg.proto.c_unequal}};
}

std::optional<ProtocolVariant> parse_variant(const std::string& token,
                                             const NetworkConfig& cfg) {
    if (token == "leach") return ProtocolVariant{"leach", ProtocolChoice::Leach, std::nullopt};
    if (token == "uniform") return ProtocolVariant{"uniform", ProtocolChoice::Layered, 0.0};
    if (token == "layered")
        return ProtocolVariant{"layered", ProtocolChoice::Layered, cfg.proto.c_unequal};
    return std::nullopt;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Metric views used for medians and win rates. Unset lifetimes read as
// +inf (the network outlived the run); missing cost-per-packet as +inf.
double fnd_value(const SimulationSummary& s) { return s.fnd_round ? *s.fnd_round : kInf; }
double lnd_value(const SimulationSummary& s) { return s.lnd_round ? *s.lnd_round : kInf; }
double jpp_value(const SimulationSummary& s) {
    return s.joules_per_delivered_packet ? *s.joules_per_delivered_packet : kInf;
}

double median(std::vector<double> v) {
    if (v.empty()) return kInf;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::optional<double> finite_or_unset(double v) {
    if (std::isinf(v)) return std::nullopt;
    return v;
}

}  // namespace

ComparisonTable compare_runs(const NetworkConfig& cfg,
                             const std::vector<ProtocolVariant>& variants,
                             const std::vector<std::uint64_t>& seeds,
                             int threads) {
    if (variants.empty() || seeds.empty())
        throw std::invalid_argument("compare_runs: need at least one protocol and one seed");

    struct Job {
        std::size_t variant;
        std::size_t seed_index;
    };
    std::vector<Job> jobs;
    for (std::size_t v = 0; v < variants.size(); ++v)
        for (std::size_t i = 0; i < seeds.size(); ++i)
            jobs.push_back({v, i});

    ComparisonTable table;
    for (const ProtocolVariant& v : variants) table.protocol_labels.push_back(v.label);
    table.seeds = seeds;
    table.cells.resize(jobs.size());
    std::vector<std::vector<RoundReport>> first_seed_reports(variants.size());
    std::vector<std::string> errors(jobs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job& job = jobs[j];
            const ProtocolVariant& variant = variants[job.variant];

            NetworkConfig run_cfg = cfg;
            run_cfg.protocol = variant.protocol;
            if (variant.c_unequal) run_cfg.proto.c_unequal = *variant.c_unequal;
            run_cfg.seed = seeds[job.seed_index];
            try {
                RunOutput out = run_simulation(run_cfg);
                table.cells[j] = {variant.label, run_cfg.seed, out.summary};
                if (job.seed_index == 0)
                    first_seed_reports[job.variant] = std::move(out.reports);
            } catch (const std::exception& e) {
                errors[j] = "(" + variant.label + ", seed " +
                            std::to_string(run_cfg.seed) + "): " + e.what();
            }
        }
    };

    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, static_cast<int>(jobs.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (const std::string& e : errors)
        if (!e.empty()) throw std::runtime_error("compare_runs " + e);

    for (std::size_t v = 0; v < variants.size(); ++v)
        table.chart_series[variants[v].label] = std::move(first_seed_reports[v]);

    // per-protocol metric vectors, seed-aligned
    const std::size_t nv = variants.size();
    const std::size_t ns = seeds.size();
    auto cell = [&](std::size_t v, std::size_t i) -> const SimulationSummary& {
        return table.cells[v * ns + i].summary;
    };

    struct MetricDef {
        double (*value)(const SimulationSummary&);
        bool higher_better;
    };
    const MetricDef defs[] = {
        {fnd_value, true},
        {lnd_value, true},
        {[](const SimulationSummary& s) { return s.delivery_ratio; }, true},
        {jpp_value, false},
        {[](const SimulationSummary& s) { return s.ch_load_cv; }, false},
    };

    for (std::size_t v = 0; v < nv; ++v) {
        ProtocolAggregate agg;
        double medians[5];
        double wins[5];
        for (int metric = 0; metric < 5; ++metric) {
            std::vector<double> values;
            values.reserve(ns);
            int win_count = 0;
            for (std::size_t i = 0; i < ns; ++i) {
                const double mine = defs[metric].value(cell(v, i));
                values.push_back(mine);
                bool beats_all = true;
                for (std::size_t o = 0; o < nv && beats_all; ++o) {
                    if (o == v) continue;
                    const double theirs = defs[metric].value(cell(o, i));
                    beats_all = defs[metric].higher_better ? mine > theirs
                                                           : mine < theirs;
                }
                if (beats_all) ++win_count;
            }
            medians[metric] = median(values);
            wins[metric] = static_cast<double>(win_count) / static_cast<double>(ns);
        }
        agg.median_fnd = finite_or_unset(medians[0]);
        agg.median_lnd = finite_or_unset(medians[1]);
        agg.median_delivery_ratio = medians[2];
        agg.median_joules_per_packet = finite_or_unset(medians[3]);
        agg.median_ch_load_cv = medians[4];
        agg.win_fnd = wins[0];
        agg.win_lnd = wins[1];
        agg.win_delivery_ratio = wins[2];
        agg.win_joules_per_packet = wins[3];
        agg.win_ch_load_cv = wins[4];
        table.aggregates[variants[v].label] = agg;
    }
    return table;
}

namespace {

std::string opt_int(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string opt_double(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string rounds_csv(const std::vector<RoundReport>& reports) {
    std::ostringstream out;
    out << "round,alive,residual_j,dissipated_j,delivered,generated,head_count\n";
    for (const RoundReport& r : reports)
        out << r.round << ',' << r.alive << ',' << fmt_double(r.residual_total)
            << ',' << fmt_double(r.dissipated_this_round) << ','
            << r.packets_delivered << ',' << r.packets_generated << ','
            << r.head_count << '\n';
    return out.str();
}

std::string summary_csv(const SimulationSummary& s) {
    std::ostringstream out;
    out << "fnd_round,hnd_round,lnd_round,total_delivered,total_generated,"
           "delivery_ratio,joules_per_delivered_packet,ch_load_cv\n";
    out << opt_int(s.fnd_round) << ',' << opt_int(s.hnd_round) << ','
        << opt_int(s.lnd_round) << ',' << s.total_delivered << ','
        << s.total_generated << ',' << fmt_double(s.delivery_ratio) << ','
        << opt_double(s.joules_per_delivered_packet) << ','
        << fmt_double(s.ch_load_cv) << '\n';
    return out.str();
}

std::string comparison_csv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "kind,protocol,seed,fnd,hnd,lnd,total_delivered,total_generated,"
           "delivery_ratio,joules_per_delivered_packet,ch_load_cv\n";
    for (const RunCell& c : table.cells) {
        const SimulationSummary& s = c.summary;
        out << "run," << c.protocol << ',' << c.seed << ',' << opt_int(s.fnd_round)
            << ',' << opt_int(s.hnd_round) << ',' << opt_int(s.lnd_round) << ','
            << s.total_delivered << ',' << s.total_generated << ','
            << fmt_double(s.delivery_ratio) << ','
            << opt_double(s.joules_per_delivered_packet) << ','
            << fmt_double(s.ch_load_cv) << '\n';
    }
    for (const std::string& label : table.protocol_labels) {
        const ProtocolAggregate& a = table.aggregates.at(label);
        out << "median," << label << ",," << opt_double(a.median_fnd) << ",,"
            << opt_double(a.median_lnd) << ",,,"
            << fmt_double(a.median_delivery_ratio) << ','
            << opt_double(a.median_joules_per_packet) << ','
            << fmt_double(a.median_ch_load_cv) << '\n';
    }
    for (const std::string& label : table.protocol_labels) {
        const ProtocolAggregate& a = table.aggregates.at(label);
        out << "win_rate," << label << ",," << fmt_double(a.win_fnd) << ",,"
            << fmt_double(a.win_lnd) << ",,," << fmt_double(a.win_delivery_ratio)
            << ',' << fmt_double(a.win_joules_per_packet) << ','
            << fmt_double(a.win_ch_load_cv) << '\n';
    }
    return out.str();
}

std::string line_chart_svg(
    const std::string& title, const std::string& y_label,
    const std::map<std::string, std::vector<std::pair<double, double>>>& series) {
    constexpr double W = 720, H = 440;
    constexpr double ML = 70, MR = 20, MT = 40, MB = 45;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& [label, pts] : series) {
        for (const auto& [x, y] : pts) {
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    svg << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
        << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML
        << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           "round</text>\n";
    svg << "<text x=\"18\" y=\"" << (MT + H - MB) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 18 " << (MT + H - MB) / 2 << ")\">" << y_label
        << "</text>\n";
    // min/max tick labels
    svg << "<text x=\"" << ML << "\" y=\"" << H - MB + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_double(xmin) << "</text>\n";
    svg << "<text x=\"" << W - MR << "\" y=\"" << H - MB + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_double(xmax) << "</text>\n";
    svg << "<text x=\"" << ML - 6 << "\" y=\"" << H - MB + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_double(ymin) << "</text>\n";
    svg << "<text x=\"" << ML - 6 << "\" y=\"" << MT + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_double(ymax) << "</text>\n";

    int color = 0;
    double legend_y = MT + 6;
    for (const auto& [label, pts] : series) {
        const char* stroke = palette[color % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts)
            svg << fmt_double(px(x)) << ',' << fmt_double(py(y)) << ' ';
        svg << "\"/>\n";
        svg << "<line x1=\"" << W - MR - 130 << "\" y1=\"" << legend_y
            << "\" x2=\"" << W - MR - 110 << "\" y2=\"" << legend_y
            << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << W - MR - 104 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << label
            << "</text>\n";
        legend_y += 18;
        ++color;
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace {

std::map<std::string, std::vector<std::pair<double, double>>> chart_points(
    const std::map<std::string, std::vector<RoundReport>>& by_label, bool alive) {
    std::map<std::string, std::vector<std::pair<double, double>>> out;
    for (const auto& [label, reports] : by_label) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(reports.size());
        for (const RoundReport& r : reports)
            pts.emplace_back(static_cast<double>(r.round),
                             alive ? static_cast<double>(r.alive) : r.residual_total);
        out[label] = std::move(pts);
    }
    return out;
}

}  // namespace

void write_reports(const SimulationSummary& summary,
                   const std::vector<RoundReport>& reports,
                   const std::string& out_dir, const std::string& series_label) {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/rounds.csv", rounds_csv(reports));
    write_text_file(out_dir + "/summary.csv", summary_csv(summary));
    if (!reports.empty()) {
        std::map<std::string, std::vector<RoundReport>> one{{series_label, reports}};
        write_text_file(out_dir + "/alive.svg",
                        line_chart_svg("Alive nodes per round", "alive nodes",
                                       chart_points(one, true)));
        write_text_file(out_dir + "/residual.svg",
                        line_chart_svg("Total residual energy per round", "joules",
                                       chart_points(one, false)));
    }
}

void write_comparison(const ComparisonTable& table, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/comparison.csv", comparison_csv(table));
    write_text_file(out_dir + "/alive.svg",
                    line_chart_svg("Alive nodes per round", "alive nodes",
                                   chart_points(table.chart_series, true)));
    write_text_file(out_dir + "/residual.svg",
                    line_chart_svg("Total residual energy per round", "joules",
                                   chart_points(table.chart_series, false)));
}

}  // namespace wsn
