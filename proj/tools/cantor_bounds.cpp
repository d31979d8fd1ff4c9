// Command-line driver: certified upper/lower bounds on the s_d-dimensional
// Hausdorff measure of the d-fold Cantor-set power, plus table and plot-data
// emitters over the result cache.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cantor/records.hpp"

namespace {

using namespace cantor;

// displayed precision stays inside the accumulated rounding budget
constexpr int kDisplayDigits = 13;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

int run_upper(int d, int k, const EngineOptions& opts, bool no_cache) {
    Timer timer;
    const DistanceHistogram hist = build_histogram(d, k, opts);
    const BoundResult res = upper_bound(hist);

    std::cout << std::setprecision(kDisplayDigits);
    std::cout << "upper bound H^{s_" << d << "}(C^" << d << ") <= " << res.value << "  (d=" << d
              << ", k=" << k << ")\n";
    if (res.witness) {
        const double r = std::sqrt(res.witness->diameter_sq.to_double()) / 2;
        std::cout << "  witness radius = " << r << " (diameter^2 = "
                  << res.witness->diameter_sq.str() << "), covered cubes N = "
                  << res.witness->covered << ", mu_low = " << res.witness->mu_low.str() << "\n";
    }
    std::cout << "  enumerated " << hist.total_count() << " corners, " << timer.ms() << " ms\n";

    RunRecord rec;
    rec.command = "upper";
    rec.d = d;
    rec.k = k;
    rec.flags = json{{"max_enum", opts.max_enum},
                     {"method", opts.method == HistMethod::Direct    ? "direct"
                                : opts.method == HistMethod::Convolve ? "convolve"
                                                                      : "auto"}};
    rec.result = bound_to_json(res);
    rec.wall_time_ms = timer.ms();
    rec.enumeration_count = hist.total_count();
    if (!no_cache) write_cache(rec);
    return 0;
}

void print_chain(const LowerBoundChain& chain) {
    std::cout << std::setprecision(kDisplayDigits);
    std::cout << "  step  threshold^2   mu_min        cap          classes\n";
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& s = chain.steps[i];
        std::cout << "  " << std::setw(4) << i + 1 << "  " << std::setw(11) << s.threshold_sq.str()
                  << "  " << std::setw(12) << s.mu_min << "  " << std::setw(11) << s.cap.str()
                  << "  ";
        for (const auto& c : s.assumed_classes) {
            std::cout << "{";
            for (std::size_t t = 0; t < c.size(); ++t) std::cout << (t ? "," : "") << c[t];
            std::cout << "}";
        }
        std::cout << "\n";
    }
}

int run_lower(int d, int k, const std::string& upper_flag, const std::string& seed_flag,
              bool replay, bool no_cache) {
    // resolve the upper bound: explicit value, or best cached run for this d
    BoundResult upper;
    upper.direction = BoundResult::Direction::Upper;
    upper.d = d;
    upper.certified = true;
    if (upper_flag == "auto") {
        bool found = false;
        for (int kk = 1; kk <= 30; ++kk) {
            if (auto j = read_cache("upper", d, kk)) {
                const double v = (*j)["result"]["value"].get<double>();
                if (!found || v < upper.value) {
                    upper.value = v;
                    upper.k = kk;
                    found = true;
                }
            }
        }
        if (!found) {
            std::cerr << "lower: no cached upper bound for d=" << d
                      << "; run `upper` first or pass --upper-bound\n";
            return 1;
        }
    } else {
        upper.value = std::stod(upper_flag);
        upper.k = 0;
    }

    Timer timer;
    RunRecord rec;
    rec.command = "lower";
    rec.d = d;
    rec.k = k;
    rec.flags = json{{"upper_bound", upper.value},
                     {"seed", seed_flag},
                     {"replay", replay}};

    LowerBoundChain chain;
    try {
        if (replay) {
            if (d != 3) {
                std::cerr << "lower: --replay is defined for --dim 3 only\n";
                return 1;
            }
            chain = replay_d3(upper);
        } else {
            const SeedRule seed =
                seed_flag == "1/3" ? SeedRule::OneThird : SeedRule::FiveNinths;
            chain = refine_lower_bound(d, k, upper, seed);
        }
    } catch (const ReplayError& e) {
        std::cout << std::setprecision(kDisplayDigits);
        std::cout << "replay verification FAILED at step " << e.step << ":\n  " << e.what()
                  << "\n";
        std::cout << "verified prefix (certified through the last accepted threshold):\n";
        print_chain(e.partial);
        std::cout << "  certified lower bound from the verified prefix: " << e.partial.final_value
                  << "  (diameter^2 = " << e.partial.final_sq.str() << ", mu <= 1)\n";
        rec.result = chain_to_json(e.partial);
        rec.result["replay_failed_step"] = e.step;
        rec.result["replay_failure"] = e.what();
        rec.wall_time_ms = timer.ms();
        if (!no_cache) write_cache(rec);
        return 3;
    }

    std::cout << std::setprecision(kDisplayDigits);
    std::cout << "lower bound H^{s_" << d << "}(C^" << d << ") >= " << chain.final_value
              << "  (d=" << d << ", k=" << k << ", diameter^2 = " << chain.final_sq.str()
              << ")\n";
    print_chain(chain);
    if (!chain.note.empty()) std::cout << "  note: " << chain.note << "\n";
    std::cout << "  " << timer.ms() << " ms\n";

    rec.result = chain_to_json(chain);
    rec.wall_time_ms = timer.ms();
    if (!no_cache) write_cache(rec);
    return 0;
}

int run_naive(int d_max, bool no_cache) {
    Timer timer;
    std::cout << std::setprecision(kDisplayDigits);
    std::cout << "   d          s_d               naive upper d^(s_d/2)\n";
    json rows = json::array();
    for (int d = 1; d <= d_max; ++d) {
        const double s = dimension(d);
        const double nv = naive_upper(d);
        std::cout << std::setw(4) << d << "  " << std::setw(18) << s << "  " << std::setw(18) << nv
                  << "\n";
        rows.push_back(json{{"d", d}, {"s_d", s}, {"naive", nv}});
    }
    RunRecord rec;
    rec.command = "naive";
    rec.d = d_max;
    rec.k = 0;
    rec.result = json{{"rows", rows}};
    rec.wall_time_ms = timer.ms();
    if (!no_cache) write_cache(rec);
    return 0;
}

int run_report(const std::string& format) {
    struct Row {
        double best_upper = 0;
        int k_upper = -1;
        double best_lower = 0;
        int k_lower = -1;
    };
    std::map<int, Row> rows;
    const auto dir = cache_dir();
    if (std::filesystem::exists(dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (entry.path().extension() != ".json") continue;
            std::ifstream in(entry.path());
            json j;
            try {
                in >> j;
            } catch (...) {
                continue;
            }
            if (!j.contains("command") || !j.contains("result")) continue;
            const std::string cmd = j["command"].get<std::string>();
            if (cmd != "upper" && cmd != "lower") continue;
            const int d = j["params"]["d"].get<int>();
            const int k = j["params"]["k"].get<int>();
            const double v = j["result"]["value"].get<double>();
            auto& row = rows[d];
            if (cmd == "upper" && (row.k_upper < 0 || v < row.best_upper)) {
                row.best_upper = v;
                row.k_upper = k;
            }
            if (cmd == "lower" && (row.k_lower < 0 || v > row.best_lower)) {
                row.best_lower = v;
                row.k_lower = k;
            }
        }
    }
    if (rows.empty()) {
        std::cerr << "report: result cache is empty\n";
        return 4;
    }

    std::ostringstream csv;
    csv << "d,s_d,naive,upper,lower,depth_upper,depth_lower\n";
    csv << std::setprecision(17);
    json jrows = json::array();
    for (const auto& [d, row] : rows) {
        const double s = dimension(d);
        const double nv = naive_upper(d);
        csv << d << "," << s << "," << nv << ",";
        if (row.k_upper >= 0) csv << row.best_upper;
        csv << ",";
        if (row.k_lower >= 0) csv << row.best_lower;
        csv << "," << (row.k_upper >= 0 ? std::to_string(row.k_upper) : "") << ","
            << (row.k_lower >= 0 ? std::to_string(row.k_lower) : "") << "\n";
        jrows.push_back(json{{"d", d},
                             {"s_d", s},
                             {"naive", nv},
                             {"upper", row.k_upper >= 0 ? json(row.best_upper) : json()},
                             {"lower", row.k_lower >= 0 ? json(row.best_lower) : json()},
                             {"depth_upper", row.k_upper},
                             {"depth_lower", row.k_lower}});
    }

    if (format == "csv") {
        std::ofstream out(dir / "report.csv");
        out << csv.str();
        std::cout << csv.str();
    } else if (format == "json") {
        std::ofstream out(dir / "report.json");
        out << json(jrows).dump(2) << "\n";
        std::cout << json(jrows).dump(2) << "\n";
    } else {  // plot: gnuplot-style two columns, one file per series
        std::ofstream naive_out(dir / "fig_naive.dat");
        std::ofstream upper_out(dir / "fig_upper.dat");
        naive_out << std::setprecision(17);
        upper_out << std::setprecision(17);
        for (const auto& [d, row] : rows) {
            naive_out << d << " " << naive_upper(d) << "\n";
            if (row.k_upper >= 0) upper_out << d << " " << row.best_upper << "\n";
        }
        std::cout << "wrote " << (dir / "fig_naive.dat").string() << " and "
                  << (dir / "fig_upper.dat").string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified Hausdorff-measure bounds for Cartesian powers of the ternary Cantor set"};
    app.require_subcommand(1);

    int dim = 2, depth = 2, d_max = 6, threads = 0;
    std::uint64_t max_enum = RestrictedCornerStream::kDefaultEnumBudget;
    std::string method = "auto", upper_flag = "auto", seed_flag = "5/9", format = "csv";
    bool replay = false, no_cache = false;

    auto* up = app.add_subcommand("upper", "enumeration-based certified upper bound");
    up->add_option("--dim", dim, "dimension d")->required()->check(CLI::Range(1, kMaxDim));
    up->add_option("--depth", depth, "subdivision depth k")->required()->check(CLI::Range(1, 40));
    up->add_option("--threads", threads, "worker threads (0 = auto)");
    up->add_option("--max-enum", max_enum, "lattice enumeration budget");
    up->add_option("--method", method, "histogram method")
        ->check(CLI::IsMember({"auto", "direct", "convolve"}));
    up->add_flag("--no-cache", no_cache, "do not write the result cache");

    auto* lo = app.add_subcommand("lower", "repulsive-pair lower bound");
    lo->add_option("--dim", dim, "dimension d")->required()->check(CLI::Range(1, kMaxDim));
    lo->add_option("--depth", depth, "subdivision depth k")->required()->check(CLI::Range(1, 40));
    lo->add_option("--upper-bound", upper_flag, "upper bound value or 'auto' (cache lookup)");
    lo->add_option("--seed", seed_flag, "seed diameter")->check(CLI::IsMember({"5/9", "1/3"}));
    lo->add_flag("--replay", replay, "step-verified fixed d=3 chain");
    lo->add_flag("--no-cache", no_cache, "do not write the result cache");

    auto* na = app.add_subcommand("naive", "table of naive upper bounds");
    na->add_option("--max-dim", d_max, "largest dimension")->check(CLI::Range(1, kMaxDim));
    na->add_flag("--no-cache", no_cache, "do not write the result cache");

    auto* re = app.add_subcommand("report", "combined table and plot data from the cache");
    re->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json", "plot"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    EngineOptions opts;
    opts.max_enum = max_enum;
    opts.threads = threads;
    opts.method = method == "direct"     ? HistMethod::Direct
                  : method == "convolve" ? HistMethod::Convolve
                                         : HistMethod::Auto;

    try {
        if (up->parsed()) return run_upper(dim, depth, opts, no_cache);
        if (lo->parsed()) return run_lower(dim, depth, upper_flag, seed_flag, replay, no_cache);
        if (na->parsed()) return run_naive(d_max, no_cache);
        if (re->parsed()) return run_report(format);
    } catch (const EnumerationBudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const CombinatorialBudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
