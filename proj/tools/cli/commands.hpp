#pragma once

#include "stakecast/forecast.hpp"
#include "stakecast/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace stakecast::cli {

enum class OutputFormat { Markdown, Csv, Svg };

/// Everything one invocation needs for a single asset.
struct RunConfig {
    std::string asset;
    std::filesystem::path rewards;
    std::optional<std::filesystem::path> price;
    std::optional<std::filesystem::path> trends;
    /// Empty means: sniff the single non-date column of the file.
    std::string rewards_column;
    std::string price_column;
    std::string trends_column;
    int max_gap = kDefaultMaxGap;

    /// Empty means MWA and SLR, plus MLR when price and trends are both given.
    std::vector<Method> methods;
    int window = 7;
    int lags = 7;
    int horizon = 1;
    double ridge_eps = kDefaultRidgeEps;
    std::optional<bool> normalize;

    std::size_t train_len = 90;
    std::size_t test_len = 30;
    std::optional<std::size_t> stride;

    std::filesystem::path out_dir = ".";
    std::set<OutputFormat> formats = {OutputFormat::Markdown, OutputFormat::Csv};

    [[nodiscard]] std::vector<Method> effective_methods() const;
    /// Throws InvalidSpec on a violated numeric invariant.
    void validate() const;
};

/// Exit codes: 0 success, 1 a pipeline stage failed, 2 bad usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitStageError = 1;
inline constexpr int kExitUsage = 2;

/// Walk-forward backtest at config.horizon. Writes report.md, report.csv,
/// trace_<method>_<n>.csv and chart_<n>.svg according to config.formats.
int cmd_backtest(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Horizon sweep over 1..config.horizon. Failed cells are rendered as dashes
/// and make the exit status non-zero, but the report is still written.
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Fits on the trailing train_len days and prints "date,value" for horizons
/// 1..config.horizon. Exactly one method is allowed.
int cmd_forecast(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes a synthetic feed CSV with columns date,<column>.
int cmd_synth(const SynthSpec& spec, const std::filesystem::path& out_path, const std::string& column,
              std::ostream& out, std::ostream& err);

/// Combines several report.csv files into one horizon table (report.md in
/// out_dir, also printed). Each input is (asset label, path).
int cmd_merge(const std::vector<std::pair<std::string, std::filesystem::path>>& inputs,
              const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

/// Parses a full command line (args[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stakecast::cli
