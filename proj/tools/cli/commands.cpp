#include "commands.hpp"

#include "stakecast/eval.hpp"
#include "stakecast/ingest.hpp"
#include "stakecast/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace stakecast::cli {

namespace {

/// A library error tagged with the pipeline stage that raised it.
struct StageError {
    std::string stage;
    ErrorCode code;
    std::string detail;
};

template <typename F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const Error& e) {
        throw StageError{stage, e.code(), e.detail()};
    }
}

void report_stage_error(std::ostream& err, const StageError& e) {
    err << e.stage << ": " << error_name(e.code);
    if (!e.detail.empty()) err << ' ' << e.detail;
    err << '\n';
}

const char* stage_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NoFolds:
        case ErrorCode::ZeroMean:
        case ErrorCode::LengthMismatch: return "eval";
        default: return "fit";
    }
}

DailySeries load_feed(const std::filesystem::path& path, const std::string& column, int max_gap) {
    return in_stage("ingest", [&] {
        FeedSchema schema = column.empty() ? sniff_schema(path) : FeedSchema{"date", column};
        return repair_gaps(read_feed(path, schema), max_gap);
    });
}

FeatureFrame load_frame(const RunConfig& config) {
    const DailySeries rewards = load_feed(config.rewards, config.rewards_column, config.max_gap);
    std::optional<DailySeries> price;
    std::optional<DailySeries> trends;
    if (config.price) price = load_feed(*config.price, config.price_column, config.max_gap);
    if (config.trends) trends = load_feed(*config.trends, config.trends_column, config.max_gap);
    return in_stage("align", [&] {
        FeatureFrame frame = align(rewards, price, trends);
        for (Method m : config.effective_methods()) {
            ForecastSpec spec;
            spec.method = m;
            for (Feature f : spec.features()) {
                if (!frame.has(f)) throw Error(ErrorCode::MissingFeature, std::string(feature_name(f)));
            }
        }
        return frame;
    });
}

ForecastSpec base_spec(const RunConfig& config) {
    ForecastSpec spec;
    spec.window = config.window;
    spec.lags = config.lags;
    spec.horizon = config.horizon;
    spec.ridge_eps = config.ridge_eps;
    spec.normalize = config.normalize;
    return spec;
}

SplitSettings split_settings(const RunConfig& config) { return {config.train_len, config.test_len, config.stride}; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    in_stage("io", [&] {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
        f << text;
        if (!f) throw Error(ErrorCode::Io, "write failed for " + path.string());
    });
}

void prepare_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw StageError{"io", ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message()};
}

bool wants(const RunConfig& config, OutputFormat f) { return config.formats.count(f) > 0; }

void write_traces(const RunConfig& config, const EvalReport& report, const std::string& asset) {
    for (const auto& cell : report.cells) {
        if (!cell.ok()) continue;
        if (wants(config, OutputFormat::Csv)) {
            std::ostringstream trace;
            write_trace_csv(trace, cell);
            write_text(config.out_dir / ("trace_" + std::string(method_slug(cell.method)) + "_" +
                                         std::to_string(cell.horizon) + ".csv"),
                       trace.str());
        }
    }
    if (!wants(config, OutputFormat::Svg)) return;
    for (int h : report.horizons) {
        const TraceChart chart = chart_for_horizon(report, h, asset + ": " + std::to_string(h) + "-day-ahead predictions");
        if (chart.dates.empty()) continue;
        write_text(config.out_dir / ("chart_" + std::to_string(h) + ".svg"), render_svg(chart));
    }
}

void write_report(const RunConfig& config, const EvalReport& report, const std::string& markdown) {
    if (wants(config, OutputFormat::Markdown)) write_text(config.out_dir / "report.md", markdown);
    if (wants(config, OutputFormat::Csv)) {
        std::ostringstream csv;
        write_report_csv(csv, report);
        write_text(config.out_dir / "report.csv", csv.str());
    }
}

std::string asset_label(const RunConfig& config) {
    return config.asset.empty() ? config.rewards.stem().string() : config.asset;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const StageError& e) {
        report_stage_error(err, e);
    } catch (const Error& e) {
        report_stage_error(err, {"config", e.code(), e.detail()});
    }
    return kExitStageError;
}

}  // namespace

std::vector<Method> RunConfig::effective_methods() const {
    if (!methods.empty()) return methods;
    std::vector<Method> m = {Method::Mwa, Method::Slr};
    if (price && trends) m.push_back(Method::Mlr);
    return m;
}

void RunConfig::validate() const {
    base_spec(*this).validate();
    if (train_len < 1 || test_len < 1 || (stride && *stride < 1)) {
        throw Error(ErrorCode::InvalidSpec, "train, test and stride must be at least 1");
    }
    if (max_gap < 0) throw Error(ErrorCode::InvalidSpec, "max gap must be non-negative");
}

int cmd_backtest(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const FeatureFrame frame = load_frame(config);
        const SplitPlan plan = in_stage("eval", [&] { return make_splits(frame.size(), split_settings(config)); });

        EvalReport report;
        report.methods = config.effective_methods();
        report.horizons = {config.horizon};
        for (Method m : report.methods) {
            ForecastSpec spec = base_spec(config);
            spec.method = m;
            try {
                report.cells.push_back(backtest(frame, spec, plan));
            } catch (const Error& e) {
                throw StageError{stage_for(e.code()), e.code(), e.detail()};
            }
        }
        const AssetTable table = to_asset_table(asset_label(config), report);
        for (auto& c : report.cells) c.best = table.is_best(c.method, c.horizon);

        const std::string markdown = render_backtest_markdown(table, config.horizon);
        prepare_out_dir(config.out_dir);
        write_report(config, report, markdown);
        write_traces(config, report, table.asset);
        out << markdown;
        return kExitOk;
    });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const FeatureFrame frame = load_frame(config);
        const auto methods = config.effective_methods();
        const EvalReport report = in_stage("eval", [&] {
            return horizon_sweep(frame, methods, config.horizon, split_settings(config), base_spec(config));
        });

        const AssetTable table = to_asset_table(asset_label(config), report);
        const std::string markdown = render_sweep_markdown(std::span(&table, 1));
        prepare_out_dir(config.out_dir);
        write_report(config, report, markdown);
        write_traces(config, report, table.asset);
        out << markdown;

        int status = kExitOk;
        for (const auto& c : report.cells) {
            if (c.error) {
                report_stage_error(err, {stage_for(c.error->code), c.error->code,
                                         std::string(method_name(c.method)) + " n=" + std::to_string(c.horizon) +
                                             ": " + c.error->detail});
                status = kExitStageError;
            }
        }
        return status;
    });
}

int cmd_forecast(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const auto methods = config.effective_methods();
        if (config.methods.size() > 1) {
            throw StageError{"config", ErrorCode::InvalidSpec, "forecast takes exactly one --method"};
        }
        RunConfig single = config;
        single.methods = {config.methods.empty() ? Method::Mwa : methods.front()};
        const FeatureFrame frame = load_frame(single);
        if (frame.size() < config.train_len) {
            throw StageError{"fit", ErrorCode::InsufficientHistory,
                             "feed has " + std::to_string(frame.size()) + " days, training needs " +
                                 std::to_string(config.train_len)};
        }
        const FeatureFrame recent = frame.slice(frame.size() - config.train_len, frame.size());
        std::ostringstream lines;
        for (int h = 1; h <= config.horizon; ++h) {
            ForecastSpec spec = base_spec(config);
            spec.method = single.methods.front();
            spec.horizon = h;
            const double value = in_stage("fit", [&] {
                return fit_direct(recent, spec).predict_at(recent, recent.size() - 1);
            });
            lines << format_date(frame.end() + std::chrono::days{h}) << ',' << format_exact(value) << '\n';
        }
        out << lines.str();
        return kExitOk;
    });
}

int cmd_synth(const SynthSpec& spec, const std::filesystem::path& out_path, const std::string& column,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const DailySeries series = in_stage("synth", [&] { return generate(spec); });
        in_stage("io", [&] {
            if (out_path.has_parent_path()) std::filesystem::create_directories(out_path.parent_path());
            write_feed(out_path, series.to_dated(), FeedSchema{"date", column});
        });
        out << "wrote " << series.size() << " days to " << out_path.string() << '\n';
        return kExitOk;
    });
}

int cmd_merge(const std::vector<std::pair<std::string, std::filesystem::path>>& inputs,
              const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<AssetTable> tables;
        for (const auto& [asset, path] : inputs) {
            tables.push_back(in_stage("ingest", [&] {
                std::ifstream in(path);
                if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
                return read_report_csv(in, asset, path.string());
            }));
        }
        const std::string markdown = render_sweep_markdown(tables);
        prepare_out_dir(out_dir);
        write_text(out_dir / "report.md", markdown);
        out << markdown;
        return kExitOk;
    });
}

namespace {

void add_feed_options(CLI::App& cmd, RunConfig& c, std::vector<std::string>& methods,
                      std::vector<std::string>& formats, std::string& price, std::string& trends,
                      std::string& rewards, std::optional<std::size_t>& stride) {
    cmd.add_option("--rewards", rewards, "Rewards feed CSV")->required();
    cmd.add_option("--price", price, "Price feed CSV");
    cmd.add_option("--trends", trends, "Search-trends feed CSV");
    cmd.add_option("--rewards-column", c.rewards_column, "Value column of the rewards feed");
    cmd.add_option("--price-column", c.price_column, "Value column of the price feed");
    cmd.add_option("--trends-column", c.trends_column, "Value column of the trends feed");
    cmd.add_option("--asset", c.asset, "Asset label used in reports (default: rewards file stem)");
    cmd.add_option("--max-gap", c.max_gap, "Longest run of missing days filled forward")->capture_default_str();
    cmd.add_option("--method", methods, "Methods: mwa, slr, mlr (comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember({"mwa", "slr", "mlr", "MWA", "SLR", "MLR"}));
    cmd.add_option("--window", c.window, "Moving-average window W")->capture_default_str();
    cmd.add_option("--lags", c.lags, "Lagged days per regression feature L")->capture_default_str();
    cmd.add_option("--ridge", c.ridge_eps, "Ridge stabilizer for regression")->capture_default_str();
    cmd.add_option("--normalize", c.normalize, "Z-score regression features (default: MLR only)");
    cmd.add_option("--train", c.train_len, "Training days per fold")->capture_default_str();
    cmd.add_option("--test", c.test_len, "Test days per fold")->capture_default_str();
    cmd.add_option("--stride", stride, "Days between fold starts (default: --test)");
    cmd.add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--format", formats, "Output formats: md, csv, svg (comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember({"md", "csv", "svg"}));
}

void finish_config(RunConfig& c, const std::vector<std::string>& methods, const std::vector<std::string>& formats,
                   const std::string& rewards, const std::string& price, const std::string& trends,
                   const std::optional<std::size_t>& stride) {
    c.rewards = rewards;
    if (!price.empty()) c.price = price;
    if (!trends.empty()) c.trends = trends;
    c.stride = stride;
    c.methods.clear();
    for (const auto& m : methods) {
        const auto parsed = *parse_method(m);
        if (std::find(c.methods.begin(), c.methods.end(), parsed) == c.methods.end()) c.methods.push_back(parsed);
    }
    if (!formats.empty()) {
        c.formats.clear();
        for (const auto& f : formats) {
            c.formats.insert(f == "md" ? OutputFormat::Markdown : f == "csv" ? OutputFormat::Csv : OutputFormat::Svg);
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"stakecast: staking-reward forecasting and walk-forward backtesting"};
    app.require_subcommand(1);

    struct FeedArgs {
        RunConfig config;
        std::vector<std::string> methods;
        std::vector<std::string> formats;
        std::string rewards;
        std::string price;
        std::string trends;
        std::optional<std::size_t> stride;
    };
    FeedArgs bt;
    FeedArgs sw;
    FeedArgs fc;
    sw.config.horizon = 7;

    auto* backtest_cmd = app.add_subcommand("backtest", "Walk-forward backtest at one horizon");
    add_feed_options(*backtest_cmd, bt.config, bt.methods, bt.formats, bt.price, bt.trends, bt.rewards, bt.stride);
    backtest_cmd->add_option("--horizon", bt.config.horizon, "Days ahead n")->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "Backtest every horizon 1..N");
    add_feed_options(*sweep_cmd, sw.config, sw.methods, sw.formats, sw.price, sw.trends, sw.rewards, sw.stride);
    sweep_cmd->add_option("--horizon", sw.config.horizon, "Largest horizon N")->capture_default_str();

    auto* forecast_cmd = app.add_subcommand("forecast", "Forecast the next 1..n days from the latest data");
    add_feed_options(*forecast_cmd, fc.config, fc.methods, fc.formats, fc.price, fc.trends, fc.rewards, fc.stride);
    forecast_cmd->add_option("--horizon", fc.config.horizon, "Days ahead n")->capture_default_str();

    SynthSpec synth;
    std::string synth_kind = "constant";
    std::string synth_start = "2021-06-23";
    std::string synth_out;
    std::string synth_column = "value";
    auto* synth_cmd = app.add_subcommand("synth", "Write a deterministic synthetic feed");
    synth_cmd->add_option("--kind", synth_kind, "constant | linear_trend | ar1 | sine_noise | burst")
        ->capture_default_str();
    synth_cmd->add_option("--length", synth.length, "Days")->required();
    synth_cmd->add_option("--start", synth_start, "First date (YYYY-MM-DD)")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--level", synth.level, "Base level")->capture_default_str();
    synth_cmd->add_option("--slope", synth.slope, "linear_trend: change per day")->capture_default_str();
    synth_cmd->add_option("--phi", synth.phi, "ar1: coefficient")->capture_default_str();
    synth_cmd->add_option("--sigma", synth.sigma, "ar1, sine_noise: noise std")->capture_default_str();
    synth_cmd->add_option("--amplitude", synth.amplitude, "sine_noise: amplitude")->capture_default_str();
    synth_cmd->add_option("--period", synth.period, "sine_noise: period in days")->capture_default_str();
    synth_cmd->add_option("--burst-magnitude", synth.burst_magnitude, "burst: multiplier")->capture_default_str();
    synth_cmd->add_option("--burst-start", synth.burst_start, "burst: first day")->capture_default_str();
    synth_cmd->add_option("--burst-length", synth.burst_length, "burst: days")->capture_default_str();
    synth_cmd->add_option("--column", synth_column, "Value column name")->capture_default_str();
    synth_cmd->add_option("--out", synth_out, "Output CSV path")->required();

    std::vector<std::string> merge_inputs;
    std::string merge_out = ".";
    auto* merge_cmd = app.add_subcommand("merge", "Combine per-asset sweep report.csv files into one table");
    merge_cmd->add_option("inputs", merge_inputs, "ASSET=path/to/report.csv")->required();
    merge_cmd->add_option("--out", merge_out, "Output directory")->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (backtest_cmd->parsed()) {
        finish_config(bt.config, bt.methods, bt.formats, bt.rewards, bt.price, bt.trends, bt.stride);
        return cmd_backtest(bt.config, out, err);
    }
    if (sweep_cmd->parsed()) {
        finish_config(sw.config, sw.methods, sw.formats, sw.rewards, sw.price, sw.trends, sw.stride);
        return cmd_sweep(sw.config, out, err);
    }
    if (forecast_cmd->parsed()) {
        finish_config(fc.config, fc.methods, fc.formats, fc.rewards, fc.price, fc.trends, fc.stride);
        return cmd_forecast(fc.config, out, err);
    }
    if (synth_cmd->parsed()) {
        const auto kind = parse_synth_kind(synth_kind);
        const auto start = parse_date(synth_start);
        if (!kind || !start) {
            err << "synth: InvalidSpec " << (!kind ? "unknown kind '" + synth_kind + "'" : "bad start date '" + synth_start + "'")
                << '\n';
            return kExitStageError;
        }
        synth.kind = *kind;
        synth.start = *start;
        return cmd_synth(synth, synth_out, synth_column, out, err);
    }
    std::vector<std::pair<std::string, std::filesystem::path>> inputs;
    for (const auto& spec : merge_inputs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
            err << "merge: expected ASSET=path, got '" << spec << "'\n";
            return kExitUsage;
        }
        inputs.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
    }
    return cmd_merge(inputs, merge_out, out, err);
}

}  // namespace stakecast::cli
