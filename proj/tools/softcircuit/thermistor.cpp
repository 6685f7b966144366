#include "commands.hpp"

#include "softcircuit/error.hpp"
#include "softcircuit/io/csv.hpp"
#include "softcircuit/random.hpp"
#include "softcircuit/thermistor.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <cmath>

namespace softcircuit::cli {
namespace {

namespace th = thermistor;

nlohmann::json curve_json(const th::CalibrationCurve& c) {
    return {{"slope_c_per_count", c.slope},  {"intercept_c", c.intercept},       {"fit_min_c", c.fit_min_c},
            {"fit_max_c", c.fit_max_c},      {"residual_rms_c", c.residual_rms}};
}

th::CalibrationCurve curve_from_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_text_file(path));
        th::CalibrationCurve c;
        c.slope = j.at("slope_c_per_count").get<double>();
        c.intercept = j.at("intercept_c").get<double>();
        c.fit_min_c = j.at("fit_min_c").get<double>();
        c.fit_max_c = j.at("fit_max_c").get<double>();
        c.residual_rms = j.value("residual_rms_c", 0.0);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": not a calibration curve: " + e.what());
    }
}

int column(const io::CsvTable& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) return static_cast<int>(i);
    }
    throw ParseError("missing column '" + name + "'", 1);
}

}  // namespace

void add_thermistor(CLI::App& app, Runner& selected) {
    auto* cmd = app.add_subcommand("thermistor", "NTC divider model, linear calibration and smoothing");
    cmd->require_subcommand(1);

    struct ForwardOpts {
        double from = 25.0;
        double to = 50.0;
        double step = 1.0;
    };
    auto fwd = std::make_shared<ForwardOpts>();
    auto* forward = cmd->add_subcommand("forward", "Tabulate resistance, divider ratio and ADC count");
    forward->add_option("--from", fwd->from, "First temperature, C");
    forward->add_option("--to", fwd->to, "Last temperature, C");
    forward->add_option("--step", fwd->step, "Step, C")->check(CLI::PositiveNumber);
    forward->callback([&selected, fwd] {
        selected = [fwd](const Context& ctx) {
            const auto& cfg = ctx.config.thermistor;
            io::CsvTable table{{"temp_c", "r_ntc_ohm", "divider_ratio", "adc_count"}, {}};
            fmt::print("{:>8} {:>12} {:>10} {:>6}\n", "T (C)", "R_ntc (ohm)", "ratio", "count");
            const auto n = static_cast<long>(std::floor((fwd->to - fwd->from) / fwd->step + 1e-9));
            for (long i = 0; i <= n; ++i) {
                const double t = fwd->from + static_cast<double>(i) * fwd->step;
                const double r = th::ntc_resistance(t, cfg.ntc);
                const double ratio = th::divider_ratio(t, cfg.ntc, cfg.divider);
                const auto count = th::adc_from_temperature(t, cfg.ntc, cfg.divider);
                table.rows.push_back({t, r, ratio, static_cast<double>(count)});
                fmt::print("{:>8.2f} {:>12.2f} {:>10.5f} {:>6}\n", t, r, ratio, count);
            }
            io::write_csv(ctx.out_path("thermistor_forward.csv"), table);
            return 0;
        };
    });

    struct CalOpts {
        std::string points;
        int replicates = 5;
        double jitter_c = 0.05;
    };
    auto cal_opts = std::make_shared<CalOpts>();
    auto* cal = cmd->add_subcommand(
        "calibrate", "Fit T = slope * count + intercept (writes thermistor_curve.json). Without --points, "
                     "uses forward-model points at 25-50 C with seeded reference jitter");
    cal->add_option("--points", cal_opts->points, "CSV with columns adc_count,true_temp_c");
    cal->add_option("--replicates", cal_opts->replicates, "Synthetic replicates per temperature")
        ->check(CLI::PositiveNumber);
    cal->add_option("--jitter", cal_opts->jitter_c, "Synthetic plate temperature jitter (SD), C")
        ->check(CLI::NonNegativeNumber);
    cal->callback([&selected, cal_opts] {
        selected = [cal_opts](const Context& ctx) {
            const auto& cfg = ctx.config.thermistor;
            std::vector<th::CalibrationPoint> points;
            if (!cal_opts->points.empty()) {
                const auto table = io::read_csv(cal_opts->points);
                const int c = column(table, "adc_count");
                const int t = column(table, "true_temp_c");
                for (const auto& row : table.rows) points.push_back({row[c], row[t]});
            } else {
                Rng rng(ctx.config.seed);
                for (int rep = 0; rep < cal_opts->replicates; ++rep) {
                    for (int t = 25; t <= 50; ++t) {
                        const double plate = t + cal_opts->jitter_c * rng.normal();
                        points.push_back(
                            {static_cast<double>(th::adc_from_temperature(plate, cfg.ntc, cfg.divider)), double(t)});
                    }
                }
            }
            const auto curve = th::fit_linear_calibration(points);
            const auto path = ctx.out_path("thermistor_curve.json");
            io::write_text_file(path, curve_json(curve).dump(2) + "\n");
            fmt::print("points             {}\n", points.size());
            fmt::print("slope              {:.6f} C/count\n", curve.slope);
            fmt::print("intercept          {:.4f} C\n", curve.intercept);
            fmt::print("fit range          {:.2f} to {:.2f} C\n", curve.fit_min_c, curve.fit_max_c);
            fmt::print("residual rms       {:.4f} C\n", curve.residual_rms);
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });

    struct ConvertOpts {
        std::string curve;
        std::string counts;
        std::optional<std::size_t> smooth;
    };
    auto conv = std::make_shared<ConvertOpts>();
    auto* convert = cmd->add_subcommand("convert", "Convert ADC counts to temperature (writes temperatures.csv)");
    convert->add_option("--curve", conv->curve, "Calibration JSON from `thermistor calibrate`")->required();
    convert->add_option("--counts", conv->counts, "CSV with an adc_count column")->required();
    convert->add_option("--smooth", conv->smooth, "Moving-average window in samples (default from config)")
        ->check(CLI::PositiveNumber);
    convert->callback([&selected, conv] {
        selected = [conv](const Context& ctx) {
            const auto curve = curve_from_file(conv->curve);
            const auto table = io::read_csv(conv->counts);
            const int c = column(table, "adc_count");
            std::vector<double> temps;
            std::size_t extrapolated = 0;
            for (const auto& row : table.rows) {
                const auto reading = th::temperature_from_adc(row[c], curve);
                temps.push_back(reading.temp_c);
                extrapolated += reading.extrapolated;
            }
            const auto smoothed = th::moving_average(temps, conv->smooth.value_or(ctx.config.thermistor.smoothing_window));
            io::CsvTable out{{"adc_count", "temp_c", "smoothed_c"}, {}};
            for (std::size_t i = 0; i < temps.size(); ++i) out.rows.push_back({table.rows[i][c], temps[i], smoothed[i]});
            const auto path = ctx.out_path("temperatures.csv");
            io::write_csv(path, out);
            fmt::print("samples            {}\n", temps.size());
            fmt::print("outside fit range  {}\n", extrapolated);
            if (!smoothed.empty()) fmt::print("last smoothed      {:.3f} C\n", smoothed.back());
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });
}

}  // namespace softcircuit::cli
