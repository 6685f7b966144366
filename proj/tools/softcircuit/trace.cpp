#include "commands.hpp"

#include "softcircuit/electromech/geometry.hpp"
#include "softcircuit/electromech/percolation.hpp"
#include "softcircuit/io/csv.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <thread>

namespace softcircuit::cli {
namespace {

namespace em = electromech;

em::EnsembleSpec ensemble(const io::ElectromechConfig& cfg) {
    em::EnsembleSpec spec;
    spec.rows = cfg.rows;
    spec.cols = cfg.cols;
    spec.occupancy = cfg.effective_occupancy();
    spec.seeds = cfg.seeds;
    spec.strain_grid = em::make_strain_grid(cfg.strain_grid.stop, cfg.strain_grid.step);
    spec.failure_threshold = cfg.failure_threshold;
    return spec;
}

nlohmann::json params_json(const em::DamageModelParams& p) {
    return {{"break_strain_median", p.break_strain_median},
            {"break_strain_shape", p.break_strain_shape},
            {"lm_bridge_fraction", p.lm_bridge_fraction},
            {"lm_break_strain_median", p.lm_break_strain_median},
            {"lm_break_strain_shape", p.lm_break_strain_shape}};
}

}  // namespace

void add_trace(CLI::App& app, Runner& selected) {
    auto* trace = app.add_subcommand("trace", "Stretchable trace: percolation network and strain response");
    trace->require_subcommand(1);

    struct CurveOpts {
        std::optional<std::uint64_t> network_seed;
        unsigned threads = 1;
    };
    auto curve_opts = std::make_shared<CurveOpts>();
    auto* curve = trace->add_subcommand("curve", "R/R0 versus strain for one network (writes strain_curve.csv)");
    curve->add_option("--network-seed", curve_opts->network_seed, "Lattice seed (default: global seed)");
    curve->add_option("--threads", curve_opts->threads, "Worker threads for the sweep; 0 = hardware")
        ->check(CLI::NonNegativeNumber);
    curve->callback([&selected, curve_opts] {
        selected = [curve_opts](const Context& ctx) {
            const auto& cfg = ctx.config.electromech;
            const auto spec = ensemble(cfg);
            const auto net = em::build_network(cfg.rows, cfg.cols, spec.occupancy, cfg.damage,
                                               curve_opts->network_seed.value_or(ctx.config.seed));
            unsigned threads = curve_opts->threads;
            if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
            const auto geom = em::reference::test_trace();
            const auto result = em::strain_sweep(net, geom, spec.strain_grid, cfg.failure_threshold, {threads});
            const auto r_abs = em::absolute_resistance(result, geom, em::reference::kSigmaDay0.value);

            io::CsvTable table{{"strain", "stretched_length_m", "r_over_r0", "resistance_ohm"}, {}};
            for (std::size_t i = 0; i < result.points.size(); ++i) {
                const auto& p = result.points[i];
                table.rows.push_back({p.strain, p.stretched_length_m, p.normalized_resistance, r_abs[i]});
            }
            const auto path = ctx.out_path("strain_curve.csv");
            io::write_csv(path, table);

            fmt::print("lattice            {}x{}, occupancy {:.4f}, {} bonds occupied\n", net.rows, net.cols,
                       net.bond_occupancy, net.occupied_count());
            if (result.failure_strain) {
                fmt::print("failure strain     {:.4f} (R/R0 >= {:g})\n", *result.failure_strain, cfg.failure_threshold);
            } else {
                fmt::print("failure strain     none within the grid\n");
            }
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });

    auto* ens = trace->add_subcommand("ensemble", "Failure strain per configured seed (writes failure_strains.csv)");
    ens->callback([&selected] {
        selected = [](const Context& ctx) {
            const auto& cfg = ctx.config.electromech;
            const auto spec = ensemble(cfg);
            const auto strains = em::failure_strains(spec, cfg.damage);
            io::CsvTable table{{"seed", "failure_strain"}, {}};
            for (std::size_t i = 0; i < strains.size(); ++i) {
                table.rows.push_back({static_cast<double>(spec.seeds[i]), strains[i]});
            }
            const auto path = ctx.out_path("failure_strains.csv");
            io::write_csv(path, table);
            fmt::print("seeds              {}\n", strains.size());
            fmt::print("median failure     {:.4f}\n", em::median(strains));
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });

    struct CalibrateOpts {
        double target = 0.0;
        bool lm = false;
        double tolerance = 1e-3;
    };
    auto cal_opts = std::make_shared<CalibrateOpts>();
    auto* cal = trace->add_subcommand("calibrate",
                                      "Fit a break-strain median so the ensemble median failure strain hits a target");
    cal->add_option("--target", cal_opts->target, "Target median failure strain")->required();
    cal->add_flag("--lm", cal_opts->lm, "Fit the liquid-metal bridge median instead of the Ag median");
    cal->add_option("--tolerance", cal_opts->tolerance, "Accepted |median - target|");
    cal->callback([&selected, cal_opts] {
        selected = [cal_opts](const Context& ctx) {
            const auto& cfg = ctx.config.electromech;
            const auto fitted = em::calibrate_median(
                ensemble(cfg), cfg.damage,
                cal_opts->lm ? em::CalibratedMedian::lm_break_strain : em::CalibratedMedian::break_strain,
                cal_opts->target, cal_opts->tolerance);
            const auto strains = em::failure_strains(ensemble(cfg), fitted);
            auto doc = params_json(fitted);
            const auto path = ctx.out_path("damage_params.json");
            io::write_text_file(path, doc.dump(2) + "\n");
            fmt::print("{}\n", doc.dump(2));
            fmt::print("median failure     {:.4f} (target {:.4f})\n", em::median(strains), cal_opts->target);
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });

    struct SigmaOpts {
        double resistance = 0.0;
        double strain = 0.0;
        double length = em::reference::kTraceLength.value;
        double width = em::reference::kTraceWidth.value;
        double thickness = em::reference::kTraceThickness.value;
    };
    auto sigma_opts = std::make_shared<SigmaOpts>();
    auto* sigma = trace->add_subcommand("conductivity", "Conductivity from a measured resistance (constant volume)");
    sigma->add_option("--resistance", sigma_opts->resistance, "Measured resistance, ohm")->required();
    sigma->add_option("--strain", sigma_opts->strain, "Engineering strain at the measurement");
    sigma->add_option("--length", sigma_opts->length, "Unstretched length, m");
    sigma->add_option("--width", sigma_opts->width, "Width, m");
    sigma->add_option("--thickness", sigma_opts->thickness, "Thickness, m");
    sigma->callback([&selected, sigma_opts] {
        selected = [sigma_opts](const Context&) {
            const em::TraceGeometry geom(sigma_opts->length, sigma_opts->width, sigma_opts->thickness);
            const em::StretchState stretched(geom, sigma_opts->strain);
            const double s = em::conductivity_constant_volume(stretched.stretched_length_m(), sigma_opts->resistance,
                                                              geom.volume());
            fmt::print("volume             {:.6g} m^3\n", geom.volume());
            fmt::print("length             {:.6g} m\n", stretched.stretched_length_m());
            fmt::print("conductivity       {:.6g} S/m\n", s);
            return 0;
        };
    });
}

}  // namespace softcircuit::cli
