#include "commands.hpp"

#include "softcircuit/recycle.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace softcircuit::cli {
namespace {

namespace rc = recycle;

nlohmann::json ledger_json(const rc::MassLedger& ledger) {
    nlohmann::json outputs = nlohmann::json::array();
    const auto pct = ledger.percentages();
    for (std::size_t i = 0; i < ledger.outputs().size(); ++i) {
        outputs.push_back({{"label", ledger.outputs()[i].label},
                           {"mass_g", ledger.outputs()[i].mass_g},
                           {"percent", pct[i]}});
    }
    return {{"input_mass_g", ledger.input_mass_g()}, {"outputs", outputs}};
}

void print_ledger(const rc::MassLedger& ledger) {
    const auto pct = ledger.percentages();
    fmt::print("{:<18} {:>10} {:>9}\n", "stream", "mass (g)", "share");
    for (std::size_t i = 0; i < ledger.outputs().size(); ++i) {
        fmt::print("{:<18} {:>10.2f} {:>8.2f}%\n", ledger.outputs()[i].label, ledger.outputs()[i].mass_g, pct[i]);
    }
    fmt::print("{:<18} {:>10.2f} {:>8.2f}%\n", "total", ledger.output_total_g(), 100.0 * ledger.output_total_g() / ledger.input_mass_g());
}

}  // namespace

void add_recycle(CLI::App& app, Runner& selected) {
    auto* cmd = app.add_subcommand("recycle", "Ink stoichiometry, recycling mass ledgers and conductivity retention");
    cmd->require_subcommand(1);
    auto json_out = std::make_shared<bool>(false);

    auto ink = std::make_shared<rc::InkFormulation>(rc::InkFormulation::reference_recipe());
    auto* recipe = cmd->add_subcommand("recipe", "Dry Ag weight fraction of an ink formulation");
    recipe->add_option("--ag", ink->ag_mass_g, "Ag flake mass, g");
    recipe->add_option("--wpu", ink->wpu_dispersion_mass_g, "WPU dispersion mass, g");
    auto* solids = recipe->add_option("--solids", ink->wpu_solid_fraction, "WPU solid fraction (default from config)");
    recipe->add_option("--water", ink->water_mass_g, "Added water, g");
    recipe->add_option("--egain", ink->egain_mass_g, "EGaIn mass, g");
    recipe->add_flag("--json", *json_out, "Print JSON");
    recipe->callback([&selected, ink, json_out, solids] {
        selected = [ink, json_out, solids](const Context& ctx) {
            auto f = *ink;
            if (solids->count() == 0) f.wpu_solid_fraction = ctx.config.recycle.wpu_solid_fraction;
            const double frac = rc::ag_dry_weight_fraction(f);
            if (*json_out) {
                fmt::print("{}\n", nlohmann::json{{"dry_solids_g", f.dry_solids_g()}, {"ag_dry_weight_fraction", frac}}.dump(2));
            } else {
                fmt::print("dry solids         {:.3f} g\n", f.dry_solids_g());
                fmt::print("Ag dry fraction    {:.2f}%\n", 100.0 * frac);
            }
            return 0;
        };
    });

    struct LedgerOpts {
        double input = 100.0;
        double recovered = 91.18;
        double substrate = 1.04;
    };
    auto lo = std::make_shared<LedgerOpts>();
    auto* ledger = cmd->add_subcommand("ledger", "Separation ledger: recovered, lost and substrate-bound ink");
    ledger->add_option("--input", lo->input, "Initial ink mass, g");
    ledger->add_option("--recovered", lo->recovered, "Recovered mass, g");
    ledger->add_option("--substrate", lo->substrate, "Mass left bound to the substrate, g");
    ledger->add_flag("--json", *json_out, "Print JSON");
    ledger->callback([&selected, lo, json_out] {
        selected = [lo, json_out](const Context&) {
            const auto l = rc::separation_ledger(lo->input, lo->recovered, lo->substrate);
            if (*json_out) {
                fmt::print("{}\n", ledger_json(l).dump(2));
            } else {
                print_ledger(l);
            }
            return 0;
        };
    });

    struct WashOpts {
        double initial = 12.0;
        double post_wash = 9.62;
        double discarded = 0.73;
    };
    auto wo = std::make_shared<WashOpts>();
    auto* wash = cmd->add_subcommand("wash", "Wash ledger: recovered powder, discarded PU and process loss");
    wash->add_option("--initial", wo->initial, "Initial dried ink mass, g");
    wash->add_option("--post-wash", wo->post_wash, "Solids left after washing, g");
    wash->add_option("--discarded", wo->discarded, "PU discarded with the wash, g");
    wash->add_flag("--json", *json_out, "Print JSON");
    wash->callback([&selected, wo, json_out] {
        selected = [wo, json_out](const Context&) {
            const auto w = rc::wash_ledger(wo->initial, wo->post_wash, wo->discarded);
            if (*json_out) {
                auto j = ledger_json(w.ledger);
                j["post_wash_fraction"] = w.post_wash_fraction;
                j["loss_fraction"] = w.loss_fraction;
                fmt::print("{}\n", j.dump(2));
            } else {
                print_ledger(w.ledger);
                fmt::print("post-wash          {:.2f}% of initial\n", 100.0 * w.post_wash_fraction);
            }
            return 0;
        };
    });

    struct RetentionOpts {
        double pristine = 1.16e5;
        double recycled = 1.13e5;
    };
    auto ro = std::make_shared<RetentionOpts>();
    auto* ret = cmd->add_subcommand("retention", "Conductivity retained after recycling");
    ret->add_option("--pristine", ro->pristine, "Pristine ink conductivity, S/m");
    ret->add_option("--recycled", ro->recycled, "Recycled ink conductivity, S/m");
    ret->add_flag("--json", *json_out, "Print JSON");
    ret->callback([&selected, ro, json_out] {
        selected = [ro, json_out](const Context&) {
            const auto r = rc::conductivity_retention(ro->pristine, ro->recycled);
            if (*json_out) {
                fmt::print("{}\n", nlohmann::json{{"sigma_pristine", r.sigma_pristine},
                                                  {"sigma_recycled", r.sigma_recycled},
                                                  {"retention_fraction", r.retention_fraction}}
                                       .dump(2));
            } else {
                fmt::print("retention          {:.4f} ({:.2f}%)\n", r.retention_fraction, 100.0 * r.retention_fraction);
                fmt::print("decay              {:.2f}%\n", 100.0 * r.decay_fraction());
            }
            return 0;
        };
    });
}

}  // namespace softcircuit::cli
