#include "softcircuit/recycle.hpp"

#include "softcircuit/error.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace softcircuit::recycle {

namespace {

void require_mass(double m, const char* name) {
    if (!std::isfinite(m) || m < 0.0) throw ValidationError(std::string(name) + " must be >= 0");
}

std::string grams(double m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f g", m);
    return buf;
}

}  // namespace

void InkFormulation::validate() const {
    require_mass(ag_mass_g, "ag_mass_g");
    require_mass(wpu_dispersion_mass_g, "wpu_dispersion_mass_g");
    require_mass(water_mass_g, "water_mass_g");
    require_mass(egain_mass_g, "egain_mass_g");
    if (!(wpu_solid_fraction >= 0.0 && wpu_solid_fraction <= 1.0)) {
        throw ValidationError("wpu_solid_fraction must lie in [0, 1]");
    }
}

InkFormulation InkFormulation::reference_recipe() {
    return {.ag_mass_g = 4.12,
            .wpu_dispersion_mass_g = 1.25,
            .wpu_solid_fraction = 0.40,
            .water_mass_g = 0.5,
            .egain_mass_g = 0.0};
}

double ag_dry_weight_fraction(const InkFormulation& formulation) {
    formulation.validate();
    const double solids = formulation.dry_solids_g();
    if (!(solids > 0.0)) throw ValidationError("formulation has no dry solids");
    return formulation.ag_mass_g / solids;
}

MassLedger::MassLedger(double input_mass_g, std::vector<LedgerEntry> outputs)
    : input_mass_g_(input_mass_g), outputs_(std::move(outputs)) {
    if (!std::isfinite(input_mass_g_) || input_mass_g_ <= 0.0) {
        throw ValidationError("ledger input mass must be > 0");
    }
    for (const auto& e : outputs_) require_mass(e.mass_g, e.label.c_str());
    const double total = output_total_g();
    if (std::abs(total - input_mass_g_) > kMassTolerance_g) {
        throw ConservationError("outputs total " + grams(total) + " but input is " +
                                grams(input_mass_g_));
    }
}

double MassLedger::output_total_g() const noexcept {
    return std::accumulate(outputs_.begin(), outputs_.end(), 0.0,
                           [](double acc, const LedgerEntry& e) { return acc + e.mass_g; });
}

double MassLedger::mass(const std::string& label) const {
    for (const auto& e : outputs_) {
        if (e.label == label) return e.mass_g;
    }
    throw std::out_of_range("no ledger entry '" + label + "'");
}

std::vector<double> MassLedger::percentages() const {
    std::vector<double> out;
    out.reserve(outputs_.size());
    for (const auto& e : outputs_) out.push_back(100.0 * e.mass_g / input_mass_g_);
    return out;
}

MassLedger separation_ledger(double initial_ink_mass_g, double recovered_g, double substrate_bound_g) {
    require_mass(recovered_g, "recovered_g");
    require_mass(substrate_bound_g, "substrate_bound_g");
    if (!std::isfinite(initial_ink_mass_g) || initial_ink_mass_g <= 0.0) {
        throw ValidationError("initial ink mass must be > 0");
    }
    if (recovered_g + substrate_bound_g > initial_ink_mass_g) {
        throw ConservationError("recovered + substrate-bound mass exceeds the initial ink mass");
    }
    const double lost = initial_ink_mass_g - recovered_g - substrate_bound_g;
    return MassLedger(initial_ink_mass_g, {{"recovered", recovered_g},
                                           {"lost", lost},
                                           {"substrate_bound", substrate_bound_g}});
}

WashLedger wash_ledger(double initial_g, double post_wash_solids_g, double discarded_pu_g) {
    require_mass(post_wash_solids_g, "post_wash_solids_g");
    require_mass(discarded_pu_g, "discarded_pu_g");
    if (!std::isfinite(initial_g) || initial_g <= 0.0) throw ValidationError("initial mass must be > 0");
    if (post_wash_solids_g > initial_g) {
        throw ConservationError("post-wash solids exceed the initial mass");
    }
    if (discarded_pu_g > post_wash_solids_g) {
        throw ConservationError("discarded PU exceeds the post-wash solids");
    }
    const double recovered = post_wash_solids_g - discarded_pu_g;
    const double loss = initial_g - post_wash_solids_g;
    MassLedger ledger(initial_g, {{"recovered_powder", recovered},
                                  {"discarded_pu", discarded_pu_g},
                                  {"process_loss", loss}});
    return {std::move(ledger), post_wash_solids_g / initial_g, loss / initial_g};
}

RetentionReport conductivity_retention(double sigma_pristine, double sigma_recycled) {
    if (!std::isfinite(sigma_pristine) || sigma_pristine <= 0.0 || !std::isfinite(sigma_recycled) ||
        sigma_recycled <= 0.0) {
        throw ValidationError("conductivities must be > 0");
    }
    return {sigma_pristine, sigma_recycled, sigma_recycled / sigma_pristine};
}

}  // namespace softcircuit::recycle
