#pragma once

// Ink stoichiometry and conservation-checked recycling ledgers.

#include <string>
#include <vector>

namespace softcircuit::recycle {

/// Ledgers must balance to the two-decimal precision masses are weighed at.
inline constexpr double kMassTolerance_g = 0.01;

struct InkFormulation {
    double ag_mass_g = 0.0;
    double wpu_dispersion_mass_g = 0.0;
    double wpu_solid_fraction = 0.40;
    double water_mass_g = 0.0;
    double egain_mass_g = 0.0;

    void validate() const;
    /// Mass left after all water evaporates. EGaIn is counted as a solid.
    [[nodiscard]] double dry_solids_g() const noexcept {
        return ag_mass_g + wpu_dispersion_mass_g * wpu_solid_fraction + egain_mass_g;
    }

    /// 4.12 g Ag flakes, 1.25 g WPU dispersion at 40 % solids, 0.5 g water.
    [[nodiscard]] static InkFormulation reference_recipe();

    friend bool operator==(const InkFormulation&, const InkFormulation&) = default;
};

/// Ag mass over dry solids. Throws ValidationError when there are no solids.
[[nodiscard]] double ag_dry_weight_fraction(const InkFormulation& formulation);

struct LedgerEntry {
    std::string label;
    double mass_g;
};

/// Input mass split into labelled outputs. The constructor throws
/// ConservationError unless the outputs sum to the input within
/// kMassTolerance_g, and ValidationError for non-positive input or negative
/// outputs.
class MassLedger {
public:
    MassLedger(double input_mass_g, std::vector<LedgerEntry> outputs);

    [[nodiscard]] double input_mass_g() const noexcept { return input_mass_g_; }
    [[nodiscard]] const std::vector<LedgerEntry>& outputs() const noexcept { return outputs_; }
    [[nodiscard]] double output_total_g() const noexcept;
    /// Mass of the entry with this label; throws std::out_of_range if absent.
    [[nodiscard]] double mass(const std::string& label) const;
    /// Percent of input per output, in output order.
    [[nodiscard]] std::vector<double> percentages() const;

private:
    double input_mass_g_;
    std::vector<LedgerEntry> outputs_;
};

/// Circuit separation: recovered ink, ink bound to the substrate, and the
/// remainder lost in processing.
[[nodiscard]] MassLedger separation_ledger(double initial_ink_mass_g, double recovered_g,
                                           double substrate_bound_g);

struct WashLedger {
    MassLedger ledger;                // recovered_powder, discarded_pu, process_loss
    double post_wash_fraction = 0.0;  // post-wash solids / initial
    double loss_fraction = 0.0;       // process loss / initial
};

/// Repeated solvent washes of recovered ink: solids left after washing, of
/// which coarse PU pieces are discarded and the rest is reusable powder.
[[nodiscard]] WashLedger wash_ledger(double initial_g, double post_wash_solids_g, double discarded_pu_g);

struct RetentionReport {
    double sigma_pristine = 0.0;
    double sigma_recycled = 0.0;
    double retention_fraction = 0.0;

    [[nodiscard]] double decay_fraction() const noexcept { return 1.0 - retention_fraction; }
};

[[nodiscard]] RetentionReport conductivity_retention(double sigma_pristine, double sigma_recycled);

}  // namespace softcircuit::recycle
