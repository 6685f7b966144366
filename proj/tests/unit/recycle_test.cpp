#include "softcircuit/error.hpp"
#include "softcircuit/recycle.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace softcircuit;
using namespace softcircuit::recycle;

TEST(Recipe, ReferenceDryAgFraction) {
    const auto ink = InkFormulation::reference_recipe();
    EXPECT_NEAR(ink.dry_solids_g(), 4.62, 1e-12);
    EXPECT_NEAR(100.0 * ag_dry_weight_fraction(ink), 89.18, 0.01);
}

TEST(Recipe, WaterDoesNotChangeDryFraction) {
    auto ink = InkFormulation::reference_recipe();
    const double before = ag_dry_weight_fraction(ink);
    ink.water_mass_g = 10.0;
    EXPECT_EQ(ag_dry_weight_fraction(ink), before);
}

TEST(Recipe, EgainCountsAsSolid) {
    auto ink = InkFormulation::reference_recipe();
    ink.egain_mass_g = 4.62;
    EXPECT_NEAR(ag_dry_weight_fraction(ink), 4.12 / 9.24, 1e-12);
}

TEST(Recipe, Invalid) {
    InkFormulation empty;
    EXPECT_THROW((void)ag_dry_weight_fraction(empty), ValidationError);
    auto ink = InkFormulation::reference_recipe();
    ink.wpu_solid_fraction = 1.5;
    EXPECT_THROW(ink.validate(), ValidationError);
    ink = InkFormulation::reference_recipe();
    ink.ag_mass_g = -1.0;
    EXPECT_THROW(ink.validate(), ValidationError);
}

TEST(Ledger, SeparationSplit) {
    const auto l = separation_ledger(100.0, 91.18, 1.04);
    EXPECT_NEAR(l.mass("lost"), 7.78, 1e-9);
    EXPECT_NEAR(l.output_total_g(), 100.0, 1e-9);
    const auto pct = l.percentages();
    EXPECT_NEAR(pct[0], 91.18, 1e-9);
    EXPECT_NEAR(pct[1], 7.78, 1e-9);
    EXPECT_NEAR(pct[2], 1.04, 1e-9);
    EXPECT_NEAR(std::accumulate(pct.begin(), pct.end(), 0.0), 100.0, 1e-9);
}

TEST(Ledger, ConservationEnforced) {
    EXPECT_NO_THROW(MassLedger(10.0, {{"a", 6.0}, {"b", 4.009}}));
    EXPECT_THROW(MassLedger(10.0, {{"a", 6.0}, {"b", 4.02}}), ConservationError);
    EXPECT_THROW(MassLedger(0.0, {}), ValidationError);
    EXPECT_THROW((void)separation_ledger(10.0, 9.0, 2.0), ConservationError);
    EXPECT_THROW((void)MassLedger(10.0, {{"a", 10.0}}).mass("b"), std::out_of_range);
}

TEST(Ledger, Wash) {
    const auto w = wash_ledger(12.0, 9.62, 0.73);
    EXPECT_NEAR(w.ledger.mass("recovered_powder"), 8.89, 1e-9);
    EXPECT_NEAR(w.ledger.mass("discarded_pu"), 0.73, 1e-12);
    EXPECT_NEAR(w.ledger.mass("process_loss"), 2.38, 1e-9);
    EXPECT_NEAR(100.0 * w.loss_fraction, 19.83, 0.01);
    EXPECT_NEAR(100.0 * w.post_wash_fraction, 80.17, 0.01);
    EXPECT_THROW((void)wash_ledger(12.0, 13.0, 0.5), ConservationError);
    EXPECT_THROW((void)wash_ledger(12.0, 9.0, 9.5), ConservationError);
}

TEST(Retention, RecycledConductivity) {
    const auto r = conductivity_retention(1.16e5, 1.13e5);
    EXPECT_NEAR(r.retention_fraction, 0.9741, 1e-4);
    EXPECT_NEAR(r.decay_fraction(), 1.0 - 1.13 / 1.16, 1e-15);
    EXPECT_THROW((void)conductivity_retention(0.0, 1.0), ValidationError);
}
