#include "oracles.hpp"

#include "softcircuit/biosignal/classify.hpp"
#include "softcircuit/error.hpp"
#include "softcircuit/random.hpp"

#include <gtest/gtest.h>

using namespace softcircuit;
using namespace softcircuit::biosignal;

TEST(Dtw, HandComputedThreeByTwo) {
    // 0-0 (0), 1-2 (1), 2-2 (0)
    EXPECT_EQ(dtw_distance(std::vector<double>{0, 1, 2}, std::vector<double>{0, 2}), 1.0);
}

TEST(Dtw, IdentityAndSymmetry) {
    Rng rng(1);
    for (int i = 0; i < 300; ++i) {
        std::vector<double> a(1 + static_cast<std::size_t>(rng.uniform() * 50));
        std::vector<double> b(1 + static_cast<std::size_t>(rng.uniform() * 50));
        for (auto& v : a) v = rng.normal();
        for (auto& v : b) v = rng.normal();
        EXPECT_EQ(dtw_distance(a, a), 0.0);
        EXPECT_EQ(dtw_distance(a, b), dtw_distance(b, a));
        EXPECT_NEAR(dtw_distance(a, b), oracle::dtw_table(a, b), 1e-12);
    }
}

TEST(Dtw, AbsorbsTimeShift) {
    const std::vector<double> a{0, 0, 1, 2, 1, 0, 0, 0};
    const std::vector<double> b{0, 0, 0, 0, 1, 2, 1, 0};
    EXPECT_EQ(dtw_distance(a, b), 0.0);
    EXPECT_GT(euclidean_distance(a, b), 0.0);
}

TEST(Dtw, TriangleInequalityCanFail) {
    // Documented non-metric behaviour: d(a,c) > d(a,b) + d(b,c).
    const std::vector<double> a{0};
    const std::vector<double> b{1, 2};
    const std::vector<double> c{2, 3, 3};
    EXPECT_EQ(dtw_distance(a, c), 8.0);
    EXPECT_EQ(dtw_distance(a, b) + dtw_distance(b, c), 6.0);
    EXPECT_GT(dtw_distance(a, c), dtw_distance(a, b) + dtw_distance(b, c));
}

TEST(Dtw, BandConstrainsWarping) {
    const std::vector<double> a{0, 1, 0, 0, 0};
    const std::vector<double> b{0, 0, 0, 1, 0};
    EXPECT_EQ(dtw_distance(a, b), 0.0);
    EXPECT_GT(dtw_distance(a, b, 1), 0.0);
    EXPECT_EQ(dtw_distance(a, b, 3), 0.0);
    EXPECT_THROW((void)dtw_distance(std::vector<double>{}, b), ValidationError);
}

TEST(Euclidean, ResamplesToLongerLength) {
    EXPECT_EQ(resample_linear(std::vector<double>{0, 2}, 3), (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(euclidean_distance(std::vector<double>{0, 2}, std::vector<double>{0, 1, 2}), 0.0);
    EXPECT_DOUBLE_EQ(euclidean_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}), 5.0);
    EXPECT_EQ(resample_linear(std::vector<double>{7}, 3), (std::vector<double>{7, 7, 7}));
}

TEST(DistanceMatrix, SymmetricWithZeroDiagonal) {
    Rng rng(2);
    std::vector<LabeledSequence> seqs;
    for (int i = 0; i < 6; ++i) {
        std::vector<double> v(10 + i);
        for (auto& x : v) x = rng.normal();
        seqs.push_back({"s" + std::to_string(i), i % 2 ? "odd" : "even", v});
    }
    for (auto metric : {Metric::dtw, Metric::euclidean}) {
        const auto m = distance_matrix(seqs, metric);
        ASSERT_EQ(m.size(), 6u);
        for (std::size_t i = 0; i < 6; ++i) {
            EXPECT_EQ(m.at(i, i), 0.0);
            for (std::size_t j = 0; j < 6; ++j) {
                EXPECT_EQ(m.at(i, j), m.at(j, i));
                EXPECT_GE(m.at(i, j), 0.0);
            }
        }
    }
    seqs[3].id = "s0";
    EXPECT_THROW((void)distance_matrix(seqs, Metric::dtw), ValidationError);
}

TEST(Classify, NearestReferenceAndTies) {
    const std::vector<LabeledSequence> refs{{"r0", "flat", {0, 0, 0}}, {"r1", "peak", {0, 5, 0}}, {"r2", "flat2", {0, 0, 0}}};
    const std::vector<LabeledSequence> queries{{"q0", "?", {0, 4, 0}}, {"q1", "?", {0, 0, 0}}};
    const auto c = classify_nearest(queries, refs, Metric::dtw);
    EXPECT_EQ(c.labels, (std::vector<std::string>{"peak", "flat"}));
    EXPECT_EQ(c.nearest[1], 0u);  // tie between r0 and r2 goes to the first
    EXPECT_EQ(c.nearest_distance[0], 1.0);
    EXPECT_THROW((void)classify_nearest(queries, {}, Metric::dtw), ValidationError);
}

TEST(Classify, SyntheticGesturesMostlyRecognised) {
    int correct = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(1000 + trial);
        const auto set = oracle::synthetic_gestures(rng);
        std::vector<LabeledSequence> refs;
        std::vector<LabeledSequence> queries;
        for (int g = 0; g < 4; ++g) {
            refs.push_back({"a" + std::to_string(g), "g" + std::to_string(g), set.repetition_a[g]});
            queries.push_back({"b" + std::to_string(g), "g" + std::to_string(g), set.repetition_b[g]});
        }
        const auto c = classify_nearest(queries, refs, Metric::dtw);
        for (int g = 0; g < 4; ++g) correct += c.labels[g] == queries[g].label;
    }
    EXPECT_GE(correct, 76);  // 95 % of 80
}
