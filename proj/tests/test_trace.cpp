#include "thinkaloud/trace.hpp"

#include <gtest/gtest.h>

using namespace thinkaloud;

namespace {

PointerSample s2(double x, double y, Millis t) { return {x, y, t, View::TwoD, std::nullopt}; }

}  // namespace

TEST(DwellCentroid, SingleSample) {
    const std::vector<PointerSample> v{s2(10, 20, 100)};
    const auto c = dwell_centroid(v, 1000);
    ASSERT_TRUE(c);
    EXPECT_DOUBLE_EQ(c->x, 10);
    EXPECT_DOUBLE_EQ(c->y, 20);
    EXPECT_FALSE(c->z);
}

TEST(DwellCentroid, EqualDwell) {
    const std::vector<PointerSample> v{s2(0, 0, 0), s2(10, 0, 1000)};
    const auto c = dwell_centroid(v, 2000);
    EXPECT_DOUBLE_EQ(c->x, 5);
    EXPECT_DOUBLE_EQ(c->y, 0);
}

TEST(DwellCentroid, UnequalDwellAndZ) {
    // Weights 1000, 3000: x = (0*1 + 8*3) / 4 = 6.
    const std::vector<PointerSample> v{{0, 4, 0, View::ThreeD, 2.0}, {8, 0, 1000, View::ThreeD, 6.0}};
    const auto c = dwell_centroid(v, 4000);
    EXPECT_DOUBLE_EQ(c->x, 6);
    EXPECT_DOUBLE_EQ(c->y, 1);
    ASSERT_TRUE(c->z);
    EXPECT_DOUBLE_EQ(*c->z, 5);
}

TEST(DwellCentroid, DwellStopsAtWindowEnd) {
    // Window ends at 1000: weights 500, 500, 0 -> x = (2 + 6) / 2, y = (2 + 10) / 2.
    const std::vector<PointerSample> v{s2(2, 2, 0), s2(6, 10, 500), s2(100, 100, 1500)};
    const auto c = dwell_centroid(v, 1000);
    EXPECT_DOUBLE_EQ(c->x, 4);
    EXPECT_DOUBLE_EQ(c->y, 6);
}

TEST(DwellCentroid, ZeroWeightsFallBackToMean) {
    const std::vector<PointerSample> v{s2(0, 0, 500), s2(4, 2, 500)};
    const auto c = dwell_centroid(v, 100);
    EXPECT_DOUBLE_EQ(c->x, 2);
    EXPECT_DOUBLE_EQ(c->y, 1);
    EXPECT_FALSE(dwell_centroid({}, 0));
}

TEST(TraceStore, BucketsKeepLastSample) {
    TraceStore store;
    store.record(s2(1, 1, 0));
    store.record(s2(2, 2, 20));
    store.record(s2(3, 3, 49));
    store.record(s2(4, 4, 50));
    ASSERT_EQ(store.samples().size(), 2u);
    EXPECT_EQ(store.samples()[0], s2(3, 3, 49));
    EXPECT_EQ(store.samples()[1], s2(4, 4, 50));
}

TEST(TraceStore, CapsRateAtTwentyPerSecond) {
    TraceStore store;
    for (Millis t = 0; t < 1000; t += 5) store.record(s2(0, 0, t));
    EXPECT_EQ(store.samples().size(), 20u);
}

TEST(TraceStore, LateSamplesAreDropped) {
    TraceStore store;
    EXPECT_TRUE(store.record(s2(0, 0, 1000)));
    EXPECT_FALSE(store.record(s2(0, 0, 900)));
    EXPECT_EQ(store.late_count(), 1u);
    EXPECT_EQ(store.samples().size(), 1u);
}

TEST(TraceStore, SliceIncludesMargin) {
    TraceStore store;
    for (Millis t : {400, 500, 1000, 3000, 5500, 5600}) store.record(s2(0, 0, t));
    const auto slice = store.slice(1000, 5000);
    ASSERT_EQ(slice.size(), 4u);
    EXPECT_EQ(slice.samples.front().t, 500);
    EXPECT_EQ(slice.samples.back().t, 5500);
    EXPECT_THROW(store.slice(2, 1), std::invalid_argument);
}

TEST(TraceStore, LastBefore) {
    TraceStore store;
    store.record(s2(1, 1, 100));
    store.record({2, 2, 200, View::ThreeD, 1.0});
    EXPECT_EQ(store.last_before(300)->x, 2);
    EXPECT_EQ(store.last_before(300, View::TwoD)->x, 1);
    EXPECT_EQ(store.last_before(200)->x, 1);
    EXPECT_FALSE(store.last_before(100));
}
