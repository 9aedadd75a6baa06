#include "thinkaloud/overlay.hpp"

#include <gtest/gtest.h>

using namespace thinkaloud;

namespace {

PointerTrace trace_of(std::initializer_list<std::tuple<double, double, Millis>> pts) {
    PointerTrace t;
    for (auto [x, y, ms] : pts) t.samples.push_back({x, y, ms, View::TwoD, std::nullopt});
    return t;
}

}  // namespace

TEST(Overlay, OneMarkerPerUtteranceWithPointerData) {
    const auto trace = trace_of({{10, 10, 0}, {20, 20, 1000}, {30, 30, 2000}, {40, 40, 3000}});
    const std::vector<Utterance> u{{"first", 0}, {"second", 1000}, {"third", 2000}};
    const auto o = render_overlay(trace, u);
    ASSERT_EQ(o.markers.size(), 3u);
    EXPECT_DOUBLE_EQ(o.markers[0].x, 10);
    EXPECT_DOUBLE_EQ(o.markers[1].x, 20);
    EXPECT_EQ(o.markers[2].fragment_index, 3u);
    // The last sub-window runs to the end of the trace: samples at 2000 and 3000,
    // the one at 3000 has zero dwell.
    EXPECT_DOUBLE_EQ(o.markers[2].x, 30);
    EXPECT_DOUBLE_EQ(o.markers[0].radius, kMarkerRadius);
}

TEST(Overlay, TimelineInterleavesSpeechAndPointer) {
    const auto trace = trace_of({{1, 2, 500}});
    const auto o = render_overlay(trace, {{"look here", 0}});
    EXPECT_EQ(o.timeline, "0 ms utterance 1: \"look here\"\n500 ms pointer (1.0, 2.0)\n");
}

TEST(Overlay, NoPointerNoMarkers) {
    const auto o = render_overlay({}, {{"a", 0}});
    EXPECT_TRUE(o.markers.empty());
}

TEST(Overlay, RasterizeScalesCanvasToPixels) {
    const auto snapshot = Image::blank(100, 50);
    OverlayDescriptor o;
    o.markers.push_back({500, 250, kMarkerRadius, 1});
    const auto img = rasterize_overlay(snapshot, o, {1000, 500});
    EXPECT_NE(img, snapshot);
    const std::size_t centre = (25u * 100u + 50u) * 4u;
    EXPECT_NE(img.rgba[centre] | (img.rgba[centre + 1] << 8) | (img.rgba[centre + 2] << 16), 0xFFFFFF);
    // Far corner untouched.
    EXPECT_EQ(img.rgba[0], 0xFF);
}

TEST(Overlay, PngRoundTrip) {
    auto img = Image::blank(7, 5, 0x11223344u);
    img.rgba[4] = 0x99;
    const auto png = encode_png(img);
    ASSERT_GT(png.size(), 8u);
    EXPECT_EQ(png[1], 'P');
    EXPECT_EQ(decode_png(png), img);
}

TEST(Overlay, SceneRenderingDrawsOutlines) {
    const std::vector<SceneElement> scene{{ElementId("e"), "room", {100, 100, 500, 300, std::nullopt, std::nullopt}}};
    const auto img = render_scene(scene, {1000, 1000}, 100, 100);
    EXPECT_NE(img, Image::blank(100, 100));
}
