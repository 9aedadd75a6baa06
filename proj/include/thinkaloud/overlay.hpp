#pragma once
// Visual context for element linking: per-fragment pointer markers, a textual
// timeline, and optional raster compositing onto a canvas snapshot.

#include "thinkaloud/oracle.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace thinkaloud {

inline constexpr double kMarkerRadius = 6.0;

struct Utterance {
    std::string text;
    Millis t = 0;
};

// 8-bit RGBA, row-major.
struct Image {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> rgba;

    static Image blank(std::uint32_t width, std::uint32_t height,
                       std::uint32_t rgba = 0xFFFFFFFFu);
    bool operator==(const Image&) const = default;
};

// One marker per utterance with pointer data in its sub-window
// [t_i, t_{i+1}), the last utterance running to the end of the trace.
OverlayDescriptor render_overlay(const PointerTrace& trace, const std::vector<Utterance>& utterances);

// Draws the markers onto a copy of `snapshot`. Canvas units are scaled to
// pixels by snapshot size / canvas size.
Image rasterize_overlay(const Image& snapshot, const OverlayDescriptor& overlay, CanvasSize canvas);

// Outline drawing of the scene elements, used when no screenshot is available.
Image render_scene(const std::vector<SceneElement>& scene, CanvasSize canvas,
                   std::uint32_t width, std::uint32_t height);

std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(const std::vector<std::uint8_t>& png);

}  // namespace thinkaloud
