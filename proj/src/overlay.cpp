#include "thinkaloud/overlay.hpp"

#include "thinkaloud/trace.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace thinkaloud {

Image Image::blank(std::uint32_t width, std::uint32_t height, std::uint32_t rgba) {
    Image img{width, height, {}};
    img.rgba.resize(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t i = 0; i < img.rgba.size(); i += 4) {
        img.rgba[i + 0] = static_cast<std::uint8_t>(rgba >> 24);
        img.rgba[i + 1] = static_cast<std::uint8_t>(rgba >> 16);
        img.rgba[i + 2] = static_cast<std::uint8_t>(rgba >> 8);
        img.rgba[i + 3] = static_cast<std::uint8_t>(rgba);
    }
    return img;
}

namespace {

std::string format_ms(Millis t) { return std::to_string(t) + " ms"; }

std::string format_xy(double x, double y) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.1f, %.1f)", x, y);
    return buf;
}

void put_pixel(Image& img, long x, long y, std::uint32_t rgba) {
    if (x < 0 || y < 0 || x >= static_cast<long>(img.width) || y >= static_cast<long>(img.height)) return;
    const std::size_t i = (static_cast<std::size_t>(y) * img.width + static_cast<std::size_t>(x)) * 4;
    img.rgba[i + 0] = static_cast<std::uint8_t>(rgba >> 24);
    img.rgba[i + 1] = static_cast<std::uint8_t>(rgba >> 16);
    img.rgba[i + 2] = static_cast<std::uint8_t>(rgba >> 8);
    img.rgba[i + 3] = static_cast<std::uint8_t>(rgba);
}

}  // namespace

OverlayDescriptor render_overlay(const PointerTrace& trace, const std::vector<Utterance>& utterances) {
    OverlayDescriptor out;
    const auto& s = trace.samples;
    for (std::size_t i = 0; i < utterances.size(); ++i) {
        if (s.empty()) break;
        const Millis lo = utterances[i].t;
        const bool last = i + 1 == utterances.size();
        const Millis hi = last ? s.back().t : utterances[i + 1].t;
        auto b = std::lower_bound(s.begin(), s.end(), lo,
                                  [](const PointerSample& p, Millis t) { return p.t < t; });
        auto e = last ? s.end()
                      : std::lower_bound(b, s.end(), hi,
                                         [](const PointerSample& p, Millis t) { return p.t < t; });
        const auto c = dwell_centroid(std::span(b, e), hi);
        if (!c) continue;
        out.markers.push_back({c->x, c->y, kMarkerRadius, i + 1});
    }

    // Merge utterances and pointer samples into one time-ordered listing.
    std::string timeline;
    std::size_t u = 0, p = 0;
    while (u < utterances.size() || p < s.size()) {
        const bool take_utterance = p == s.size() || (u < utterances.size() && utterances[u].t <= s[p].t);
        if (take_utterance) {
            timeline += format_ms(utterances[u].t) + " utterance " + std::to_string(u + 1) + ": \"" +
                        utterances[u].text + "\"\n";
            ++u;
        } else {
            timeline += format_ms(s[p].t) + " pointer " + format_xy(s[p].x, s[p].y) + "\n";
            ++p;
        }
    }
    out.timeline = std::move(timeline);
    return out;
}

Image rasterize_overlay(const Image& snapshot, const OverlayDescriptor& overlay, CanvasSize canvas) {
    Image out = snapshot;
    if (canvas.width <= 0 || canvas.height <= 0) throw std::invalid_argument("canvas size must be positive");
    const double sx = snapshot.width / canvas.width;
    const double sy = snapshot.height / canvas.height;
    constexpr std::uint32_t kMarker = 0x22AA44FFu;
    for (const auto& m : overlay.markers) {
        const double cx = m.x * sx, cy = m.y * sy;
        // Keep markers visible on small snapshots.
        const double rx = std::max(m.radius * sx, 1.0), ry = std::max(m.radius * sy, 1.0);
        for (long y = static_cast<long>(std::floor(cy - ry)); y <= static_cast<long>(std::ceil(cy + ry)); ++y) {
            for (long x = static_cast<long>(std::floor(cx - rx)); x <= static_cast<long>(std::ceil(cx + rx)); ++x) {
                const double dx = (x + 0.5 - cx) / rx, dy = (y + 0.5 - cy) / ry;
                if (dx * dx + dy * dy <= 1.0) put_pixel(out, x, y, kMarker);
            }
        }
    }
    return out;
}

Image render_scene(const std::vector<SceneElement>& scene, CanvasSize canvas, std::uint32_t width,
                   std::uint32_t height) {
    if (canvas.width <= 0 || canvas.height <= 0) throw std::invalid_argument("canvas size must be positive");
    Image img = Image::blank(width, height);
    const double sx = width / canvas.width, sy = height / canvas.height;
    constexpr std::uint32_t kEdge = 0x333333FFu;
    for (const auto& e : scene) {
        const long x0 = std::lround(e.bounds.x0 * sx), x1 = std::lround(e.bounds.x1 * sx);
        const long y0 = std::lround(e.bounds.y0 * sy), y1 = std::lround(e.bounds.y1 * sy);
        for (long x = x0; x <= x1; ++x) {
            put_pixel(img, x, y0, kEdge);
            put_pixel(img, x, y1, kEdge);
        }
        for (long y = y0; y <= y1; ++y) {
            put_pixel(img, x0, y, kEdge);
            put_pixel(img, x1, y, kEdge);
        }
    }
    return img;
}

namespace {

struct PngWriteGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteGuard() { png_destroy_write_struct(&png, &info); }
};

struct PngReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadGuard() { png_destroy_read_struct(&png, &info, nullptr); }
};

void png_warn(png_structp, png_const_charp) {}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& image) {
    if (image.width == 0 || image.height == 0) throw std::invalid_argument("png: empty image");
    std::vector<std::uint8_t> out;
    PngWriteGuard g;
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warn);
    if (!g.png) throw std::runtime_error("png: cannot create writer");
    g.info = png_create_info_struct(g.png);
    if (setjmp(png_jmpbuf(g.png))) throw std::runtime_error("png: encoding failed");
    png_set_write_fn(
        g.png, &out,
        [](png_structp p, png_bytep data, png_size_t len) {
            auto* buf = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
            buf->insert(buf->end(), data, data + len);
        },
        nullptr);
    png_set_IHDR(g.png, g.info, image.width, image.height, 8, PNG_COLOR_TYPE_RGBA, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(g.png, g.info);
    for (std::uint32_t y = 0; y < image.height; ++y) {
        auto* row = const_cast<png_bytep>(image.rgba.data() + static_cast<std::size_t>(y) * image.width * 4);
        png_write_row(g.png, row);
    }
    png_write_end(g.png, nullptr);
    return out;
}

Image decode_png(const std::vector<std::uint8_t>& png) {
    PngReadGuard g;
    g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warn);
    if (!g.png) throw std::runtime_error("png: cannot create reader");
    g.info = png_create_info_struct(g.png);
    Image img;
    if (setjmp(png_jmpbuf(g.png))) throw std::runtime_error("png: malformed or truncated image");
    struct Cursor {
        const std::vector<std::uint8_t>* data;
        std::size_t pos;
    } cur{&png, 0};
    png_set_read_fn(g.png, &cur, [](png_structp p, png_bytep out, png_size_t len) {
        auto* c = static_cast<Cursor*>(png_get_io_ptr(p));
        if (c->pos + len > c->data->size()) png_error(p, "truncated");
        std::memcpy(out, c->data->data() + c->pos, len);
        c->pos += len;
    });
    png_read_info(g.png, g.info);
    png_set_expand(g.png);
    png_set_strip_16(g.png);
    png_set_gray_to_rgb(g.png);
    png_set_add_alpha(g.png, 0xFF, PNG_FILLER_AFTER);
    png_read_update_info(g.png, g.info);
    img = Image{png_get_image_width(g.png, g.info), png_get_image_height(g.png, g.info), {}};
    img.rgba.resize(static_cast<std::size_t>(img.width) * img.height * 4);
    for (std::uint32_t y = 0; y < img.height; ++y) {
        png_read_row(g.png, img.rgba.data() + static_cast<std::size_t>(y) * img.width * 4, nullptr);
    }
    return img;
}

}  // namespace thinkaloud
