#include "thinkaloud/trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace thinkaloud {

Millis TraceStore::bucket_of(Millis t) const {
    const Millis b = params_.bucket_ms;
    return t >= 0 ? t / b : -((-t + b - 1) / b);
}

bool TraceStore::record(const PointerSample& sample) {
    sample.validate();
    if (!samples_.empty()) {
        const auto& last = samples_.back();
        if (sample.t < last.t) {
            ++late_;
            return false;
        }
        if (bucket_of(sample.t) == bucket_of(last.t)) {
            samples_.back() = sample;
            return true;
        }
    }
    samples_.push_back(sample);
    return true;
}

PointerTrace TraceStore::slice(Millis t0, Millis t1) const {
    if (t0 > t1) throw std::invalid_argument("slice window reversed");
    const Millis lo = t0 - params_.margin_ms;
    const Millis hi = t1 + params_.margin_ms;
    auto first = std::lower_bound(samples_.begin(), samples_.end(), lo,
                                  [](const PointerSample& s, Millis t) { return s.t < t; });
    auto last = std::upper_bound(first, samples_.end(), hi,
                                 [](Millis t, const PointerSample& s) { return t < s.t; });
    return PointerTrace{{first, last}};
}

std::optional<PointerSample> TraceStore::last_before(Millis t, std::optional<View> view) const {
    auto end = std::lower_bound(samples_.begin(), samples_.end(), t,
                                [](const PointerSample& s, Millis v) { return s.t < v; });
    for (auto it = std::make_reverse_iterator(end); it != samples_.rend(); ++it) {
        if (!view || it->view == *view) return *it;
    }
    return std::nullopt;
}

std::optional<Point3> dwell_centroid(std::span<const PointerSample> samples, Millis window_end) {
    if (samples.empty()) return std::nullopt;
    double wx = 0, wy = 0, wz = 0, total = 0;
    bool has_z = std::all_of(samples.begin(), samples.end(),
                             [](const PointerSample& s) { return s.z.has_value(); });
    for (std::size_t i = 0; i < samples.size(); ++i) {
        // Dwell past the window end belongs to the next window.
        const Millis until = i + 1 < samples.size() ? std::min(samples[i + 1].t, window_end) : window_end;
        const double w = static_cast<double>(std::max<Millis>(0, until - samples[i].t));
        wx += w * samples[i].x;
        wy += w * samples[i].y;
        if (has_z) wz += w * *samples[i].z;
        total += w;
    }
    if (total == 0) {
        wx = wy = wz = 0;
        for (const auto& s : samples) {
            wx += s.x;
            wy += s.y;
            if (has_z) wz += *s.z;
        }
        total = static_cast<double>(samples.size());
    }
    Point3 p{wx / total, wy / total, std::nullopt};
    if (has_z) p.z = wz / total;
    return p;
}

}  // namespace thinkaloud
