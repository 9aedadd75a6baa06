#pragma once
// Pointer sample storage, per-note slicing and dwell-weighted centroids.

#include "thinkaloud/model.hpp"

#include <optional>
#include <span>

namespace thinkaloud {

struct TraceParams {
    // Keep the last sample per bucket: 50 ms caps storage at 20 samples/s.
    Millis bucket_ms = 50;
    Millis margin_ms = kTraceMargin;
};

class TraceStore {
public:
    explicit TraceStore(TraceParams params = {}) : params_(params) {}

    // Returns false when the sample is older than the newest stored sample;
    // such samples are dropped and counted.
    bool record(const PointerSample& sample);

    // Samples with t in [t0 - margin, t1 + margin]; requires t0 <= t1.
    PointerTrace slice(Millis t0, Millis t1) const;

    // Newest sample strictly before t, optionally restricted to one view.
    std::optional<PointerSample> last_before(Millis t, std::optional<View> view = std::nullopt) const;

    const std::vector<PointerSample>& samples() const { return samples_; }
    std::size_t late_count() const { return late_; }
    const TraceParams& params() const { return params_; }

private:
    Millis bucket_of(Millis t) const;

    TraceParams params_;
    std::vector<PointerSample> samples_;
    std::size_t late_ = 0;
};

struct Point3 {
    double x = 0;
    double y = 0;
    std::optional<double> z;
};

// Each sample is weighted by the time until the next sample or window_end,
// whichever comes first (zero if it lies past the end). Falls back to the
// plain mean when every weight is zero. Empty input yields nullopt.
std::optional<Point3> dwell_centroid(std::span<const PointerSample> samples, Millis window_end);

}  // namespace thinkaloud
