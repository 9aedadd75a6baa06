#include "thinkaloud/chunker.hpp"

#include <algorithm>

namespace thinkaloud {

std::optional<Millis> ChunkBuffer::t_last_end() const {
    if (fragments_.empty()) return std::nullopt;
    return fragments_.back().t_end;
}

std::string ChunkBuffer::text() const {
    std::vector<std::string> parts;
    parts.reserve(fragments_.size());
    for (const auto& f : fragments_) parts.push_back(text::trim(f.text));
    return text::join_words(parts);
}

Chunker::Chunker(ChunkerParams params, text::WordSet stopwords)
    : params_(params), stopwords_(std::move(stopwords)) {}

PromotedSegment Chunker::drain() {
    PromotedSegment seg;
    seg.transcript = buffer_.text();
    seg.t_start = buffer_.fragments_.front().t_start;
    seg.t_end = buffer_.fragments_.back().t_end;
    seg.fragments = std::move(buffer_.fragments_);
    buffer_.fragments_.clear();
    return seg;
}

std::optional<PromotedSegment> Chunker::pause_check(Millis t) {
    if (buffer_.empty()) return std::nullopt;
    const Millis since = std::max(*buffer_.t_last_end(), last_activity_.value_or(*buffer_.t_last_end()));
    if (t - since > params_.pause_ms) return drain();
    return std::nullopt;
}

std::optional<PromotedSegment> Chunker::ingest(const TranscriptFragment& frag, SemanticOracle& oracle) {
    if (!frag.is_final) throw ValidationError("chunker accepts final fragments only");
    frag.validate();
    if (auto last = buffer_.t_last_end(); last && frag.t_start < *last) {
        throw OrderingError("fragment starts at " + std::to_string(frag.t_start) +
                            " ms, before buffered speech ended at " + std::to_string(*last) + " ms");
    }

    std::optional<PromotedSegment> promoted;
    if (!buffer_.empty() && frag.t_start - *buffer_.t_last_end() > params_.pause_ms) {
        promoted = drain();
    } else if (!buffer_.empty() &&
               text::content_words(buffer_.text(), stopwords_).size() >= params_.min_split_words) {
        // A missing verdict (timeout, failure) means "continue".
        const auto verdict = oracle.judge_split(buffer_.text(), frag.text);
        if (verdict == SplitVerdict::NewTopic) promoted = drain();
    }
    buffer_.fragments_.push_back(frag);
    last_activity_ = std::max(last_activity_.value_or(frag.t_end), frag.t_end);
    return promoted;
}

std::optional<PromotedSegment> Chunker::observe_speech(Millis onset, Millis through) {
    auto promoted = pause_check(onset);
    const Millis t = std::max(onset, through);
    last_activity_ = std::max(last_activity_.value_or(t), t);
    return promoted;
}

std::optional<PromotedSegment> Chunker::tick(Millis now) { return pause_check(now); }

std::optional<PromotedSegment> Chunker::flush() {
    if (buffer_.empty()) return std::nullopt;
    return drain();
}

}  // namespace thinkaloud
