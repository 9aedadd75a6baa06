#pragma once
// Streaming segmentation of final transcript fragments into note-sized chunks.
//
// Fragments accumulate in a buffer until the oracle reports a topic shift,
// the speaker goes quiet for longer than the pause threshold, or the session
// ends. Partial fragments never enter the buffer; they only mark speech
// activity so that a pause is measured from the last audible speech.

#include "thinkaloud/model.hpp"
#include "thinkaloud/oracle.hpp"
#include "thinkaloud/text.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace thinkaloud {

class OrderingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ChunkerParams {
    Millis pause_ms = 8000;
    // The oracle is not consulted while the buffer holds fewer content words.
    std::size_t min_split_words = 4;
};

class ChunkBuffer {
public:
    bool empty() const { return fragments_.empty(); }
    const std::vector<TranscriptFragment>& fragments() const { return fragments_; }
    // Undefined (nullopt) while empty.
    std::optional<Millis> t_last_end() const;
    std::string text() const;

private:
    friend class Chunker;
    std::vector<TranscriptFragment> fragments_;
};

class Chunker {
public:
    Chunker(ChunkerParams params, text::WordSet stopwords);

    const ChunkBuffer& buffer() const { return buffer_; }
    const ChunkerParams& params() const { return params_; }

    // Throws ValidationError for a non-final fragment and OrderingError when
    // the fragment starts before the buffered speech ended. A fragment that
    // starts past the pause threshold promotes the buffer without asking the
    // oracle.
    std::optional<PromotedSegment> ingest(const TranscriptFragment& frag, SemanticOracle& oracle);

    // Records partial speech heard over [onset, through]. Promotes the buffer
    // when the onset is past the pause threshold.
    std::optional<PromotedSegment> observe_speech(Millis onset, Millis through);

    std::optional<PromotedSegment> tick(Millis now);

    std::optional<PromotedSegment> flush();

    // Latest time speech was heard, from finals or partial onsets.
    std::optional<Millis> last_activity() const { return last_activity_; }

private:
    std::optional<PromotedSegment> pause_check(Millis t);
    PromotedSegment drain();

    ChunkerParams params_;
    text::WordSet stopwords_;
    ChunkBuffer buffer_;
    std::optional<Millis> last_activity_;
};

}  // namespace thinkaloud
