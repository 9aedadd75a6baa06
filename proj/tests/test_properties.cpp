#include <gtest/gtest.h>

#include "properties.hpp"
#include "support.hpp"
#include "thinkaloud/replay.hpp"

using namespace thinkaloud;
using thinkaloud::testing::rules;

TEST(Properties, TranscriptConservation) {
    for (std::uint32_t seed = 1; seed <= 300; ++seed) {
        const auto f = props::transcript_conservation(seed, rules());
        ASSERT_FALSE(f) << *f;
    }
}

TEST(Properties, ThreadPartitionAndFilterLaws) {
    for (std::uint32_t seed = 1; seed <= 40; ++seed) {
        const auto f = props::thread_partition(seed, rules());
        ASSERT_FALSE(f) << *f;
    }
}

TEST(Properties, TipRateLimit) {
    for (std::uint32_t seed = 1; seed <= 40; ++seed) {
        const auto f = props::tip_rate_limit(seed, rules());
        ASSERT_FALSE(f) << *f;
    }
}

TEST(Properties, BaselinePurity) {
    for (std::uint32_t seed = 1; seed <= 40; ++seed) {
        const auto f = props::baseline_purity(seed, rules());
        ASSERT_FALSE(f) << *f;
    }
}

TEST(Properties, WpmMatchesRegexWalk) {
    for (std::uint32_t seed = 1; seed <= 200; ++seed) {
        const auto f = props::wpm_equivalence(seed);
        ASSERT_FALSE(f) << *f;
    }
}

TEST(Properties, RandomSessionsReplay) {
    for (std::uint32_t seed = 1; seed <= 15; ++seed) {
        const auto e = props::random_session(seed, rules());
        const auto r = replay(e->events(), rules());
        ASSERT_TRUE(r.identical()) << "seed " << seed << " diverges at line " << *r.first_divergence() + 1;
    }
}

TEST(Properties, SameStreamSamePartition) {
    for (std::uint32_t seed = 1; seed <= 5; ++seed) {
        const auto a = props::random_session(seed, rules());
        const auto b = props::random_session(seed, rules());
        ASSERT_EQ(a->threads().threads().size(), b->threads().threads().size());
        for (std::size_t i = 0; i < a->threads().threads().size(); ++i) {
            EXPECT_EQ(a->threads().threads()[i].note_ids, b->threads().threads()[i].note_ids);
        }
    }
}

TEST(Properties, MergedNeverExceedsCreated) {
    for (std::uint32_t seed = 1; seed <= 20; ++seed) {
        const auto e = props::random_session(seed, rules());
        const auto s = analysis::session_stats(e->events());
        EXPECT_LE(s.notes_merged, s.notes_created);
        EXPECT_EQ(e->live_notes().size() + e->retired_notes().size(), s.notes_created);
    }
}
