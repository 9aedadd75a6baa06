#include "thinkaloud/rules.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace thinkaloud;

TEST(Rules, ShippedFileMatchesDefaults) {
    const auto shipped = RuleConfig::load(std::string(SOURCE_DIR) + "/rules/default_rules.json");
    EXPECT_EQ(shipped.to_json(), RuleConfig::defaults().to_json());
}

TEST(Rules, RoundTrip) {
    const auto d = RuleConfig::defaults();
    const auto again = RuleConfig::from_json(nlohmann::ordered_json::parse(d.to_json().dump()));
    EXPECT_EQ(again.to_json(), d.to_json());
}

TEST(Rules, MalformedConfigIsRejected) {
    auto j = nlohmann::json::parse(RuleConfig::defaults().to_json().dump());
    j["merge_jaccard"] = "high";
    EXPECT_THROW(RuleConfig::from_json(j), ConfigError);

    j = nlohmann::json::parse(RuleConfig::defaults().to_json().dump());
    j["merge_jaccard"] = 1.5;
    EXPECT_THROW(RuleConfig::from_json(j), ConfigError);

    EXPECT_THROW(RuleConfig::from_json(nlohmann::json::array()), ConfigError);
    EXPECT_THROW(RuleConfig::load("/nonexistent/rules.json"), ConfigError);
}

TEST(Rules, ErrorNamesTheField) {
    auto j = nlohmann::json::parse(RuleConfig::defaults().to_json().dump());
    j["tip_templates"][0]["category"] = "Gossip";
    try {
        RuleConfig::from_json(j);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("tip_templates"), std::string::npos) << e.what();
    }
}
