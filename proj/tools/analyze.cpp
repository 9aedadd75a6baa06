// Offline analysis of session logs.
#include "thinkaloud/analyzer.hpp"
#include "thinkaloud/replay.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

using namespace thinkaloud;
namespace an = thinkaloud::analysis;

namespace {

nlohmann::ordered_json stats_json(const an::SessionStats& s) {
    return {{"duration_ms", s.duration},
            {"notes_created", s.notes_created},
            {"notes_merged", s.notes_merged},
            {"notes_checked", s.notes_checked},
            {"tips_shown", s.tips_shown},
            {"tip_responses", s.tip_responses},
            {"reminders_shown", s.reminders_shown},
            {"filter_applications", s.filter_applications}};
}

std::string clock(Millis ms) {
    std::ostringstream out;
    out << ms / 60000 << ':' << std::setw(2) << std::setfill('0') << (ms / 1000) % 60;
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistics, classification and replay for think-aloud session logs"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print JSON instead of a table");

    std::string log_path;
    auto* stats = app.add_subcommand("stats", "Per-session counts");
    stats->add_option("log", log_path, "Session log (JSONL)")->required();

    auto* wpm = app.add_subcommand("wpm", "Words per minute of the final transcript");
    wpm->add_option("log", log_path, "Session log (JSONL)")->required();

    std::string activity = "thinkaloud";
    auto* classify = app.add_subcommand("classify", "Engagement or recap pattern");
    classify->add_option("log", log_path, "Session log (JSONL)")->required();
    classify->add_option("--activity", activity, "Activity the log records")
        ->check(CLI::IsMember({"thinkaloud", "recap"}));

    std::string out_path;
    auto* timeline = app.add_subcommand("timeline", "Plot-ready CSV of session events");
    timeline->add_option("log", log_path, "Session log (JSONL)")->required();
    timeline->add_option("-o,--output", out_path, "CSV file (stdout when omitted)");

    std::string rules_path;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a log with the rule oracle and compare");
    replay_cmd->add_option("log", log_path, "Session log (JSONL)")->required();
    replay_cmd->add_option("--rules", rules_path, "Rule config (defaults when omitted)");
    replay_cmd->add_option("-o,--output", out_path, "Write the regenerated log here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*replay_cmd) {
            const auto rules = rules_path.empty() ? RuleConfig::defaults() : RuleConfig::load(rules_path);
            const auto r = replay_file(log_path, rules);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                write_log(out, r.regenerated());
            }
            const auto diverged = r.first_divergence();
            if (as_json) {
                nlohmann::ordered_json j = {{"identical", !diverged},
                                            {"events", r.regenerated().size()},
                                            {"first_divergent_line", diverged ? nlohmann::ordered_json(*diverged + 1)
                                                                              : nlohmann::ordered_json(nullptr)}};
                std::cout << j.dump(2) << '\n';
            } else if (diverged) {
                std::cout << "diverges at line " << *diverged + 1 << '\n';
            } else {
                std::cout << "identical (" << r.regenerated().size() << " events)\n";
            }
            return diverged ? 1 : 0;
        }

        const auto log = read_log_file(log_path);

        if (*stats) {
            const auto s = an::session_stats(log);
            if (as_json) {
                std::cout << stats_json(s).dump(2) << '\n';
            } else {
                std::cout << "duration             " << clock(s.duration) << '\n'
                          << "notes created        " << s.notes_created << '\n'
                          << "notes merged         " << s.notes_merged << '\n'
                          << "notes checked        " << s.notes_checked << '\n'
                          << "tips shown           " << s.tips_shown << '\n'
                          << "tip responses        " << s.tip_responses << '\n'
                          << "reminders shown      " << s.reminders_shown << '\n'
                          << "filter applications  " << s.filter_applications << '\n';
            }
        } else if (*wpm) {
            const auto transcript = an::final_transcript(log);
            const auto words = an::word_count(transcript);
            const auto duration = an::session_stats(log).duration;
            if (duration <= 0) throw std::invalid_argument("log has zero duration");
            const double rate = an::wpm(transcript, static_cast<double>(duration) / 60000.0);
            if (as_json) {
                std::cout << nlohmann::ordered_json{{"words", words}, {"minutes", duration / 60000.0}, {"wpm", rate}}.dump(2)
                          << '\n';
            } else {
                std::cout << words << " words in " << clock(duration) << ": " << std::fixed << std::setprecision(1)
                          << rate << " wpm\n";
            }
        } else if (*classify) {
            const auto s = an::session_stats(log);
            const std::string pattern(activity == "recap" ? an::to_string(an::classify_recap(s))
                                                          : an::to_string(an::classify_engagement(s)));
            if (as_json) {
                auto j = stats_json(s);
                j["activity"] = activity;
                j["pattern"] = pattern;
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << pattern << '\n';
            }
        } else if (*timeline) {
            const auto csv = an::timeline_csv(log);
            if (out_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(out_path);
                if (!out) throw std::runtime_error("cannot write " + out_path);
                out << csv;
            }
        }
    } catch (const LogError& e) {
        std::cerr << log_path << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
