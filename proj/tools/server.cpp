// Session server: HTTP + WebSocket front end over the annotation engine.
#include "thinkaloud/remote_oracle.hpp"
#include "thinkaloud/server.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace thinkaloud;

int main(int argc, char** argv) {
    CLI::App app{"Real-time think-aloud annotation server"};
    std::string listen = "127.0.0.1:8080";
    std::string oracle = "rules";
    std::string rules_path;
    std::string log_dir = "logs";
    std::string prompts = "assets/prompts";
    std::string token;
    std::size_t threads = 2;
    bool print_rules = false;
    app.add_option("--listen", listen, "address:port")->capture_default_str();
    app.add_option("--oracle", oracle, "rules or remote")->check(CLI::IsMember({"rules", "remote"}))->capture_default_str();
    app.add_option("--rules", rules_path, "Rule config JSON (built-in defaults when omitted)");
    app.add_option("--log-dir", log_dir, "Directory for <session>.events.jsonl files")->capture_default_str();
    app.add_option("--prompts", prompts, "Prompt templates for --oracle=remote")->capture_default_str();
    app.add_option("--token", token, "Require this bearer token");
    app.add_option("--threads", threads, "I/O threads")->capture_default_str();
    app.add_flag("--print-rules", print_rules, "Print the effective rule config as JSON and exit");
    CLI11_PARSE(app, argc, argv);

    if (print_rules) {
        try {
            const auto rules = rules_path.empty() ? RuleConfig::defaults() : RuleConfig::load(rules_path);
            std::cout << rules.to_json().dump(2) << '\n';
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }

    try {
        const auto colon = listen.rfind(':');
        if (colon == std::string::npos) throw std::invalid_argument("--listen wants address:port");
        const auto address = listen.substr(0, colon);
        const auto port = static_cast<unsigned short>(std::stoi(listen.substr(colon + 1)));

        HostOptions opts;
        opts.log_dir = log_dir;
        opts.rules = rules_path.empty() ? RuleConfig::defaults() : RuleConfig::load(rules_path);
        if (oracle == "remote") {
            auto cfg = RemoteOracleConfig::from_env();
            cfg.prompt_dir = prompts;
            opts.oracle = std::make_shared<RemoteOracle>(cfg, make_http_transport(cfg), load_prompts(prompts),
                                                         [](const std::string& w) { std::cerr << "oracle " << w << '\n'; });
            opts.background_jobs = true;
        }
        SessionHost host(std::move(opts));
        Server server(host, address, port, token.empty() ? std::nullopt : std::optional<std::string>(token));
        server.stop_on_signals();
        std::cerr << "listening on " << address << ':' << server.port() << " (oracle: " << oracle << ")\n";
        server.run(threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
