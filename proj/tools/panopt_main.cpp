#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "panopt/errors.hpp"
#include "panopt/json_io.hpp"
#include "panopt/scenario.hpp"

namespace {

void print_usage(std::ostream& os) {
    os << "usage: panopt <kind> --config <file> [--seed N] [--out <path>]\n"
          "\n"
          "kinds:\n"
          "  premium_mc   Monte Carlo streaming-premium distribution\n"
          "  payoff       payoff curve of a position or strategy preset\n"
          "  margin       seller / buyer / cboe margin requirement\n"
          "  pool_replay  rebuild a pool from an event log, emit snapshot\n"
          "  iv           implied volatility from AMM fee income\n"
          "  dte          range factor <-> effective days to expiry\n"
          "\n"
          "--seed and --out override the config fields of the same name.\n"
          "exit codes: 0 ok, 1 config error, 2 domain error, 3 io error\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        print_usage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? 1 : 0;
    }

    const std::string kind = args[0];
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;

    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&]() -> const std::string& {
            if (i + 1 >= args.size()) {
                throw panopt::ConfigError("missing value after " + a);
            }
            return args[++i];
        };
        try {
            if (a == "--config") {
                config_path = next();
            } else if (a == "--seed") {
                seed = std::stoull(next());
            } else if (a == "--out") {
                out = next();
            } else if (a == "--help" || a == "-h") {
                print_usage(std::cout);
                return 0;
            } else {
                std::cerr << "error: unknown argument '" << a << "'\n";
                print_usage(std::cerr);
                return 1;
            }
        } catch (const panopt::ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception&) {
            std::cerr << "error: bad value for " << a << "\n";
            return 1;
        }
    }

    if (!config_path) {
        std::cerr << "error: --config is required\n";
        print_usage(std::cerr);
        return 1;
    }

    try {
        const std::string text = panopt::read_text_file(*config_path);
        nlohmann::json config;
        try {
            config = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw panopt::ConfigError("cannot parse " + *config_path + ": " +
                                      e.what());
        }
        const panopt::ScenarioResult res =
            panopt::run_scenario(kind, config, seed, out);
        std::cout << res.summary.dump(2) << "\n";
        return 0;
    } catch (const panopt::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const panopt::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const panopt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
