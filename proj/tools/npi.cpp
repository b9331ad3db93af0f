#include <npi/cli/run.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

void add_shared(CLI::App& sub, npi::cli::RunConfig& config, std::vector<std::string>& methods,
                std::string& ties, bool with_methods)
{
    sub.add_option("input", config.input, "CSV input file")->required();
    sub.add_option("--order", config.ordering, "group labels in event order")->delimiter(',');
    sub.add_option("--ties", ties, "reject, epsilon or epsilon:<step>");
    sub.add_option("--budget", config.budget, "largest enumeration to attempt");
    sub.add_option("--output,-o", config.output, "write JSON here instead of stdout");
    if (with_methods) {
        sub.add_option("--methods", methods,
                       "bounds,exact,algA,algB,empirical,perfect,kj-profile,permutations")
            ->delimiter(',');
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nonparametric predictive inference for ordered groups"};
    app.require_subcommand(1);

    npi::cli::RunConfig config;
    std::vector<std::string> methods;
    std::string ties;

    struct Entry {
        const char* name;
        const char* help;
        bool with_methods;
    };
    const Entry entries[] = {
        {"order", "lower and upper probability that the next observations follow an ordering", true},
        {"vus", "bounds on the volume under the ROC surface", true},
        {"rss", "perfect-ordering report for a ranked-set sample (rank,cycle,value)", true},
        {"scan", "orderings with the smallest and largest empirical value", false},
    };
    for (const auto& e : entries) {
        add_shared(*app.add_subcommand(e.name, e.help), config, methods, ties, e.with_methods);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : npi::cli::kExitValidation;
    }

    try {
        config.command = npi::cli::parse_command(app.get_subcommands().front()->get_name());
        for (const auto& m : methods) {
            config.methods.push_back(npi::cli::parse_method(m));
        }
        if (!ties.empty()) {
            config.ties = npi::cli::parse_ties(ties);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return npi::cli::kExitValidation;
    }

    const int code = npi::cli::run_and_write(config, std::cout);
    if (code != npi::cli::kExitOk) {
        std::cerr << "npi: failed with exit code " << code << "\n";
    }
    return code;
}
