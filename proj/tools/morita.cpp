#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "morita/cli.hpp"

int main(int argc, char** argv) {
    using namespace morita::cli;
    CLI::App app{"Loop-space homology, Ext and Hochschild invariants of finite CW complexes"};
    app.require_subcommand(1);
    RunConfig config;
    std::string format = "tsv";

    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input) {
            sub->add_option("--space", config.space, "builtin space, name[:param]");
            sub->add_option("--file", config.file, "CW complex JSON file");
            sub->add_option("--max-degree", config.max_degree, "highest degree reported");
            sub->add_option("--word-bound", config.word_bound, "word-length bound for degree-0 generators");
        }
        sub->add_option("--field", config.field, "q or fp:<p>");
        sub->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    };
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"build", "print the cellular model: generators, degrees, differentials"},
        {"homology", "homology of the cellular model (loop-space homology)"},
        {"ext", "Ext of the trivial module, in cohomological degrees"},
        {"hh", "Hochschild homology, or cohomology with --cohomology"},
        {"check", "validate d^2 = 0, augmentation, trivial module and resolution"}};
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        add_common(sub, true);
        if (name == "ext" || name == "hh")
            sub->add_flag("--oracle", config.oracle, "use the bar-construction oracle");
        if (name == "hh")
            sub->add_flag("--cohomology", config.cohomology, "Hochschild cohomology");
    }
    auto* s1 = app.add_subcommand("s1-hom", "Hom between circle local systems with scalar monodromy");
    add_common(s1, false);
    s1->add_option("--lambda", config.lambda, "monodromy eigenvalue (rational)");
    s1->add_option("--max-degree", config.max_degree, "highest degree reported");
    auto* spaces = app.add_subcommand("spaces", "list builtin spaces");
    spaces->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

    CLI11_PARSE(app, argc, argv);
    config.command = *parse_command(app.get_subcommands().front()->get_name());
    config.format = format == "json" ? Format::json : Format::tsv;
    try {
        std::cout << run(config);
    } catch (const morita::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
