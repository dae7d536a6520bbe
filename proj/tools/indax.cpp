#include <iostream>

#include <CLI11.hpp>

#include "indax/cli/run.hpp"

using indax::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"indax: independent axiomatizations over bounded model spaces"};
    app.require_subcommand(1);
    RunConfig cfg;

    app.add_option("--max-size", cfg.max_size, "Largest structure size in the model space")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for fuzz runs");
    app.add_option("--out", cfg.out, "Directory for JSON reports");
    app.add_option("--cap-classes", cfg.cap_classes, "Most isomorphism classes to enumerate");
    app.add_option("--cap-materialize", cfg.cap_materialize, "Largest structure whose Scott sentence is built");
    app.add_option("--cap-text", cfg.cap_text, "Longest sentence text written into a report");
    app.add_option("--signature", cfg.signature, "Signature as NAME:ARITY,... (default: inferred)");
    app.add_flag("--json", cfg.json_stdout, "Print the JSON report instead of the summary");

    auto* scott = app.add_subcommand("scott", "Scott height, invariant digest and sentence of a structure");
    scott->add_option("structure", cfg.inputs, "Structure file")->required();

    auto* analyze = app.add_subcommand("analyze", "Type counts per level for a structure or a theory");
    analyze->add_option("input", cfg.inputs, "Structure or theory file")->required();

    auto* transform = app.add_subcommand("transform", "Independent axiomatization of a theory");
    transform->add_option("theory", cfg.inputs, "Theory file")->required();
    transform->add_option("--method", cfg.method, "Construction to apply")
        ->check(CLI::IsMember({"partition", "reznikoff", "complement", "scott-filter", "auto"}));
    transform->add_option("--pivot", cfg.pivot, "Pivot index for --method partition");
    transform->add_option("--parts", cfg.parts, "Partition parts (theory file) for --method partition");
    transform->add_option("--extra", cfg.extra, "Second theory D for --method reznikoff");

    auto* setfam = app.add_subcommand("setfam", "Independence of finite set families");
    setfam->add_option("file", cfg.inputs, "Family file, or theory file with --from-theory")->required();
    auto* check = setfam->add_flag("--check", "Check independence");
    auto* independize = setfam->add_flag("--independize", "Apply the order-sensitive union construction");
    auto* case1 = setfam->add_option("--case1", cfg.case1_index, "Apply the complement-partition construction at I0");
    auto* from_theory = setfam->add_flag("--from-theory", "Family of model sets of a theory");
    check->excludes(independize)->excludes(case1)->excludes(from_theory);
    independize->excludes(case1)->excludes(from_theory);
    case1->excludes(from_theory);

    auto* verify = app.add_subcommand("verify", "Bounded independence and equivalence checks");
    verify->add_option("theory", cfg.inputs, "Theory file")->required();
    verify->add_flag("--independent", cfg.independent, "Check independence");
    verify->add_option("--equivalent-to", cfg.equivalent_to, "Theory to compare against");

    auto* fuzz = app.add_subcommand("fuzz", "Seeded random theories and families through the verify loop");
    fuzz->add_option("--theories", cfg.fuzz_theories, "Number of random theories");
    fuzz->add_option("--families", cfg.fuzz_families, "Number of random families");
    fuzz->add_option("--max-sentences", cfg.fuzz_max_sentences, "Most sentences per theory")->check(CLI::PositiveNumber);
    fuzz->add_option("--depth", cfg.fuzz_depth, "Most AST depth per sentence")->check(CLI::PositiveNumber);

    // Global flags are accepted after the subcommand too.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : indax::cli::kMalformed;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (*check) cfg.setfam_mode = "check";
    if (*independize) cfg.setfam_mode = "independize";
    if (*case1) cfg.setfam_mode = "case1";
    if (*from_theory) cfg.setfam_mode = "from-theory";
    return indax::cli::run(cfg, std::cout, std::cerr);
}
