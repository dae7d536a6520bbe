#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "indax/cli/random.hpp"
#include "indax/cli/report_json.hpp"
#include "indax/model/eval.hpp"
#include "indax/scott/scott.hpp"
#include "indax/setfam/family.hpp"
#include "indax/setfam/io.hpp"
#include "indax/transforms/theory.hpp"

namespace indax::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kMalformed = 2 };

/// Input the CLI cannot act on: a message prefixed with the file and position.
class InputError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;

    int max_size = 3;
    std::uint64_t seed = 0;
    std::optional<std::string> out;
    std::size_t cap_classes = EnumerationLimits{}.max_classes;
    int cap_materialize = kDefaultMaterializeCap;
    // Longest sentence text written into a report.
    std::size_t cap_text = std::size_t{1} << 22;
    // "P:1,R:2"; inferred from the sentences when absent.
    std::optional<std::string> signature;
    // Print the JSON report instead of the summary.
    bool json_stdout = false;

    // transform
    std::string method = "auto";
    std::optional<std::size_t> pivot;
    std::optional<std::string> parts;
    std::optional<std::string> extra;

    // setfam: check, independize, case1, from-theory
    std::string setfam_mode;
    std::size_t case1_index = 0;

    // verify
    bool independent = false;
    std::optional<std::string> equivalent_to;

    // fuzz
    std::size_t fuzz_theories = 20;
    std::size_t fuzz_families = 200;
    std::size_t fuzz_max_sentences = 5;
    int fuzz_depth = 4;
};

struct RunResult {
    int code = kPass;
    json report;
    std::vector<std::string> summary;
    // Extra files for --out, by name.
    std::map<std::string, json> files;
};

namespace detail {

inline std::string input_error(const std::string& path, const std::string& what) { return path + ":" + what; }

inline json load_json(const std::string& path) {
    try {
        return read_json_file(path);
    } catch (const ParseError& e) {
        throw InputError(input_error(path, e.what()));
    }
}

template <class F>
auto load(const std::string& path, F parse) {
    auto j = load_json(path);
    try {
        return parse(j);
    } catch (const ParseError& e) {
        throw InputError(input_error(path, e.what()));
    }
}

inline Theory load_theory(const std::string& path) { return load(path, theory_from_json); }

inline Signature parse_signature(const std::string& text) {
    std::vector<RelationSymbol> rels;
    std::stringstream in(text);
    std::string item;
    std::size_t column = 1;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        int arity = 0;
        try {
            if (colon == std::string::npos) throw std::invalid_argument("no arity");
            std::size_t used = 0;
            arity = std::stoi(item.substr(colon + 1), &used);
            if (used != item.size() - colon - 1) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw InputError("--signature:1:" + std::to_string(column) + ": expected NAME:ARITY, got '" + item + "'");
        }
        rels.push_back({item.substr(0, colon), arity});
        column += item.size() + 1;
    }
    try {
        return Signature(std::move(rels));
    } catch (const InvalidStructure& e) {
        throw InputError(std::string("--signature: ") + e.what());
    }
}

struct NamedTheory {
    std::string path;
    const Theory* theory;
};

/// The --signature if given, else the relations the theories mention. Every
/// sentence is checked against it.
inline Signature theory_signature(const RunConfig& cfg, const std::vector<NamedTheory>& theories) {
    std::vector<Sentence> all;
    for (const auto& t : theories) all.insert(all.end(), t.theory->sentences().begin(), t.theory->sentences().end());
    Signature sig;
    if (cfg.signature) {
        sig = parse_signature(*cfg.signature);
    } else {
        try {
            sig = infer_signature(all);
        } catch (const MalformedSentence& e) {
            throw InputError(std::string("theory: ") + e.what());
        }
    }
    for (const auto& t : theories) {
        for (std::size_t i = 0; i < t.theory->size(); ++i) {
            try {
                check_well_formed(sig, (*t.theory)[i]);
            } catch (const MalformedSentence& e) {
                throw InputError(t.path + ": sentence " + std::to_string(i) + ": " + e.what());
            }
        }
    }
    return sig;
}

inline ModelSpace make_space(const RunConfig& cfg, const Signature& sig) {
    if (cfg.max_size < 1) throw PreconditionError("--max-size must be >= 1");
    EnumerationLimits limits;
    limits.max_classes = cfg.cap_classes;
    return enumerate_models(sig, cfg.max_size, limits);
}

inline const std::string& single_input(const RunConfig& cfg) {
    if (cfg.inputs.size() != 1) throw InputError(cfg.command + ": expected exactly one input file");
    return cfg.inputs.front();
}

inline std::string pass_word(bool pass) { return pass ? "PASS" : "FAIL"; }

inline RunResult run_scott(const RunConfig& cfg) {
    const auto& path = single_input(cfg);
    auto m = load(path, structure_from_json);
    auto r = scott_report(m, cfg.cap_materialize);
    RunResult out;
    out.report = {{"command", "scott"}};
    out.report.update(scott_to_json(r, cfg.cap_materialize, cfg.cap_text));
    out.summary.push_back("height " + std::to_string(r.height));
    out.summary.push_back("sentence_level " + std::to_string(r.sentence_level));
    out.summary.push_back("digest " + r.invariant.hex_digest());
    if (!r.sentence) {
        out.summary.push_back("sentence omitted (size " + std::to_string(m.size()) + " > cap " +
                              std::to_string(cfg.cap_materialize) + ")");
    } else if (sexpr_length(*r.sentence) > cfg.cap_text) {
        out.summary.push_back("sentence omitted (" + std::to_string(sexpr_length(*r.sentence)) + " chars > cap " +
                              std::to_string(cfg.cap_text) + ")");
    } else {
        out.summary.push_back("sentence " + to_sexpr(*r.sentence));
    }
    return out;
}

inline RunResult run_analyze(const RunConfig& cfg) {
    const auto& path = single_input(cfg);
    auto j = load_json(path);
    RunResult out;
    out.report = {{"command", "analyze"}};
    std::vector<Structure> models;
    std::vector<std::size_t> ids;
    if (j.is_object()) {
        auto m = load(path, structure_from_json);
        out.report["input"] = "structure";
        models.push_back(m);
        ids.push_back(0);
    } else {
        auto t = load(path, theory_from_json);
        auto sig = theory_signature(cfg, {{path, &t}});
        auto space = make_space(cfg, sig);
        SpaceEvaluator ev(space);
        out.report["input"] = "theory";
        out.report["bound"] = cfg.max_size;
        out.report["scope"] = scope_note(verify::Subject::theory, cfg.max_size);
        ids = model_indices(t, ev);
        for (auto k : ids) models.push_back(space[k]);
    }
    out.report["models"] = models.size();
    out.summary.push_back("models " + std::to_string(models.size()));
    json levels = json::array();
    if (!models.empty()) {
        TypePartition joint(models);
        out.report["stabilization_level"] = joint.stabilization_level();
        out.summary.push_back("stabilization_level " + std::to_string(joint.stabilization_level()));
        out.summary.push_back("alpha psi phi");
        for (int a = 0; a <= joint.stabilization_level(); ++a) {
            auto types = alpha_types_of(joint, ids, a);
            levels.push_back({{"alpha", a}, {"psi", types.psi.size()}, {"phi", types.phi.size()}});
            out.summary.push_back(std::to_string(a) + " " + std::to_string(types.psi.size()) + " " +
                                  std::to_string(types.phi.size()));
        }
    }
    out.report["levels"] = std::move(levels);
    return out;
}

inline void add_witness_files(RunResult& out, const TransformReport& r, std::size_t cap_text) {
    if (fits(r.output, cap_text)) out.files["output.json"] = theory_to_json(r.output);
    for (std::size_t i = 0; i < r.independence_witnesses.size(); ++i) {
        if (r.independence_witnesses[i]) {
            out.files["witness_" + std::to_string(i) + ".json"] = structure_to_json(*r.independence_witnesses[i]);
        }
    }
}

inline RunResult run_transform(const RunConfig& cfg) {
    const auto& path = single_input(cfg);
    auto t = load_theory(path);
    Theory parts, extra;
    std::vector<NamedTheory> named{{path, &t}};
    const auto& method = cfg.method;
    if (method == "partition") {
        if (!cfg.pivot || !cfg.parts) throw InputError("transform: --method partition needs --pivot and --parts");
        parts = load_theory(*cfg.parts);
        named.push_back({*cfg.parts, &parts});
    } else if (method == "reznikoff") {
        if (!cfg.extra) throw InputError("transform: --method reznikoff needs --extra");
        extra = load_theory(*cfg.extra);
        named.push_back({*cfg.extra, &extra});
    } else if (method != "complement" && method != "scott-filter" && method != "auto") {
        throw InputError("transform: unknown method '" + method + "'");
    }
    auto sig = theory_signature(cfg, named);
    auto space = make_space(cfg, sig);
    SpaceEvaluator ev(space);
    ScottSentences scott(space, cfg.cap_materialize);

    RunResult out;
    out.report = {{"command", "transform"}, {"requested_method", method}};
    TransformReport r;
    try {
        if (method == "partition") {
            r = partition_transform(t, *cfg.pivot, parts.sentences(), ev);
        } else if (method == "reznikoff") {
            r = reznikoff_pairing(t, extra, ev);
        } else if (method == "complement") {
            r = complement_axiomatization(t, ev, scott);
        } else if (method == "scott-filter") {
            r = scott_filter_transform(t, ev, scott);
        } else {
            r = independent_axiomatize(t, ev, scott);
        }
    } catch (const PartitionInvalid& e) {
        out.code = kFail;
        out.report["applicable"] = false;
        out.report["bound"] = cfg.max_size;
        out.report["partition"] = partition_check_to_json(e.check(), space);
        out.summary.push_back("partition invalid: " + e.check().condition);
        return out;
    } catch (const HypothesisFailure& e) {
        out.code = kFail;
        out.report["applicable"] = false;
        out.report["bound"] = cfg.max_size;
        verify::VerificationReport cert;
        cert.bound = cfg.max_size;
        cert.pass = false;
        cert.certificates.push_back(e.certificate());
        out.report["hypothesis"] = verification_to_json(cert, &space);
        out.summary.push_back(std::string("not applicable: ") + e.what());
        return out;
    }
    out.report["applicable"] = true;
    out.report.update(transform_to_json(r, space, cfg.cap_text));
    out.code = r.verified() ? kPass : kFail;
    add_witness_files(out, r, cfg.cap_text);
    out.summary.push_back("method " + std::string(to_string(r.method)));
    out.summary.push_back("input " + std::to_string(r.input.size()) + " sentences, output " +
                          std::to_string(r.output.size()));
    for (const auto& s : r.output.sentences()) {
        const auto n = sexpr_length(s);
        out.summary.push_back("  " + (n <= 160 ? to_sexpr(s) : "(" + std::to_string(n) + " chars)"));
    }
    out.summary.push_back("equivalence " + pass_word(r.equivalence.pass));
    out.summary.push_back("independence " + pass_word(r.independence.pass));
    out.summary.push_back(scope_note(verify::Subject::theory, r.bound));
    return out;
}

inline RunResult run_setfam(const RunConfig& cfg) {
    const auto& path = single_input(cfg);
    RunResult out;
    out.report = {{"command", "setfam"}, {"mode", cfg.setfam_mode}};
    if (cfg.setfam_mode == "from-theory") {
        auto t = load_theory(path);
        auto sig = theory_signature(cfg, {{path, &t}});
        auto space = make_space(cfg, sig);
        SpaceEvaluator ev(space);
        auto f = theory_to_family(t, ev);
        auto ind = family_is_independent(f);
        out.report["bound"] = cfg.max_size;
        out.report["scope"] = scope_note(verify::Subject::theory, cfg.max_size);
        out.report["theory"] = theory_to_json(t);
        out.report["family"] = family_to_json(f);
        out.report["independent"] = ind.independent;
        out.files["family.json"] = family_to_json(f);
        out.summary.push_back("universe " + std::to_string(f.universe_size()) + " classes, " +
                              std::to_string(f.size()) + " sets");
        out.summary.push_back("independent " + std::string(ind.independent ? "yes" : "no"));
        return out;
    }

    auto f = load(path, family_from_json);
    out.report["input"] = family_to_json(f);
    if (cfg.setfam_mode == "check") {
        auto r = check_family_independence(f);
        out.report["intersection"] = indices(f.intersection());
        out.report["independence"] = verification_to_json(r);
        out.code = r.pass ? kPass : kFail;
        out.summary.push_back("independence " + pass_word(r.pass));
        if (const auto* bad = r.first_failure()) {
            out.summary.push_back("  fails at " + std::string(bad->index ? "set " + std::to_string(*bad->index)
                                                                       : "empty intersection"));
        }
    } else if (cfg.setfam_mode == "independize") {
        auto r = independize_family(f);
        out.report["output"] = family_to_json(r.result.family);
        out.report["kept"] = r.result.kept;
        out.report["dropped"] = r.result.dropped;
        out.report["independence"] = verification_to_json(r.independence);
        out.report["equivalence"] = verification_to_json(r.equivalence);
        out.files["family.json"] = family_to_json(r.result.family);
        out.summary.push_back("kept " + std::to_string(r.result.kept.size()) + ", dropped " +
                              std::to_string(r.result.dropped.size()));
        out.summary.push_back("independence " + pass_word(r.independence.pass));
        out.summary.push_back("equivalence " + pass_word(r.equivalence.pass));
    } else if (cfg.setfam_mode == "case1") {
        CaseOneResult r{SetFamily(f.universe_size()), {}, {}};
        try {
            r = case1_transform(f, cfg.case1_index);
        } catch (const NotApplicable& e) {
            out.code = kFail;
            out.report["applicable"] = false;
            out.report["reason"] = e.what();
            out.summary.push_back(std::string("not applicable: ") + e.what());
            return out;
        }
        auto ind = check_family_independence(r.family);
        auto eq = check_families_equivalent(f, r.family);
        out.report["applicable"] = true;
        out.report["output"] = family_to_json(r.family);
        out.report["blocks"] = subsets_to_json(r.blocks);
        out.report["source"] = r.source;
        out.report["independence"] = verification_to_json(ind);
        out.report["equivalence"] = verification_to_json(eq);
        out.files["family.json"] = family_to_json(r.family);
        out.code = ind.pass && eq.pass ? kPass : kFail;
        out.summary.push_back("independence " + pass_word(ind.pass));
        out.summary.push_back("equivalence " + pass_word(eq.pass));
    } else {
        throw InputError("setfam: choose one of --check, --independize, --case1, --from-theory");
    }
    return out;
}

inline RunResult run_verify(const RunConfig& cfg) {
    const auto& path = single_input(cfg);
    auto t = load_theory(path);
    Theory other;
    std::vector<NamedTheory> named{{path, &t}};
    if (cfg.equivalent_to) {
        other = load_theory(*cfg.equivalent_to);
        named.push_back({*cfg.equivalent_to, &other});
    }
    auto sig = theory_signature(cfg, named);
    auto space = make_space(cfg, sig);
    SpaceEvaluator ev(space);
    RunResult out;
    out.report = {{"command", "verify"}, {"bound", cfg.max_size}, {"theory", theory_to_json(t)}};
    bool pass = true;
    if (cfg.independent || !cfg.equivalent_to) {
        auto r = verify::check_independence(t, ev);
        out.report["independence"] = verification_to_json(r, &space);
        out.summary.push_back("independence " + pass_word(r.pass));
        pass = pass && r.pass;
    }
    if (cfg.equivalent_to) {
        auto r = verify::check_theories_equivalent(t, other, ev);
        out.report["equivalent_to"] = theory_to_json(other);
        out.report["equivalence"] = verification_to_json(r, &space);
        out.summary.push_back("equivalence " + pass_word(r.pass));
        pass = pass && r.pass;
    }
    out.summary.push_back(scope_note(verify::Subject::theory, cfg.max_size));
    out.code = pass ? kPass : kFail;
    return out;
}

inline RunResult run_fuzz(const RunConfig& cfg) {
    if (!cfg.inputs.empty()) throw InputError("fuzz: takes no input files");
    Rng rng(cfg.seed);
    const Signature sig = cfg.signature ? parse_signature(*cfg.signature) : Signature({{"P", 1}, {"R", 2}});
    auto space = make_space(cfg, sig);
    SpaceEvaluator ev(space);
    ScottSentences scott(space, cfg.cap_materialize);
    RandomSentences gen(sig, rng, {cfg.fuzz_depth, {"x", "y", "z"}});

    RunResult out;
    out.report = {{"command", "fuzz"},
                  {"seed", cfg.seed},
                  {"bound", cfg.max_size},
                  {"scope", scope_note(verify::Subject::theory, cfg.max_size)},
                  {"signature", signature_to_json(sig)}};
    SexprMetrics metrics;
    std::size_t theory_failures = 0;
    json theories = json::array();
    for (std::size_t i = 0; i < cfg.fuzz_theories; ++i) {
        Theory t;
        // redraw until the theory has a model in the space
        do {
            t = Theory{};
            for (std::size_t k = 1 + rng.below(cfg.fuzz_max_sentences); k > 0; --k) t.add(gen.sentence(), "fuzz");
        } while (ev.models(t).none());
        auto r = independent_axiomatize(t, ev, scott);
        auto ind = verify::check_independence(r.output, ev);
        auto eq = verify::check_theories_equivalent(t, r.output, ev);
        if (!ind.pass || !eq.pass) ++theory_failures;
        json output = json::array();
        for (const auto& s : r.output.sentences()) {
            output.push_back({{"chars", metrics.length(s)}, {"digest", hex64(metrics.digest(s))}});
        }
        theories.push_back({{"input", theory_to_json(t)},
                            {"output", std::move(output)},
                            {"notes", r.notes},
                            {"independent", ind.pass},
                            {"equivalent", eq.pass}});
    }

    std::size_t family_failures = 0;
    json families = json::array();
    for (std::size_t i = 0; i < cfg.fuzz_families; ++i) {
        auto f = random_family(rng, 1 + rng.below(16), rng.below(9));
        auto two = case2_transform(f);
        bool ok = family_is_independent(two.family).independent && families_equivalent(f, two.family);
        for (std::size_t k = 0; k < two.kept.size(); ++k) ok = ok && f[two.kept[k]].is_subset_of(two.family[k]);
        json case1 = nullptr;
        if (f.size() >= 2) {
            for (std::size_t i0 = 0; i0 < f.size(); ++i0) {
                if ((~f[i0]).count() + 1 < f.size()) continue;
                auto one = case1_transform(f, i0);
                const bool ok1 = family_is_independent(one.family).independent && families_equivalent(f, one.family);
                ok = ok && ok1;
                case1 = {{"i0", i0}, {"output", family_to_json(one.family)}, {"pass", ok1}};
                break;
            }
        }
        if (!ok) ++family_failures;
        families.push_back({{"input", family_to_json(f)},
                            {"case2", family_to_json(two.family)},
                            {"dropped", two.dropped},
                            {"case1", std::move(case1)},
                            {"pass", ok}});
    }
    out.report["theories"] = std::move(theories);
    out.report["families"] = std::move(families);
    out.report["theory_failures"] = theory_failures;
    out.report["family_failures"] = family_failures;
    out.code = theory_failures == 0 && family_failures == 0 ? kPass : kFail;
    out.summary.push_back("seed " + std::to_string(cfg.seed));
    out.summary.push_back("theories " + std::to_string(cfg.fuzz_theories) + ", failures " +
                          std::to_string(theory_failures));
    out.summary.push_back("families " + std::to_string(cfg.fuzz_families) + ", failures " +
                          std::to_string(family_failures));
    out.summary.push_back(scope_note(verify::Subject::theory, cfg.max_size));
    return out;
}

}  // namespace detail

/// Runs one command without touching stdout or the output directory.
inline RunResult execute(const RunConfig& cfg) {
    if (cfg.command == "scott") return detail::run_scott(cfg);
    if (cfg.command == "analyze") return detail::run_analyze(cfg);
    if (cfg.command == "transform") return detail::run_transform(cfg);
    if (cfg.command == "setfam") return detail::run_setfam(cfg);
    if (cfg.command == "verify") return detail::run_verify(cfg);
    if (cfg.command == "fuzz") return detail::run_fuzz(cfg);
    throw InputError("unknown command '" + cfg.command + "'");
}

inline std::string render(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::filesystem::path& p, const json& j) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write '" + p.string() + "'");
    f << render(j);
}

/// execute() plus output: the summary (or JSON) on `out`, report files under
/// --out, and errors on `err`. Returns the exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    RunResult r;
    try {
        r = execute(cfg);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kFail;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    }
    try {
        if (cfg.out) {
            std::filesystem::path dir(*cfg.out);
            std::filesystem::create_directories(dir);
            write_file(dir / (cfg.command + ".json"), r.report);
            for (const auto& [name, j] : r.files) write_file(dir / name, j);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    }
    if (cfg.json_stdout) {
        out << render(r.report);
    } else {
        for (const auto& line : r.summary) out << line << "\n";
    }
    return r.code;
}

}  // namespace indax::cli
