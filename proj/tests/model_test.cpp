#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "indax/cli/random.hpp"
#include "indax/model/enumerate.hpp"
#include "indax/model/eval.hpp"
#include "indax/model/io.hpp"
#include "indax/model/sexpr.hpp"
#include "indax/model/space.hpp"
#include "indax/verify/oracles.hpp"
#include "support.hpp"

using namespace indax;
using namespace indax::testing;

namespace {

// Number of classes among all labeled structures of size <= max_size, counted
// by permutation search only.
std::size_t oracle_class_count(const Signature& sig, int max_size) {
    std::size_t classes = 0;
    for (int n = 1; n <= max_size; ++n) {
        std::vector<Structure> reps;
        for (auto& m : all_labeled(sig, n)) {
            bool seen = std::any_of(reps.begin(), reps.end(), [&](const Structure& r) { return verify::oracle_isomorphic(r, m); });
            if (!seen) reps.push_back(std::move(m));
        }
        classes += reps.size();
    }
    return classes;
}

}  // namespace

TEST(Eval, CycleExamples) {
    auto c3 = cycle(3);
    EXPECT_TRUE(eval(c3, S("(forall x (exists y (atom R x y)))")));
    EXPECT_FALSE(eval(c3, S("(exists x (atom R x x))")));
    EXPECT_TRUE(eval(c3, S("(and)")));
    EXPECT_FALSE(eval(c3, S("(or)")));
}

TEST(Eval, FreeVariablesUseAssignment) {
    auto c3 = cycle(3);
    auto edge = S("(atom R x y)");
    EXPECT_TRUE(eval(c3, edge, {{"x", 0}, {"y", 1}}));
    EXPECT_FALSE(eval(c3, edge, {{"x", 1}, {"y", 0}}));
    EXPECT_TRUE(eval(c3, S("(exists y (and (atom R x y) (not (eq x y))))"), {{"x", 2}}));
}

TEST(Eval, ShadowedVariableRestored) {
    auto c3 = cycle(3);
    // inner x rebinds, outer x must be visible again afterwards
    auto s = S("(forall x (and (exists x (atom R x x)) (eq x x)))");
    EXPECT_FALSE(eval(c3, s));
    auto t = S("(exists x (and (forall x (eq x x)) (atom R x y)))");
    EXPECT_TRUE(eval(c3, t, {{"y", 1}}));
}

TEST(Eval, MalformedInputs) {
    auto c3 = cycle(3);
    EXPECT_THROW(eval(c3, S("(exists x (atom R x))")), MalformedSentence);
    EXPECT_THROW(eval(c3, S("(exists x (atom Q x x))")), MalformedSentence);
    EXPECT_THROW(eval(c3, S("(atom R x y)"), {{"x", 0}}), MalformedSentence);
    EXPECT_THROW(eval(c3, S("(eq x x)"), {{"x", 7}}), MalformedSentence);
    EXPECT_THROW(check_well_formed(c3.signature(), S("(eq x x)")), MalformedSentence);
}

TEST(Eval, SharedSubformulaMatchesUnshared) {
    Rng rng(11);
    RandomSentences gen(mixed_sig(), rng, {5, {"x", "y", "z"}});
    for (int i = 0; i < 200; ++i) {
        auto s = gen.sentence();
        auto shared = Sentence::conj({s, Sentence::negate(s), Sentence::disj({s, s})});
        auto m = random_structure(mixed_sig(), 1 + static_cast<int>(rng.below(4)), rng);
        const bool v = eval(m, s);
        EXPECT_EQ(eval(m, shared), false);
        EXPECT_EQ(eval(m, Sentence::disj({s, s})), v);
    }
}

TEST(Sexpr, RoundTrip) {
    Rng rng(5);
    RandomSentences gen(mixed_sig(), rng, {6, {"x", "y", "z"}});
    for (int i = 0; i < 500; ++i) {
        auto s = gen.sentence();
        auto text = to_sexpr(s);
        auto back = parse_sentence(text);
        EXPECT_EQ(back, s) << text;
        EXPECT_EQ(to_sexpr(back), text);
    }
}

TEST(Sexpr, CommentsAndWhitespace) {
    auto s = parse_sentence("  ; leading comment\n(exists x\n  (atom P x)) ; trailing\n");
    EXPECT_EQ(to_sexpr(s), "(exists x (atom P x))");
}

TEST(Sexpr, ErrorsCarryPositions) {
    try {
        parse_sentence("(and\n  (atom P x)\n  (bogus x))");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 4u);
    }
    EXPECT_THROW(parse_sentence("(exists x (atom P x)"), ParseError);
    EXPECT_THROW(parse_sentence("(atom P)"), ParseError);
    EXPECT_THROW(parse_sentence("(not (eq x y)) extra"), ParseError);
    EXPECT_THROW(parse_sentence(""), ParseError);
    EXPECT_THROW(parse_sentence("(eq x)"), ParseError);
}

TEST(Enumerate, UnaryTwo) {
    auto space = enumerate_models(unary_sig(), 2);
    EXPECT_EQ(space.size(), 5u);
    EXPECT_EQ(oracle_class_count(unary_sig(), 2), 5u);
}

TEST(Enumerate, EmptySignature) {
    auto space = enumerate_models(Signature{}, 3);
    ASSERT_EQ(space.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(space[static_cast<std::size_t>(i)].size(), i + 1);
}

TEST(Enumerate, BinaryTwoMatchesOracle) {
    // 2 classes of size 1 and 10 of size 2, fixed by permutation dedup
    EXPECT_EQ(oracle_class_count(binary_sig(), 2), 12u);
    EXPECT_EQ(enumerate_models(binary_sig(), 2).size(), 12u);
}

TEST(Enumerate, LargerSpacesMatchOracle) {
    EXPECT_EQ(enumerate_models(binary_sig(), 3).size(), oracle_class_count(binary_sig(), 3));
    EXPECT_EQ(enumerate_models(mixed_sig(), 2).size(), oracle_class_count(mixed_sig(), 2));
    EXPECT_EQ(enumerate_models(binary_sig(), 3).size(), 116u);
}

TEST(Enumerate, RepresentativesPairwiseNonIsomorphic) {
    auto space = enumerate_models(mixed_sig(), 3);
    for (std::size_t i = 0; i < space.size(); ++i) {
        for (std::size_t j = i + 1; j < space.size(); ++j) {
            ASSERT_FALSE(verify::oracle_isomorphic(space[i], space[j])) << i << " " << j;
        }
    }
}

TEST(Enumerate, SampledLabeledStructuresCovered) {
    auto space = enumerate_models(mixed_sig(), 3);
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        auto m = random_structure(mixed_sig(), 1 + static_cast<int>(rng.below(3)), rng);
        int hits = 0;
        for (const auto& r : space.representatives()) hits += verify::oracle_isomorphic(r, m) ? 1 : 0;
        EXPECT_EQ(hits, 1);
    }
}

TEST(Enumerate, Limits) {
    EXPECT_THROW(enumerate_models(binary_sig(), 3, {10, 24}), EnumerationOverflow);
    EXPECT_THROW(enumerate_models(binary_sig(), 7, {}), EnumerationOverflow);
    EXPECT_THROW(enumerate_models(binary_sig(), 5, {}), EnumerationOverflow);
    EXPECT_THROW(enumerate_models(binary_sig(), 4, {1000, 12}), EnumerationOverflow);
    EXPECT_THROW(enumerate_models(binary_sig(), 0), PreconditionError);
}

TEST(Enumerate, CanonicalCodeIsPermutationInvariant) {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + static_cast<int>(rng.below(5));
        auto m = random_structure(mixed_sig(), n, rng);
        auto p = random_permutation(n, rng);
        EXPECT_EQ(canonical_code(m), canonical_code(m.permuted(p)));
    }
}

TEST(ModelsOf, Examples) {
    auto space = enumerate_models(unary_sig(), 2);
    EXPECT_EQ(models_of(Theory({S("(exists x (atom P x))")}), space).size(), 3u);
    EXPECT_EQ(models_of(Theory{}, space).size(), 5u);
    EXPECT_TRUE(models_of(Theory({Sentence::contradiction()}), space).empty());
}

TEST(Entails, Examples) {
    auto space = enumerate_models(unary_sig(), 2);
    EXPECT_TRUE(entails(Theory({S("(forall x (atom P x))")}), S("(exists x (atom P x))"), space).holds);
    EXPECT_TRUE(entails(Theory{}, S("(exists x (eq x x))"), space).holds);
    auto e = entails(Theory({S("(exists x (atom P x))")}), S("(forall x (atom P x))"), space);
    ASSERT_FALSE(e.holds);
    ASSERT_TRUE(e.counter_model);
    const auto& w = space[*e.counter_model];
    EXPECT_EQ(w.size(), 2);
    EXPECT_EQ(w.tuples(0).size(), 1u);
    EXPECT_EQ(e.bound, 2);
}

TEST(Entails, MatchesModelDifference) {
    auto space = enumerate_models(mixed_sig(), 2);
    SpaceEvaluator ev(space);
    Rng rng(21);
    RandomSentences gen(mixed_sig(), rng, {4, {"x", "y"}});
    for (int i = 0; i < 200; ++i) {
        Theory t;
        for (std::size_t k = rng.below(3); k > 0; --k) t.add(gen.sentence(), "t");
        auto phi = gen.sentence();
        Theory more = t;
        more.add(phi, "phi");
        const auto lhs = models_of(t, space).size() != models_of(more, space).size();
        EXPECT_EQ(!entails(t, phi, ev).holds, lhs);
    }
}

TEST(Preprocess, Examples) {
    auto space = enumerate_models(unary_sig(), 2);
    auto out = preprocess(Theory({S("(exists x (eq x x))"), S("(exists x (atom P x))")}), space);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(to_sexpr(out[0]), "(exists x (atom P x))");

    auto bad = preprocess(Theory({S("(forall x (atom P x))"), S("(exists x (not (atom P x)))")}), space);
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(to_sexpr(bad[0]), "(exists x (not (eq x x)))");

    EXPECT_TRUE(preprocess(Theory{}, space).empty());
}

TEST(Preprocess, PreservesModels) {
    auto space = enumerate_models(mixed_sig(), 2);
    SpaceEvaluator ev(space);
    Rng rng(4);
    RandomSentences gen(mixed_sig(), rng, {3, {"x", "y"}});
    for (int i = 0; i < 200; ++i) {
        Theory t;
        for (std::size_t k = rng.below(5); k > 0; --k) t.add(gen.sentence(), "t");
        EXPECT_EQ(ev.models(preprocess(t, ev)), ev.models(t));
    }
}

TEST(Io, StructureRoundTrip) {
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        auto m = random_structure(mixed_sig(), 1 + static_cast<int>(rng.below(4)), rng);
        auto text = structure_to_json(m).dump();
        EXPECT_EQ(structure_from_json(parse_json_text(text)), m);
    }
}

TEST(Io, StructureFileExample) {
    auto j = parse_json_text(R"({"signature":[{"name":"R","arity":2}],"size":3,"relations":{"R":[[0,1],[1,2],[2,0]]}})");
    EXPECT_EQ(structure_from_json(j), cycle(3));
}

TEST(Io, StructureErrors) {
    auto bad = [](const char* text) { return structure_from_json(parse_json_text(text)); };
    EXPECT_THROW(bad(R"({"signature":[{"name":"R","arity":2}],"size":2,"relations":{"R":[[0,2]]}})"), ParseError);
    EXPECT_THROW(bad(R"({"signature":[{"name":"R","arity":2}],"size":2,"relations":{"R":[[0,1],[0,1]]}})"), ParseError);
    EXPECT_THROW(bad(R"({"signature":[{"name":"R","arity":2}],"size":2,"relations":{"Q":[]}})"), ParseError);
    EXPECT_THROW(bad(R"({"signature":[{"name":"R","arity":0}],"size":2})"), ParseError);
    EXPECT_THROW(bad(R"({"signature":[],"size":0})"), ParseError);
    EXPECT_THROW(parse_json_text("{\n  \"size\": ,\n}"), ParseError);
}

TEST(Io, TheoryRoundTripAndSignature) {
    auto t = theory_from_json(parse_json_text(R"j(["(exists x (atom P x))", "(forall x (exists y (atom R x y)))"])j"));
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(theory_to_json(t).dump(), R"j(["(exists x (atom P x))","(forall x (exists y (atom R x y)))"])j");
    EXPECT_EQ(infer_signature(t.sentences()), mixed_sig());
    EXPECT_THROW(infer_signature({S("(exists x (atom P x))"), S("(exists x (atom P x x))")}), MalformedSentence);
    EXPECT_THROW(theory_from_json(parse_json_text(R"j(["(exists x"])j")), ParseError);
    EXPECT_THROW(theory_from_json(parse_json_text(R"j([1])j")), ParseError);
}

TEST(Sexpr, MetricsMatchRenderedText) {
    Rng rng(3);
    RandomSentences gen(mixed_sig(), rng, {5, {"x", "y", "z"}});
    SexprMetrics metrics;
    for (int i = 0; i < 200; ++i) {
        auto s = gen.sentence();
        const auto text = to_sexpr(s);
        ASSERT_EQ(metrics.length(s), text.size());
        ASSERT_EQ(sexpr_length(s), text.size());
        // a reparsed copy shares no nodes but has the same digest
        EXPECT_EQ(sentence_digest(parse_sentence(text)), metrics.digest(s));
    }
    EXPECT_NE(sentence_digest(S("(exists x (atom P x))")), sentence_digest(S("(forall x (atom P x))")));
    EXPECT_NE(sentence_digest(S("(and (eq x y))")), sentence_digest(S("(or (eq x y))")));
}
