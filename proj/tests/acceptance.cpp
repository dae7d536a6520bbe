// Acceptance run: one PASS/FAIL line per criterion. Arguments select
// criteria by number; no arguments runs all of them.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "indax/cli/random.hpp"
#include "indax/cli/run.hpp"
#include "indax/model/enumerate.hpp"
#include "indax/scott/scott.hpp"
#include "indax/setfam/family.hpp"
#include "indax/transforms/phi_star.hpp"
#include "indax/transforms/theory.hpp"
#include "indax/verify/checks.hpp"
#include "indax/verify/oracles.hpp"
#include "support.hpp"

using namespace indax;
using namespace indax::testing;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
}

std::vector<Tuple> tuples_up_to_two(int n) {
    std::vector<Tuple> out{{}};
    for (int a = 0; a < n; ++a) out.push_back({a});
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) out.push_back({a, b});
    }
    return out;
}

std::vector<Structure> labeled_up_to(const Signature& sig, int max_size) {
    std::vector<Structure> out;
    for (int n = 1; n <= max_size; ++n) {
        for (auto& m : all_labeled(sig, n)) out.push_back(std::move(m));
    }
    return out;
}

/// Mixed-signature space at size 3 shared by the theory criteria.
struct Shared {
    Shared() : space(enumerate_models(mixed_sig(), 3)), ev(space), scott(space) {}
    ModelSpace space;
    SpaceEvaluator ev;
    ScottSentences scott;
};

Shared& shared() {
    static Shared s;
    return s;
}

Theory random_theory(RandomSentences& gen, Rng& rng, std::size_t max_sentences) {
    Theory t;
    for (std::size_t k = 1 + rng.below(max_sentences); k > 0; --k) t.add(gen.sentence(), "random");
    return t;
}

Verdict criterion1() {
    const auto t0 = Clock::now();
    const auto all = labeled_up_to(binary_sig(), 3);
    std::size_t queries = 0, disagreements = 0;
    for (const auto& m : all) {
        const auto ta = tuples_up_to_two(m.size());
        for (const auto& n : all) {
            TypePartition joint({m, n});
            verify::TypeOracle oracle(m, n);
            for (const auto& a : ta) {
                for (const auto& b : tuples_up_to_two(n.size())) {
                    if (a.size() != b.size()) continue;
                    for (int level = 0; level <= 4; ++level) {
                        ++queries;
                        if (joint.same_type(0, a, 1, b, level) != oracle.equal(a, b, level)) ++disagreements;
                    }
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    return {disagreements == 0 && secs <= 300.0,
            std::to_string(all.size()) + " structures, " + std::to_string(all.size() * all.size()) + " pairs, " +
                std::to_string(queries) + " queries, " + std::to_string(disagreements) + " disagreements, " +
                fmt(secs) + "s (limit 300s)"};
}

Verdict criterion2() {
    Rng rng(2002);
    std::size_t random_pairs = 0, isomorphic = 0, disagreements = 0;
    auto check = [&](const Structure& m, const Structure& n, const CanonicalInvariant& im, const CanonicalInvariant& in) {
        const bool iso = verify::oracle_isomorphism(m, n).has_value();
        if (iso) ++isomorphic;
        if ((im == in) != iso) ++disagreements;
    };
    // half relabelings, half independent draws of equal size
    for (int i = 0; i < 400; ++i) {
        const int size = 1 + static_cast<int>(rng.below(5));
        auto m = random_structure(mixed_sig(), size, rng);
        Structure n = i % 2 == 0 ? m.permuted(random_permutation(size, rng))
                                 : random_structure(mixed_sig(), rng.coin(1, 4) ? 1 + static_cast<int>(rng.below(5)) : size, rng);
        check(m, n, canonical_invariant(m), canonical_invariant(n));
        ++random_pairs;
    }
    std::size_t exhaustive_pairs = 0;
    for (int size = 1; size <= 3; ++size) {
        const auto all = all_labeled(mixed_sig(), size);
        std::vector<CanonicalInvariant> inv;
        inv.reserve(all.size());
        for (const auto& m : all) inv.push_back(canonical_invariant(m));
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = i; j < all.size(); ++j) {
                check(all[i], all[j], inv[i], inv[j]);
                ++exhaustive_pairs;
            }
        }
    }
    return {disagreements == 0,
            std::to_string(random_pairs) + " random pairs (size <= 5) + " + std::to_string(exhaustive_pairs) +
                " same-size pairs (size <= 3), " + std::to_string(isomorphic) + " isomorphic, " +
                std::to_string(disagreements) + " disagreements"};
}

Verdict criterion3() {
    auto space = enumerate_models(binary_sig(), 3);
    SpaceEvaluator ev(space);
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto holds = ev.truth(scott_sentence(space[i]));
        for (std::size_t j = 0; j < space.size(); ++j) {
            const bool iso = verify::oracle_isomorphism(space[i], space[j]).has_value();
            if (holds[j] != iso) ++disagreements;
        }
    }
    return {disagreements == 0, std::to_string(space.size()) + " classes, " +
                                    std::to_string(space.size() * space.size()) + " pairs, " +
                                    std::to_string(disagreements) + " disagreements"};
}

Verdict criterion4() {
    auto& s = shared();
    Rng rng(4004);
    RandomSentences gen(mixed_sig(), rng, {4, {"x", "y", "z"}});
    std::size_t passed = 0, redraws = 0, total_out = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < 500; ++i) {
        Theory t = random_theory(gen, rng, 5);
        while (s.ev.models(t).none()) {
            ++redraws;
            t = random_theory(gen, rng, 5);
        }
        auto r = independent_axiomatize(t, s.ev, s.scott);
        total_out += r.output.size();
        if (verify::check_independence(r.output, s.ev).pass && verify::check_theories_equivalent(t, r.output, s.ev).pass) {
            ++passed;
        }
    }
    return {passed == 500, std::to_string(passed) + "/500 verified (" + std::to_string(redraws) +
                               " inconsistent draws replaced, " + std::to_string(total_out) + " output sentences, " +
                               fmt(seconds_since(t0)) + "s)"};
}

Verdict criterion5() {
    auto& s = shared();
    Rng rng(5005);
    RandomSentences gen(mixed_sig(), rng, {4, {"x", "y"}});
    std::size_t built = 0, equivalent = 0, witnessing = 0;
    while (built < 60) {
        Theory t;
        const std::size_t k = 2 + rng.below(4);
        for (std::size_t i = 0; i < k; ++i) t.add(gen.sentence(), "random");
        const std::size_t pivot = rng.below(k);
        const auto outside = indices(~s.ev.truth(t[pivot]));
        if (outside.size() < k - 1) continue;
        // deal the models of ¬φ0 into k-1 nonempty blocks, one Scott disjunction each
        std::vector<std::vector<Sentence>> blocks(k - 1);
        for (std::size_t i = 0; i < outside.size(); ++i) {
            const auto b = i < k - 1 ? i : rng.below(k - 1);
            blocks[b].push_back(s.scott[outside[i]]);
        }
        std::vector<Sentence> psis;
        for (auto& b : blocks) psis.push_back(Sentence::disj(b));
        auto r = partition_transform(t, pivot, psis, s.ev);
        ++built;
        if (verify::check_theories_equivalent(t, r.output, s.ev).pass) ++equivalent;
        bool witnesses = true;
        for (std::size_t i = 0; i < psis.size(); ++i) {
            ModelSet target = ~s.ev.truth(r.output[i]);
            for (std::size_t j = 0; j < r.output.size(); ++j) {
                if (j != i) target &= s.ev.truth(r.output[j]);
            }
            if (!s.ev.truth(psis[i]).is_subset_of(target)) witnesses = false;
        }
        if (witnesses) ++witnessing;
    }
    return {equivalent == built && witnessing == built, std::to_string(built) + " instances, equivalent " +
                                                    std::to_string(equivalent) + "/" + std::to_string(built) +
                                                    ", psi-models witness " + std::to_string(witnessing) + "/" +
                                                    std::to_string(built)};
}

Verdict criterion6() {
    auto& s = shared();
    Rng rng(6006);
    RandomSentences gen(mixed_sig(), rng, {3, {"x", "y"}});
    std::size_t applicable = 0, verified = 0, inapplicable = 0, valid_certs = 0, attempts = 0;
    while ((applicable < 120 || inapplicable < 30) && attempts < 20000) {
        ++attempts;
        Theory c = random_theory(gen, rng, 4);
        Theory d;
        for (std::size_t k = rng.below(c.size() + 1); k > 0; --k) d.add(gen.sentence(), "extra");
        bool shared_sentence = false;
        for (const auto& x : c.sentences()) {
            for (const auto& y : d.sentences()) shared_sentence = shared_sentence || x == y;
        }
        if (shared_sentence) continue;
        try {
            auto r = reznikoff_pairing(c, d, s.ev);
            if (applicable >= 120) continue;
            ++applicable;
            if (r.output.size() == c.size() && verify::check_independence(r.output, s.ev).pass &&
                verify::check_theories_equivalent(r.input, r.output, s.ev).pass) {
                ++verified;
            }
        } catch (const HypothesisFailure& e) {
            if (inapplicable >= 30) continue;
            ++inapplicable;
            Theory all = c;
            for (std::size_t i = 0; i < d.size(); ++i) all.add(d[i], "extra");
            const auto i = e.index();
            const auto rest = all.without(i);
            bool ok = i < c.size() && entails(rest, c[i], s.ev).holds && e.certificate().index == i;
            if (e.certificate().model) {
                const auto m = *e.certificate().model;
                ok = ok && s.ev.models(rest)[m] && s.ev.truth(c[i])[m];
            } else {
                ok = ok && s.ev.models(rest).none();
            }
            if (ok) ++valid_certs;
        }
    }
    return {applicable >= 100 && verified == applicable && inapplicable > 0 && valid_certs == inapplicable,
            std::to_string(verified) + "/" + std::to_string(applicable) + " applicable instances verified, " +
                std::to_string(valid_certs) + "/" + std::to_string(inapplicable) + " not-applicable certificates valid"};
}

Verdict criterion7() {
    Rng rng(7007);
    std::size_t case2_ok = 0, case1_runs = 0, case1_ok = 0, monotone_ok = 0;
    for (int i = 0; i < 1000; ++i) {
        auto f = random_family(rng, 1 + rng.below(16), rng.below(9));
        auto two = case2_transform(f);
        if (family_is_independent(two.family).independent && families_equivalent(f, two.family)) ++case2_ok;
        bool monotone = true;
        for (std::size_t k = 0; k < two.kept.size(); ++k) monotone = monotone && f[two.kept[k]].is_subset_of(two.family[k]);
        if (monotone) ++monotone_ok;
        if (f.size() < 2) continue;
        for (std::size_t i0 = 0; i0 < f.size(); ++i0) {
            if ((~f[i0]).count() + 1 < f.size()) continue;
            ++case1_runs;
            auto one = case1_transform(f, i0);
            if (family_is_independent(one.family).independent && families_equivalent(f, one.family)) ++case1_ok;
        }
    }
    return {case2_ok == 1000 && monotone_ok == 1000 && case1_ok == case1_runs,
            "case II " + std::to_string(case2_ok) + "/1000, monotone " + std::to_string(monotone_ok) +
                "/1000, case I " + std::to_string(case1_ok) + "/" + std::to_string(case1_runs)};
}

Verdict criterion8() {
    auto space = enumerate_models(mixed_sig(), 3);
    SpaceEvaluator ev(space);
    Rng rng(8008);
    std::size_t instances = 0, exact = 0, star_models = 0;
    std::string failure;
    for (int round = 0; round < 30; ++round) {
        const std::size_t count = 2 + rng.below(5);
        std::vector<std::size_t> chosen;
        while (chosen.size() < count) {
            auto k = rng.below(space.size());
            if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) chosen.push_back(k);
        }
        std::vector<std::pair<Structure, int>> picks;
        for (auto k : chosen) {
            picks.push_back({space[k], static_cast<int>(rng.below(static_cast<std::size_t>(space[k].size())))});
        }
        auto types = element_types(picks, space.max_size() + 1);
        auto tree = build_separating_tree(types, ev);
        ++instances;
        const auto problem = check_tree(tree, types, ev);
        const auto star = ev.truth(phi_star(tree));
        const auto realized = realized_types(types, ev);
        bool ok = problem.empty();
        for (std::size_t m = 0; m < space.size(); ++m) {
            if (!star[m]) continue;
            ++star_models;
            int hits = 0;
            for (const auto& r : realized) hits += r[m] ? 1 : 0;
            ok = ok && hits == 1;
        }
        for (auto k : chosen) ok = ok && star[k];
        if (ok) {
            ++exact;
        } else if (failure.empty()) {
            failure = ", first failure at instance " + std::to_string(instances) + (problem.empty() ? "" : ": " + problem);
        }
    }
    return {exact == instances && instances >= 20,
            std::to_string(exact) + "/" + std::to_string(instances) + " trees exact over " +
                std::to_string(star_models) + " models of phi*" + failure};
}

Verdict criterion9() {
    std::vector<cli::RunConfig> runs;
    cli::RunConfig fuzz;
    fuzz.command = "fuzz";
    fuzz.max_size = 2;
    fuzz.seed = 909;
    fuzz.fuzz_theories = 60;
    fuzz.fuzz_families = 300;
    runs.push_back(fuzz);
    fuzz.max_size = 3;
    fuzz.seed = 910;
    fuzz.fuzz_theories = 5;
    fuzz.fuzz_families = 20;
    runs.push_back(fuzz);
    cli::RunConfig transform;
    transform.command = "transform";
    transform.max_size = 2;
    transform.inputs = {std::string(INDAX_SAMPLES_DIR) + "/theory.json"};
    runs.push_back(transform);
    cli::RunConfig scott;
    scott.command = "scott";
    scott.inputs = {std::string(INDAX_SAMPLES_DIR) + "/cycle3.json"};
    runs.push_back(scott);

    std::size_t identical = 0, bytes = 0;
    for (const auto& cfg : runs) {
        const auto first = cli::render(cli::execute(cfg).report);
        const auto second = cli::render(cli::execute(cfg).report);
        bytes += first.size();
        if (first == second && !first.empty()) ++identical;
    }
    return {identical == runs.size(), std::to_string(identical) + "/" + std::to_string(runs.size()) +
                                          " seeded runs byte-identical on repeat (" + std::to_string(bytes) +
                                          " report bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto t0 = Clock::now();
        Verdict v{false, ""};
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d: %s - %s [%ss]\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(),
                    fmt(seconds_since(t0)).c_str());
        std::fflush(stdout);
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
