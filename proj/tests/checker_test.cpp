#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltloracle/buchi.hpp"
#include "ltloracle/checker.hpp"
#include "ltloracle/errors.hpp"
#include "ltloracle/gen.hpp"
#include "ltloracle/rng.hpp"
#include "test_util.hpp"

using namespace ltloracle;
using namespace testutil;

namespace {

const std::vector<std::string> kP{"p"};
const std::vector<std::string> kPQ{"p", "q"};

Formula fp(const std::string& text, const std::vector<std::string>& alphabet = kP) {
    return parse_ltl(text, alphabet);
}

} // namespace

TEST_CASE("eval_lasso basics") {
    // ({p})^w
    CHECK(eval_lasso({}, {1}, fp("G p"), kP));
    CHECK(eval_lasso({}, {1}, fp("F p"), kP));
    CHECK_FALSE(eval_lasso({}, {1}, fp("F (! p)"), kP));

    // ({p},{})^w : p recurs but does not hold globally
    CHECK(eval_lasso({}, {1, 0}, fp("G (F p)"), kP));
    CHECK_FALSE(eval_lasso({}, {1, 0}, fp("G p"), kP));
    CHECK(eval_lasso({}, {1, 0}, fp("X (! p)"), kP));

    // stem {} then ({p})^w ; true U p is F p
    CHECK(eval_lasso({0}, {1}, fp("true U p"), kP));
    CHECK_FALSE(eval_lasso({0}, {1}, fp("p"), kP));
    CHECK(eval_lasso({0}, {1}, fp("X p"), kP));

    // release: q stays until p&q releases it
    CHECK(eval_lasso({}, {2, 3, 0}, fp("p R q", kPQ), kPQ) ==
          eval_lasso({}, {2, 3, 0}, fp("! (! p U ! q)", kPQ), kPQ));

    CHECK_THROWS_AS(eval_lasso({1}, {}, fp("p"), kP), DataError);
}

TEST_CASE("check on one-state structures") {
    const KripkeStructure k = one_state(kP, 1); // labeled {p}, self-loop

    const Verdict holds = check(k, fp("G p"));
    CHECK(holds.holds());
    CHECK_FALSE(holds.counterexample.has_value());

    const Verdict violated = check(k, fp("F (! p)"));
    REQUIRE_FALSE(violated.holds());
    REQUIRE(violated.counterexample.has_value());
    CHECK(violated.counterexample->stem.empty());
    CHECK(violated.counterexample->loop == std::vector<std::uint32_t>{0});
    CHECK(verify_counterexample(k, fp("F (! p)"), *violated.counterexample));
}

TEST_CASE("check on the two-state cycle") {
    // 0{p} -> 1{q} -> 0, init {0}
    const KripkeStructure k = two_cycle(kPQ, 1, 2);
    CHECK(check(k, fp("G (p -> X q)", kPQ)).holds());
    CHECK(check_reference(k, fp("G (p -> X q)", kPQ)).holds());
    CHECK(check(k, fp("G (F q)", kPQ)).holds());
    CHECK_FALSE(check(k, fp("G p", kPQ)).holds());
    CHECK_FALSE(check(k, fp("X (X q)", kPQ)).holds());
}

TEST_CASE("check_reference trivials") {
    const KripkeStructure k = one_state(kP, 1);
    CHECK(check_reference(k, Formula::top()).holds());
    CHECK(check_reference(k, fp("G p")).holds());
    const Verdict v = check_reference(k, fp("F (! p)"));
    REQUIRE_FALSE(v.holds());
    REQUIRE(v.counterexample.has_value());
    CHECK(verify_counterexample(k, fp("F (! p)"), *v.counterexample));
}

TEST_CASE("ltl_to_buchi constant and atom languages") {
    const BuchiAutomaton t = ltl_to_buchi(Formula::top(), kP);
    CHECK(t.state_count() == 1);
    CHECK(automaton_accepts(t, {}, {0}));
    CHECK(automaton_accepts(t, {}, {1}));

    const BuchiAutomaton bot = ltl_to_buchi(Formula::bottom(), kP);
    CHECK_FALSE(automaton_accepts(bot, {}, {0}));

    const BuchiAutomaton ap = ltl_to_buchi(Formula::atom("p"), kP);
    CHECK(automaton_accepts(ap, {}, {1}));
    CHECK(automaton_accepts(ap, {1}, {0}));
    CHECK_FALSE(automaton_accepts(ap, {0}, {1}));

    const BuchiAutomaton gp = ltl_to_buchi(fp("G p"), kP);
    CHECK(automaton_accepts(gp, {}, {1}));
    CHECK_FALSE(automaton_accepts(gp, {}, {1, 0}));
}

TEST_CASE("automaton language equals lasso-word evaluation") {
    // 1000 random (formula, ultimately periodic word) pairs over 2 APs
    GenSpec spec = GenSpec::defaults();
    spec.ap_count = 2;
    SplitMix64 words(0xABCDEF);
    int accepted = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        spec.seed = 0x1000 + i;
        spec.formula_length = 1 + static_cast<int>(i % 10);
        const Formula f = random_formula(spec, kPQ);
        const BuchiAutomaton a = ltl_to_buchi(to_nnf(f), kPQ);

        std::vector<std::uint64_t> stem, loop;
        const std::size_t stem_len = words.next_below(5);
        const std::size_t loop_len = 1 + words.next_below(7);
        for (std::size_t j = 0; j < stem_len; ++j) stem.push_back(words.next_below(4));
        for (std::size_t j = 0; j < loop_len; ++j) loop.push_back(words.next_below(4));

        const bool by_eval = eval_lasso(stem, loop, f, kPQ);
        const bool by_automaton = automaton_accepts(a, stem, loop);
        REQUIRE(by_eval == by_automaton);
        accepted += by_eval;
    }
    // sanity: the sample is not one-sided
    CHECK(accepted > 100);
    CHECK(accepted < 900);
}

TEST_CASE("dual-implementation agreement on random instances") {
    GenSpec spec = GenSpec::defaults();
    spec.state_min = 1;
    spec.state_max = 6;
    spec.ap_count = 2;
    spec.edge_density = 0.35;
    int violated = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
        spec.seed = 0xBEEF00 + i;
        spec.formula_length = 1 + static_cast<int>(i % 15);
        const KripkeStructure k = random_kripke(spec);
        const Formula f = random_formula(spec, default_alphabet(2));
        const Verdict a = check(k, f);
        const Verdict b = check_reference(k, f);
        REQUIRE(a.outcome == b.outcome);
        if (!a.holds()) {
            ++violated;
            REQUIRE(verify_counterexample(k, f, *a.counterexample));
            REQUIRE(verify_counterexample(k, f, *b.counterexample));
        }
    }
    CHECK(violated > 30); // both outcomes exercised
}

TEST_CASE("negation coherence on single-path structures") {
    // when K is itself a lasso, exactly one of f, !f holds
    GenSpec spec = GenSpec::defaults();
    spec.ap_count = 2;
    SplitMix64 rng(0x51A7E);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.next_below(5);
        KripkeStructure k;
        k.alphabet = kPQ;
        k.initial = {0};
        for (std::uint32_t s = 0; s < n; ++s) {
            k.labels.push_back(rng.next_below(4));
            const std::uint32_t succ =
                s + 1 < n ? s + 1 : static_cast<std::uint32_t>(rng.next_below(n));
            k.succ.push_back({succ});
        }
        // ensure the path is a lasso reaching its loop; it is, by construction
        spec.seed = 0xF00D + i;
        spec.formula_length = 1 + static_cast<int>(i % 12);
        const Formula f = random_formula(spec, kPQ);
        const bool pos = check(k, f).holds();
        const bool neg = check(k, Formula::neg(f)).holds();
        REQUIRE(pos != neg);
    }
}

TEST_CASE("checker determinism") {
    GenSpec spec = GenSpec::defaults();
    spec.seed = 99;
    spec.state_min = 4;
    spec.state_max = 6;
    spec.formula_length = 9;
    const KripkeStructure k = random_kripke(spec);
    const Formula f = random_formula(spec, default_alphabet(2));
    const Verdict a = check(k, f);
    const Verdict b = check(k, f);
    REQUIRE(a.outcome == b.outcome);
    if (!a.holds()) {
        CHECK(a.counterexample->stem == b.counterexample->stem);
        CHECK(a.counterexample->loop == b.counterexample->loop);
    }
}

TEST_CASE("verify_counterexample rejects malformed lassos") {
    const KripkeStructure k = two_cycle(kPQ, 1, 2);
    Lasso bad;
    bad.stem = {0};
    bad.loop = {0}; // 0 -> 0 is not an edge
    CHECK_THROWS_AS(verify_counterexample(k, fp("G p", kPQ), bad), MalformedLassoError);

    Lasso empty_loop;
    empty_loop.stem = {0};
    CHECK_THROWS_AS(verify_counterexample(k, fp("G p", kPQ), empty_loop), MalformedLassoError);

    Lasso not_initial;
    not_initial.loop = {1, 0};
    CHECK_THROWS_AS(verify_counterexample(k, fp("G p", kPQ), not_initial), MalformedLassoError);
}

TEST_CASE("resource caps raise resource-limit errors") {
    const KripkeStructure k = one_state(kP, 1);
    CheckOptions opts;
    opts.automaton_state_cap = 2;
    CHECK_THROWS_AS(check(k, fp("((F p) U (G (p U (X p))))"), opts), ResourceLimitError);

    CheckOptions ref_opts;
    ref_opts.reference_closure_cap = 3;
    CHECK_THROWS_AS(check_reference(k, fp("(F (G (X p)))"), ref_opts), ResourceLimitError);
}
