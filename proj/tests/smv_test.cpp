#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ltloracle/checker.hpp"
#include "ltloracle/dataset.hpp"
#include "ltloracle/errors.hpp"
#include "ltloracle/gen.hpp"
#include "ltloracle/smv.hpp"
#include "test_util.hpp"

using namespace ltloracle;
using namespace testutil;

namespace {

namespace fs = std::filesystem;

std::string golden(const std::string& name) {
    return slurp_file(std::string(GOLDEN_DIR) + "/" + name);
}

// executable shell script fixture
fs::path make_script(const std::string& name, const std::string& body) {
    const fs::path path = fs::temp_directory_path() / name;
    {
        std::ofstream out(path);
        out << "#!/bin/sh\n" << body;
    }
    fs::permissions(path, fs::perms::owner_all | fs::perms::group_read | fs::perms::others_read);
    return path;
}

const std::vector<std::string> kP{"p"};

} // namespace

TEST_CASE("emit_smv matches the golden fixtures byte for byte") {
    KripkeStructure a;
    a.alphabet = {"p"};
    a.initial = {0};
    a.succ = {{0}};
    a.labels = {1};
    CHECK(emit_smv(a, parse_ltl("G p", kP)) == golden("fixture_a.smv"));

    KripkeStructure b;
    b.alphabet = {"p", "q", "r"};
    b.initial = {0, 2};
    b.succ = {{1, 2}, {0}, {2}};
    b.labels = {1, 2, 0};
    const Formula f = parse_ltl("(p U q) -> (false R ! r)", {"p", "q", "r"});
    const std::string text = emit_smv(b, f);
    CHECK(text == golden("fixture_b.smv"));

    // never-labeled atom defines to FALSE; release spells V
    CHECK(text.find("r := FALSE;") != std::string::npos);
    CHECK(text.find("V (! r)") != std::string::npos);

    // deterministic bytes
    CHECK(emit_smv(b, f) == text);
}

TEST_CASE("emit_smv rejects atoms outside the structure alphabet") {
    KripkeStructure a;
    a.alphabet = {"p"};
    a.initial = {0};
    a.succ = {{0}};
    a.labels = {1};
    CHECK_THROWS_AS(emit_smv(a, parse_ltl("G q", {"q"})), DataError);
}

TEST_CASE("parse_nusmv_output recognizes verdict lines") {
    CHECK(parse_nusmv_output("-- specification G p is true") == Outcome::Holds);
    CHECK(parse_nusmv_output("-- specification G p is false") == Outcome::Violated);
    const std::string realistic =
        "*** This is NuSMV 2.6.0 (compiled on ...)\n"
        "*** For more information on NuSMV see <http://nusmv.fbk.eu>\n"
        "-- specification (p U q)  is false\n"
        "-- as demonstrated by the following execution sequence\n"
        "Trace Description: LTL Counterexample\n";
    CHECK(parse_nusmv_output(realistic) == Outcome::Violated);
    CHECK_THROWS_AS(parse_nusmv_output(""), UnrecognizedOutputError);
    CHECK_THROWS_AS(parse_nusmv_output("segmentation fault"), UnrecognizedOutputError);
}

TEST_CASE("external_check against scripted checkers") {
    const KripkeStructure k = one_state(kP, 1);
    const Formula f = parse_ltl("G p", kP);

    SUBCASE("verdict parsed and time measured") {
        const auto script =
            make_script("oracle_ok.sh", "echo '-- specification (G p) is true'\n");
        const ExternalResult r = external_check(k, f, script.string());
        CHECK(r.outcome == Outcome::Holds);
        CHECK(r.elapsed_seconds > 0.0);
    }
    SUBCASE("timeout is reported distinctly") {
        const auto script = make_script("oracle_slow.sh", "sleep 5\n");
        ExternalOptions opts;
        opts.timeout_seconds = 1e-6;
        CHECK_THROWS_AS(external_check(k, f, script.string(), opts), TimeoutError);
    }
    SUBCASE("spawn failure") {
        CHECK_THROWS_AS(external_check(k, f, "/nonexistent/binary"), SpawnError);
    }
    SUBCASE("garbage output") {
        const auto script = make_script("oracle_garbage.sh", "echo 'lorem ipsum'\n");
        CHECK_THROWS_AS(external_check(k, f, script.string()), UnrecognizedOutputError);
    }
}

TEST_CASE("live NuSMV agreement" * doctest::skip(!nusmv_from_env().has_value())) {
    const auto binary = nusmv_from_env();
    REQUIRE(binary.has_value());
    GenSpec spec = GenSpec::defaults();
    spec.state_min = 2;
    spec.state_max = 5;
    spec.ap_count = 2;
    for (std::uint64_t i = 0; i < 200; ++i) {
        spec.seed = 0xACE0 + i;
        spec.formula_length = 1 + static_cast<int>(i % 10);
        const KripkeStructure k = random_kripke(spec);
        const Formula f = random_formula(spec, default_alphabet(2));
        const ExternalResult ext = external_check(k, f, *binary);
        const Verdict builtin = check(k, f);
        REQUIRE(ext.outcome == builtin.outcome);
    }
}
