#include "ltloracle/dataset.hpp"

#include <fstream>
#include <sstream>

#include "ltloracle/errors.hpp"
#include "ltloracle/features.hpp"
#include "ltloracle/textio.hpp"

namespace ltloracle {

std::size_t Dataset::labeled_count() const {
    std::size_t n = 0;
    for (const auto& inst : instances) n += inst.verdict.has_value();
    return n;
}

std::size_t Dataset::holds_count() const {
    std::size_t n = 0;
    for (const auto& inst : instances) n += inst.verdict == Outcome::Holds;
    return n;
}

std::string write_dataset(const Dataset& d) {
    std::ostringstream os;
    os << "ltl-oracle dataset v1\n";
    os << "count " << d.instances.size() << '\n';
    os << "alphabet";
    for (const auto& a : d.alphabet) os << ' ' << a;
    os << '\n';
    for (std::size_t i = 0; i < d.instances.size(); ++i) {
        const LabeledInstance& inst = d.instances[i];
        os << "instance " << i << '\n';
        os << "seed " << inst.seed << '\n';
        write_kripke(os, inst.kripke);
        os << "formula " << format_ltl(inst.formula) << '\n';
        os << "verdict "
           << (!inst.verdict ? "none" : (*inst.verdict == Outcome::Holds ? "true" : "false"))
           << '\n';
        os << "labelseconds " << fmt_double(inst.label_seconds) << '\n';
        os << "labeler " << inst.labeler_tag << '\n';
        if (inst.counterexample) {
            os << "lasso stem";
            for (std::uint32_t s : inst.counterexample->stem) os << ' ' << s;
            os << " loop";
            for (std::uint32_t s : inst.counterexample->loop) os << ' ' << s;
            os << '\n';
        }
        os << "end instance\n";
    }
    return os.str();
}

Dataset read_dataset(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    auto fail = [](const std::string& msg) -> void { throw DataError("dataset format: " + msg); };

    if (!std::getline(is, line) || line != "ltl-oracle dataset v1") fail("bad header");
    if (!std::getline(is, line)) fail("missing count");
    auto words = split_ws(line);
    if (words.size() != 2 || words[0] != "count") fail("bad count line");
    const std::size_t count = parse_u64(words[1]);

    Dataset d;
    if (!std::getline(is, line)) fail("missing alphabet");
    words = split_ws(line);
    if (words.empty() || words[0] != "alphabet") fail("bad alphabet line");
    d.alphabet.assign(words.begin() + 1, words.end());

    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(is, line)) fail("missing instance " + std::to_string(i));
        words = split_ws(line);
        if (words.size() != 2 || words[0] != "instance" || parse_u64(words[1]) != i)
            fail("bad instance header");

        LabeledInstance inst;
        if (!std::getline(is, line)) fail("missing seed");
        words = split_ws(line);
        if (words.size() != 2 || words[0] != "seed") fail("bad seed line");
        inst.seed = parse_u64(words[1]);

        inst.kripke = read_kripke(is);

        if (!std::getline(is, line)) fail("missing formula");
        if (line.rfind("formula ", 0) != 0) fail("bad formula line");
        inst.formula = parse_ltl(line.substr(8), d.alphabet);

        if (!std::getline(is, line)) fail("missing verdict");
        words = split_ws(line);
        if (words.size() != 2 || words[0] != "verdict") fail("bad verdict line");
        if (words[1] == "true")
            inst.verdict = Outcome::Holds;
        else if (words[1] == "false")
            inst.verdict = Outcome::Violated;
        else if (words[1] != "none")
            fail("bad verdict value '" + words[1] + "'");

        if (!std::getline(is, line)) fail("missing labelseconds");
        words = split_ws(line);
        if (words.size() != 2 || words[0] != "labelseconds") fail("bad labelseconds line");
        inst.label_seconds = parse_double(words[1]);

        if (!std::getline(is, line)) fail("missing labeler");
        words = split_ws(line);
        if (words.size() != 2 || words[0] != "labeler") fail("bad labeler line");
        inst.labeler_tag = words[1];

        if (!std::getline(is, line)) fail("missing end instance");
        words = split_ws(line);
        if (!words.empty() && words[0] == "lasso") {
            Lasso lasso;
            std::size_t j = 1;
            if (j >= words.size() || words[j] != "stem") fail("bad lasso line");
            for (++j; j < words.size() && words[j] != "loop"; ++j)
                lasso.stem.push_back(static_cast<std::uint32_t>(parse_u64(words[j])));
            if (j >= words.size()) fail("lasso missing loop");
            for (++j; j < words.size(); ++j)
                lasso.loop.push_back(static_cast<std::uint32_t>(parse_u64(words[j])));
            if (lasso.loop.empty()) fail("lasso with empty loop");
            inst.counterexample = std::move(lasso);
            if (!std::getline(is, line)) fail("missing end instance");
            words = split_ws(line);
        }
        if (words.size() != 2 || words[0] != "end" || words[1] != "instance")
            fail("bad end instance line");
        d.instances.push_back(std::move(inst));
    }
    return d;
}

std::string write_feature_csv(const Dataset& d) {
    std::ostringstream os;
    const auto& names = feature_names();
    for (int i = 0; i < kFeatureDim; ++i) os << names[i] << ',';
    os << "label\n";
    for (const auto& inst : d.instances) {
        if (!inst.verdict) continue;
        const FeatureVector v = extract(inst.kripke, inst.formula);
        for (int i = 0; i < kFeatureDim; ++i) os << fmt_double(v.values[i]) << ',';
        os << (*inst.verdict == Outcome::Holds ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

Dataset load_dataset(const std::string& path) { return read_dataset(slurp_file(path)); }

void save_dataset(const std::string& path, const Dataset& d) { spit_file(path, write_dataset(d)); }

} // namespace ltloracle
