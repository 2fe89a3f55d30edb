#include "ltloracle/kripke.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ltloracle/errors.hpp"

namespace ltloracle {

std::size_t KripkeStructure::edge_count() const noexcept {
    std::size_t n = 0;
    for (const auto& row : succ) n += row.size();
    return n;
}

bool KripkeStructure::has_edge(std::uint32_t from, std::uint32_t to) const noexcept {
    if (from >= succ.size()) return false;
    const auto& row = succ[from];
    return std::binary_search(row.begin(), row.end(), to);
}

bool KripkeStructure::is_initial(std::uint32_t s) const noexcept {
    return std::binary_search(initial.begin(), initial.end(), s);
}

int KripkeStructure::ap_index(const std::string& name) const noexcept {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<KripkeViolation> validate_kripke(const KripkeStructure& k) {
    using Kind = KripkeViolation::Kind;
    std::vector<KripkeViolation> out;
    const std::uint32_t n = static_cast<std::uint32_t>(k.state_count());

    std::set<std::string> seen;
    for (const auto& name : k.alphabet) {
        if (name.empty())
            out.push_back({Kind::EmptyAtomName, -1, "alphabet contains an empty name"});
        else if (!seen.insert(name).second)
            out.push_back({Kind::DuplicateAtom, -1, "duplicate atom '" + name + "'"});
    }

    if (k.initial.empty()) out.push_back({Kind::EmptyInitial, -1, "empty initial set"});
    for (std::uint32_t s : k.initial)
        if (s >= n)
            out.push_back({Kind::BadInitialIndex, static_cast<int>(s),
                           "initial state " + std::to_string(s) + " out of range"});

    for (std::uint32_t s = 0; s < n; ++s) {
        if (k.succ[s].empty())
            out.push_back({Kind::NonTotalState, static_cast<int>(s),
                           "state " + std::to_string(s) + " has no successor"});
        for (std::uint32_t t : k.succ[s])
            if (t >= n)
                out.push_back({Kind::BadEdgeEndpoint, static_cast<int>(s),
                               "edge " + std::to_string(s) + " -> " + std::to_string(t) +
                                   " leaves the state set"});
    }

    if (k.labels.size() != n)
        out.push_back({Kind::LabelOutOfRange, -1, "label row count != state count"});
    const std::uint64_t mask =
        k.alphabet.size() >= 64 ? ~0ULL : ((1ULL << k.alphabet.size()) - 1);
    for (std::uint32_t s = 0; s < std::min<std::size_t>(n, k.labels.size()); ++s)
        if ((k.labels[s] & ~mask) != 0)
            out.push_back({Kind::LabelOutOfRange, static_cast<int>(s),
                           "state " + std::to_string(s) + " labeled with undeclared atom bit"});
    return out;
}

void write_kripke(std::ostream& os, const KripkeStructure& k) {
    os << "states " << k.state_count() << '\n';
    os << "init";
    for (std::uint32_t s : k.initial) os << ' ' << s;
    os << '\n';
    os << "ap";
    for (const auto& a : k.alphabet) os << ' ' << a;
    os << '\n';
    for (std::uint32_t s = 0; s < k.state_count(); ++s) {
        os << "s " << s << " labels";
        for (std::size_t ap = 0; ap < k.alphabet.size(); ++ap)
            if (k.state_has_ap(s, static_cast<int>(ap))) os << ' ' << k.alphabet[ap];
        os << " succ";
        for (std::uint32_t t : k.succ[s]) os << ' ' << t;
        os << '\n';
    }
}

std::string write_kripke(const KripkeStructure& k) {
    std::ostringstream os;
    write_kripke(os, k);
    return os.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream is(line);
    std::string w;
    while (is >> w) words.push_back(w);
    return words;
}

std::uint32_t parse_index(const std::string& w, const char* what) {
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw DataError(std::string("kripke format: bad ") + what + " '" + w + "'");
    }
}

} // namespace

KripkeStructure read_kripke(std::istream& is) {
    KripkeStructure k;
    std::string line;

    auto next_line = [&](const char* what) {
        if (!std::getline(is, line)) throw DataError(std::string("kripke format: missing ") + what);
        return split_words(line);
    };

    auto header = next_line("'states' header");
    if (header.size() != 2 || header[0] != "states")
        throw DataError("kripke format: expected 'states N'");
    const std::uint32_t n = parse_index(header[1], "state count");

    auto init_words = next_line("'init' line");
    if (init_words.empty() || init_words[0] != "init")
        throw DataError("kripke format: expected 'init ...'");
    for (std::size_t i = 1; i < init_words.size(); ++i)
        k.initial.push_back(parse_index(init_words[i], "initial state"));
    std::sort(k.initial.begin(), k.initial.end());
    k.initial.erase(std::unique(k.initial.begin(), k.initial.end()), k.initial.end());

    auto ap_words = next_line("'ap' line");
    if (ap_words.empty() || ap_words[0] != "ap")
        throw DataError("kripke format: expected 'ap ...'");
    for (std::size_t i = 1; i < ap_words.size(); ++i) k.alphabet.push_back(ap_words[i]);
    if (k.alphabet.size() > static_cast<std::size_t>(kMaxAlphabet))
        throw DataError("kripke format: more than 64 atomic propositions");

    k.succ.assign(n, {});
    k.labels.assign(n, 0);
    std::vector<bool> defined(n, false);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto w = next_line("state line");
        if (w.size() < 4 || w[0] != "s" || w[2] != "labels")
            throw DataError("kripke format: expected 's <id> labels ... succ ...'");
        const std::uint32_t id = parse_index(w[1], "state id");
        if (id >= n) throw DataError("kripke format: state id out of range");
        if (defined[id]) throw DataError("kripke format: duplicate state line");
        defined[id] = true;
        std::size_t j = 3;
        for (; j < w.size() && w[j] != "succ"; ++j) {
            const int ap = k.ap_index(w[j]);
            if (ap < 0) throw DataError("kripke format: label '" + w[j] + "' not in ap line");
            k.labels[id] |= 1ULL << ap;
        }
        if (j >= w.size()) throw DataError("kripke format: missing 'succ'");
        for (++j; j < w.size(); ++j) k.succ[id].push_back(parse_index(w[j], "successor"));
        std::sort(k.succ[id].begin(), k.succ[id].end());
        k.succ[id].erase(std::unique(k.succ[id].begin(), k.succ[id].end()), k.succ[id].end());
    }
    return k;
}

KripkeStructure parse_kripke(const std::string& text) {
    std::istringstream is(text);
    return read_kripke(is);
}

} // namespace ltloracle
