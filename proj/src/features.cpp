#include "ltloracle/features.hpp"

#include <algorithm>
#include <cmath>

#include "ltloracle/errors.hpp"

namespace ltloracle {

const std::array<std::string, kFeatureDim>& feature_names() {
    static const std::array<std::string, kFeatureDim> names = {
        "state_count",     "edge_count",     "edge_density",  "initial_count",
        "out_degree_mean", "out_degree_min", "out_degree_max", "ap_freq_0",
        "ap_freq_1",       "ap_freq_2",      "ap_freq_3",      "self_loop_count",
        "formula_length",  "formula_depth",  "count_not",      "count_and",
        "count_or",        "count_implies",  "count_next",     "count_finally",
        "count_globally",  "count_until",    "count_release",  "count_atoms",
    };
    return names;
}

FeatureVector extract(const KripkeStructure& k, const Formula& f) {
    FeatureVector v;
    auto& x = v.values;

    const double n = static_cast<double>(k.state_count());
    const double edges = static_cast<double>(k.edge_count());
    x[0] = n;
    x[1] = edges;
    x[2] = n > 0 ? edges / (n * n) : 0.0;
    x[3] = static_cast<double>(k.initial.size());

    std::size_t dmin = k.state_count() ? k.succ[0].size() : 0, dmax = dmin, self_loops = 0;
    for (std::uint32_t s = 0; s < k.state_count(); ++s) {
        dmin = std::min(dmin, k.succ[s].size());
        dmax = std::max(dmax, k.succ[s].size());
        if (k.has_edge(s, s)) ++self_loops;
    }
    x[4] = n > 0 ? edges / n : 0.0;
    x[5] = static_cast<double>(dmin);
    x[6] = static_cast<double>(dmax);

    for (int ap = 0; ap < kFeatureApCap; ++ap) {
        if (ap >= static_cast<int>(k.alphabet.size()) || k.state_count() == 0) continue;
        std::size_t labeled = 0;
        for (std::uint32_t s = 0; s < k.state_count(); ++s)
            if (k.state_has_ap(s, ap)) ++labeled;
        x[7 + ap] = static_cast<double>(labeled) / n;
    }
    x[11] = static_cast<double>(self_loops);

    x[12] = static_cast<double>(f.length());
    x[13] = static_cast<double>(f.depth());
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
        const Formula g = stack.back();
        stack.pop_back();
        switch (g.op()) {
            case Op::Not: x[14] += 1; break;
            case Op::And: x[15] += 1; break;
            case Op::Or: x[16] += 1; break;
            case Op::Implies: x[17] += 1; break;
            case Op::Next: x[18] += 1; break;
            case Op::Finally: x[19] += 1; break;
            case Op::Globally: x[20] += 1; break;
            case Op::Until: x[21] += 1; break;
            case Op::Release: x[22] += 1; break;
            case Op::Atom:
            case Op::True:
            case Op::False: x[23] += 1; break;
        }
        for (int i = 0; i < g.arity(); ++i) stack.push_back(g.child(i));
    }
    return v;
}

Scaler fit_scaler(const std::vector<FeatureVector>& vectors) {
    if (vectors.empty()) throw DataError("fit_scaler: need at least one vector");
    Scaler s;
    const double n = static_cast<double>(vectors.size());
    for (const auto& v : vectors)
        for (int i = 0; i < kFeatureDim; ++i) s.mean[i] += v.values[i];
    for (int i = 0; i < kFeatureDim; ++i) s.mean[i] /= n;
    for (const auto& v : vectors)
        for (int i = 0; i < kFeatureDim; ++i) {
            const double d = v.values[i] - s.mean[i];
            s.std[i] += d * d;
        }
    for (int i = 0; i < kFeatureDim; ++i) {
        s.std[i] = std::sqrt(s.std[i] / n);
        if (s.std[i] == 0.0) s.std[i] = 1.0;
    }
    return s;
}

FeatureVector apply_scaler(const Scaler& scaler, const FeatureVector& v) {
    FeatureVector out;
    out.schema_version = v.schema_version;
    for (int i = 0; i < kFeatureDim; ++i)
        out.values[i] = (v.values[i] - scaler.mean[i]) / scaler.std[i];
    return out;
}

} // namespace ltloracle
