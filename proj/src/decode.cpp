#include "mixcolor/decode.hpp"

#include <cmath>

namespace mixcolor {

std::vector<ConsistentPair> summation_check(const NoiselessBin& bin, int bin_index, double tol) {
    std::vector<ConsistentPair> out;
    for (std::size_t a = 0; a < bin.type1.size(); ++a) {
        for (std::size_t b = 0; b < bin.type2.size(); ++b) {
            cplx y1 = bin.type1[a], y2 = bin.type2[b];
            bool consistent = false;
            for (std::size_t v = 0; v < bin.verif.size() && !consistent; ++v) {
                cplx y3 = bin.verif[v];
                if (std::abs(y3 - (y1 + y2)) <= tol * std::max(1.0, std::abs(y3))) consistent = true;
            }
            if (!consistent) continue;
            bool dup = false;
            for (const auto& p : out) {
                if (std::abs(p.y1 - y1) <= tol * std::max(1.0, std::abs(p.y1)) &&
                    std::abs(p.y2 - y2) <= tol * std::max(1.0, std::abs(p.y2))) {
                    dup = true;
                    break;
                }
            }
            if (!dup) out.push_back(ConsistentPair{bin_index, y1, y2});
        }
    }
    return out;
}

Verdict<cplx> ratio_test(cplx y1, cplx y2, int bin_index, const BipartiteDesign& design,
                         const RatioVectors& vectors, double scale, const DecodeOptions& opt) {
    Verdict<cplx> v;
    double a1 = std::abs(y1), a2 = std::abs(y2);
    if (std::max(a1, a2) <= opt.zero_tol * scale) {
        v.kind = BinVerdict::Zeroton;
        return v;
    }
    v.kind = BinVerdict::Multiton;
    if (std::abs(a1 - a2) > opt.ratio_tol * std::max(1.0, a1)) return v;
    const int n = design.n;
    double k = n * std::arg(y2 / y1) / (2.0 * 3.14159265358979323846);  // in (-n/2, n/2]
    long long khat = std::llround(k);
    if (std::abs(k - khat) > opt.phase_tol * n) return v;
    int j = static_cast<int>(((khat % n) + n) % n) + 1;
    if (!design.on_bin(j, bin_index)) return v;
    v.kind = BinVerdict::Singleton;
    v.j = j;
    v.value = y1 / vectors.r1_at(j);
    return v;
}

std::pair<cplx, cplx> peel_pair(cplx y1, cplx y2, int j, cplx value, const RatioVectors& vectors) {
    return {y1 - vectors.r1_at(j) * value, y2 - vectors.r2_at(j) * value};
}

NoiselessPolicy::NoiselessPolicy(const NoiselessQueryPlan& plan, const NoiselessMeasurements& ms,
                                 const DecodeOptions& opt)
    : plan_(plan), opt_(opt) {
    const int M = plan.design.M;
    bin_units_.resize(M);
    bin_scale_.assign(M, 1.0);
    std::vector<std::vector<ConsistentPair>> per_bin(M);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (opt.parallel)
#endif
    for (int i = 0; i < M; ++i) {
        per_bin[i] = summation_check(ms.bins[i], i, opt.sum_tol);
        double s = 1.0;
        for (cplx y : ms.bins[i].type1) s = std::max(s, std::abs(y));
        for (cplx y : ms.bins[i].type2) s = std::max(s, std::abs(y));
        for (cplx y : ms.bins[i].verif) s = std::max(s, std::abs(y));
        bin_scale_[i] = s;
    }
    for (int i = 0; i < M; ++i) {
        for (auto& p : per_bin[i]) {
            bin_units_[i].push_back(static_cast<int>(pairs_.size()));
            pairs_.push_back(p);
        }
    }
    residuals_.resize(pairs_.size());
}

std::vector<int> NoiselessPolicy::units_of_coord(int j) const {
    std::vector<int> out;
    const int* bins = plan_.design.bins_of(j);
    for (int t = 0; t < plan_.design.d; ++t)
        for (int u : bin_units_[bins[t]]) out.push_back(u);
    return out;
}

Verdict<cplx> NoiselessPolicy::test(cplx y1, cplx y2, int bin) const {
    return ratio_test(y1, y2, bin, plan_.design, plan_.vectors, bin_scale_[bin], opt_);
}

Verdict<cplx> NoiselessPolicy::test_pristine(int u) {
    return test(pairs_[u].y1, pairs_[u].y2, pairs_[u].bin);
}

Verdict<cplx> NoiselessPolicy::test_peeled_once(int u, int j, cplx v) {
    if (!plan_.design.on_bin(j, pairs_[u].bin)) return {};
    auto [y1, y2] = peel_pair(pairs_[u].y1, pairs_[u].y2, j, v, plan_.vectors);
    auto verdict = test(y1, y2, pairs_[u].bin);
    // a singleton at the coordinate just subtracted is the signature of a
    // wrong-color peel on an overlapping support, not a discovery
    if (verdict.kind == BinVerdict::Singleton && verdict.j == j) verdict.kind = BinVerdict::Multiton;
    return verdict;
}

bool NoiselessPolicy::peel(int u, int color, int j, cplx v) {
    if (!plan_.design.on_bin(j, pairs_[u].bin)) return false;
    auto& slots = residuals_[u];
    ColorResidual* res = nullptr;
    for (auto& s : slots)
        if (s.color == color) res = &s;
    if (!res) {
        slots.push_back(ColorResidual{color, pairs_[u].y1, pairs_[u].y2, {}});
        res = &slots.back();
    }
    for (int p : res->peeled)
        if (p == j) return false;  // double-peel of the same (color, coordinate)
    auto [y1, y2] = peel_pair(res->y1, res->y2, j, v, plan_.vectors);
    res->y1 = y1;
    res->y2 = y2;
    res->peeled.push_back(j);
    return true;
}

Verdict<cplx> NoiselessPolicy::test_colored(int u, int color) {
    for (auto& s : residuals_[u])
        if (s.color == color) {
            auto verdict = test(s.y1, s.y2, pairs_[u].bin);
            if (verdict.kind == BinVerdict::Singleton)
                for (int p : s.peeled)
                    if (p == verdict.j) {
                        verdict.kind = BinVerdict::Multiton;
                        break;
                    }
            return verdict;
        }
    return test_pristine(u);
}

void NoiselessPolicy::reset_residuals() {
    for (auto& slots : residuals_) slots.clear();
}

bool NoiselessPolicy::values_equal(cplx a, cplx b) const {
    return std::abs(a - b) <= opt_.ratio_tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

DecodeResult decode(const NoiselessQueryPlan& plan, const NoiselessMeasurements& ms, int L,
                    const DecodeOptions& opt) {
    NoiselessPolicy pol(plan, ms, opt);
    PeelingRun<NoiselessPolicy> run(pol, opt.parallel);
    auto colored = run.run(L);

    DecodeResult result;
    static_cast<PeelDiagnostics&>(result.diagnostics) = run.diagnostics();
    result.diagnostics.consistent_pairs = pol.unit_count();
    result.estimates.resize(L);
    for (int c = 0; c < L; ++c) {
        result.estimates[c].n = plan.design.n;
        for (auto& [j, v] : colored[c]) result.estimates[c].entries.emplace_back(j, v);
    }
    return result;
}

}  // namespace mixcolor
