#include "mixcolor/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "mixcolor/rng.hpp"

namespace mixcolor {

bool MixtureModel::is_real() const {
    for (const auto& v : vectors)
        for (const auto& [j, x] : v.entries)
            if (x.imag() != 0.0) return false;
    return true;
}

namespace {

std::vector<int> sample_support(Rng& rng, int n, int k) {
    // k << n in every use; rejection over a scratch set is fine
    std::vector<int> supp;
    supp.reserve(k);
    std::vector<bool> taken;
    if (k * 4 >= n) taken.assign(n + 1, false);
    while (static_cast<int>(supp.size()) < k) {
        int j = 1 + rng.index(n);
        bool dup;
        if (!taken.empty()) {
            dup = taken[j];
            if (!dup) taken[j] = true;
        } else {
            dup = std::find(supp.begin(), supp.end(), j) != supp.end();
        }
        if (!dup) supp.push_back(j);
    }
    std::sort(supp.begin(), supp.end());
    return supp;
}

cplx draw_value(Rng& rng, ValueSource source, const QuantizedAlphabet& alphabet) {
    if (source == ValueSource::Quantized) {
        // uniform over D = {±delta, ..., ±b·delta}
        int a = 1 + rng.index(alphabet.b);
        if (rng.coin()) a = -a;
        return cplx(a * alphabet.delta, 0.0);
    }
    // magnitude in [0.5, 1.5], uniform phase; keeps values away from zero
    double mag = rng.uniform(0.5, 1.5);
    double ph = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    return std::polar(mag, ph);
}

}  // namespace

MixtureModel generate_mixture(int n, const std::vector<int>& sparsities,
                              const std::vector<double>& weights, ValueSource source,
                              const QuantizedAlphabet& alphabet, double noise_sigma,
                              std::uint64_t seed) {
    const int L = static_cast<int>(sparsities.size());
    if (L == 0 || static_cast<int>(weights.size()) != L)
        throw std::invalid_argument("sparsities/weights size mismatch");
    double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
    for (double w : weights)
        if (w <= 0.0) throw std::invalid_argument("weights must be positive");
    for (int k : sparsities)
        if (k < 0 || k > n) throw std::invalid_argument("sparsity out of range");

    Rng rng(seed);
    MixtureModel model;
    model.n = n;
    model.L = L;
    model.weights = weights;
    model.noise_sigma = noise_sigma;
    if (source == ValueSource::Quantized) model.alphabet = alphabet;

    // values already placed at each coordinate by earlier components
    std::unordered_map<int, std::vector<cplx>> used;
    for (int l = 0; l < L; ++l) {
        SparseVector v;
        v.n = n;
        auto supp = sample_support(rng, n, sparsities[l]);
        for (int j : supp) {
            cplx x = draw_value(rng, source, alphabet);
            auto it = used.find(j);
            if (it != used.end()) {
                // Assumption 1: overlapping supports must carry distinct values
                auto clashes = [&](cplx y) {
                    for (cplx u : it->second)
                        if (std::abs(u - y) <= 1e-12) return true;
                    return false;
                };
                while (clashes(x)) x = draw_value(rng, source, alphabet);
            }
            used[j].push_back(x);
            v.entries.emplace_back(j, x);
        }
        model.vectors.push_back(std::move(v));
    }
    return model;
}

MixtureModel generate_mixture(int n, const std::vector<int>& sparsities,
                              const std::vector<double>& weights, double noise_sigma,
                              std::uint64_t seed) {
    return generate_mixture(n, sparsities, weights, ValueSource::ContinuousComplex,
                            QuantizedAlphabet{}, noise_sigma, seed);
}

namespace {

bool value_matches(cplx est, cplx truth, const MixtureModel& model, double value_tol) {
    if (model.alphabet) {
        // exact alphabet-symbol equality (both snapped to the grid)
        double d = model.alphabet->delta;
        return std::llround(est.real() / d) == std::llround(truth.real() / d) &&
               std::abs(est.imag() - truth.imag()) <= 1e-9;
    }
    return std::abs(est - truth) <= value_tol * std::max(1.0, std::abs(truth));
}

}  // namespace

RecoveryReport evaluate(const MixtureModel& truth, const std::vector<SparseVector>& estimates,
                        double value_tol) {
    const int L = truth.L;
    RecoveryReport best;
    std::vector<int> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    int best_matches = -1;

    do {
        // perm[e] = truth component matched to estimate e
        int matches = 0;
        for (int e = 0; e < L && e < static_cast<int>(estimates.size()); ++e) {
            const SparseVector& t = truth.vectors[perm[e]];
            for (const auto& [j, val] : estimates[e].entries) {
                auto tv = t.at(j);
                if (tv && value_matches(val, *tv, truth, value_tol)) ++matches;
            }
        }
        if (matches > best_matches) {
            best_matches = matches;
            best.permutation.assign(perm.begin(), perm.end());
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    best.false_discoveries.assign(L, 0);
    best.support_fraction.assign(L, 0.0);
    best.value_match_fraction.assign(L, 0.0);
    best.success = true;
    for (int e = 0; e < L; ++e) {
        int t_idx = best.permutation[e];
        const SparseVector& t = truth.vectors[t_idx];
        int matched = 0, fd = 0;
        if (e < static_cast<int>(estimates.size())) {
            for (const auto& [j, val] : estimates[e].entries) {
                auto tv = t.at(j);
                if (tv && value_matches(val, *tv, truth, value_tol))
                    ++matched;
                else
                    ++fd;  // neither the true value nor zero at this coordinate
            }
        }
        int k = t.sparsity();
        best.false_discoveries[t_idx] = fd;
        best.support_fraction[t_idx] = k == 0 ? 1.0 : static_cast<double>(matched) / k;
        best.value_match_fraction[t_idx] = best.support_fraction[t_idx];
        if (fd != 0 || matched != k) best.success = false;
    }
    return best;
}

}  // namespace mixcolor
