#pragma once

// Domain types for mixtures of sparse parameter vectors, random instance
// generation, and recovery scoring under label permutation.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace mixcolor {

using cplx = std::complex<double>;

// Quantized alphabet D = {±delta, ±2·delta, ..., ±b·delta}. Zero is not a
// member; membership tests use an absolute tolerance in units of delta.
struct QuantizedAlphabet {
    double delta = 1.0;
    int b = 1;

    bool contains(double x, double tol = 1e-9) const {
        double k = x / delta;
        double r = std::round(k);
        if (std::abs(k - r) > tol) return false;
        int a = static_cast<int>(r);
        return a != 0 && std::abs(a) <= b;
    }
    // nearest element of D for nonzero x (D excludes zero)
    double snap(double x) const {
        int a = static_cast<int>(std::round(x / delta));
        if (a == 0) a = (x >= 0.0) ? 1 : -1;
        if (a > b) a = b;
        if (a < -b) a = -b;
        return a * delta;
    }
};

// n-dimensional vector stored as (coordinate, value) pairs. Coordinates are
// 1-based, strictly increasing; stored values are never zero.
struct SparseVector {
    int n = 0;
    std::vector<std::pair<int, cplx>> entries;

    std::optional<cplx> at(int j) const {
        for (const auto& [c, v] : entries)
            if (c == j) return v;
        return std::nullopt;
    }
    int sparsity() const { return static_cast<int>(entries.size()); }
};

struct MixtureModel {
    int n = 0;
    int L = 0;
    std::vector<SparseVector> vectors;  // one per component
    std::vector<double> weights;        // q_l, sum to 1
    double noise_sigma = 0.0;
    std::optional<QuantizedAlphabet> alphabet;

    bool is_real() const;
};

enum class ValueSource { ContinuousComplex, Quantized };

// Random instance: supports uniform without replacement, values from the
// chosen source, redrawn on any support overlap until the overlapping values
// differ. Deterministic per seed.
MixtureModel generate_mixture(int n, const std::vector<int>& sparsities,
                              const std::vector<double>& weights, ValueSource source,
                              const QuantizedAlphabet& alphabet, double noise_sigma,
                              std::uint64_t seed);

// Continuous convenience overload (no alphabet attached).
MixtureModel generate_mixture(int n, const std::vector<int>& sparsities,
                              const std::vector<double>& weights, double noise_sigma,
                              std::uint64_t seed);

struct RecoveryReport {
    std::vector<int> permutation;           // estimate index -> truth component
    std::vector<int> false_discoveries;     // per truth component
    std::vector<double> support_fraction;   // per truth component
    std::vector<double> value_match_fraction;
    bool success = false;

    int total_false_discoveries() const {
        int s = 0;
        for (int x : false_discoveries) s += x;
        return s;
    }
};

// Scores estimates against the truth over all L! label permutations and keeps
// the one with the most exact-value matches. A false discovery is an estimate
// entry that is neither the true value nor absent. value_tol is relative in
// the continuous case; quantized models compare snapped symbols instead.
RecoveryReport evaluate(const MixtureModel& truth, const std::vector<SparseVector>& estimates,
                        double value_tol = 1e-6);

}  // namespace mixcolor
