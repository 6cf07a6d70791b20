#pragma once

// Noiseless Mixed-Coloring decoder: summation check -> ratio tests ->
// singleton graph -> giant components -> guess-and-check peeling.

#include <vector>

#include "mixcolor/design.hpp"
#include "mixcolor/model.hpp"
#include "mixcolor/peeling.hpp"
#include "mixcolor/simulate.hpp"

namespace mixcolor {

struct ConsistentPair {
    int bin = 0;
    cplx y1, y2;
};

struct DecodeOptions {
    double sum_tol = 1e-9;     // relative, summation check
    double ratio_tol = 1e-9;   // relative, modulus equality and value matching
    double phase_tol = 1e-6;   // |k - round(k)| <= phase_tol * n
    double zero_tol = 1e-9;    // zeroton threshold, relative to the bin value scale
    bool parallel = true;
};

// All (type-I, type-II, verification) triplets with y3 = y1 + y2 within
// tolerance; duplicate pairs (identical sub-bins) deduplicated by value.
std::vector<ConsistentPair> summation_check(const NoiselessBin& bin, int bin_index,
                                            double tol = 1e-9);

// Three-way classification of a consistent pair's residual. `scale` is the
// bin value scale used by the zeroton threshold.
Verdict<cplx> ratio_test(cplx y1, cplx y2, int bin_index, const BipartiteDesign& design,
                         const RatioVectors& vectors, double scale,
                         const DecodeOptions& opt = {});

// Subtract element (j, value) from a pair's residual.
std::pair<cplx, cplx> peel_pair(cplx y1, cplx y2, int j, cplx value, const RatioVectors& vectors);

struct NoiselessDiagnostics : PeelDiagnostics {
    long consistent_pairs = 0;
};

struct DecodeResult {
    std::vector<SparseVector> estimates;
    NoiselessDiagnostics diagnostics;
    bool ok() const { return diagnostics.outcome == DecodeOutcome::Ok; }
};

DecodeResult decode(const NoiselessQueryPlan& plan, const NoiselessMeasurements& ms, int L,
                    const DecodeOptions& opt = {});

// Peeling-engine policy over consistent pairs; exposed so tests can drive the
// decoder stage by stage.
class NoiselessPolicy {
  public:
    using Value = cplx;

    NoiselessPolicy(const NoiselessQueryPlan& plan, const NoiselessMeasurements& ms,
                    const DecodeOptions& opt);

    int unit_count() const { return static_cast<int>(pairs_.size()); }
    std::vector<int> units_of_coord(int j) const;
    Verdict<cplx> test_pristine(int u);
    Verdict<cplx> test_peeled_once(int u, int j, cplx v);
    bool peel(int u, int color, int j, cplx v);
    Verdict<cplx> test_colored(int u, int color);
    bool values_equal(cplx a, cplx b) const;
    void reset_residuals();

    const std::vector<ConsistentPair>& pairs() const { return pairs_; }

  private:
    struct ColorResidual {
        int color;
        cplx y1, y2;
        std::vector<int> peeled;
    };
    Verdict<cplx> test(cplx y1, cplx y2, int bin) const;

    const NoiselessQueryPlan& plan_;
    const DecodeOptions opt_;
    std::vector<ConsistentPair> pairs_;
    std::vector<std::vector<int>> bin_units_;
    std::vector<std::vector<ColorResidual>> residuals_;  // per unit, per touched color
    std::vector<double> bin_scale_;
};

}  // namespace mixcolor
