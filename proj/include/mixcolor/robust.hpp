#pragma once

// Robust Mixed-Coloring for L = 2: per-bin EM denoising, consecutive
// summation check, binary indexing with random-sign verification, and the
// shared peeling engine over consistent sets.

#include <vector>

#include "mixcolor/decode.hpp"
#include "mixcolor/emdenoise.hpp"
#include "mixcolor/peeling.hpp"
#include "mixcolor/robust_plan.hpp"
#include "mixcolor/simulate.hpp"

namespace mixcolor {

struct RobustDecodeOptions {
    int em_iters = 20;
    double idx_tol = 0.3;     // in units of delta: snapping window for index/verify rows
    double align_tol = 0.4;   // in units of delta: consecutive summation check window
    double snap_trust = 0.12;  // adopt the grid-snapped separation when this close to it
    bool parallel = true;
};

// Denoised centers of one query row, sorted c1 <= c2. `single` rows carry the
// same value twice (the two components agree on this row). Raw values feed
// the alignment and the peeling residuals; snapped values realize the
// achievable-grid contract for quantized instances.
struct RowEstimate {
    double raw1 = 0.0, raw2 = 0.0;
    double snap1 = 0.0, snap2 = 0.0;
    bool single = true;
};

// One bin's rows, EM-denoised. The achievable-value grid of a row with s
// supported coordinates is widened to |k| <= s * b * max-row-entry.
std::vector<RowEstimate> denoise_bin(const RobustBin& bin, const RobustQueryPlan& plan,
                                     int bin_index, const RobustDecodeOptions& opt = {});

struct ConsistentSetPair {
    bool ok = false;               // false: no alignment fits, bin dropped
    int degenerate_matches = 0;    // straight and crossed both fit; straight kept
    std::vector<double> set1, set2;  // aligned raw values, rows 1..P1+P2
};

// Algorithm: walk the rows with distinct centers in order; each consecutive
// unequal pair (t, s) must match the (t, s) summation-check row either
// straight or crossed; a crossed match swaps row s. Rows with equal centers
// are alignment-neutral.
ConsistentSetPair consecutive_summation_check(const std::vector<RowEstimate>& rows,
                                              const RobustBinMatrices& mats, double delta,
                                              const RobustDecodeOptions& opt = {});

// Algorithm: all binary-index rows must read 0 or a common a*delta with
// a in D; the bits spell coordinate j - 1; every verification row must then
// equal a*delta * V[i][j] and j must lie on the bin support.
Verdict<double> robust_singleton_index(const std::vector<double>& set,
                                       const RobustQueryPlan& plan, int bin_index,
                                       const RobustDecodeOptions& opt = {});

struct RobustDiagnostics : PeelDiagnostics {
    long bins_dropped = 0;       // denoise/alignment failures (graceful degradation)
    long degenerate_matches = 0;
    long consistent_sets = 0;
};

struct RobustDecodeResult {
    std::vector<SparseVector> estimates;
    RobustDiagnostics diagnostics;
    bool ok() const { return diagnostics.outcome == DecodeOutcome::Ok; }
};

RobustDecodeResult robust_decode(const RobustQueryPlan& plan, const RobustMeasurements& ms,
                                 const RobustDecodeOptions& opt = {});

// Peeling-engine policy over consistent sets (exposed for stage-level tests).
class RobustPolicy {
  public:
    using Value = double;

    RobustPolicy(const RobustQueryPlan& plan, const RobustMeasurements& ms,
                 const RobustDecodeOptions& opt, RobustDiagnostics& diag);

    int unit_count() const { return static_cast<int>(units_.size()); }
    std::vector<int> units_of_coord(int j) const;
    Verdict<double> test_pristine(int u);
    Verdict<double> test_peeled_once(int u, int j, double v);
    bool peel(int u, int color, int j, double v);
    Verdict<double> test_colored(int u, int color);
    bool values_equal(double a, double b) const;
    void reset_residuals();

  private:
    struct Unit {
        int bin;
        std::vector<double> base;  // aligned raw values, P1 + P2 rows
    };
    struct ColorResidual {
        int color;
        std::vector<double> values;
        std::vector<int> peeled;
    };

    const RobustQueryPlan& plan_;
    const RobustDecodeOptions opt_;
    std::vector<Unit> units_;
    std::vector<std::vector<int>> bin_units_;
    std::vector<std::vector<ColorResidual>> residuals_;
};

}  // namespace mixcolor
