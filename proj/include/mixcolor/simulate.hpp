#pragma once

// Measurement generation: every measurement independently picks a mixture
// component with probability q_l and records the inner product of the masked
// query vector with that component, plus i.i.d. Gaussian noise in the robust
// setting. Hidden ground-truth labels are retained for evaluation only and
// are never read by the decoders.

#include <array>
#include <cstdint>
#include <vector>

#include "mixcolor/design.hpp"
#include "mixcolor/model.hpp"
#include "mixcolor/robust_plan.hpp"

namespace mixcolor {

struct NoiselessBin {
    std::vector<cplx> type1, type2, verif;            // R, R, V measurements
    std::vector<std::int8_t> label1, label2, labelv;  // hidden component labels
};

struct NoiselessMeasurements {
    int R = 0, V = 0;
    std::vector<NoiselessBin> bins;
};

// Per bin the rows are sampled in plan order (B, V, C), N repetitions each,
// stored row-major: samples[p * N + r].
struct RobustBin {
    std::vector<double> samples;
    std::vector<std::int8_t> labels;
};

struct RobustMeasurements {
    int P = 0, N = 0;
    std::vector<RobustBin> bins;
};

NoiselessMeasurements sample_measurements(const NoiselessQueryPlan& plan,
                                          const MixtureModel& model, std::uint64_t seed);

RobustMeasurements sample_measurements(const RobustQueryPlan& plan, const MixtureModel& model,
                                       std::uint64_t seed);

// Noise-free inner products (type1, type2, verification) of each component
// with each bin's masked query rows: bins x L. Used by the samplers and by
// oracle-style checks in tests.
std::vector<std::vector<std::array<cplx, 3>>> bin_component_products(
    const NoiselessQueryPlan& plan, const MixtureModel& model);

// bins x rows x 2 noise-free row inner products for the robust plan (L = 2)
std::vector<std::vector<std::array<double, 2>>> bin_row_products(const RobustQueryPlan& plan,
                                                                 const MixtureModel& model);

}  // namespace mixcolor
