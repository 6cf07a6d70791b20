#pragma once

// Noiseless query plan: d-left-regular bipartite coordinate/bin association,
// the ratio-test vector triple (r1, r2, r3 = r1 + r2), and the per-bin
// repetition schedule.

#include <complex>
#include <cstdint>
#include <vector>

#include "mixcolor/model.hpp"

namespace mixcolor {

struct BipartiteDesign {
    int n = 0;
    int M = 0;
    int d = 0;
    std::uint64_t seed = 0;
    // bins of coordinate j (1-based j): adjacency[(j-1)*d .. (j-1)*d+d)
    std::vector<int> adjacency;
    // reverse index: sorted coordinate list per bin (the support mask h_i)
    std::vector<std::vector<int>> bin_coords;

    const int* bins_of(int j) const { return adjacency.data() + static_cast<std::size_t>(j - 1) * d; }
    bool on_bin(int j, int bin) const {
        const int* b = bins_of(j);
        for (int t = 0; t < d; ++t)
            if (b[t] == bin) return true;
        return false;
    }
};

// Each coordinate draws d distinct bins uniformly at random; deterministic per seed.
BipartiteDesign build_bipartite(int n, int M, int d, std::uint64_t seed);

struct RatioVectors {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<cplx> r1;  // unit modulus, uniform phase
    std::vector<cplx> r2;  // r2[j] = r1[j] * W^(j-1), W = exp(i*2*pi/n)

    cplx r1_at(int j) const { return r1[j - 1]; }
    cplx r2_at(int j) const { return r2[j - 1]; }
    cplx r3_at(int j) const { return r1[j - 1] + r2[j - 1]; }
};

// Phases come from integer multiples of 2*pi/n, not accumulated products, so
// the ratio test's integrality check stays sharp at large n.
RatioVectors build_ratio_vectors(int n, std::uint64_t seed);

struct NoiselessQueryPlan {
    BipartiteDesign design;
    RatioVectors vectors;
    int R = 1;  // repetitions of each index query
    int V = 1;  // repetitions of the verification (summation) query
    std::uint64_t seed = 0;  // master seed the sub-designs were derived from

    std::int64_t m() const { return static_cast<std::int64_t>(2 * R + V) * design.M; }
};

NoiselessQueryPlan assemble_plan(BipartiteDesign design, RatioVectors vectors, int R, int V);

// Bipartite graph and ratio vectors drawn from sub-seeds of `seed`.
NoiselessQueryPlan make_noiseless_plan(int n, int M, int d, int R, int V, std::uint64_t seed);

// M specified as a real multiple of K, rounded to the nearest integer >= 1.
int bins_from_ratio(double m_over_k, int K);

}  // namespace mixcolor
