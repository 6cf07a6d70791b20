#pragma once

// Query design for the robust (noisy) setting: binary indexing rows, random
// sign verification rows, and pairwise summation-check rows, shared across
// bins and masked per bin by the bipartite support.

#include <cstdint>
#include <utility>
#include <vector>

#include "mixcolor/design.hpp"

namespace mixcolor {

struct RobustBinMatrices {
    int n = 0;
    int P1 = 0;  // ceil(log2 n) binary indexing rows, row 0 = most significant bit
    int P2 = 0;  // random sign verification rows
    int P3 = 0;  // C(P1+P2, 2) summation-check rows
    std::uint64_t seed = 0;
    std::vector<std::int8_t> signs;            // P2 x n, row-major, entries ±1
    std::vector<std::pair<int, int>> c_pairs;  // row (a,b) of C equals D_a + D_b

    // column j is the binary representation of j-1
    double b_entry(int i, int j) const { return ((j - 1) >> (P1 - 1 - i)) & 1; }
    double v_entry(int i, int j) const { return signs[static_cast<std::size_t>(i) * n + (j - 1)]; }
    // D stacks B over V
    double d_entry(int i, int j) const { return i < P1 ? b_entry(i, j) : v_entry(i - P1, j); }
    double c_entry(int k, int j) const {
        return d_entry(c_pairs[k].first, j) + d_entry(c_pairs[k].second, j);
    }
    // rows of the full per-bin query stack [B; V; C]
    double row_entry(int p, int j) const {
        return p < P1 + P2 ? d_entry(p, j) : c_entry(p - P1 - P2, j);
    }
    int rows() const { return P1 + P2 + P3; }
};

RobustBinMatrices build_robust_matrices(int n, int P2, std::uint64_t seed);

struct RobustQueryPlan {
    BipartiteDesign design;
    RobustBinMatrices mats;
    int N = 1;  // repetitions per query row
    QuantizedAlphabet alphabet;
    double sigma = 0.0;
    std::uint64_t seed = 0;  // master seed the sub-designs were derived from

    int P() const { return mats.rows(); }
    std::int64_t m() const {
        return static_cast<std::int64_t>(design.M) * N * P();
    }
};

RobustQueryPlan make_robust_plan(int n, int M, int d, int N, int P2,
                                 const QuantizedAlphabet& alphabet, double sigma,
                                 std::uint64_t seed);

// default verification row count, ceil(coeff * log2(n)) and at least 1
int default_p2(int n, double coeff = 0.3);

}  // namespace mixcolor
