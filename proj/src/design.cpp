#include "mixcolor/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixcolor/rng.hpp"

namespace mixcolor {

BipartiteDesign build_bipartite(int n, int M, int d, std::uint64_t seed) {
    if (n < 1 || M < 1) throw std::invalid_argument("n and M must be positive");
    if (d < 1 || d > M) throw std::invalid_argument("need 1 <= d <= M");

    BipartiteDesign g;
    g.n = n;
    g.M = M;
    g.d = d;
    g.seed = seed;
    g.adjacency.resize(static_cast<std::size_t>(n) * d);
    Rng rng(seed);
    int* row = g.adjacency.data();
    for (int j = 0; j < n; ++j, row += d) {
        // d distinct bins, without replacement
        int got = 0;
        while (got < d) {
            int b = rng.index(M);
            bool dup = false;
            for (int t = 0; t < got; ++t)
                if (row[t] == b) { dup = true; break; }
            if (!dup) row[got++] = b;
        }
    }
    g.bin_coords.assign(M, {});
    row = g.adjacency.data();
    for (int j = 1; j <= n; ++j, row += d)
        for (int t = 0; t < d; ++t) g.bin_coords[row[t]].push_back(j);
    return g;
}

RatioVectors build_ratio_vectors(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    RatioVectors rv;
    rv.n = n;
    rv.seed = seed;
    rv.r1.resize(n);
    rv.r2.resize(n);
    Rng rng(seed);
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int j = 0; j < n; ++j) {
        rv.r1[j] = std::polar(1.0, two_pi * rng.uniform());
        rv.r2[j] = rv.r1[j] * std::polar(1.0, two_pi * (j % n) / n);
    }
    return rv;
}

NoiselessQueryPlan assemble_plan(BipartiteDesign design, RatioVectors vectors, int R, int V) {
    if (R < 1 || V < 1) throw std::invalid_argument("R and V must be >= 1");
    if (design.n != vectors.n) throw std::invalid_argument("design/vectors dimension mismatch");
    NoiselessQueryPlan plan;
    plan.design = std::move(design);
    plan.vectors = std::move(vectors);
    plan.R = R;
    plan.V = V;
    return plan;
}

NoiselessQueryPlan make_noiseless_plan(int n, int M, int d, int R, int V, std::uint64_t seed) {
    auto plan = assemble_plan(build_bipartite(n, M, d, mix_seed(seed, 1)),
                              build_ratio_vectors(n, mix_seed(seed, 2)), R, V);
    plan.seed = seed;
    return plan;
}

int bins_from_ratio(double m_over_k, int K) {
    return std::max(1, static_cast<int>(std::llround(m_over_k * K)));
}

}  // namespace mixcolor
