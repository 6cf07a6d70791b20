#include "mixcolor/robust.hpp"

#include <cmath>
#include <stdexcept>

#include "mixcolor/rng.hpp"

namespace mixcolor {

RobustBinMatrices build_robust_matrices(int n, int P2, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("robust design needs n >= 2");
    if (P2 < 1) throw std::invalid_argument("need P2 >= 1");
    RobustBinMatrices m;
    m.n = n;
    m.P1 = 1;
    while ((1 << m.P1) < n) ++m.P1;  // ceil(log2 n)
    m.P2 = P2;
    m.seed = seed;
    Rng rng(seed);
    m.signs.resize(static_cast<std::size_t>(P2) * n);
    for (auto& s : m.signs) s = rng.coin() ? 1 : -1;
    const int D = m.P1 + m.P2;
    for (int a = 0; a < D; ++a)
        for (int b = a + 1; b < D; ++b) m.c_pairs.emplace_back(a, b);
    m.P3 = static_cast<int>(m.c_pairs.size());
    return m;
}

RobustQueryPlan make_robust_plan(int n, int M, int d, int N, int P2,
                                 const QuantizedAlphabet& alphabet, double sigma,
                                 std::uint64_t seed) {
    if (N < 3) throw std::invalid_argument("need N >= 3 repetitions per query row");
    RobustQueryPlan plan;
    plan.design = build_bipartite(n, M, d, mix_seed(seed, 1));
    plan.mats = build_robust_matrices(n, P2, mix_seed(seed, 2));
    plan.N = N;
    plan.alphabet = alphabet;
    plan.sigma = sigma;
    plan.seed = seed;
    return plan;
}

int default_p2(int n, double coeff) {
    return std::max(1, static_cast<int>(std::ceil(coeff * std::log2(static_cast<double>(n)))));
}

namespace {

int c_pair_index(const RobustBinMatrices& m, int a, int b) {
    // lexicographic (a, b), a < b over P1 + P2 rows
    const int D = m.P1 + m.P2;
    return a * (2 * D - a - 1) / 2 + (b - a - 1);
}

double snap_int_grid(double x, double delta) { return std::llround(x / delta) * delta; }

}  // namespace

std::vector<RowEstimate> denoise_bin(const RobustBin& bin, const RobustQueryPlan& plan,
                                     int bin_index, const RobustDecodeOptions& opt) {
    const int P = plan.P();
    const int N = plan.N;
    const double delta = plan.alphabet.delta;
    const int s = static_cast<int>(plan.design.bin_coords[bin_index].size());
    std::vector<RowEstimate> rows(P);
    for (int p = 0; p < P; ++p) {
        // widen the grid to the row's achievable inner products
        int max_entry = p < plan.mats.P1 + plan.mats.P2 ? 1 : 2;
        QuantizedAlphabet row_alpha{delta, std::max(1, std::min(s * plan.alphabet.b * max_entry,
                                                                1 << 24))};
        std::span<const double> samples(bin.samples.data() + static_cast<std::size_t>(p) * N, N);
        auto est = estimate_centers(samples, plan.sigma, row_alpha, opt.em_iters);
        RowEstimate& r = rows[p];
        r.single = !est.is_pair;
        if (r.single) {
            r.raw1 = r.raw2 = est.raw_c1;
            r.snap1 = r.snap2 = snap_int_grid(est.c1, delta);
        } else {
            double theta_raw = 0.5 * (est.raw_c2 - est.raw_c1);
            double theta_snap = 0.5 * (est.c2 - est.c1);
            // adopt the snapped separation when the EM lands near the grid;
            // keeps alignment sharp on quantized instances without assuming
            // on-grid values (perturbed instances keep the raw separation)
            double theta = std::abs(theta_raw - theta_snap) <= opt.snap_trust * delta ? theta_snap
                                                                                      : theta_raw;
            double mu = 0.5 * (est.raw_c1 + est.raw_c2);
            r.raw1 = mu - theta;
            r.raw2 = mu + theta;
            r.snap1 = snap_int_grid(est.c1, delta);
            r.snap2 = snap_int_grid(est.c2, delta);
        }
    }
    return rows;
}

ConsistentSetPair consecutive_summation_check(const std::vector<RowEstimate>& rows,
                                              const RobustBinMatrices& mats, double delta,
                                              const RobustDecodeOptions& opt) {
    const int D = mats.P1 + mats.P2;
    const double tol = opt.align_tol * delta;
    ConsistentSetPair out;
    out.ok = true;
    std::vector<double> y1(D), y2(D);
    for (int i = 0; i < D; ++i) {
        y1[i] = rows[i].raw1;
        y2[i] = rows[i].raw2;
    }
    auto near = [&](double a, double b) { return std::abs(a - b) <= tol; };
    int t = -1;
    for (int s = 0; s < D; ++s) {
        if (rows[s].single) continue;
        if (t >= 0) {
            const RowEstimate& c = rows[D + c_pair_index(mats, t, s)];
            double st1 = y1[t] + y1[s], st2 = y2[t] + y2[s];   // straight sums
            double cr1 = y1[t] + y2[s], cr2 = y2[t] + y1[s];   // crossed sums
            auto fits = [&](double a, double b) {
                return (near(a, c.raw1) && near(b, c.raw2)) || (near(a, c.raw2) && near(b, c.raw1));
            };
            bool straight = fits(st1, st2);
            bool crossed = fits(cr1, cr2);
            if (straight && crossed) ++out.degenerate_matches;  // keep straight
            if (!straight && crossed) std::swap(y1[s], y2[s]);
            if (!straight && !crossed) {
                out.ok = false;  // denoising error somewhere in this bin
                return out;
            }
        }
        t = s;
    }
    out.set1 = std::move(y1);
    out.set2 = std::move(y2);
    return out;
}

Verdict<double> robust_singleton_index(const std::vector<double>& set, const RobustQueryPlan& plan,
                                       int bin_index, const RobustDecodeOptions& opt) {
    const RobustBinMatrices& m = plan.mats;
    const double delta = plan.alphabet.delta;
    const double tol = opt.idx_tol * delta;
    Verdict<double> v;

    bool all_zero = true;
    for (double y : set)
        if (std::abs(y) > tol) { all_zero = false; break; }
    if (all_zero) {
        v.kind = BinVerdict::Zeroton;
        return v;
    }
    v.kind = BinVerdict::Multiton;

    // candidate symbol a*delta: the common value of the nonzero index rows,
    // or (for coordinate 1, whose bits are all zero) read off a sign row
    long long a = 0;
    for (int i = 0; i < m.P1 && a == 0; ++i) {
        if (std::abs(set[i]) > tol) {
            a = std::llround(set[i] / delta);
            if (std::abs(set[i] - a * delta) > tol) return v;
        }
    }
    long long j;
    if (a != 0) {
        long long idx = 0;
        for (int i = 0; i < m.P1; ++i) {
            int bit;
            if (std::abs(set[i]) <= tol)
                bit = 0;
            else if (std::abs(set[i] - a * delta) <= tol)
                bit = 1;
            else
                return v;
            idx = (idx << 1) | bit;
        }
        j = idx + 1;
    } else {
        // all index rows are zero but some verification row is not: only
        // coordinate 1 encodes that way
        j = 1;
        a = std::llround(set[m.P1] / (delta * m.v_entry(0, 1)));
        if (a == 0) return v;
    }
    if (a == 0 || std::abs(a) > plan.alphabet.b) return v;  // value must lie in D
    if (j < 1 || j > plan.design.n) return v;
    if (!plan.design.on_bin(static_cast<int>(j), bin_index)) return v;
    for (int i = 0; i < m.P2; ++i)
        if (std::abs(set[m.P1 + i] - a * delta * m.v_entry(i, static_cast<int>(j))) > tol) return v;

    v.kind = BinVerdict::Singleton;
    v.j = static_cast<int>(j);
    v.value = a * delta;
    return v;
}

RobustPolicy::RobustPolicy(const RobustQueryPlan& plan, const RobustMeasurements& ms,
                           const RobustDecodeOptions& opt, RobustDiagnostics& diag)
    : plan_(plan), opt_(opt) {
    const int M = plan.design.M;
    bin_units_.resize(M);
    std::vector<ConsistentSetPair> aligned(M);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (opt.parallel)
#endif
    for (int i = 0; i < M; ++i) {
        auto rows = denoise_bin(ms.bins[i], plan, i, opt);
        aligned[i] = consecutive_summation_check(rows, plan.mats, plan.alphabet.delta, opt);
    }
    for (int i = 0; i < M; ++i) {
        if (!aligned[i].ok) {
            ++diag.bins_dropped;
            continue;
        }
        diag.degenerate_matches += aligned[i].degenerate_matches;
        bin_units_[i].push_back(static_cast<int>(units_.size()));
        units_.push_back(Unit{i, std::move(aligned[i].set1)});
        bin_units_[i].push_back(static_cast<int>(units_.size()));
        units_.push_back(Unit{i, std::move(aligned[i].set2)});
    }
    diag.consistent_sets = static_cast<long>(units_.size());
    residuals_.resize(units_.size());
}

std::vector<int> RobustPolicy::units_of_coord(int j) const {
    std::vector<int> out;
    const int* bins = plan_.design.bins_of(j);
    for (int t = 0; t < plan_.design.d; ++t)
        for (int u : bin_units_[bins[t]]) out.push_back(u);
    return out;
}

Verdict<double> RobustPolicy::test_pristine(int u) {
    return robust_singleton_index(units_[u].base, plan_, units_[u].bin, opt_);
}

Verdict<double> RobustPolicy::test_peeled_once(int u, int j, double v) {
    if (!plan_.design.on_bin(j, units_[u].bin)) return {};
    std::vector<double> scratch = units_[u].base;
    const int D = plan_.mats.P1 + plan_.mats.P2;
    for (int i = 0; i < D; ++i) scratch[i] -= v * plan_.mats.d_entry(i, j);
    auto verdict = robust_singleton_index(scratch, plan_, units_[u].bin, opt_);
    // a singleton at the coordinate just subtracted is the signature of a
    // wrong-color peel on an overlapping support, not a discovery
    if (verdict.kind == BinVerdict::Singleton && verdict.j == j) verdict.kind = BinVerdict::Multiton;
    return verdict;
}

bool RobustPolicy::peel(int u, int color, int j, double v) {
    if (!plan_.design.on_bin(j, units_[u].bin)) return false;
    auto& slots = residuals_[u];
    ColorResidual* res = nullptr;
    for (auto& s : slots)
        if (s.color == color) res = &s;
    if (!res) {
        slots.push_back(ColorResidual{color, units_[u].base, {}});
        res = &slots.back();
    }
    for (int p : res->peeled)
        if (p == j) return false;
    const int D = plan_.mats.P1 + plan_.mats.P2;
    for (int i = 0; i < D; ++i) res->values[i] -= v * plan_.mats.d_entry(i, j);
    res->peeled.push_back(j);
    return true;
}

Verdict<double> RobustPolicy::test_colored(int u, int color) {
    for (auto& s : residuals_[u])
        if (s.color == color) {
            auto verdict = robust_singleton_index(s.values, plan_, units_[u].bin, opt_);
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

void RobustPolicy::reset_residuals() {
    for (auto& slots : residuals_) slots.clear();
}

bool RobustPolicy::values_equal(double a, double b) const {
    return std::abs(a - b) <= 1e-6 * plan_.alphabet.delta;
}

RobustDecodeResult robust_decode(const RobustQueryPlan& plan, const RobustMeasurements& ms,
                                 const RobustDecodeOptions& opt) {
    RobustDecodeResult result;
    RobustPolicy pol(plan, ms, opt, result.diagnostics);
    PeelingRun<RobustPolicy> run(pol, opt.parallel);
    auto colored = run.run(2);

    static_cast<PeelDiagnostics&>(result.diagnostics) = run.diagnostics();
    result.estimates.resize(2);
    for (int c = 0; c < 2; ++c) {
        result.estimates[c].n = plan.design.n;
        for (auto& [j, v] : colored[c]) result.estimates[c].entries.emplace_back(j, cplx(v, 0.0));
    }
    return result;
}

}  // namespace mixcolor
