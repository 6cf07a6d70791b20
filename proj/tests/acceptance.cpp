// Acceptance suite. Each criterion runs standalone (`acceptance <k>`) and
// prints one pass/fail line; `acceptance` with no argument runs all ten.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mixcolor/decode.hpp"
#include "mixcolor/devo.hpp"
#include "mixcolor/emdenoise.hpp"
#include "mixcolor/experiments.hpp"
#include "mixcolor/robust.hpp"
#include "mixcolor/rng.hpp"
#include "mixcolor/simulate.hpp"

using namespace mixcolor;

namespace {

// ---------------------------------------------------------------- shared ---

struct SweepStats {
    int successes = 0;
    long long false_discoveries = 0;         // across all trials
    long long passing_false_discoveries = 0; // across fully recovered trials
};

SweepStats noiseless_sweep(int n, int K, double c, int d, int R, int V, int trials,
                           std::uint64_t master) {
    SweepStats st;
    int M = bins_from_ratio(c, K);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < trials; ++t) {
        TrialSeeds ts = trial_seeds(master, t);
        auto model = generate_mixture(n, {K / 2, K / 2}, {0.5, 0.5}, 0.0, ts.model);
        auto plan = make_noiseless_plan(n, M, d, R, V, ts.plan);
        auto ms = sample_measurements(plan, model, ts.measure);
        DecodeOptions opt;
        opt.parallel = false;
        auto res = decode(plan, ms, 2, opt);
        auto rep = evaluate(model, res.estimates);
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            st.successes += rep.success ? 1 : 0;
            st.false_discoveries += rep.total_false_discoveries();
            if (rep.success) st.passing_false_discoveries += rep.total_false_discoveries();
        }
    }
    return st;
}

SweepStats robust_sweep(int n, int K, double c, int d, int N, double sigma, double perturbation,
                        int trials, std::uint64_t master) {
    SweepStats st;
    int M = bins_from_ratio(c, K);
    QuantizedAlphabet alpha{1.0, 5};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < trials; ++t) {
        TrialSeeds ts = trial_seeds(master, t);
        auto model = generate_mixture(n, {K / 2, K / 2}, {0.5, 0.5}, ValueSource::Quantized, alpha,
                                      sigma, ts.model);
        auto plan = make_robust_plan(n, M, d, N, default_p2(n), alpha, sigma, ts.plan);
        const MixtureModel* sampled = &model;
        MixtureModel perturbed;
        if (perturbation > 0.0) {
            perturbed = model;
            Rng prng(mix_seed(ts.model, 99));
            for (auto& v : perturbed.vectors)
                for (auto& [j, x] : v.entries)
                    x += cplx(prng.uniform(-perturbation, perturbation), 0.0);
            sampled = &perturbed;
        }
        auto ms = sample_measurements(plan, *sampled, ts.measure);
        RobustDecodeOptions opt;
        opt.parallel = false;
        auto res = robust_decode(plan, ms, opt);
        auto rep = evaluate(model, res.estimates);
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            st.successes += rep.success ? 1 : 0;
            st.false_discoveries += rep.total_false_discoveries();
            if (rep.success) st.passing_false_discoveries += rep.total_false_discoveries();
        }
    }
    return st;
}

// ------------------------------------------------------------- criteria ---

bool criterion_table3() {
    struct Want {
        int L, d, R, V;
        double c, m_over_k;
    };
    const Want wants[] = {{2, 15, 3, 3, 3.71, 33.39},
                          {3, 15, 5, 5, 2.52, 37.80},
                          {4, 13, 8, 8, 1.68, 40.32}};
    bool ok = true;
    for (const auto& w : wants) {
        auto res = optimize_params(w.L, std::vector<double>(w.L, 1.0 / w.L), 1e-5, 2.0, {}, true);
        bool here = res.found && res.best.d == w.d && res.best.R == w.R && res.best.V == w.V &&
                    std::abs(res.best.c - w.c) <= 0.02 &&
                    std::abs(res.best.m_over_k() - w.m_over_k) <= 0.01 * w.m_over_k;
        std::printf("  L=%d -> d=%d R=%d V=%d c=%.2f m/K=%.2f p*=%.3g (want %.2f at d=%d)%s\n",
                    w.L, res.best.d, res.best.R, res.best.V, res.best.c, res.best.m_over_k(),
                    res.best_evo.p_star, w.m_over_k, w.d, here ? "" : "  <-- MISMATCH");
        ok = ok && here;
    }
    return ok;
}

bool criterion_phase_transition() {
    auto hi = noiseless_sweep(10000, 100, 3.8, 15, 3, 3, 100, 20250801);
    auto lo = noiseless_sweep(10000, 100, 3.2, 15, 3, 3, 100, 20250802);
    std::printf("  M=3.8K: %d/100 (need >= 95); M=3.2K: %d/100 (need <= 50)\n", hi.successes,
                lo.successes);
    return hi.successes >= 95 && lo.successes <= 50;
}

double mean_decode_ns(int n, int K, int trials, std::uint64_t master) {
    int M = bins_from_ratio(3.8, K);
    std::vector<NoiselessQueryPlan> plans;
    std::vector<NoiselessMeasurements> sets;
    for (int t = 0; t < trials; ++t) {
        TrialSeeds ts = trial_seeds(master, t);
        auto model = generate_mixture(n, {K / 2, K / 2}, {0.5, 0.5}, 0.0, ts.model);
        plans.push_back(make_noiseless_plan(n, M, 15, 3, 3, ts.plan));
        sets.push_back(sample_measurements(plans.back(), model, ts.measure));
    }
    DecodeOptions opt;
    opt.parallel = false;
    decode(plans[0], sets[0], 2, opt);  // warmup
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        auto t0 = std::chrono::steady_clock::now();
        auto res = decode(plans[t], sets[t], 2, opt);
        auto t1 = std::chrono::steady_clock::now();
        total += std::chrono::duration<double, std::nano>(t1 - t0).count();
        if (res.estimates.empty()) std::printf("  (unexpected empty decode)\n");
    }
    return total / trials;
}

bool criterion_linear_time() {
    const int trials = 24;
    double t1k = mean_decode_ns(10000, 1000, trials, 311);
    double t2k = mean_decode_ns(10000, 2000, trials, 312);
    double t1k_bign = mean_decode_ns(100000, 1000, trials, 313);
    double ratio_k = t2k / t1k;
    double ratio_n = t1k_bign / t1k;
    std::printf("  K=1000: %.2f ms, K=2000: %.2f ms (ratio %.2f, need 1.6..2.4)\n", t1k / 1e6,
                t2k / 1e6, ratio_k);
    std::printf("  n=1e4 -> 1e5 at K=1000: %.2f ms vs %.2f ms (change %.1f%%, need < 15%%)\n",
                t1k / 1e6, t1k_bign / 1e6, 100.0 * std::abs(ratio_n - 1.0));
    return ratio_k >= 1.6 && ratio_k <= 2.4 && std::abs(ratio_n - 1.0) < 0.15;
}

bool criterion_devo_vs_sim() {
    const int K = 20000, n = 100000, trials = 20;
    auto evo = analyze_design(make_design(2, 15, 3, 3, 3.71), 2.0);
    double bound = std::max(3e-3, 5.0 * evo.p_star);
    int M = bins_from_ratio(3.71, K);
    double unrecovered_sum = 0.0;
    long count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : unrecovered_sum, count)
#endif
    for (int t = 0; t < trials; ++t) {
        TrialSeeds ts = trial_seeds(41000, t);
        auto model = generate_mixture(n, {K / 2, K / 2}, {0.5, 0.5}, 0.0, ts.model);
        auto plan = make_noiseless_plan(n, M, 15, 3, 3, ts.plan);
        auto ms = sample_measurements(plan, model, ts.measure);
        DecodeOptions opt;
        opt.parallel = false;
        auto res = decode(plan, ms, 2, opt);
        auto rep = evaluate(model, res.estimates);
        for (int l = 0; l < 2; ++l) unrecovered_sum += 1.0 - rep.support_fraction[l];
        count += 2;
    }
    double mean_unrec = unrecovered_sum / count;
    std::printf("  mean unrecovered fraction %.2e vs bound %.2e (p* = %.2e)\n", mean_unrec, bound,
                evo.p_star);
    return mean_unrec <= bound;
}

bool criterion_giant_components() {
    const int K = 50000, n = 200000, seeds = 4;
    auto evo = analyze_design(make_design(2, 15, 3, 3, 3.71), 2.0);
    double want = evo.comp[0].zeta * evo.comp[0].q_s;
    double f0 = 0.0, f1 = 0.0;
    long third_max = 0;
    for (int s = 0; s < seeds; ++s) {
        TrialSeeds ts = trial_seeds(51000, s);
        auto model = generate_mixture(n, {K / 2, K / 2}, {0.5, 0.5}, 0.0, ts.model);
        auto plan = make_noiseless_plan(n, bins_from_ratio(3.71, K), 15, 3, 3, ts.plan);
        auto ms = sample_measurements(plan, model, ts.measure);
        DecodeOptions opt;
        NoiselessPolicy pol(plan, ms, opt);
        PeelingRun<NoiselessPolicy> run(pol, true);
        run.find_singletons();
        run.build_singleton_graph();
        run.giant_components(2);
        const auto& sizes = run.diagnostics().component_sizes;
        if (sizes.size() < 3) return false;
        f0 += static_cast<double>(sizes[0]) / (K / 2) / seeds;
        f1 += static_cast<double>(sizes[1]) / (K / 2) / seeds;
        third_max = std::max(third_max, sizes[2]);
    }
    double third_cap = 20.0 * std::log(static_cast<double>(K));
    std::printf("  top-2 fractions %.4f, %.4f vs zeta*qs = %.4f (tol 0.02, %d seeds); "
                "third <= %ld (cap %.0f)\n",
                f0, f1, want, seeds, third_max, third_cap);
    return std::abs(f0 - want) <= 0.02 && std::abs(f1 - want) <= 0.02 &&
           third_max <= static_cast<long>(third_cap);
}

bool criterion_em_denoiser() {
    QuantizedAlphabet alpha{1.0, 5};
    int pair_hits = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        Rng rng(mix_seed(61000, s));
        std::vector<double> ys(180);
        for (auto& y : ys) y = (rng.coin() ? 4.0 : 1.0) + 0.2 * rng.normal();
        auto est = estimate_centers(ys, 0.2, alpha, 20);
        if (est.is_pair && std::abs(est.c1 - 1.0) < 1e-9 && std::abs(est.c2 - 4.0) < 1e-9)
            ++pair_hits;
    }
    int single_hits = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(mix_seed(62000, s));
        std::vector<double> ys(180);
        for (auto& y : ys) y = 3.0 + 0.2 * rng.normal();
        auto est = estimate_centers(ys, 0.2, alpha, 20);
        if (!est.is_pair && std::abs(est.c1 - 3.0) < 1e-9) ++single_hits;
    }
    std::printf("  pair {1,4}: %d/1000 (need >= 999); equal centers: %d/100 (need >= 99)\n",
                pair_hits, single_hits);
    return pair_hits >= 999 && single_hits >= 99;
}

bool criterion_robust_recovery() {
    const int K = 50;
    // part 1: some N <= 4 log2(n) reaches 100/100 at n = 4096
    int used_n12 = 0;
    for (int N : {36, 44, 48}) {
        auto st12 = robust_sweep(4096, K, 3.0, 15, N, 0.2, 0.0, 100, 71000 + N);
        std::printf("  n=4096 N=%d: %d/100\n", N, st12.successes);
        if (st12.successes == 100) {
            used_n12 = N;
            break;
        }
    }
    if (used_n12 == 0) return false;

    // part 2: sample growth from n = 2^12 to n = 2^16 at equal K
    const int N16 = 48;  // 3 log2(n) at n = 2^16
    auto st16 = robust_sweep(65536, K, 3.0, 15, N16, 0.2, 0.0, 20, 72000);
    std::printf("  n=65536 N=%d: %d/20\n", N16, st16.successes);
    if (st16.successes < 20) return false;

    auto m_of = [K](int n, int N) {
        auto probe = build_robust_matrices(n, default_p2(n), 0);
        return static_cast<double>(bins_from_ratio(3.0, K)) * N * probe.rows();
    };
    double ratio = m_of(65536, N16) / m_of(4096, used_n12);
    std::printf("  m(2^16)/m(2^12) = %.2f (need <= 3)\n", ratio);
    return ratio <= 3.0;
}

bool criterion_no_false_discovery() {
    auto noiseless = noiseless_sweep(10000, 100, 3.8, 15, 3, 3, 100, 20250801);
    auto robust = robust_sweep(4096, 50, 3.0, 15, 48, 0.2, 0.0, 100, 81000);
    std::printf("  false discoveries: noiseless %lld (passing %lld), robust %lld (passing %lld)\n",
                noiseless.false_discoveries, noiseless.passing_false_discoveries,
                robust.false_discoveries, robust.passing_false_discoveries);
    // over all trials, not only the fully recovered ones
    return noiseless.false_discoveries == 0 && robust.false_discoveries == 0;
}

// --------------------------------------------- criterion 9: oracle decode ---

// Exhaustive reference decoder for tiny noiseless instances: enumerate
// support tuples and per-pair component assignments, keep every hypothesis
// exactly consistent with all measurements, and intersect the uniquely
// determined elements.

struct TinyPair {
    int bin;
    cplx y1, y2;
};

// incremental Gaussian elimination over the complex field
struct LinearSystem {
    int vars;
    std::vector<std::vector<cplx>> rows;  // vars + 1 columns (augmented)

    explicit LinearSystem(int v) : vars(v) {}

    // returns false when the new equation is inconsistent
    bool add(std::vector<cplx> eq) {
        for (auto& r : rows) {
            int p = pivot(r);
            if (p < vars && std::abs(eq[p]) > 1e-9) {
                cplx f = eq[p] / r[p];
                for (int i = 0; i <= vars; ++i) eq[i] -= f * r[i];
            }
        }
        int p = pivot(eq);
        if (p == vars) return std::abs(eq[vars]) <= 1e-6;  // dependent: needs zero residual
        rows.push_back(std::move(eq));
        return true;
    }

    int pivot(const std::vector<cplx>& r) const {
        for (int i = 0; i < vars; ++i)
            if (std::abs(r[i]) > 1e-9) return i;
        return vars;
    }

    // back substitution; pinned[i] = false when x_i is free or rests on one
    void solve(std::vector<cplx>& x, std::vector<bool>& pinned) const {
        x.assign(vars, cplx(0));
        pinned.assign(vars, false);
        std::vector<std::vector<cplx>> rr = rows;
        std::sort(rr.begin(), rr.end(),
                  [this](auto& a, auto& b) { return pivot(a) < pivot(b); });
        for (int i = static_cast<int>(rr.size()) - 1; i >= 0; --i) {
            int p = pivot(rr[i]);
            if (p == vars) continue;
            cplx acc = rr[i][vars];
            bool ok = true;
            for (int j = p + 1; j < vars; ++j)
                if (std::abs(rr[i][j]) > 1e-9) {
                    if (!pinned[j]) ok = false;
                    acc -= rr[i][j] * x[j];
                }
            if (ok) {
                x[p] = acc / rr[i][p];
                pinned[p] = true;
            }
        }
    }
};

struct TinyHypothesis {
    // per component: uniquely determined (coordinate, value) pairs
    std::vector<std::vector<std::pair<int, cplx>>> pinned_elems;
    std::vector<std::pair<int, cplx>> pinned_union;  // label-free view
    std::vector<int> free_coords;  // support coordinates the system leaves open
};

class TinyOracle {
  public:
    TinyOracle(const NoiselessQueryPlan& plan, const std::vector<TinyPair>& pairs, int L,
               std::vector<int> sparsities)
        : plan_(plan), pairs_(pairs), L_(L), k_(std::move(sparsities)) {}

    std::vector<TinyHypothesis> enumerate() {
        std::vector<TinyHypothesis> out;
        std::vector<int> support;
        choose_supports(out, support, 0, 1);
        return out;
    }

    bool budget_exceeded() const { return nodes_ > budget_; }

  private:
    void choose_supports(std::vector<TinyHypothesis>& out, std::vector<int>& support, int comp,
                         int from) {
        if (nodes_ > budget_) return;
        if (comp == L_) {
            test_supports(out, support);
            return;
        }
        choose_rec(out, support, comp, from, k_[comp]);
    }

    void choose_rec(std::vector<TinyHypothesis>& out, std::vector<int>& support, int comp,
                    int from, int left) {
        if (nodes_ > budget_) return;
        if (left == 0) {
            choose_supports(out, support, comp + 1, 1);
            return;
        }
        for (int j = from; j <= plan_.design.n; ++j) {
            support.push_back(j);
            choose_rec(out, support, comp, j + 1, left - 1);
            support.pop_back();
        }
    }

    void test_supports(std::vector<TinyHypothesis>& out, const std::vector<int>& support) {
        var_of_.clear();
        var_of_.resize(L_);
        int v = 0, at = 0;
        for (int c = 0; c < L_; ++c)
            for (int i = 0; i < k_[c]; ++i) var_of_[c].push_back({support[at++], v++});
        LinearSystem sys(v);
        dfs(out, sys, 0);
    }

    std::vector<cplx> equation(int comp, int bin, bool second, cplx rhs) const {
        int vars = 0;
        for (int c = 0; c < L_; ++c) vars += k_[c];
        std::vector<cplx> eq(vars + 1, cplx(0));
        for (const auto& [j, var] : var_of_[comp])
            if (plan_.design.on_bin(j, bin))
                eq[var] = second ? plan_.vectors.r2_at(j) : plan_.vectors.r1_at(j);
        eq[vars] = rhs;
        return eq;
    }

    void dfs(std::vector<TinyHypothesis>& out, const LinearSystem& sys, std::size_t pair_idx) {
        if (++nodes_ > budget_) return;
        if (pair_idx == pairs_.size()) {
            finish(out, sys);
            return;
        }
        const auto& p = pairs_[pair_idx];
        for (int c = 0; c < L_; ++c) {
            LinearSystem next = sys;
            if (!next.add(equation(c, p.bin, false, p.y1))) continue;
            if (!next.add(equation(c, p.bin, true, p.y2))) continue;
            dfs(out, next, pair_idx + 1);
        }
    }

    void finish(std::vector<TinyHypothesis>& out, const LinearSystem& sys) {
        std::vector<cplx> x;
        std::vector<bool> pinned;
        sys.solve(x, pinned);
        TinyHypothesis h;
        h.pinned_elems.resize(L_);
        for (int c = 0; c < L_; ++c)
            for (const auto& [j, var] : var_of_[c]) {
                if (!pinned[var]) {
                    h.free_coords.push_back(j);
                    continue;
                }
                if (std::abs(x[var]) < 1e-6) return;  // stored zeros contradict the sparsity
                h.pinned_elems[c].push_back({j, x[var]});
                h.pinned_union.push_back({j, x[var]});
            }
        for (auto& elems : h.pinned_elems)
            std::sort(elems.begin(), elems.end(),
                      [](auto& a, auto& b) { return a.first < b.first; });
        out.push_back(std::move(h));
        if (out.size() > 4000) nodes_ = budget_ + 1;  // degenerate instance, give up
    }

    const NoiselessQueryPlan& plan_;
    const std::vector<TinyPair>& pairs_;
    int L_;
    std::vector<int> k_;
    std::vector<std::vector<std::pair<int, int>>> var_of_;  // (coordinate, variable)
    long nodes_ = 0;
    const long budget_ = 4000000;
};

// independent summation check, reimplemented for the oracle path
std::vector<TinyPair> tiny_pairs(const NoiselessMeasurements& ms) {
    std::vector<TinyPair> out;
    for (std::size_t i = 0; i < ms.bins.size(); ++i) {
        const auto& bin = ms.bins[i];
        std::vector<std::pair<cplx, cplx>> seen;
        for (cplx y1 : bin.type1)
            for (cplx y2 : bin.type2)
                for (cplx y3 : bin.verif) {
                    if (std::abs(y3 - y1 - y2) > 1e-9 * std::max(1.0, std::abs(y3))) continue;
                    bool dup = false;
                    for (auto& s : seen)
                        if (std::abs(s.first - y1) < 1e-9 && std::abs(s.second - y2) < 1e-9)
                            dup = true;
                    if (!dup) {
                        seen.push_back({y1, y2});
                        out.push_back({static_cast<int>(i), y1, y2});
                    }
                }
    }
    return out;
}

bool contains_elem(const std::vector<std::pair<int, cplx>>& elems, int j, cplx v) {
    for (const auto& [jj, vv] : elems)
        if (jj == j && std::abs(vv - v) < 1e-6) return true;
    return false;
}

bool criterion_oracle_equivalence() {
    const int instances = 500;
    int agreed = 0, skipped = 0, truth_missing = 0, disagreements = 0;
    Rng gen(91000);
    for (int inst = 0; inst < instances; ++inst) {
        int L = 1 + gen.index(2);
        int n = 8 + gen.index(5);  // 8..12
        std::vector<int> ks;
        int K = 0;
        for (int c = 0; c < L; ++c) {
            ks.push_back(1 + gen.index(2));
            K += ks.back();
        }
        int M = std::max(6, static_cast<int>(std::llround(3.71 * K)));
        int d = std::min(3, M);
        TrialSeeds ts = trial_seeds(92000, inst);
        auto model = generate_mixture(n, ks, std::vector<double>(L, 1.0 / L), 0.0, ts.model);
        auto plan = make_noiseless_plan(n, M, d, 3, 3, ts.plan);
        auto ms = sample_measurements(plan, model, ts.measure);
        DecodeOptions opt;
        opt.parallel = false;
        auto res = decode(plan, ms, L, opt);

        auto pairs = tiny_pairs(ms);
        TinyOracle oracle(plan, pairs, L, ks);
        auto hyps = oracle.enumerate();
        if (oracle.budget_exceeded() || hyps.empty()) {
            ++skipped;
            continue;
        }
        // sanity: the truth itself must appear among the hypotheses
        bool truth_found = false;
        for (auto& h : hyps) {
            for (int perm = 0; perm < (L == 2 ? 2 : 1) && !truth_found; ++perm) {
                bool all = true;
                for (int c = 0; c < L && all; ++c) {
                    int hc = perm == 0 ? c : 1 - c;
                    for (const auto& [j, v] : h.pinned_elems[hc]) {
                        auto tv = model.vectors[c].at(j);
                        if (!tv || std::abs(*tv - v) > 1e-6) all = false;
                    }
                }
                truth_found = all;
            }
            if (truth_found) break;
        }
        if (!truth_found) {
            ++truth_missing;
            continue;
        }

        // Coordinate-by-coordinate agreement, label-free (tiny instances can
        // be label-ambiguous even information-theoretically): every decoded
        // element must appear in, or be left open by, at least one hypothesis
        // of the exhaustive enumeration. A value no consistent hypothesis can
        // realize would be a fabrication.
        bool ok = true;
        for (int c = 0; c < L && ok; ++c) {
            for (const auto& [j, v] : res.estimates[c].entries) {
                bool realizable = false;
                for (auto& h : hyps) {
                    if (contains_elem(h.pinned_union, j, v) ||
                        std::find(h.free_coords.begin(), h.free_coords.end(), j) !=
                            h.free_coords.end()) {
                        realizable = true;
                        break;
                    }
                }
                if (!realizable) ok = false;
            }
        }
        if (ok)
            ++agreed;
        else {
            ++disagreements;
            std::printf("  disagreement at instance %d (L=%d n=%d K=%d, %zu hypotheses)\n", inst,
                        L, n, K, hyps.size());
        }
    }
    std::printf("  %d/%d agreed, %d skipped (budget), %d truth-missing, %d disagreements\n",
                agreed, instances, skipped, truth_missing, disagreements);
    return disagreements == 0 && truth_missing == 0 && agreed >= instances - 5;
}

bool criterion_perturbation() {
    const int K = 50, trials = 30;
    const double c = 6.0;  // largest swept M; d follows d = 5 M / K
    int d = static_cast<int>(std::llround(5.0 * c));
    auto lo = robust_sweep(4096, K, c, d, 36, 0.1, 0.2, trials, 101000);
    auto hi = robust_sweep(4096, K, c, d, 36, 0.1, 0.4, trials, 102000);
    double r02 = static_cast<double>(lo.successes) / trials;
    double r04 = static_cast<double>(hi.successes) / trials;
    std::printf("  perturbation 0.2: %.2f, 0.4: %.2f (gap %.2f, need >= 0.3)\n", r02, r04,
                r02 - r04);
    return r02 - r04 >= 0.3;
}

struct Criterion {
    const char* name;
    bool (*fn)();
};

const Criterion criteria[] = {
    {"design table reproduction", criterion_table3},
    {"noiseless phase transition", criterion_phase_transition},
    {"linear decode time", criterion_linear_time},
    {"density evolution vs simulation", criterion_devo_vs_sim},
    {"giant component law", criterion_giant_components},
    {"EM denoiser exactness", criterion_em_denoiser},
    {"robust recovery and sample growth", criterion_robust_recovery},
    {"no false discovery", criterion_no_false_discovery},
    {"oracle equivalence on tiny instances", criterion_oracle_equivalence},
    {"perturbation robustness", criterion_perturbation},
};

}  // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all_ok = true;
    for (int i = 1; i <= 10; ++i) {
        if (only != 0 && i != only) continue;
        bool ok = criteria[i - 1].fn();
        std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", i, criteria[i - 1].name);
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
