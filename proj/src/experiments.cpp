#include "mixcolor/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mixcolor/decode.hpp"
#include "mixcolor/robust.hpp"
#include "mixcolor/rng.hpp"
#include "mixcolor/serialize.hpp"
#include "mixcolor/simulate.hpp"

namespace mixcolor {

using nlohmann::json;

TrialSeeds trial_seeds(std::uint64_t master, int trial) {
    std::uint64_t t = mix_seed(master, static_cast<std::uint64_t>(trial));
    return TrialSeeds{mix_seed(t, 1), mix_seed(t, 2), mix_seed(t, 3)};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("mode", c.mode);
    get("L", c.L);
    get("n", c.n);
    get("K", c.K);
    get("d", c.d);
    get("R", c.R);
    get("V", c.V);
    get("m_over_k", c.m_over_k);
    get("trials", c.trials);
    get("seed", c.seed);
    get("out", c.out);
    get("jobs", c.jobs);
    get("auto_design", c.auto_design);
    get("sigma", c.sigma);
    get("delta", c.delta);
    get("b", c.b);
    get("N", c.N);
    get("n_coeff", c.n_coeff);
    get("p2_coeff", c.p2_coeff);
    get("perturbation", c.perturbation);
    get("d_from_bins", c.d_from_bins);
    get("K_sweep", c.K_sweep);
    get("n_sweep", c.n_sweep);
    get("p_max", c.p_max);
    get("theta", c.theta);
    if (j.contains("ranges")) {
        const json& r = j["ranges"];
        auto getr = [&](const char* key, auto& field) {
            if (r.contains(key)) field = r.at(key).get<std::decay_t<decltype(field)>>();
        };
        getr("d_min", c.ranges.d_min);
        getr("d_max", c.ranges.d_max);
        getr("r_min", c.ranges.r_min);
        getr("r_max", c.ranges.r_max);
        getr("v_min", c.ranges.v_min);
        getr("v_max", c.ranges.v_max);
        getr("c_min", c.ranges.c_min);
        getr("c_max", c.ranges.c_max);
        getr("c_step", c.ranges.c_step);
    }
    if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
    return c;
}

namespace {

std::vector<int> even_sparsities(int K, int L) {
    std::vector<int> out(L, K / L);
    for (int l = 0; l < K % L; ++l) ++out[l];
    return out;
}

std::vector<double> equal_weights(int L) { return std::vector<double>(L, 1.0 / L); }

int robust_reps(const ExperimentConfig& cfg, int n) {
    if (cfg.N > 0) return cfg.N;
    return std::max(3, static_cast<int>(std::ceil(cfg.n_coeff * std::log2(static_cast<double>(n)))));
}

struct TrialOutcome {
    bool success = false;
    long long decode_ns = 0;
};

TrialOutcome noiseless_trial(const ExperimentConfig& cfg, int n, int K, int M, int d, int trial) {
    TrialSeeds ts = trial_seeds(cfg.seed, trial);
    auto model = generate_mixture(n, even_sparsities(K, cfg.L), equal_weights(cfg.L), 0.0, ts.model);
    auto plan = make_noiseless_plan(n, M, d, cfg.R, cfg.V, ts.plan);
    auto ms = sample_measurements(plan, model, ts.measure);
    DecodeOptions opt;
    opt.parallel = false;  // trials are the parallel axis
    auto t0 = std::chrono::steady_clock::now();
    auto res = decode(plan, ms, cfg.L, opt);
    auto t1 = std::chrono::steady_clock::now();
    TrialOutcome out;
    out.decode_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    out.success = evaluate(model, res.estimates).success;
    return out;
}

MixtureModel perturb_model(const MixtureModel& quantized, double level, std::uint64_t seed) {
    MixtureModel m = quantized;
    Rng rng(seed);
    double delta = m.alphabet ? m.alphabet->delta : 1.0;
    for (auto& v : m.vectors)
        for (auto& [j, x] : v.entries)
            x += cplx(rng.uniform(-level * delta, level * delta), 0.0);
    return m;
}

TrialOutcome robust_trial(const ExperimentConfig& cfg, int n, int K, int M, int d, int N,
                          double perturbation_level, int trial) {
    TrialSeeds ts = trial_seeds(cfg.seed, trial);
    QuantizedAlphabet alpha{cfg.delta, cfg.b};
    auto model = generate_mixture(n, even_sparsities(K, 2), equal_weights(2),
                                  ValueSource::Quantized, alpha, cfg.sigma, ts.model);
    auto plan = make_robust_plan(n, M, d, N, default_p2(n, cfg.p2_coeff), alpha, cfg.sigma, ts.plan);
    const MixtureModel* sampled = &model;
    MixtureModel perturbed;
    if (perturbation_level > 0.0) {
        perturbed = perturb_model(model, perturbation_level, mix_seed(ts.model, 99));
        sampled = &perturbed;
    }
    auto ms = sample_measurements(plan, *sampled, ts.measure);
    RobustDecodeOptions opt;
    opt.parallel = false;
    auto t0 = std::chrono::steady_clock::now();
    auto res = robust_decode(plan, ms, opt);
    auto t1 = std::chrono::steady_clock::now();
    TrialOutcome out;
    out.decode_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    // success against the quantized reference in both regimes
    out.success = evaluate(model, res.estimates).success;
    return out;
}

struct TimingStats {
    long long mean = 0, p50 = 0, p95 = 0;
};

TimingStats timing_stats(std::vector<long long> ns) {
    TimingStats s;
    if (ns.empty()) return s;
    std::sort(ns.begin(), ns.end());
    long long sum = 0;
    for (long long x : ns) sum += x;
    s.mean = sum / static_cast<long long>(ns.size());
    s.p50 = ns[ns.size() / 2];
    s.p95 = ns[std::min(ns.size() - 1, ns.size() * 95 / 100)];
    return s;
}

void write_output(const ExperimentConfig& cfg, const std::string& csv, std::ostream& summary) {
    if (cfg.out.empty()) {
        summary << csv;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot write output file: " + cfg.out);
    f << csv;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

int run_phase(const ExperimentConfig& cfg, std::ostream& summary) {
    std::ostringstream csv;
    csv << "L,n,K,d,R,V,M,m,trials,successes,success_rate\n";
    for (double c : cfg.m_over_k) {
        int M = bins_from_ratio(c, cfg.K);
        std::vector<char> wins(cfg.trials, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads())
#endif
        for (int t = 0; t < cfg.trials; ++t)
            wins[t] = noiseless_trial(cfg, cfg.n, cfg.K, M, cfg.d, t).success ? 1 : 0;
        int successes = std::count(wins.begin(), wins.end(), 1);
        long long m = static_cast<long long>(2 * cfg.R + cfg.V) * M;
        csv << cfg.L << ',' << cfg.n << ',' << cfg.K << ',' << cfg.d << ',' << cfg.R << ','
            << cfg.V << ',' << M << ',' << m << ',' << cfg.trials << ',' << successes << ','
            << fmt(static_cast<double>(successes) / cfg.trials) << '\n';
        summary << "M=" << M << " (m/K=" << fmt(static_cast<double>(m) / cfg.K)
                << "): " << successes << "/" << cfg.trials << " recoveries\n";
    }
    write_output(cfg, csv.str(), summary);
    return 0;
}

int run_noiseless_runtime(const ExperimentConfig& cfg, std::ostream& summary) {
    std::ostringstream csv;
    csv << "L,n,K,d,R,V,M,m,trials,successes,success_rate,mean_decode_ns,p50_ns,p95_ns\n";
    double c = cfg.m_over_k.empty() ? 3.8 : cfg.m_over_k.front();
    std::vector<std::pair<int, int>> grid;  // (n, K)
    if (!cfg.n_sweep.empty())
        for (int n : cfg.n_sweep) grid.emplace_back(n, cfg.K);
    else {
        auto Ks = cfg.K_sweep.empty() ? std::vector<int>{250, 500, 1000, 2000} : cfg.K_sweep;
        for (int K : Ks) grid.emplace_back(cfg.n, K);
    }
    for (auto [n, K] : grid) {
        int M = bins_from_ratio(c, K);
        noiseless_trial(cfg, n, K, M, cfg.d, cfg.trials);  // warmup, unrecorded
        std::vector<long long> ns(cfg.trials);
        int successes = 0;
        for (int t = 0; t < cfg.trials; ++t) {  // serial so the timings are clean
            auto o = noiseless_trial(cfg, n, K, M, cfg.d, t);
            ns[t] = o.decode_ns;
            successes += o.success ? 1 : 0;
        }
        auto st = timing_stats(ns);
        long long m = static_cast<long long>(2 * cfg.R + cfg.V) * M;
        csv << cfg.L << ',' << n << ',' << K << ',' << cfg.d << ',' << cfg.R << ',' << cfg.V << ','
            << M << ',' << m << ',' << cfg.trials << ',' << successes << ','
            << fmt(static_cast<double>(successes) / cfg.trials) << ',' << st.mean << ',' << st.p50
            << ',' << st.p95 << '\n';
        summary << "n=" << n << " K=" << K << ": mean decode " << st.mean / 1000000.0 << " ms\n";
    }
    write_output(cfg, csv.str(), summary);
    return 0;
}

int run_robust(const ExperimentConfig& cfg, std::ostream& summary, bool timed) {
    std::ostringstream csv;
    csv << "n,K,N,P1,P2,P3,M,m,successes";
    if (timed) csv << ",mean_decode_ns,p50_ns,p95_ns";
    csv << '\n';
    int N = robust_reps(cfg, cfg.n);
    for (double c : cfg.m_over_k) {
        int M = bins_from_ratio(c, cfg.K);
        int d = cfg.d_from_bins ? std::max(1, static_cast<int>(std::llround(5.0 * M / cfg.K)))
                                : cfg.d;
        d = std::min(d, M);
        std::vector<char> wins(cfg.trials, 0);
        std::vector<long long> ns(cfg.trials, 0);
        if (timed) {
            for (int t = 0; t < cfg.trials; ++t) {
                auto o = robust_trial(cfg, cfg.n, cfg.K, M, d, N, 0.0, t);
                wins[t] = o.success ? 1 : 0;
                ns[t] = o.decode_ns;
            }
        } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads())
#endif
            for (int t = 0; t < cfg.trials; ++t)
                wins[t] = robust_trial(cfg, cfg.n, cfg.K, M, d, N, 0.0, t).success ? 1 : 0;
        }
        int successes = std::count(wins.begin(), wins.end(), 1);
        RobustBinMatrices probe = build_robust_matrices(cfg.n, default_p2(cfg.n, cfg.p2_coeff), 0);
        long long m = static_cast<long long>(M) * N * probe.rows();
        csv << cfg.n << ',' << cfg.K << ',' << N << ',' << probe.P1 << ',' << probe.P2 << ','
            << probe.P3 << ',' << M << ',' << m << ',' << successes;
        if (timed) {
            auto st = timing_stats(ns);
            csv << ',' << st.mean << ',' << st.p50 << ',' << st.p95;
        }
        csv << '\n';
        summary << "M=" << M << " N=" << N << ": " << successes << "/" << cfg.trials
                << " recoveries\n";
    }
    write_output(cfg, csv.str(), summary);
    return 0;
}

int run_perturbation(const ExperimentConfig& cfg, std::ostream& summary) {
    std::ostringstream csv;
    csv << "n,K,perturbation,M,d,m,trials,successes,success_rate\n";
    int N = robust_reps(cfg, cfg.n);
    auto levels = cfg.perturbation.empty() ? std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4}
                                           : cfg.perturbation;
    for (double lvl : levels) {
        for (double c : cfg.m_over_k) {
            int M = bins_from_ratio(c, cfg.K);
            int d = cfg.d_from_bins ? std::max(1, static_cast<int>(std::llround(5.0 * M / cfg.K)))
                                    : cfg.d;
            d = std::min(d, M);
            std::vector<char> wins(cfg.trials, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads())
#endif
            for (int t = 0; t < cfg.trials; ++t)
                wins[t] = robust_trial(cfg, cfg.n, cfg.K, M, d, N, lvl, t).success ? 1 : 0;
            int successes = std::count(wins.begin(), wins.end(), 1);
            RobustBinMatrices probe =
                build_robust_matrices(cfg.n, default_p2(cfg.n, cfg.p2_coeff), 0);
            long long m = static_cast<long long>(M) * N * probe.rows();
            csv << cfg.n << ',' << cfg.K << ',' << fmt(lvl) << ',' << M << ',' << d << ',' << m
                << ',' << cfg.trials << ',' << successes << ','
                << fmt(static_cast<double>(successes) / cfg.trials) << '\n';
            summary << "perturbation=" << fmt(lvl) << " M=" << M << ": " << successes << "/"
                    << cfg.trials << " recoveries\n";
        }
    }
    write_output(cfg, csv.str(), summary);
    return 0;
}

int run_devo(const ExperimentConfig& cfg, std::ostream& summary) {
    auto res = optimize_params(cfg.L, equal_weights(cfg.L), cfg.p_max, cfg.theta, cfg.ranges,
                               cfg.jobs != 1);
    std::ostringstream csv;
    csv << "d,R,V,c,m_over_K,p_star,zeta,qs,giant_ratio\n";
    for (const auto& r : res.feasible)
        csv << r.d << ',' << r.R << ',' << r.V << ',' << fmt(r.c) << ',' << fmt(r.m_over_k) << ','
            << fmt(r.p_star) << ',' << fmt(r.zeta) << ',' << fmt(r.q_s) << ','
            << fmt(r.giant_ratio) << '\n';
    if (!res.found) {
        summary << "no feasible design in the searched ranges\n";
        write_output(cfg, csv.str(), summary);
        return 0;
    }
    summary << "optimum: d=" << res.best.d << " R=" << res.best.R << " V=" << res.best.V
            << " c=" << fmt(res.best.c) << " m/K=" << fmt(res.best.m_over_k())
            << " p*=" << fmt(res.best_evo.p_star) << '\n';
    write_output(cfg, csv.str(), summary);
    return 0;
}

int run_single(const ExperimentConfig& cfg, std::ostream& summary) {
    TrialSeeds ts = trial_seeds(cfg.seed, 0);
    json out;
    if (cfg.sigma > 0.0) {
        QuantizedAlphabet alpha{cfg.delta, cfg.b};
        auto model = generate_mixture(cfg.n, even_sparsities(cfg.K, 2), equal_weights(2),
                                      ValueSource::Quantized, alpha, cfg.sigma, ts.model);
        int M = bins_from_ratio(cfg.m_over_k.front(), cfg.K);
        auto plan = make_robust_plan(cfg.n, M, std::min(cfg.d, M), robust_reps(cfg, cfg.n),
                                     default_p2(cfg.n, cfg.p2_coeff), alpha, cfg.sigma, ts.plan);
        auto ms = sample_measurements(plan, model, ts.measure);
        auto res = robust_decode(plan, ms);
        auto rep = evaluate(model, res.estimates);
        out["plan"] = to_json(plan);
        out["diagnostics"] = to_json(res.diagnostics);
        out["success"] = rep.success;
        out["false_discoveries"] = rep.total_false_discoveries();
        if (!cfg.out.empty()) {
            json dump{{"model", to_json(model)}, {"measurements", to_json(ms)}};
            std::ofstream f(cfg.out);
            f << dump.dump(2) << '\n';
        }
    } else {
        auto model =
            generate_mixture(cfg.n, even_sparsities(cfg.K, cfg.L), equal_weights(cfg.L), 0.0, ts.model);
        int M = bins_from_ratio(cfg.m_over_k.front(), cfg.K);
        auto plan = make_noiseless_plan(cfg.n, M, std::min(cfg.d, M), cfg.R, cfg.V, ts.plan);
        auto ms = sample_measurements(plan, model, ts.measure);
        auto res = decode(plan, ms, cfg.L);
        auto rep = evaluate(model, res.estimates);
        out["plan"] = to_json(plan);
        out["diagnostics"] = to_json(res.diagnostics);
        out["success"] = rep.success;
        out["false_discoveries"] = rep.total_false_discoveries();
        if (!cfg.out.empty()) {
            json dump{{"model", to_json(model)}, {"measurements", to_json(ms)}};
            std::ofstream f(cfg.out);
            f << dump.dump(2) << '\n';
        }
    }
    summary << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& summary) {
    ExperimentConfig c = cfg;
    if (c.auto_design && c.mode != "devo-optimize") {
        auto res = optimize_params(c.L, equal_weights(c.L), c.p_max, c.theta, c.ranges, c.jobs != 1);
        if (!res.found) throw std::runtime_error("auto design: no feasible parameters");
        c.d = res.best.d;
        c.R = res.best.R;
        c.V = res.best.V;
        if (c.m_over_k.empty()) c.m_over_k = {res.best.c};
        summary << "auto design: d=" << c.d << " R=" << c.R << " V=" << c.V
                << " c=" << fmt(res.best.c) << '\n';
    }
    if (c.m_over_k.empty()) c.m_over_k = {3.8};

    if (c.mode == "noiseless-phase") return run_phase(c, summary);
    if (c.mode == "noiseless-runtime") return run_noiseless_runtime(c, summary);
    if (c.mode == "robust-sample") return run_robust(c, summary, false);
    if (c.mode == "robust-runtime") return run_robust(c, summary, true);
    if (c.mode == "perturbation") return run_perturbation(c, summary);
    if (c.mode == "devo-optimize") return run_devo(c, summary);
    if (c.mode == "single-run") return run_single(c, summary);
    throw std::invalid_argument("unknown mode: " + c.mode);
}

}  // namespace mixcolor
