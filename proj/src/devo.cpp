#include "mixcolor/devo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixcolor {

double bin_color_prob(double q, int R, int V) {
    if (q <= 0.0 || q > 1.0) throw std::invalid_argument("q must lie in (0, 1]");
    double miss = 1.0 - q;
    double hitR = 1.0 - std::pow(miss, R);
    double hitV = 1.0 - std::pow(miss, V);
    return hitV * hitR * hitR;
}

double edge_poisson(double lambda, double Q, int k) {
    if (lambda <= 0.0 || k < 1) throw std::invalid_argument("need lambda > 0, k >= 1");
    double log_term = (k - 1) * std::log(lambda) - lambda - std::lgamma(static_cast<double>(k));
    return Q * std::exp(log_term);
}

double edge_binomial(int K_l, int d, int M, double Q, int k) {
    // k * M / (K_l d) * Q * C(K_l, k) (d/M)^k (1 - d/M)^(K_l - k)
    double p = static_cast<double>(d) / M;
    double log_pmf = std::lgamma(K_l + 1.0) - std::lgamma(k + 1.0) - std::lgamma(K_l - k + 1.0) +
                     k * std::log(p) + (K_l - k) * std::log1p(-p);
    return k * static_cast<double>(M) / (static_cast<double>(K_l) * d) * Q * std::exp(log_pmf);
}

double singleton_prob(int d, double rho1) { return 1.0 - std::pow(1.0 - rho1, d); }

DoubletonCond doubleton_cond(int d, double rho1, double rho2) {
    DoubletonCond r;
    double denom = 1.0 - std::pow(1.0 - rho2, d);
    if (denom <= 0.0) {
        r.degenerate = true;
        return r;
    }
    double num = 1.0 - std::pow(1.0 - rho1, d) - std::pow(1.0 - rho2, d) +
                 std::pow(1.0 - rho1 - rho2, d);
    r.q_d = num / denom;
    return r;
}

double strong_rate(double xi2, double q_d) { return xi2 * q_d * q_d; }

GiantFraction giant_fraction(double theta_r) {
    GiantFraction g;
    if (theta_r <= 1.0) {
        g.subcritical = true;
        return g;
    }
    // g(z) = z + exp(-theta_r z) - 1; g(0) = 0 with g'(0) < 0, g(1) > 0
    auto f = [theta_r](double z) { return z + std::exp(-theta_r * z) - 1.0; };
    double lo = 1e-12, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    g.zeta = 0.5 * (lo + hi);
    return g;
}

EvolveResult evolve(double p2, int d, double lambda, double Q, int max_iters, double stop_tol) {
    if (p2 <= 0.0 || p2 >= 1.0) throw std::invalid_argument("p2 must lie in (0, 1)");
    EvolveResult r;
    const double e_lambda = std::exp(-lambda);
    auto f = [&](double p) {
        return std::pow(1.0 - Q * (std::exp(-lambda * p) - e_lambda), d - 1);
    };
    double p = p2;
    if (f(p2) > p2) {
        // map expands upward from p2; peeling makes no progress
        r.diverged = true;
        r.p_star = p2;
        return r;
    }
    for (int it = 0; it < max_iters; ++it) {
        double next = f(p);
        ++r.iterations;
        if (std::abs(next - p) < stop_tol) {
            p = next;
            break;
        }
        p = next;
    }
    r.p_star = std::max(p, 1e-12);  // numerical floor
    return r;
}

DesignParams make_design(int L, int d, int R, int V, double c) {
    DesignParams p;
    p.L = L;
    p.q.assign(L, 1.0 / L);
    p.shares.assign(L, 1.0 / L);
    p.d = d;
    p.R = R;
    p.V = V;
    p.c = c;
    return p;
}

bool EvolutionResult::feasible(double p_max) const {
    if (comp.empty()) return false;
    for (const auto& c : comp)
        if (!(c.giant_ok && c.derivative_ok && c.evolve_ok && c.p_star <= p_max)) return false;
    return true;
}

EvolutionResult analyze_design(const DesignParams& p, double theta_threshold) {
    EvolutionResult out;
    out.comp.resize(p.L);
    out.p_star = 0.0;
    for (int l = 0; l < p.L; ++l) {
        ComponentEvolution& e = out.comp[l];
        const double lambda = p.lambda(l);
        e.Q = bin_color_prob(p.q[l], p.R, p.V);
        const double el = std::exp(-lambda);
        e.rho1 = e.Q * el;
        e.rho2 = e.Q * lambda * el;
        e.xi2 = e.Q * lambda * lambda * el / 2.0;
        e.q_s = singleton_prob(p.d, e.rho1);
        e.q_d = doubleton_cond(p.d, e.rho1, e.rho2).q_d;
        e.nu = strong_rate(e.xi2, e.q_d);
        // 2 M nu / (K_l q_s) with M = cK and K_l = share * K
        e.giant_ratio = 2.0 * p.c * e.nu / (p.shares[l] * e.q_s);
        e.giant_ok = e.giant_ratio > theta_threshold;
        auto g = giant_fraction(e.giant_ratio);
        e.zeta = g.zeta;
        e.p2 = 1.0 - e.zeta * e.q_s;
        if (e.p2 <= 0.0 || e.p2 >= 1.0) {
            e.p_star = 1.0;
            e.evolve_ok = false;
        } else {
            auto ev = evolve(e.p2, p.d, lambda, e.Q);
            e.p_star = ev.p_star;
            e.iterations = ev.iterations;
            e.evolve_ok = !ev.diverged;
        }
        auto deriv = [&](double t) { return (p.d - 1) * e.Q * lambda * std::exp(-lambda * t); };
        e.derivative_ok = deriv(e.p2) > 1.0 && deriv(e.p_star) > 1.0;
        out.p_star = std::max(out.p_star, e.p_star);
    }
    return out;
}

namespace {

// total order used for the optimum: objective, then d, then c, then (R, V)
bool better(const DesignParams& a, const DesignParams& b) {
    double ma = a.m_over_k(), mb = b.m_over_k();
    if (std::abs(ma - mb) > 1e-9) return ma < mb;
    if (a.d != b.d) return a.d < b.d;
    if (std::abs(a.c - b.c) > 1e-12) return a.c < b.c;
    if (a.R != b.R) return a.R < b.R;
    return a.V < b.V;
}

}  // namespace

OptimizeResult optimize_params(int L, const std::vector<double>& q, double p_max,
                               double theta_threshold, const SearchRanges& ranges, bool parallel) {
    if (static_cast<int>(q.size()) != L) throw std::invalid_argument("weights size mismatch");
    const int n_c = static_cast<int>(std::floor((ranges.c_max - ranges.c_min) / ranges.c_step + 0.5)) + 1;

    struct Task {
        int d, R, V;
    };
    std::vector<Task> tasks;
    for (int d = ranges.d_min; d <= ranges.d_max; ++d)
        for (int R = ranges.r_min; R <= ranges.r_max; ++R)
            for (int V = ranges.v_min; V <= ranges.v_max; ++V) tasks.push_back({d, R, V});

    std::vector<std::vector<FeasibleRow>> rows_per_task(tasks.size());
    std::vector<int> best_idx_per_task(tasks.size(), -1);  // index into rows_per_task[t]

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        auto [d, R, V] = tasks[t];
        double best_m = 0.0;
        for (int ci = 0; ci < n_c; ++ci) {
            double c = ranges.c_min + ci * ranges.c_step;
            DesignParams p = make_design(L, d, R, V, c);
            p.q = q;
            auto evo = analyze_design(p, theta_threshold);
            if (!evo.feasible(p_max)) continue;
            const auto& e0 = evo.comp[0];
            rows_per_task[t].push_back(FeasibleRow{d, R, V, c, p.m_over_k(), evo.p_star, e0.zeta,
                                                   e0.q_s, e0.giant_ratio});
            if (best_idx_per_task[t] < 0 || p.m_over_k() < best_m - 1e-12) {
                best_idx_per_task[t] = static_cast<int>(rows_per_task[t].size()) - 1;
                best_m = p.m_over_k();
            }
        }
    }

    OptimizeResult out;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        for (auto& r : rows_per_task[t]) out.feasible.push_back(r);
        int bi = best_idx_per_task[t];
        if (bi < 0) continue;
        const auto& r = rows_per_task[t][bi];
        DesignParams p = make_design(L, r.d, r.R, r.V, r.c);
        p.q = q;
        if (!out.found || better(p, out.best)) {
            out.found = true;
            out.best = p;
        }
    }
    if (out.found) out.best_evo = analyze_design(out.best, theta_threshold);
    return out;
}

}  // namespace mixcolor
