#pragma once

// Density-evolution calculator and design-parameter search: closed forms for
// the bin/edge statistics, the giant-component fixed point, the peeling
// recursion and its error floor, and the constrained grid search that picks
// (d, R, V, M/K) for a target floor.

#include <cstdint>
#include <vector>

namespace mixcolor {

// probability that a bin has a consistent pair of a component with weight q
double bin_color_prob(double q, int R, int V);

// rho_k = Q * lambda^(k-1) e^(-lambda) / (k-1)!  (Poisson edge fraction)
double edge_poisson(double lambda, double Q, int k);

// exact-binomial counterpart for small-instance cross-checks
double edge_binomial(int K_l, int d, int M, double Q, int k);

// q_s = 1 - (1 - rho1)^d
double singleton_prob(int d, double rho1);

struct DoubletonCond {
    double q_d = 0.0;
    bool degenerate = false;  // rho2 == 0, conditional undefined, reported as 0
};
DoubletonCond doubleton_cond(int d, double rho1, double rho2);

// expected strong doubletons per bin, nu = xi2 * q_d^2
double strong_rate(double xi2, double q_d);

struct GiantFraction {
    double zeta = 0.0;
    bool subcritical = false;  // theta_r <= 1, no giant component
};
// positive solution of zeta + exp(-theta_r * zeta) = 1, bisected to 1e-12
GiantFraction giant_fraction(double theta_r);

struct EvolveResult {
    double p_star = 0.0;
    int iterations = 0;
    bool diverged = false;  // iterates moved upward; floor reported as p2
};
// p_{j+1} = (1 - Q(e^(-lambda p_j) - e^(-lambda)))^(d-1) from p2
EvolveResult evolve(double p2, int d, double lambda, double Q, int max_iters = 10000,
                    double stop_tol = 1e-12);

struct DesignParams {
    int L = 2;
    std::vector<double> q;       // mixture weights
    std::vector<double> shares;  // K_l / K, defaults to 1/L
    int d = 2;
    int R = 1;
    int V = 1;
    double c = 1.0;  // M / K

    double lambda(int l) const { return d * shares[l] / c; }
    double m_over_k() const { return (2.0 * R + V) * c; }
};

DesignParams make_design(int L, int d, int R, int V, double c);

struct ComponentEvolution {
    double Q = 0, rho1 = 0, rho2 = 0, xi2 = 0, q_s = 0, q_d = 0, nu = 0;
    double giant_ratio = 0;  // 2 M nu / (K_l q_s)
    double zeta = 0, p2 = 1.0, p_star = 1.0;
    int iterations = 0;
    bool giant_ok = false;       // giant_ratio above the required threshold
    bool derivative_ok = false;  // (d-1) Q lambda e^(-lambda t) > 1 at t = p2 and t = p*
    bool evolve_ok = false;
};

struct EvolutionResult {
    std::vector<ComponentEvolution> comp;
    double p_star = 1.0;  // max over components
    bool feasible(double p_max) const;
};

EvolutionResult analyze_design(const DesignParams& p, double theta_threshold);

struct SearchRanges {
    int d_min = 11, d_max = 18;
    int r_min = 1, r_max = 10;
    int v_min = 1, v_max = 10;
    double c_min = 1.0, c_max = 6.0, c_step = 0.01;
};

struct FeasibleRow {
    int d, R, V;
    double c, m_over_k, p_star, zeta, q_s, giant_ratio;
};

struct OptimizeResult {
    bool found = false;
    DesignParams best;
    EvolutionResult best_evo;
    std::vector<FeasibleRow> feasible;  // every feasible tuple visited, scan order
};

// Exhaustive grid search minimizing (2R+V)c subject to the giant-component
// threshold, the derivative condition, and p* <= p_max. Ties break toward
// smaller d, then smaller c.
OptimizeResult optimize_params(int L, const std::vector<double>& q, double p_max,
                               double theta_threshold, const SearchRanges& ranges = {},
                               bool parallel = true);

}  // namespace mixcolor
