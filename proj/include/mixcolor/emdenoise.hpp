#pragma once

// Center estimation for N i.i.d. samples of a two-component, equally weighted
// Gaussian mixture with known sigma and quantized centers: sample-mean snap,
// method-of-moments initialization, EM refinement, and a final grid snap.

#include <span>
#include <vector>

#include "mixcolor/model.hpp"

namespace mixcolor {

// nearest point of the half-grid {k*delta/2 : |k| <= 2b}; ties toward smaller |mu|
double snap_half_grid(double x, const QuantizedAlphabet& alphabet);

// mu_hat = argmin over the half-grid of |mean(samples) - mu|
double snap_mean(std::span<const double> samples, const QuantizedAlphabet& alphabet);

// theta0 = sqrt(max(0, mean(y^2) - sigma^2)) on centered samples
double mom_theta0(std::span<const double> centered, double sigma);

struct EmRefineResult {
    double theta = 0.0;
    int iterations = 0;
};

// Exactly the E/M recursion with posterior responsibility
// p(y|theta) = 1 / (1 + exp(-2 y theta / sigma^2)), run T times (early stop
// when |theta_{t+1} - theta_t| < stop_tol, disabled at 0). sigma == 0
// degenerates to sign responsibilities. The M step may cross zero; the value
// is recorded as-is.
EmRefineResult em_refine(std::span<const double> centered, double sigma, double theta0, int T,
                         double stop_tol = 0.0);

struct SampleSplit {
    int n1 = 0, n2 = 0, n3 = 0;
};
SampleSplit equal_thirds(int N);

struct CenterEstimate {
    bool is_pair = false;
    double c1 = 0.0, c2 = 0.0;          // snapped centers, c1 <= c2 (equal when single)
    double raw_c1 = 0.0, raw_c2 = 0.0;  // unsnapped counterparts
    // diagnostics
    double mu_hat = 0.0;  // sample-mean snap
    double theta0 = 0.0;
    double theta_T = 0.0;
    int iterations = 0;
    bool snr_warning = false;  // delta/sigma below 4/sqrt(3)
};

// Pipeline: mean snap, moments initialization, single/pair decision at
// theta0 < delta/4, EM refinement, half-grid snap of theta, then a mean
// re-estimate that classifies every sample against the refined separation
// before the final snap (the plain mean snap is too loose once the centers
// are far apart, since the mixing imbalance enters it at full separation).
CenterEstimate estimate_centers(std::span<const double> samples, double sigma,
                                const QuantizedAlphabet& alphabet, const SampleSplit& split,
                                int T = 20);

CenterEstimate estimate_centers(std::span<const double> samples, double sigma,
                                const QuantizedAlphabet& alphabet, int T = 20);

}  // namespace mixcolor
