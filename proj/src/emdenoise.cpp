#include "mixcolor/emdenoise.hpp"

#include <cmath>
#include <stdexcept>

namespace mixcolor {

namespace {

double mean_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

double snap_half_grid(double x, const QuantizedAlphabet& alphabet) {
    const double step = alphabet.delta / 2.0;
    const double maxk = 2.0 * alphabet.b;
    double kf = x / step;
    double lo = std::floor(kf), hi = lo + 1.0;
    double dlo = std::abs(kf - lo), dhi = std::abs(hi - kf);
    double k;
    if (std::abs(dlo - dhi) < 1e-12)
        k = std::abs(lo) <= std::abs(hi) ? lo : hi;  // tie toward smaller magnitude
    else
        k = dlo < dhi ? lo : hi;
    k = std::min(maxk, std::max(-maxk, k));
    return k * step;
}

double snap_mean(std::span<const double> samples, const QuantizedAlphabet& alphabet) {
    if (samples.empty()) throw std::invalid_argument("snap_mean needs at least one sample");
    return snap_half_grid(mean_of(samples), alphabet);
}

double mom_theta0(std::span<const double> centered, double sigma) {
    if (centered.empty()) throw std::invalid_argument("mom_theta0 needs at least one sample");
    double m2 = 0.0;
    for (double y : centered) m2 += y * y;
    m2 /= static_cast<double>(centered.size());
    double excess = m2 - sigma * sigma;
    return excess > 0.0 ? std::sqrt(excess) : 0.0;
}

EmRefineResult em_refine(std::span<const double> centered, double sigma, double theta0, int T,
                         double stop_tol) {
    if (centered.empty()) throw std::invalid_argument("em_refine needs at least one sample");
    if (T < 1) throw std::invalid_argument("em_refine needs T >= 1");
    EmRefineResult r;
    r.theta = theta0;
    const double inv_var2 = sigma > 0.0 ? 2.0 / (sigma * sigma) : 0.0;
    const double n = static_cast<double>(centered.size());
    for (int t = 0; t < T; ++t) {
        double acc = 0.0;
        for (double y : centered) {
            double p = sigma > 0.0 ? logistic(inv_var2 * y * r.theta)
                                   : (y * r.theta > 0.0 ? 1.0 : (y * r.theta < 0.0 ? 0.0 : 0.5));
            acc += (2.0 * p - 1.0) * y;
        }
        double next = acc / n;
        ++r.iterations;
        if (stop_tol > 0.0 && std::abs(next - r.theta) < stop_tol) {
            r.theta = next;
            break;
        }
        r.theta = next;
    }
    return r;
}

SampleSplit equal_thirds(int N) {
    SampleSplit s;
    s.n1 = N / 3;
    s.n2 = N / 3;
    s.n3 = N - 2 * (N / 3);
    return s;
}

CenterEstimate estimate_centers(std::span<const double> samples, double sigma,
                                const QuantizedAlphabet& alphabet, const SampleSplit& split,
                                int T) {
    const int N = static_cast<int>(samples.size());
    if (split.n1 < 1 || split.n2 < 1 || split.n3 < 1 || split.n1 + split.n2 + split.n3 != N)
        throw std::invalid_argument("sample split must use all samples with every part >= 1");

    CenterEstimate est;
    est.snr_warning = sigma > 0.0 && alphabet.delta / sigma < 4.0 / std::sqrt(3.0);
    est.mu_hat = snap_mean(samples.first(split.n1), alphabet);

    std::vector<double> centered(samples.begin() + split.n1, samples.end());
    for (double& y : centered) y -= est.mu_hat;
    est.theta0 = mom_theta0(std::span<const double>(centered).first(split.n2), sigma);

    if (est.theta0 < alphabet.delta / 4.0) {
        est.is_pair = false;
        est.c1 = est.c2 = est.mu_hat;
        est.raw_c1 = est.raw_c2 = mean_of(samples);
        return est;
    }

    auto em = em_refine(std::span<const double>(centered).subspan(split.n2), sigma, est.theta0, T,
                        1e-8 * alphabet.delta);
    est.theta_T = em.theta;
    est.iterations = em.iterations;

    // Joint re-estimate over all N samples with hard assignments: the plain
    // mean snap carries the sampling imbalance scaled by the separation, and
    // the EM separation inherits any miscentering, so alternate both once the
    // separation is roughly known. Errors become second order (imbalance
    // times estimation error); at sigma = 0 the result is exact.
    double theta_raw = std::abs(em.theta);
    double mu_raw = mean_of(samples);
    for (int pass = 0; pass < 3; ++pass) {
        double boundary = mu_raw;
        double acc_mu = 0.0, acc_theta = 0.0, acc_s = 0.0;
        for (double y : samples) {
            double s = y >= boundary ? 1.0 : -1.0;
            acc_mu += y - s * theta_raw;
            acc_s += s;
            acc_theta += s * y;
        }
        mu_raw = acc_mu / N;
        theta_raw = std::max(0.0, (acc_theta - acc_s * mu_raw) / N);
    }
    est.raw_c1 = mu_raw - theta_raw;
    est.raw_c2 = mu_raw + theta_raw;

    double theta_hat = std::abs(snap_half_grid(theta_raw, alphabet));
    est.is_pair = true;
    if (theta_hat == 0.0) {
        est.c1 = est.c2 = est.mu_hat;
        return est;
    }
    double mu_ref = snap_half_grid(mu_raw, alphabet);
    est.c1 = mu_ref - theta_hat;
    est.c2 = mu_ref + theta_hat;
    return est;
}

CenterEstimate estimate_centers(std::span<const double> samples, double sigma,
                                const QuantizedAlphabet& alphabet, int T) {
    return estimate_centers(samples, sigma, alphabet, equal_thirds(static_cast<int>(samples.size())),
                            T);
}

}  // namespace mixcolor
