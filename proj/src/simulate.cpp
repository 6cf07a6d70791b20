#include "mixcolor/simulate.hpp"

#include <stdexcept>

#include "mixcolor/rng.hpp"

namespace mixcolor {

std::vector<std::vector<std::array<cplx, 3>>> bin_component_products(
    const NoiselessQueryPlan& plan, const MixtureModel& model) {
    if (plan.design.n != model.n) throw std::invalid_argument("plan/model dimension mismatch");
    std::vector<std::vector<std::array<cplx, 3>>> u(
        plan.design.M, std::vector<std::array<cplx, 3>>(model.L, {cplx(0), cplx(0), cplx(0)}));
    // accumulate from the component side; never materializes dense queries
    for (int l = 0; l < model.L; ++l) {
        for (const auto& [j, val] : model.vectors[l].entries) {
            cplx t1 = plan.vectors.r1_at(j) * val;
            cplx t2 = plan.vectors.r2_at(j) * val;
            const int* bins = plan.design.bins_of(j);
            for (int t = 0; t < plan.design.d; ++t) {
                auto& acc = u[bins[t]][l];
                acc[0] += t1;
                acc[1] += t2;
                acc[2] += t1 + t2;
            }
        }
    }
    return u;
}

NoiselessMeasurements sample_measurements(const NoiselessQueryPlan& plan,
                                          const MixtureModel& model, std::uint64_t seed) {
    if (model.noise_sigma != 0.0)
        throw std::invalid_argument("noiseless plan requires sigma == 0; use a robust plan");
    auto u = bin_component_products(plan, model);

    NoiselessMeasurements ms;
    ms.R = plan.R;
    ms.V = plan.V;
    ms.bins.resize(plan.design.M);
    Rng rng(seed);
    auto draw_label = [&]() {
        double x = rng.uniform();
        double acc = 0.0;
        for (int l = 0; l < model.L; ++l) {
            acc += model.weights[l];
            if (x < acc) return l;
        }
        return model.L - 1;
    };
    for (int i = 0; i < plan.design.M; ++i) {
        NoiselessBin& bin = ms.bins[i];
        for (int r = 0; r < plan.R; ++r) {
            int l = draw_label();
            bin.type1.push_back(u[i][l][0]);
            bin.label1.push_back(static_cast<std::int8_t>(l));
        }
        for (int r = 0; r < plan.R; ++r) {
            int l = draw_label();
            bin.type2.push_back(u[i][l][1]);
            bin.label2.push_back(static_cast<std::int8_t>(l));
        }
        for (int r = 0; r < plan.V; ++r) {
            int l = draw_label();
            bin.verif.push_back(u[i][l][2]);
            bin.labelv.push_back(static_cast<std::int8_t>(l));
        }
    }
    return ms;
}

std::vector<std::vector<std::array<double, 2>>> bin_row_products(const RobustQueryPlan& plan,
                                                                 const MixtureModel& model) {
    if (plan.design.n != model.n) throw std::invalid_argument("plan/model dimension mismatch");
    if (model.L != 2) throw std::invalid_argument("robust plan requires L == 2");
    const int P = plan.P();
    std::vector<std::vector<std::array<double, 2>>> w(
        plan.design.M, std::vector<std::array<double, 2>>(P, {0.0, 0.0}));
    for (int l = 0; l < 2; ++l) {
        for (const auto& [j, val] : model.vectors[l].entries) {
            double x = val.real();
            const int* bins = plan.design.bins_of(j);
            for (int t = 0; t < plan.design.d; ++t) {
                auto& rows = w[bins[t]];
                for (int p = 0; p < P; ++p) {
                    double e = plan.mats.row_entry(p, j);
                    if (e != 0.0) rows[p][l] += e * x;
                }
            }
        }
    }
    return w;
}

RobustMeasurements sample_measurements(const RobustQueryPlan& plan, const MixtureModel& model,
                                       std::uint64_t seed) {
    if (!model.is_real()) throw std::invalid_argument("robust sampling requires a real-valued model");
    if (std::abs(model.weights[0] - 0.5) > 1e-9 || std::abs(model.weights[1] - 0.5) > 1e-9)
        throw std::invalid_argument("robust setting assumes equal mixture weights");
    auto w = bin_row_products(plan, model);

    const int P = plan.P();
    RobustMeasurements ms;
    ms.P = P;
    ms.N = plan.N;
    ms.bins.resize(plan.design.M);
    Rng rng(seed);
    double sigma = model.noise_sigma;
    for (int i = 0; i < plan.design.M; ++i) {
        RobustBin& bin = ms.bins[i];
        bin.samples.resize(static_cast<std::size_t>(P) * plan.N);
        bin.labels.resize(bin.samples.size());
        for (int p = 0; p < P; ++p) {
            for (int r = 0; r < plan.N; ++r) {
                int l = rng.coin() ? 1 : 0;
                double y = w[i][p][l];
                if (sigma > 0.0) y += sigma * rng.normal();
                bin.samples[static_cast<std::size_t>(p) * plan.N + r] = y;
                bin.labels[static_cast<std::size_t>(p) * plan.N + r] = static_cast<std::int8_t>(l);
            }
        }
    }
    return ms;
}

}  // namespace mixcolor
