#include "mixcolor/serialize.hpp"

#include <stdexcept>

namespace mixcolor {

using nlohmann::json;

json to_json(const SparseVector& v) {
    json entries = json::array();
    for (const auto& [j, x] : v.entries) entries.push_back({j, x.real(), x.imag()});
    return json{{"n", v.n}, {"entries", entries}};
}

SparseVector sparse_from_json(const json& j) {
    SparseVector v;
    v.n = j.at("n").get<int>();
    for (const auto& e : j.at("entries"))
        v.entries.emplace_back(e.at(0).get<int>(), cplx(e.at(1).get<double>(), e.at(2).get<double>()));
    return v;
}

json to_json(const MixtureModel& model) {
    json components = json::array();
    for (int l = 0; l < model.L; ++l) {
        json entries = json::array();
        for (const auto& [j, x] : model.vectors[l].entries)
            entries.push_back({j, x.real(), x.imag()});
        components.push_back({{"weight", model.weights[l]}, {"entries", entries}});
    }
    json out{{"n", model.n}, {"L", model.L}, {"sigma", model.noise_sigma}, {"components", components}};
    if (model.alphabet)
        out["alphabet"] = {{"delta", model.alphabet->delta}, {"b", model.alphabet->b}};
    return out;
}

MixtureModel model_from_json(const json& j) {
    MixtureModel m;
    m.n = j.at("n").get<int>();
    m.L = j.at("L").get<int>();
    m.noise_sigma = j.at("sigma").get<double>();
    if (j.contains("alphabet"))
        m.alphabet = QuantizedAlphabet{j["alphabet"].at("delta").get<double>(),
                                       j["alphabet"].at("b").get<int>()};
    for (const auto& comp : j.at("components")) {
        m.weights.push_back(comp.at("weight").get<double>());
        SparseVector v;
        v.n = m.n;
        for (const auto& e : comp.at("entries"))
            v.entries.emplace_back(e.at(0).get<int>(),
                                   cplx(e.at(1).get<double>(), e.at(2).get<double>()));
        m.vectors.push_back(std::move(v));
    }
    if (static_cast<int>(m.vectors.size()) != m.L) throw std::invalid_argument("bad component count");
    return m;
}

json to_json(const NoiselessQueryPlan& plan) {
    return json{{"n", plan.design.n}, {"M", plan.design.M}, {"d", plan.design.d},
                {"R", plan.R},        {"V", plan.V},        {"seed", plan.seed}};
}

NoiselessQueryPlan noiseless_plan_from_json(const json& j) {
    return make_noiseless_plan(j.at("n").get<int>(), j.at("M").get<int>(), j.at("d").get<int>(),
                               j.at("R").get<int>(), j.at("V").get<int>(),
                               j.at("seed").get<std::uint64_t>());
}

json to_json(const RobustQueryPlan& plan) {
    return json{{"n", plan.design.n},          {"M", plan.design.M},
                {"d", plan.design.d},          {"N", plan.N},
                {"P2", plan.mats.P2},          {"delta", plan.alphabet.delta},
                {"b", plan.alphabet.b},        {"sigma", plan.sigma},
                {"seed", plan.seed}};
}

RobustQueryPlan robust_plan_from_json(const json& j) {
    return make_robust_plan(j.at("n").get<int>(), j.at("M").get<int>(), j.at("d").get<int>(),
                            j.at("N").get<int>(), j.at("P2").get<int>(),
                            QuantizedAlphabet{j.at("delta").get<double>(), j.at("b").get<int>()},
                            j.at("sigma").get<double>(), j.at("seed").get<std::uint64_t>());
}

namespace {

json complex_list(const std::vector<cplx>& xs) {
    json out = json::array();
    for (cplx x : xs) out.push_back({x.real(), x.imag()});
    return out;
}

std::vector<cplx> complex_list_from(const json& j) {
    std::vector<cplx> out;
    for (const auto& e : j) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return out;
}

json label_list(const std::vector<std::int8_t>& xs) {
    json out = json::array();
    for (auto x : xs) out.push_back(static_cast<int>(x));
    return out;
}

std::vector<std::int8_t> label_list_from(const json& j) {
    std::vector<std::int8_t> out;
    for (const auto& e : j) out.push_back(static_cast<std::int8_t>(e.get<int>()));
    return out;
}

}  // namespace

json to_json(const NoiselessMeasurements& ms) {
    json bins = json::array();
    for (const auto& b : ms.bins)
        bins.push_back({{"type1", complex_list(b.type1)},
                        {"type2", complex_list(b.type2)},
                        {"verif", complex_list(b.verif)},
                        {"label1", label_list(b.label1)},
                        {"label2", label_list(b.label2)},
                        {"labelv", label_list(b.labelv)}});
    return json{{"R", ms.R}, {"V", ms.V}, {"bins", bins}};
}

NoiselessMeasurements noiseless_measurements_from_json(const json& j) {
    NoiselessMeasurements ms;
    ms.R = j.at("R").get<int>();
    ms.V = j.at("V").get<int>();
    for (const auto& b : j.at("bins")) {
        NoiselessBin bin;
        bin.type1 = complex_list_from(b.at("type1"));
        bin.type2 = complex_list_from(b.at("type2"));
        bin.verif = complex_list_from(b.at("verif"));
        bin.label1 = label_list_from(b.at("label1"));
        bin.label2 = label_list_from(b.at("label2"));
        bin.labelv = label_list_from(b.at("labelv"));
        ms.bins.push_back(std::move(bin));
    }
    return ms;
}

json to_json(const RobustMeasurements& ms) {
    json bins = json::array();
    for (const auto& b : ms.bins)
        bins.push_back({{"samples", b.samples}, {"labels", label_list(b.labels)}});
    return json{{"P", ms.P}, {"N", ms.N}, {"bins", bins}};
}

RobustMeasurements robust_measurements_from_json(const json& j) {
    RobustMeasurements ms;
    ms.P = j.at("P").get<int>();
    ms.N = j.at("N").get<int>();
    for (const auto& b : j.at("bins")) {
        RobustBin bin;
        bin.samples = b.at("samples").get<std::vector<double>>();
        bin.labels = label_list_from(b.at("labels"));
        ms.bins.push_back(std::move(bin));
    }
    return ms;
}

std::string to_csv(const NoiselessMeasurements& ms) {
    std::string out = "bin,kind,rep,re,im,label\n";
    char line[128];
    for (std::size_t i = 0; i < ms.bins.size(); ++i) {
        const auto& b = ms.bins[i];
        auto rows = [&](const char* kind, const std::vector<cplx>& ys,
                        const std::vector<std::int8_t>& ls) {
            for (std::size_t r = 0; r < ys.size(); ++r) {
                std::snprintf(line, sizeof(line), "%zu,%s,%zu,%.17g,%.17g,%d\n", i, kind, r,
                              ys[r].real(), ys[r].imag(), static_cast<int>(ls[r]));
                out += line;
            }
        };
        rows("type1", b.type1, b.label1);
        rows("type2", b.type2, b.label2);
        rows("verif", b.verif, b.labelv);
    }
    return out;
}

std::string to_csv(const RobustMeasurements& ms) {
    std::string out = "bin,row,rep,value,label\n";
    char line[96];
    for (std::size_t i = 0; i < ms.bins.size(); ++i) {
        const auto& b = ms.bins[i];
        for (int p = 0; p < ms.P; ++p)
            for (int r = 0; r < ms.N; ++r) {
                std::size_t idx = static_cast<std::size_t>(p) * ms.N + r;
                std::snprintf(line, sizeof(line), "%zu,%d,%d,%.17g,%d\n", i, p, r,
                              b.samples[idx], static_cast<int>(b.labels[idx]));
                out += line;
            }
    }
    return out;
}

namespace {

const char* outcome_name(DecodeOutcome o) {
    switch (o) {
        case DecodeOutcome::Ok: return "ok";
        case DecodeOutcome::FewerComponents: return "fewer_components";
        default: return "value_conflict";
    }
}

json peel_diag_json(const PeelDiagnostics& d) {
    return json{{"singletons", d.singletons},
                {"edges", d.edges},
                {"component_sizes", d.component_sizes},
                {"peel_steps", d.peel_steps},
                {"ratio_tests", d.singleton_tests},
                {"outcome", outcome_name(d.outcome)}};
}

}  // namespace

json to_json(const NoiselessDiagnostics& d) {
    json out = peel_diag_json(d);
    out["consistent_pairs"] = d.consistent_pairs;
    return out;
}

json to_json(const RobustDiagnostics& d) {
    json out = peel_diag_json(d);
    out["consistent_sets"] = d.consistent_sets;
    out["bins_dropped"] = d.bins_dropped;
    return out;
}

}  // namespace mixcolor
