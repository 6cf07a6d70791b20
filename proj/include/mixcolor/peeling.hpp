#pragma once

// Peeling core shared by the noiseless and robust decoders: singleton
// discovery, strong-doubleton graph, giant-component color seeding, and the
// guess-and-check worklist. The bin-level arithmetic (summation checks, ratio
// or index tests, residual subtraction) lives in the policy.
//
// Policy interface:
//   using Value = ...;
//   int unit_count() const;
//   std::vector<int> units_of_coord(int j) const;
//   Verdict<Value> test_pristine(int u);                       // no state change
//   Verdict<Value> test_peeled_once(int u, int j, Value v);    // scratch peel, no state change
//   bool peel(int u, int color, int j, Value v);               // commit; false on double-peel
//   Verdict<Value> test_colored(int u, int color);             // test the color residual
//   bool values_equal(Value a, Value b) const;
//   void reset_residuals();                                    // drop all color residuals

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mixcolor {

enum class BinVerdict { Zeroton, Singleton, Multiton };

template <class V>
struct Verdict {
    BinVerdict kind = BinVerdict::Multiton;
    int j = 0;
    V value{};
};

enum class DecodeOutcome { Ok, FewerComponents, ValueConflict };

struct PeelDiagnostics {
    long singletons = 0;
    long edges = 0;
    long peel_steps = 0;
    long singleton_tests = 0;
    long cross_color_rediscoveries = 0;
    long seed_retries = 0;  // giant components re-picked after a same-label symptom
    bool component_tie_warning = false;
    std::vector<long> component_sizes;  // descending
    DecodeOutcome outcome = DecodeOutcome::Ok;
};

template <class Policy>
class PeelingRun {
  public:
    using Value = typename Policy::Value;
    struct Ball {
        int j;
        Value value;
        int color = -1;  // -1 = uncolored
    };

    PeelingRun(Policy& pol, bool parallel) : pol_(pol), parallel_(parallel) {}

    // Stage 1: run the singleton test on every unit's pristine residual and
    // deduplicate the discovered balls by (coordinate, value).
    void find_singletons() {
        const int m = pol_.unit_count();
        verdicts_.resize(m);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel_)
#endif
        for (int u = 0; u < m; ++u) verdicts_[u] = pol_.test_pristine(u);
        diag_.singleton_tests += m;

        for (int u = 0; u < m; ++u) {
            const auto& v = verdicts_[u];
            if (v.kind == BinVerdict::Zeroton) ++zerotons_;
            if (v.kind == BinVerdict::Singleton) add_ball(v.j, v.value);
        }
        diag_.singletons = static_cast<long>(balls_.size());
    }

    // Stage 2: for every ball, peel it from each consistent group on its bins
    // and connect it to any other known ball left behind (strong doubletons).
    void build_singleton_graph() {
        const int nb = static_cast<int>(balls_.size());
        std::vector<std::vector<std::pair<int, int>>> found(nb);
        long tests = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : tests) if (parallel_)
#endif
        for (int b = 0; b < nb; ++b) {
            for (int u : pol_.units_of_coord(balls_[b].j)) {
                auto v = pol_.test_peeled_once(u, balls_[b].j, balls_[b].value);
                ++tests;
                if (v.kind != BinVerdict::Singleton) continue;
                int other = find_ball(v.j, v.value);
                if (other >= 0 && other != b)
                    found[b].emplace_back(std::min(b, other), std::max(b, other));
            }
        }
        diag_.singleton_tests += tests;
        edges_.clear();
        std::unordered_map<std::int64_t, char> dedup;
        for (int b = 0; b < nb; ++b)
            for (auto [x, y] : found[b]) {
                std::int64_t key = static_cast<std::int64_t>(x) * nb + y;
                if (dedup.emplace(key, 1).second) edges_.emplace_back(x, y);
            }
        diag_.edges = static_cast<long>(edges_.size());
    }

    // Stage 3: disjoint-set components; the L largest become the color seeds.
    // Returns false when fewer than L components exist (decode failure) except
    // for the trivial all-zero instance.
    bool giant_components(int L) {
        if (!compute_components(L)) return false;
        std::vector<int> pick(L);
        for (int c = 0; c < L; ++c) pick[c] = c;
        return seed_components(L, pick);
    }

    bool compute_components(int L) {
        const int nb = static_cast<int>(balls_.size());
        comp_roots_.clear();
        if (nb == 0) {
            // an all-zero model legitimately yields no balls and only zerotons
            bool trivially_empty = zerotons_ == pol_.unit_count();
            diag_.outcome = trivially_empty ? DecodeOutcome::Ok : DecodeOutcome::FewerComponents;
            return trivially_empty;
        }
        if (L == 1) {
            diag_.component_sizes = {static_cast<long>(nb)};
            return true;
        }
        dsu_.assign(nb, -1);
        for (auto [a, b] : edges_) unite(a, b);
        std::unordered_map<int, long> size_of;
        std::unordered_map<int, std::pair<int, int>> order_key;  // (min coordinate, min ball id)
        for (int b = 0; b < nb; ++b) {
            int r = find(b);
            ++size_of[r];
            auto it = order_key.find(r);
            if (it == order_key.end())
                order_key[r] = {balls_[b].j, b};
            else
                it->second = std::min(it->second, {balls_[b].j, b});
        }
        std::vector<std::pair<int, long>> comps(size_of.begin(), size_of.end());
        std::sort(comps.begin(), comps.end(), [&](auto& a, auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return order_key[a.first] < order_key[b.first];
        });
        diag_.component_sizes.clear();
        for (auto& c : comps) {
            diag_.component_sizes.push_back(c.second);
            comp_roots_.push_back(c.first);
        }
        if (static_cast<int>(comps.size()) < L) {
            diag_.outcome = DecodeOutcome::FewerComponents;
            return false;
        }
        if (static_cast<int>(comps.size()) > L && comps[L - 1].second == comps[L].second)
            diag_.component_tie_warning = true;
        return true;
    }

    // Assign color c to the balls of ranked component pick[c] and queue them.
    bool seed_components(int L, const std::vector<int>& pick) {
        reset_coloring(L);
        if (balls_.empty()) return true;
        if (L == 1) {
            // no demixing needed: every ball shares the single label
            for (int b = 0; b < static_cast<int>(balls_.size()); ++b) {
                balls_[b].color = 0;
                if (!record_colored(0, balls_[b].j, balls_[b].value)) return false;
                queue_.push_back(b);
            }
            return true;
        }
        std::unordered_map<int, int> color_of_root;
        for (int c = 0; c < L; ++c) color_of_root[comp_roots_[pick[c]]] = c;
        // only the stage-1 singleton balls belong to graph components; balls
        // discovered by a discarded attempt stay registered but uncolored
        for (int b = 0; b < static_cast<int>(dsu_.size()); ++b) {
            auto it = color_of_root.find(find(b));
            if (it != color_of_root.end()) {
                balls_[b].color = it->second;
                if (!record_colored(it->second, balls_[b].j, balls_[b].value)) return false;
                queue_.push_back(b);
            }
        }
        return true;
    }

    void reset_coloring(int L) {
        for (auto& b : balls_) b.color = -1;
        colored_.clear();
        colored_.resize(L);
        cross_matrix_.assign(static_cast<std::size_t>(L) * L, 0);
        queue_.clear();
        diag_.cross_color_rediscoveries = 0;
        if (diag_.outcome == DecodeOutcome::ValueConflict) diag_.outcome = DecodeOutcome::Ok;
        pol_.reset_residuals();
    }

    // Stage 4: FIFO worklist. Each newly colored ball is peeled into the
    // matching color residual of every consistent group on its bins; a
    // singleton verdict there is a verified guess and yields a new ball.
    void iterative_decode() {
        while (!queue_.empty()) {
            if (diag_.outcome == DecodeOutcome::ValueConflict) return;
            int b = queue_.front();
            queue_.pop_front();
            const int color = balls_[b].color;
            const int j = balls_[b].j;
            const Value val = balls_[b].value;
            for (int u : pol_.units_of_coord(j)) {
                if (!pol_.peel(u, color, j, val)) continue;
                ++diag_.peel_steps;
                auto v = pol_.test_colored(u, color);
                ++diag_.singleton_tests;
                if (v.kind != BinVerdict::Singleton) continue;
                int other = find_ball(v.j, v.value);
                if (other < 0) {
                    if (!record_colored(color, v.j, v.value)) return;
                    other = add_ball(v.j, v.value);
                    balls_[other].color = color;
                    queue_.push_back(other);
                } else if (balls_[other].color == -1) {
                    if (!record_colored(color, v.j, v.value)) return;
                    balls_[other].color = color;
                    queue_.push_back(other);
                } else if (balls_[other].color != color) {
                    ++diag_.cross_color_rediscoveries;
                    if (!cross_matrix_.empty())
                        ++cross_matrix_[color * colored_.size() + balls_[other].color];
                }
            }
        }
    }

    std::vector<std::vector<std::pair<int, Value>>> collect(int L) const {
        std::vector<std::vector<std::pair<int, Value>>> out(L);
        for (const auto& b : balls_)
            if (b.color >= 0) out[b.color].emplace_back(b.j, b.value);
        for (auto& v : out)
            std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return out;
    }

    const std::vector<Ball>& balls() const { return balls_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const PeelDiagnostics& diagnostics() const { return diag_; }
    PeelDiagnostics& diagnostics() { return diag_; }

    // Full pipeline. Two color outputs sharing an equal value at a shared
    // coordinate cannot both be correct (overlapping supports carry distinct
    // values), so that symptom means two seed components carried the same
    // hidden label; re-seed with the next-ranked component and try again.
    std::vector<std::vector<std::pair<int, Value>>> run(int L) {
        find_singletons();
        build_singleton_graph();
        if (!compute_components(L)) return collect(L);
        const int ncomp = static_cast<int>(comp_roots_.size());
        std::vector<int> pick(L);
        for (int c = 0; c < L; ++c) pick[c] = c;
        int next_unused = L;
        for (int attempt = 0;; ++attempt) {
            if (!seed_components(L, pick)) break;
            iterative_decode();
            if (diag_.outcome != DecodeOutcome::Ok) break;
            auto out = collect(L);
            auto [c1, c2] = same_label_symptom(out, L);
            if (c1 < 0) return out;
            if (L == 1 || attempt >= 3 || next_unused >= ncomp) return out;
            ++diag_.seed_retries;
            // drop the lower-ranked seed of the offending pair
            int bad = pick[c1] > pick[c2] ? c1 : c2;
            pick[bad] = next_unused++;
        }
        return collect(L);
    }

  private:
    // Offending color pair when two outputs carry the same hidden label:
    // either they share an equal value at a shared coordinate (impossible for
    // distinct labels) or one kept rediscovering the other's balls through
    // verified tests. Returns {-1, -1} when consistent.
    std::pair<int, int> same_label_symptom(
        const std::vector<std::vector<std::pair<int, Value>>>& out, int L) {
        for (int c1 = 0; c1 < L; ++c1)
            for (int c2 = c1 + 1; c2 < L; ++c2) {
                std::size_t i = 0, k = 0;
                while (i < out[c1].size() && k < out[c2].size()) {
                    if (out[c1][i].first < out[c2][k].first)
                        ++i;
                    else if (out[c1][i].first > out[c2][k].first)
                        ++k;
                    else {
                        if (pol_.values_equal(out[c1][i].second, out[c2][k].second))
                            return {c1, c2};
                        ++i;
                        ++k;
                    }
                }
            }
        long best = 0;
        std::pair<int, int> pair{-1, -1};
        for (int c1 = 0; c1 < L; ++c1)
            for (int c2 = 0; c2 < L; ++c2)
                if (c1 != c2) {
                    long x = cross_matrix_[c1 * L + c2] + cross_matrix_[c2 * L + c1];
                    if (x > best) {
                        best = x;
                        pair = {std::min(c1, c2), std::max(c1, c2)};
                    }
                }
        return pair;
    }

    int add_ball(int j, Value v) {
        int existing = find_ball(j, v);
        if (existing >= 0) return existing;
        balls_.push_back(Ball{j, v, -1});
        int id = static_cast<int>(balls_.size()) - 1;
        by_coord_[j].push_back(id);
        return id;
    }
    int find_ball(int j, Value v) const {
        auto it = by_coord_.find(j);
        if (it == by_coord_.end()) return -1;
        for (int id : it->second)
            if (pol_.values_equal(balls_[id].value, v)) return id;
        return -1;
    }
    bool record_colored(int color, int j, Value v) {
        auto [it, inserted] = colored_[color].emplace(j, v);
        if (!inserted && !pol_.values_equal(it->second, v)) {
            diag_.outcome = DecodeOutcome::ValueConflict;
            return false;
        }
        return true;
    }
    int find(int x) {
        while (dsu_[x] >= 0) {
            if (dsu_[dsu_[x]] >= 0) dsu_[x] = dsu_[dsu_[x]];
            x = dsu_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (dsu_[a] > dsu_[b]) std::swap(a, b);
        dsu_[a] += dsu_[b];
        dsu_[b] = a;
    }

    Policy& pol_;
    bool parallel_;
    std::vector<Verdict<Value>> verdicts_;
    std::vector<Ball> balls_;
    std::unordered_map<int, std::vector<int>> by_coord_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> dsu_;
    std::vector<int> comp_roots_;  // component representatives, largest first
    std::deque<int> queue_;
    std::vector<std::unordered_map<int, Value>> colored_;  // per color, coordinate -> value
    std::vector<long> cross_matrix_;  // L x L cross-color rediscovery counts
    PeelDiagnostics diag_;
    long zerotons_ = 0;
};

}  // namespace mixcolor
