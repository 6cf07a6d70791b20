#include <doctest.h>

#include <algorithm>

#include "mixcolor/model.hpp"
#include "mixcolor/rng.hpp"

using namespace mixcolor;
using doctest::Approx;

TEST_CASE("generated mixtures respect the basic invariants") {
    auto m = generate_mixture(8, {3}, {1.0}, 0.0, 42);
    REQUIRE(m.vectors.size() == 1);
    CHECK(m.vectors[0].sparsity() == 3);
    int prev = 0;
    for (const auto& [j, v] : m.vectors[0].entries) {
        CHECK(j > prev);
        CHECK(j <= 8);
        CHECK(std::abs(v) > 0.0);
        prev = j;
    }
}

TEST_CASE("overlapping supports always carry distinct values") {
    QuantizedAlphabet alpha{1.0, 5};
    // n=4 with two 1-sparse vectors collides often; scan many seeds
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto m = generate_mixture(4, {1, 1}, {0.5, 0.5}, ValueSource::Quantized, alpha, 0.0, seed);
        auto [j0, v0] = m.vectors[0].entries[0];
        auto [j1, v1] = m.vectors[1].entries[0];
        if (j0 == j1) CHECK(std::abs(v0 - v1) > 1e-12);
        CHECK(alpha.contains(v0.real()));
        CHECK(v0.imag() == 0.0);
    }
    // dense overlap case
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto m = generate_mixture(6, {6, 6}, {0.5, 0.5}, ValueSource::Quantized, alpha, 0.0, seed);
        for (int j = 1; j <= 6; ++j)
            CHECK(std::abs(*m.vectors[0].at(j) - *m.vectors[1].at(j)) > 1e-12);
    }
}

TEST_CASE("generation is deterministic per seed") {
    auto a = generate_mixture(500, {25, 25}, {0.5, 0.5}, 0.0, 1234);
    auto b = generate_mixture(500, {25, 25}, {0.5, 0.5}, 0.0, 1234);
    for (int l = 0; l < 2; ++l) {
        REQUIRE(a.vectors[l].entries.size() == b.vectors[l].entries.size());
        for (std::size_t i = 0; i < a.vectors[l].entries.size(); ++i) {
            CHECK(a.vectors[l].entries[i].first == b.vectors[l].entries[i].first);
            CHECK(a.vectors[l].entries[i].second == b.vectors[l].entries[i].second);
        }
    }
}

TEST_CASE("continuous values keep their magnitude window") {
    auto m = generate_mixture(1000, {200}, {1.0}, 0.0, 77);
    for (const auto& [j, v] : m.vectors[0].entries) {
        CHECK(std::abs(v) >= 0.5);
        CHECK(std::abs(v) <= 1.5);
    }
}

TEST_CASE("generator rejects bad arguments") {
    CHECK_THROWS(generate_mixture(4, {5}, {1.0}, 0.0, 1));
    CHECK_THROWS(generate_mixture(4, {1, 1}, {0.7, 0.7}, 0.0, 1));
    CHECK_THROWS(generate_mixture(4, {1, 1}, {1.2, -0.2}, 0.0, 1));
}

TEST_CASE("evaluate: identity, swapped labels, spurious entry") {
    auto m = generate_mixture(50, {4, 4}, {0.5, 0.5}, 0.0, 5);
    auto est = m.vectors;

    auto rep = evaluate(m, est);
    CHECK(rep.success);
    CHECK(rep.total_false_discoveries() == 0);
    CHECK(rep.support_fraction[0] == Approx(1.0));
    CHECK(rep.support_fraction[1] == Approx(1.0));

    std::swap(est[0], est[1]);
    CHECK(evaluate(m, est).success);

    // spurious non-zero off the true support
    std::swap(est[0], est[1]);
    int free_coord = 1;
    while (m.vectors[0].at(free_coord) || m.vectors[1].at(free_coord)) ++free_coord;
    est[0].entries.emplace_back(free_coord, cplx(1.0, 0.0));
    std::sort(est[0].entries.begin(), est[0].entries.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    auto rep2 = evaluate(m, est);
    CHECK(!rep2.success);
    CHECK(rep2.total_false_discoveries() == 1);
}

TEST_CASE("evaluate is invariant under estimate permutations") {
    auto m = generate_mixture(40, {3, 3, 3}, {0.4, 0.3, 0.3}, 0.0, 9);
    auto est = m.vectors;
    est[1].entries.pop_back();  // partial recovery for one component
    auto base = evaluate(m, est);
    std::vector<SparseVector> shuffled = {est[2], est[0], est[1]};
    auto rep = evaluate(m, shuffled);
    CHECK(rep.success == base.success);
    CHECK(rep.total_false_discoveries() == base.total_false_discoveries());
    for (int l = 0; l < 3; ++l)
        CHECK(rep.support_fraction[l] == Approx(base.support_fraction[l]));
}

TEST_CASE("quantized evaluate requires exact symbols") {
    QuantizedAlphabet alpha{0.5, 4};
    auto m = generate_mixture(30, {3, 3}, {0.5, 0.5}, ValueSource::Quantized, alpha, 0.2, 3);
    auto est = m.vectors;
    CHECK(evaluate(m, est).success);
    est[0].entries[0].second += cplx(0.5, 0.0);  // one symbol off
    auto rep = evaluate(m, est);
    CHECK(!rep.success);
    CHECK(rep.total_false_discoveries() == 1);
}
