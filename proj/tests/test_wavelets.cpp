#include "doctest.h"
#include "test_util.hpp"

#include "ckfractal/repr.hpp"
#include "ckfractal/wavelets.hpp"

using namespace ckfractal;
using namespace testutil;

TEST_CASE("complement basis is orthonormal and orthogonal to ones") {
    const std::vector<double> weights{0.1, 0.4, 0.2, 0.3};
    const std::vector<Digit> support{3, 0, 2};
    const auto basis = weighted_complement_basis(weights, support);
    REQUIRE(basis.size() == 2);
    for (std::size_t l = 0; l < basis.size(); ++l) {
        CHECK(basis[l][1] == Complex{});
        Complex mean{};
        for (Digit j : support) mean += basis[l][j] * weights[j];
        CHECK(std::abs(mean) < 1e-15);
        for (std::size_t m = 0; m < basis.size(); ++m) {
            Complex g{};
            for (Digit j : support) g += std::conj(basis[l][j]) * basis[m][j] * weights[j];
            CHECK(std::abs(g - (l == m ? 1.0 : 0.0)) < 1e-15);
        }
    }
    CHECK(weighted_complement_basis(weights, std::vector<Digit>{2}).empty());
    CHECK_THROWS_AS(weighted_complement_basis(weights, std::vector<Digit>{0, 7}), Error);
    const std::vector<double> bad{0.5, 0.0};
    CHECK_THROWS_AS(weighted_complement_basis(bad, std::vector<Digit>{0, 1}), Error);
}

TEST_CASE("two-letter support gives the closed-form Haar vector") {
    // Orthogonal to (1,1) in weights (a,b) with unit length: (sqrt(b/a), -sqrt(a/b)) / sqrt(a+b) up to sign.
    const double a = 0.3, b = 0.7;
    const std::vector<double> w{a, b};
    const auto basis = weighted_complement_basis(w, std::vector<Digit>{0, 1});
    REQUIRE(basis.size() == 1);
    const double s = basis[0][0].real() > 0 ? 1.0 : -1.0;
    CHECK(std::abs(basis[0][0] - s * std::sqrt(b / a) / std::sqrt(a + b)) < 1e-14);
    CHECK(std::abs(basis[0][1] + s * std::sqrt(a / b) / std::sqrt(a + b)) < 1e-14);
}

TEST_CASE("mother wavelets are unit, zero mean and supported on R_k") {
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        const MotherWaveletSet mw(pd);
        std::size_t expected = 0;
        for (Digit k = 0; k < a.size(); ++k) expected += a.out_degree(k) - 1;
        CHECK(mw.total_count() == expected);
        for (const MotherWavelet& m : mw.all()) {
            CHECK(std::abs(norm(m.function, pd) - 1.0) < 1e-14);
            CHECK(std::abs(inner_product(CylinderFunction::constant(a, 1.0), m.function, pd)) < 1e-15);
            CHECK(max_abs_diff(multiply(CylinderFunction::indicator(a, Word{m.letter}), m.function), m.function) == 0.0);
        }
        CHECK_THROWS_AS(mw.get(0, 0), Error);
        CHECK_THROWS_AS(mw.get(0, mw.count(0) + 1), Error);
    }
}

TEST_CASE("full basis is orthonormal with the right cardinality") {
    for (const auto& a : test_matrices()) {
        const MotherWaveletSet mw(perron_data(a));
        for (std::size_t k = 1; k <= 5; ++k) {
            CHECK(basis_labels(mw, k).size() == a.word_count(k));
            CHECK(basis_gram_residual(mw, k) <= 1e-10);
        }
    }
}

TEST_CASE("analysis and synthesis are inverse") {
    std::mt19937 rng(20240);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        const MotherWaveletSet mw(pd);
        for (std::size_t k = 1; k <= 5; ++k) {
            const auto f = random_signal(a, k, rng);
            const auto c = analyze(f, mw);
            CHECK(std::abs(c.energy() - std::pow(norm(f, pd), 2)) < 1e-10);
            CHECK(max_abs_diff(synthesize(c, mw, k), f) <= 1e-10);
        }
    }
}

TEST_CASE("detail wavelets are translates") {
    const auto a = tridiag3();
    const PerronData pd = perron_data(a);
    const MotherWaveletSet mw(pd);
    const auto psi = wavelet(Word{1, 2}, 1, 1, mw);
    const auto direct = apply_S(1, apply_S(2, mw.get(1, 1).function, pd), pd);
    CHECK(max_abs_diff(psi, direct) < 1e-15);
    CHECK_THROWS_AS(wavelet(Word{0}, 1, 2, mw), Error);
    CHECK_THROWS_AS(wavelet(Word{0, 2}, 1, 1, mw), Error);
}

TEST_CASE("synthesis validates indices") {
    const MotherWaveletSet mw(perron_data(full2()));
    WaveletCoefficients c;
    c.n = 2;
    c.level = 3;
    c.scaling = {1.0, 0.0};
    c.detail.push_back({Word{0, 1}, 1, 0, 1.0});
    CHECK_THROWS_AS(synthesize(c, mw, 3), Error);
    CHECK_NOTHROW(synthesize(c, mw, 4));
    CHECK_THROWS_AS(synthesize(c, mw, 0), Error);
}
