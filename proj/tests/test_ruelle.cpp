#include "doctest.h"
#include "test_util.hpp"

#include "ckfractal/repr.hpp"
#include "ckfractal/ruelle.hpp"

using namespace ckfractal;
using namespace testutil;

namespace {

CylinderFunction constant_potential(const PerronData& pd, std::size_t level) {
    return CylinderFunction::constant(pd.matrix, pd.branch_derivative(), level);
}

std::vector<Point> sample_points(const AdmissibilityMatrix& a, std::size_t k, std::size_t count) {
    std::vector<Point> out;
    for (const Word& w : enumerate_words(a, k)) {
        if (out.size() == count) break;
        out.push_back(nadic_value(a, w));
    }
    return out;
}

}  // namespace

TEST_CASE("ruelle_apply against the preimage sum") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        std::vector<Complex> wc(a.word_count(3));
        for (auto& c : wc) c = u(rng);
        const CylinderFunction w(a, 3, wc);
        const auto f = random_signal(a, 2, rng);
        const auto r = ruelle_apply(w, f, pd);
        REQUIRE(r.level() == 2);
        for (const Word& b : enumerate_words(a, 2)) {
            Complex expected{};
            for (Digit i = 0; i < a.size(); ++i) {
                if (!a(i, b.front())) continue;
                const Word ib = prepend(a, i, b);
                expected += w.at(ib) * f.at(ib);
            }
            CHECK(std::abs(r.at(b) - expected) < 1e-14);
        }
        CHECK(max_abs_diff(r, ruelle_apply(w.refine(4), f.refine(4), pd)) < 1e-14);
    }
}

TEST_CASE("constant potential reproduces the Perron-Frobenius operator") {
    std::mt19937 rng(8);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        for (std::size_t k = 0; k <= 4; ++k) {
            const auto f = random_signal(a, k, rng);
            CHECK(max_abs_diff(ruelle_apply(constant_potential(pd, 0), f, pd), pf_operator(f, pd)) <= 1e-14);
        }
    }
}

TEST_CASE("adjoint identity for the weighted composition") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        std::vector<Complex> wc(a.word_count(2));
        for (auto& c : wc) c = u(rng);
        const CylinderFunction w(a, 2, wc);
        for (std::size_t k = 1; k <= 3; ++k) CHECK(ruelle_adjoint_residual(w, pd, k) < 1e-13);
    }
}

TEST_CASE("Keane residuals") {
    const PerronData f2 = perron_data(full2());
    CHECK(keane_residual(CylinderFunction::constant(f2.matrix, 0.5), f2) == 0.0);
    const PerronData s4 = perron_data(schottky4());
    CHECK(keane_residual(constant_potential(s4, 2), s4) < 1e-14);
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> wc(s4.matrix.word_count(2));
    for (auto& c : wc) c = u(rng);
    CHECK(keane_residual(CylinderFunction(s4.matrix, 2, wc), s4) > 1e-3);
    CHECK_THROWS_AS(keane_residual(CylinderFunction::constant(s4.matrix, -1.0), s4), Error);
    CHECK_THROWS_AS(keane_residual(CylinderFunction::constant(s4.matrix, Complex(0.0, 1.0)), s4), Error);
}

TEST_CASE("trigonometric potential") {
    for (const auto& a : {full2(), tridiag3()}) {
        REQUIRE(trig_potential_is_keane(a));
        const auto w = trig_potential_pointwise(a);
        for (const Point& x : sample_points(a, 5, 100)) {
            CHECK(pointwise_keane_residual(w, a, x) <= 1e-12);
            CHECK(std::abs(trig_root_sum(a, x)) <= 1e-12);
        }
    }
    // Schottky columns {0,1,3} and {0,2,3} do not cover the residues mod 3.
    const auto s = schottky4();
    CHECK_FALSE(trig_potential_is_keane(s));
    const Point x = nadic_value(s, Word{0, 0});
    CHECK(std::abs(trig_root_sum(s, x)) > 0.1);
    CHECK(pointwise_keane_residual(trig_potential_pointwise(s), s, x) > 0.1);

    const PerronData pd = perron_data(tridiag3());
    const TrigPotential t = trig_potential(pd, 1);
    CHECK(t.sampled.level() == 2);
    for (Complex c : t.sampled.coeffs()) CHECK(c.real() >= 0.0);
    CHECK_THROWS_AS(t.pointwise(nadic_value(pd.matrix, Word{1})), Error);
}

TEST_CASE("left-endpoint sampling is exact at the sample points") {
    const PerronData pd = perron_data(tridiag3());
    const TrigPotential t = trig_potential(pd, 4);
    // At x(b) every preimage i b is itself a left endpoint of a level-4 cylinder.
    for (const Word& b : enumerate_words(pd.matrix, 3)) {
        const Point x = nadic_value(pd.matrix, b);
        double sampled = 0.0;
        for (Digit i = 0; i < pd.size(); ++i) {
            if (pd.matrix(i, b.front())) sampled += t.sampled.at(prepend(pd.matrix, i, b)).real();
        }
        CHECK(std::abs(sampled - 1.0) < 1e-12);
        CHECK(pointwise_keane_residual(t.pointwise, pd.matrix, x) < 1e-12);
    }
}

TEST_CASE("walk measures") {
    for (const auto& a : test_matrices()) {
        const auto w = uniform_keane_potential(a);
        for (const Point& x : sample_points(a, 3, 6)) {
            for (std::size_t k = 1; k <= 4; ++k) {
                double total = 0.0;
                for (const auto& [path, p] : walk_distribution(x, w, a, k)) {
                    CHECK(p >= 0.0);
                    total += p;
                }
                CHECK(std::abs(total - 1.0) <= 1e-12);
                CHECK(std::abs(walk_layer_mass(x, w, a, k) - 1.0) <= 1e-12);
            }
            CHECK(walk_additivity_residual(x, w, a, 4) <= 1e-12);
            CHECK(std::abs(harmonic_truncated(x, w, a, 3) - 3.0) <= 1e-10);
            for (std::size_t kmax = 1; kmax <= 3; ++kmax) CHECK(harmonic_reindex_residual(x, w, a, kmax) < 1e-12);
        }
    }
    // k = 1 closed form and gating by A(a_1, x_1).
    const auto a = tridiag3();
    const auto w = trig_potential_pointwise(a);
    const Point x = nadic_value(a, Word{0, 1});
    CHECK(walk_measure(x, w, Word{1}, a) == doctest::Approx(w(branch(a, 1, x))));
    CHECK(walk_measure(x, w, Word{2}, a) == 0.0);
    CHECK_THROWS_AS(walk_measure(x, w, Word{0, 2}, a), Error);
}

TEST_CASE("geometric layers for a sub-Keane constant potential") {
    const auto a = schottky4();
    const PerronData pd = perron_data(a);
    const double c = 0.6;
    const double value = c * pd.branch_derivative();
    const PointwisePotential w = [value](const Point&) { return value; };
    const Point x = nadic_value(a, Word{2, 3});
    double expected = 0.0;
    for (std::size_t k = 1; k <= 4; ++k) {
        CHECK(std::abs(walk_layer_mass(x, w, a, k) - std::pow(c, double(k))) < 1e-12);
        expected += std::pow(c, double(k));
    }
    CHECK(std::abs(harmonic_truncated(x, w, a, 4) - expected) < 1e-12);
}
