#include "doctest.h"
#include "test_util.hpp"

#include "ckfractal/repr.hpp"

using namespace ckfractal;
using namespace testutil;

namespace {

// (S_i f)(w) = N^{delta/2} f(sigma w) on R_i, evaluated word by word.
CylinderFunction oracle_S(Digit i, const CylinderFunction& f, const PerronData& pd) {
    const auto& a = pd.matrix;
    std::vector<Complex> c;
    for (const Word& w : enumerate_words(a, f.level() + 1)) {
        c.push_back(w.front() == i ? pd.half_scale() * f.at(shift(w)) : Complex{});
    }
    return CylinderFunction(a, f.level() + 1, std::move(c));
}

// (S_i* f)(b) = N^{-delta/2} f(i b) on D_i.
CylinderFunction oracle_S_star(Digit i, const CylinderFunction& f, const PerronData& pd) {
    const auto& a = pd.matrix;
    const std::size_t level = std::max<std::size_t>(f.level(), 2) - 1;
    std::vector<Complex> c;
    for (const Word& b : enumerate_words(a, level)) {
        c.push_back(a(i, b.front()) ? f.at(prepend(a, i, b)) / pd.half_scale() : Complex{});
    }
    return CylinderFunction(a, level, std::move(c));
}

}  // namespace

TEST_CASE("generators match the word-level formulas") {
    std::mt19937 rng(11);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        for (std::size_t k = 0; k <= 3; ++k) {
            const auto f = random_signal(a, k, rng);
            for (Digit i = 0; i < a.size(); ++i) {
                CHECK(max_abs_diff(apply_S(i, f, pd), oracle_S(i, f, pd)) < 1e-14);
                CHECK(max_abs_diff(apply_S_star(i, f, pd), oracle_S_star(i, f, pd)) < 1e-14);
            }
        }
    }
}

TEST_CASE("documented generator examples") {
    const PerronData f2 = perron_data(full2());
    const auto one = CylinderFunction::constant(f2.matrix, 1.0);
    const auto s0 = apply_S(0, one, f2);
    CHECK(s0.level() == 1);
    CHECK(std::abs(s0[0] - std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(s0[1]) == 0.0);
    const auto adj = apply_S_star(0, CylinderFunction::indicator(f2.matrix, Word{0}), f2);
    for (Complex c : adj.coeffs()) CHECK(std::abs(c - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(max_abs_diff(apply_S_star(0, CylinderFunction::indicator(f2.matrix, Word{1}), f2), CylinderFunction(f2.matrix, 1)) == 0.0);
    const auto s01 = apply_S_word(Word{0, 1}, one, f2, false);
    CHECK(max_abs_diff(s01, Complex(2.0) * CylinderFunction::indicator(f2.matrix, Word{0, 1})) < 1e-14);
    CHECK(max_abs_diff(pf_operator(one, f2), one) < 1e-15);
    CHECK(max_abs_diff(pf_operator(CylinderFunction::indicator(f2.matrix, Word{0}), f2), Complex(0.5) * one) < 1e-15);

    const PerronData m3 = perron_data(tridiag3());
    const auto z = apply_S(0, CylinderFunction::indicator(m3.matrix, Word{2}), m3);
    for (Complex c : z.coeffs()) CHECK(c == Complex{});
}

TEST_CASE("S_i* S_i is the domain projection") {
    std::mt19937 rng(5);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        const auto f = random_signal(a, 3, rng);
        for (Digit i = 0; i < a.size(); ++i) {
            std::vector<Complex> c;
            for (const Word& w : enumerate_words(a, 3)) c.push_back(a(i, w.front()) ? f.at(w) : Complex{});
            CHECK(max_abs_diff(apply_S_star(i, apply_S(i, f, pd), pd), CylinderFunction(a, 3, c)) < 1e-13);
        }
    }
}

TEST_CASE("operator relation residuals") {
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        for (std::size_t k = 1; k <= 5; ++k) {
            CHECK(ck_relations_residual(pd, k) <= 1e-12);
            CHECK(projection_residual(pd, k) <= 1e-12);
            CHECK(pf_adjoint_residual(pd, k) <= 1e-12);
        }
    }
}

TEST_CASE("range projection multiplies by the cylinder indicator") {
    std::mt19937 rng(9);
    const auto a = schottky4();
    const PerronData pd = perron_data(a);
    const auto f = random_signal(a, 3, rng);
    for (const Word& w : enumerate_words(a, 2)) {
        const auto p = range_projection(w, f, pd);
        CHECK(max_abs_diff(p, multiply(CylinderFunction::indicator(a, w), f)) < 1e-13);
    }
}

TEST_CASE("fixed point and KMS ratios") {
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        const auto h = pf_fixed_point(pd);
        CHECK(norm(pf_operator(h, pd) - h, pd) <= 1e-10);
        const double nd = std::pow(double(a.size()), pd.delta);
        for (Digit i = 0; i < a.size(); ++i) CHECK(std::abs(kms_ratio(i, pd) - nd) <= 1e-9);
    }
    const PerronData f2 = perron_data(full2());
    CHECK(kms_state(Word{0}, Word{1}, f2).value == Complex{});
    CHECK(std::abs(kms_state(Word{0}, Word{0}, f2).value - 0.5) < 1e-15);
}

TEST_CASE("spectral masses") {
    std::mt19937 rng(1);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        auto f = random_signal(a, 3, rng);
        f = Complex(1.0 / norm(f, pd)) * f;
        for (std::size_t k = 0; k <= 4; ++k) {
            const auto masses = cylinder_masses(f, k, pd);
            const auto words = enumerate_words(a, k);
            double total = 0.0;
            for (std::size_t t = 0; t < words.size(); ++t) {
                const double direct = std::pow(norm(apply_S_word(words[t], f, pd, true), pd), 2);
                CHECK(std::abs(masses[t] - direct) < 1e-13);
                total += masses[t];
            }
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
        const auto b1 = make_borel_set(a, 2, {enumerate_words(a, 2)[0]});
        const auto b2 = make_borel_set(a, 2, {enumerate_words(a, 2)[1]});
        const auto both = make_borel_set(a, 2, {enumerate_words(a, 2)[1], enumerate_words(a, 2)[0]});
        CHECK(std::abs(measure_mu_f(f, both, pd).value - measure_mu_f(f, b1, pd).value - measure_mu_f(f, b2, pd).value) < 1e-14);
        CHECK(measure_mu_f(f, both, pd).unit_norm);
    }
    const PerronData f2 = perron_data(full2());
    const auto one = CylinderFunction::constant(f2.matrix, 1.0);
    CHECK(std::abs(measure_mu_f(one, make_borel_set(f2.matrix, 2, {Word{0, 1}}), f2).value - 0.25) < 1e-15);
    CHECK_FALSE(measure_mu_f(Complex(2.0) * one, make_borel_set(f2.matrix, 1, {Word{0}}), f2).unit_norm);
}

TEST_CASE("Fourier approximation") {
    const PerronData f2 = perron_data(full2());
    const auto one = CylinderFunction::constant(f2.matrix, 1.0);
    for (double t : {-17.0, -3.5, 0.0, 1.0, 12.25}) {
        for (std::size_t k = 1; k <= 6; ++k) {
            Complex product = 1.0;
            for (std::size_t m = 1; m <= k; ++m) product *= (1.0 + std::polar(1.0, t * std::ldexp(1.0, -int(m)))) / 2.0;
            CHECK(std::abs(fourier_approx(one, t, k, f2) - product) < 1e-12);
        }
    }
    std::mt19937 rng(2);
    for (const auto& a : test_matrices()) {
        const PerronData pd = perron_data(a);
        auto f = random_signal(a, 2, rng);
        f = Complex(1.0 / norm(f, pd)) * f;
        CHECK(std::abs(fourier_approx(f, 0.0, 3, pd) - 1.0) < 1e-12);
        for (double t : {-20.0, -1.7, 4.0, 19.5}) {
            for (std::size_t k = 1; k <= 6; ++k) {
                Complex rhs{};
                for (Digit j = 0; j < a.size(); ++j) {
                    rhs += std::polar(1.0, t * j / double(a.size())) * fourier_approx(apply_S_star(j, f, pd), t / a.size(), k - 1, pd);
                }
                CHECK(std::abs(fourier_approx(f, t, k, pd) - rhs) < 1e-12);
            }
            for (std::size_t k = 1; k <= 3; ++k) {
                CHECK(std::abs(fourier_approx(f, t, k, pd) - fourier_approx(f, t, k + 4, pd)) <= fourier_tail_bound(t, k, a.size()));
            }
        }
    }
}
