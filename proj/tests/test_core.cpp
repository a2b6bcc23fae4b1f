#include "doctest.h"
#include "test_util.hpp"

using namespace ckfractal;
using namespace testutil;

TEST_CASE("validate rejects malformed matrices") {
    auto kind_of = [](const std::vector<std::vector<int>>& raw, bool strict) {
        try {
            AdmissibilityMatrix::validate(raw, strict);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Usage;
    };
    CHECK(kind_of({}, true) == ErrorKind::NotSquare);
    CHECK(kind_of({{1, 1}, {1}}, true) == ErrorKind::NotSquare);
    CHECK(kind_of({{1}}, true) == ErrorKind::NotSquare);
    CHECK(kind_of({{1, 2}, {1, 1}}, true) == ErrorKind::NonBinaryEntry);
    CHECK(kind_of({{1, 1}, {0, 0}}, false) == ErrorKind::DeadRow);
    CHECK(kind_of({{0, 1}, {1, 1}}, true) == ErrorKind::MissingDiagonal);
    CHECK(kind_of({{1, 1}, {0, 1}}, true) == ErrorKind::Reducible);
    CHECK_NOTHROW(AdmissibilityMatrix::validate({{0, 1}, {1, 0}}, false));
    CHECK_NOTHROW(AdmissibilityMatrix::validate({{1}}, false));
}

TEST_CASE("irreducibility matches reachability") {
    CHECK(is_irreducible({{0, 1}, {1, 0}}));
    CHECK_FALSE(is_irreducible({{1, 1}, {0, 1}}));
    CHECK(is_irreducible(schottky4_raw()));
    CHECK_FALSE(is_irreducible({{1, 0, 0}, {0, 1, 1}, {0, 1, 1}}));
}

TEST_CASE("enumeration agrees with brute force and is lexicographic") {
    for (const auto& a : test_matrices()) {
        for (std::size_t k = 0; k <= 5; ++k) {
            const auto words = enumerate_words(a, k);
            const auto brute = brute_words(a, k);
            REQUIRE(words == brute);
            CHECK(a.word_count(k) == words.size());
            for (std::size_t t = 0; t < words.size(); ++t) CHECK(a.index_of(words[t]) == t);
        }
    }
    CHECK(schottky4().word_count(5) == 324);  // 4 * 3^4
    CHECK(full2().word_count(8) == 256);
}

TEST_CASE("word helpers") {
    const auto a = schottky4();
    CHECK(shift(Word{1, 2, 3}) == Word{2, 3});
    CHECK_THROWS_AS(shift(Word{}), Error);
    CHECK(prepend(a, 0, Word{1, 2}) == Word{0, 1, 2});
    CHECK_THROWS_AS(prepend(a, 0, Word{2}), Error);
    CHECK(a.admissible_transposed(Word{2, 1, 0}));
    CHECK_FALSE(a.admissible_transposed(Word{0, 2}));
    const Point x = nadic_value(a, Word{1, 0, 3});
    CHECK(x.value == doctest::Approx(1.0 / 4 + 0.0 / 16 + 3.0 / 64));
    const Point y = branch(a, 2, x);
    CHECK(y.word == Word{2, 1, 0, 3});
    CHECK(y.value == doctest::Approx((x.value + 2) / 4));
    CHECK_THROWS_AS(branch(a, 3, x), Error);
}

TEST_CASE("cylinder functions refine and evaluate consistently") {
    const auto a = tridiag3();
    std::mt19937 rng(7);
    const auto f = random_signal(a, 2, rng);
    const auto g = f.refine(4);
    for (const Word& w : enumerate_words(a, 4)) CHECK(g.at(w) == f.at(w.prefix(2)));
    CHECK_THROWS_AS(f.at(Word{1}), Error);
    CHECK_THROWS_AS(g.refine(3), Error);
    const auto c = CylinderFunction::constant(a, 2.5).refine(3);
    for (Complex v : c.coeffs()) CHECK(v == Complex(2.5));
    const auto chi = CylinderFunction::indicator(a, Word{1, 2});
    CHECK(chi.level() == 2);
    CHECK(chi.at(Word{1, 2, 2}) == Complex(1.0));
    CHECK(chi.at(Word{1, 1, 2}) == Complex(0.0));
}

TEST_CASE("arithmetic refines to the common level") {
    const auto a = full2();
    const auto f = CylinderFunction::indicator(a, Word{0});
    const auto g = CylinderFunction::indicator(a, Word{0, 1});
    const auto h = f - g;
    CHECK(h.level() == 2);
    CHECK(h.at(Word{0, 0}) == Complex(1.0));
    CHECK(h.at(Word{0, 1}) == Complex(0.0));
    CHECK_THROWS_AS(f + CylinderFunction::constant(schottky4(), 1.0), Error);
}
