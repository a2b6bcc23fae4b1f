#pragma once

/**
 * @file core.hpp
 * @brief Subshift of finite type combinatorics.
 *
 * An N x N 0-1 admissibility matrix A defines the Cantor set Lambda_A of
 * infinite sequences x_0 x_1 ... with A(x_m, x_{m+1}) = 1. Everything in this
 * library is computed on cylinder functions: functions that are constant on
 * each level-k cylinder Lambda_{k,A}(a), a ranging over the admissible words
 * of length k. Coefficients are always stored in lexicographic word order.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ckfractal/error.hpp"

namespace ckfractal {

using Digit = std::uint32_t;
using Complex = std::complex<double>;

/// Finite digit string. Admissibility is a property relative to a matrix and is
/// checked by AdmissibilityMatrix::admissible.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Digit> digits) : digits_(std::move(digits)) {}
    Word(std::initializer_list<Digit> digits) : digits_(digits) {}

    std::size_t size() const noexcept { return digits_.size(); }
    bool empty() const noexcept { return digits_.empty(); }
    Digit operator[](std::size_t i) const { return digits_[i]; }
    Digit front() const { return digits_.front(); }
    Digit back() const { return digits_.back(); }
    const std::vector<Digit>& digits() const noexcept { return digits_; }
    auto begin() const noexcept { return digits_.begin(); }
    auto end() const noexcept { return digits_.end(); }

    Word prefix(std::size_t n) const;
    Word append(Digit d) const;
    Word concat(const Word& tail) const;

    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;

private:
    std::vector<Digit> digits_;
};

/// Validated 0-1 matrix. Cheap to copy (shared immutable storage). Also
/// carries the completion-count table used to index admissible words.
class AdmissibilityMatrix {
public:
    /// Longest word length for which indexing tables are kept.
    static constexpr std::size_t kMaxLevel = 40;

    static AdmissibilityMatrix validate(const std::vector<std::vector<int>>& raw, bool strict);

    std::size_t size() const noexcept { return d_->n; }
    bool strict() const noexcept { return d_->strict; }
    bool operator()(Digit i, Digit j) const { return d_->bits[i * d_->n + j] != 0; }

    /// d_i = #{j : A_ij = 1}.
    std::size_t out_degree(Digit i) const { return d_->row_degree[i]; }
    /// #{i : A_ij = 1}.
    std::size_t in_degree(Digit j) const { return d_->col_degree[j]; }

    bool admissible(const Word& w) const;
    /// Admissible for the transpose: A(w_{m+1}, w_m) = 1 for every m.
    bool admissible_transposed(const Word& w) const;

    /// Number of admissible words of the given length whose first digit is `first`.
    std::size_t completions(Digit first, std::size_t length) const;
    /// |W_{k,A}|; W_0 holds the empty word only.
    std::size_t word_count(std::size_t k) const;
    /// Index in W_{length,A} of the first word starting with `first`.
    std::size_t block_offset(Digit first, std::size_t length) const;
    /// Position of w in the canonical (lexicographic) order of W_{|w|,A}.
    std::size_t index_of(const Word& w) const;

    std::vector<std::vector<int>> entries() const;
    bool operator==(const AdmissibilityMatrix& other) const;

private:
    struct Data {
        std::size_t n = 0;
        bool strict = false;
        std::vector<std::uint8_t> bits;
        std::vector<std::size_t> row_degree;
        std::vector<std::size_t> col_degree;
        // completions[len][c], saturating at SIZE_MAX.
        std::vector<std::vector<std::size_t>> completions;
    };

    explicit AdmissibilityMatrix(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    void check_level(std::size_t k) const;

    std::shared_ptr<const Data> d_;
};

/// True when (I + A)^(N-1) has no zero entry.
bool is_irreducible(const std::vector<std::vector<int>>& raw);

/// All admissible words of length k in lexicographic order.
std::vector<Word> enumerate_words(const AdmissibilityMatrix& a, std::size_t k);

/// Point of [0,1] given by the terminating N-adic expansion of a word.
struct Point {
    Word word;
    double value = 0.0;
};

Point nadic_value(const AdmissibilityMatrix& a, const Word& w);
/// The point sigma_i(x): prepends i and maps the value to (v + i) / N.
Point branch(const AdmissibilityMatrix& a, Digit i, const Point& x);

Word shift(const Word& w);
Word prepend(const AdmissibilityMatrix& a, Digit i, const Word& w);

/// Locally constant function on Lambda_A: one coefficient per word of W_{k,A}.
class CylinderFunction {
public:
    CylinderFunction(AdmissibilityMatrix a, std::size_t level);
    CylinderFunction(AdmissibilityMatrix a, std::size_t level, std::vector<Complex> coeffs);

    static CylinderFunction constant(const AdmissibilityMatrix& a, Complex value, std::size_t level = 0);
    /// Characteristic function of the cylinder Lambda_{|w|,A}(w).
    static CylinderFunction indicator(const AdmissibilityMatrix& a, const Word& w);
    /// Basis vector e_w for the word at position `index` of W_{level,A}.
    static CylinderFunction basis(const AdmissibilityMatrix& a, std::size_t level, std::size_t index);

    const AdmissibilityMatrix& matrix() const noexcept { return matrix_; }
    std::size_t level() const noexcept { return level_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t index) const { return coeffs_[index]; }

    /// Value on any cylinder contained in the level cylinder of w's prefix;
    /// requires |w| >= level.
    Complex at(const Word& w) const;

    CylinderFunction refine(std::size_t level) const;

private:
    AdmissibilityMatrix matrix_;
    std::size_t level_;
    std::vector<Complex> coeffs_;
};

CylinderFunction refine(const CylinderFunction& f, std::size_t level);

/// Throws MatrixMismatch unless both functions live on the same matrix.
void require_same_matrix(const CylinderFunction& f, const CylinderFunction& g);

CylinderFunction operator+(const CylinderFunction& f, const CylinderFunction& g);
CylinderFunction operator-(const CylinderFunction& f, const CylinderFunction& g);
CylinderFunction operator*(Complex s, const CylinderFunction& f);
/// Pointwise product.
CylinderFunction multiply(const CylinderFunction& f, const CylinderFunction& g);
/// Largest coefficient difference after refining to a common level.
double max_abs_diff(const CylinderFunction& f, const CylinderFunction& g);

}  // namespace ckfractal
