#include "ckfractal/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ckfractal {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonBinaryEntry: return "NonBinaryEntry";
    case ErrorKind::MissingDiagonal: return "MissingDiagonal";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DeadRow: return "DeadRow";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::EmptyWord: return "EmptyWord";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::LevelTooLow: return "LevelTooLow";
    case ErrorKind::InadmissibleWord: return "InadmissibleWord";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MatrixMismatch: return "MatrixMismatch";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NegativePotential: return "NegativePotential";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::WordTooShort: return "WordTooShort";
    case ErrorKind::SinkFound: return "SinkFound";
    case ErrorKind::BaseEdgeMismatch: return "BaseEdgeMismatch";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::MultiplePaths: return "MultiplePaths";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

Word Word::prefix(std::size_t n) const {
    n = std::min(n, digits_.size());
    return Word(std::vector<Digit>(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word Word::append(Digit d) const {
    auto digits = digits_;
    digits.push_back(d);
    return Word(std::move(digits));
}

Word Word::concat(const Word& tail) const {
    auto digits = digits_;
    digits.insert(digits.end(), tail.begin(), tail.end());
    return Word(std::move(digits));
}

namespace {

std::size_t saturating_add(std::size_t a, std::size_t b) {
    return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

}  // namespace

bool is_irreducible(const std::vector<std::vector<int>>& raw) {
    const std::size_t n = raw.size();
    // reach = (I + A)^m as a boolean matrix, squared until the exponent covers n - 1.
    std::vector<std::uint8_t> reach(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) reach[i * n + j] = (i == j || raw[i][j] != 0) ? 1 : 0;
    }
    for (std::size_t power = 1; power < n; power *= 2) {
        std::vector<std::uint8_t> next(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!reach[i * n + k]) continue;
                for (std::size_t j = 0; j < n; ++j) next[i * n + j] |= reach[k * n + j];
            }
        }
        reach = std::move(next);
    }
    return std::all_of(reach.begin(), reach.end(), [](std::uint8_t b) { return b != 0; });
}

AdmissibilityMatrix AdmissibilityMatrix::validate(const std::vector<std::vector<int>>& raw, bool strict) {
    const std::size_t n = raw.size();
    if (n == 0) throw Error(ErrorKind::NotSquare, "matrix is empty");
    if (strict && n < 2) throw Error(ErrorKind::NotSquare, "alphabet size must be at least 2");
    for (const auto& row : raw) {
        if (row.size() != n) throw Error(ErrorKind::NotSquare, "matrix rows must all have length " + std::to_string(n));
    }

    auto data = std::make_shared<Data>();
    data->n = n;
    data->strict = strict;
    data->bits.resize(n * n);
    data->row_degree.assign(n, 0);
    data->col_degree.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int v = raw[i][j];
            if (v != 0 && v != 1) {
                throw Error(ErrorKind::NonBinaryEntry,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(v));
            }
            data->bits[i * n + j] = static_cast<std::uint8_t>(v);
            data->row_degree[i] += static_cast<std::size_t>(v);
            data->col_degree[j] += static_cast<std::size_t>(v);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (data->row_degree[i] == 0) throw Error(ErrorKind::DeadRow, "row " + std::to_string(i) + " has no 1 entry");
    }
    if (strict) {
        for (std::size_t i = 0; i < n; ++i) {
            if (raw[i][i] != 1) throw Error(ErrorKind::MissingDiagonal, "A(" + std::to_string(i) + "," + std::to_string(i) + ") = 0");
        }
        if (!is_irreducible(raw)) throw Error(ErrorKind::Reducible, "no power of A is positive");
    }

    data->completions.assign(kMaxLevel + 1, std::vector<std::size_t>(n, 0));
    for (std::size_t c = 0; c < n; ++c) data->completions[1][c] = 1;
    for (std::size_t len = 2; len <= kMaxLevel; ++len) {
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t total = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (data->bits[c * n + j]) total = saturating_add(total, data->completions[len - 1][j]);
            }
            data->completions[len][c] = total;
        }
    }
    return AdmissibilityMatrix(std::move(data));
}

bool AdmissibilityMatrix::admissible(const Word& w) const {
    for (std::size_t m = 0; m < w.size(); ++m) {
        if (w[m] >= size()) return false;
        if (m > 0 && !(*this)(w[m - 1], w[m])) return false;
    }
    return true;
}

bool AdmissibilityMatrix::admissible_transposed(const Word& w) const {
    for (std::size_t m = 0; m < w.size(); ++m) {
        if (w[m] >= size()) return false;
        if (m > 0 && !(*this)(w[m], w[m - 1])) return false;
    }
    return true;
}

void AdmissibilityMatrix::check_level(std::size_t k) const {
    if (k > kMaxLevel) throw Error(ErrorKind::CapExceeded, "word length " + std::to_string(k) + " exceeds indexing limit");
}

std::size_t AdmissibilityMatrix::completions(Digit first, std::size_t length) const {
    check_level(length);
    if (length == 0) return 0;
    return d_->completions[length][first];
}

std::size_t AdmissibilityMatrix::word_count(std::size_t k) const {
    check_level(k);
    if (k == 0) return 1;
    std::size_t total = 0;
    for (std::size_t c = 0; c < size(); ++c) total = saturating_add(total, d_->completions[k][c]);
    return total;
}

std::size_t AdmissibilityMatrix::block_offset(Digit first, std::size_t length) const {
    check_level(length);
    std::size_t offset = 0;
    for (Digit c = 0; c < first; ++c) offset += d_->completions[length][c];
    return offset;
}

std::size_t AdmissibilityMatrix::index_of(const Word& w) const {
    if (!admissible(w)) throw Error(ErrorKind::InadmissibleWord, "word is not admissible");
    const std::size_t k = w.size();
    check_level(k);
    std::size_t index = 0;
    for (std::size_t m = 0; m < k; ++m) {
        const std::size_t remaining = k - m;
        for (Digit c = 0; c < w[m]; ++c) {
            if (m == 0 || (*this)(w[m - 1], c)) index += d_->completions[remaining][c];
        }
    }
    return index;
}

std::vector<std::vector<int>> AdmissibilityMatrix::entries() const {
    std::vector<std::vector<int>> out(size(), std::vector<int>(size(), 0));
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) out[i][j] = d_->bits[i * size() + j];
    }
    return out;
}

bool AdmissibilityMatrix::operator==(const AdmissibilityMatrix& other) const {
    if (d_ == other.d_) return true;
    return d_->n == other.d_->n && d_->bits == other.d_->bits;
}

std::vector<Word> enumerate_words(const AdmissibilityMatrix& a, std::size_t k) {
    std::vector<Word> out;
    out.reserve(a.word_count(k));
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<Digit> current;
    current.reserve(k);
    std::function<void()> extend = [&]() {
        if (current.size() == k) {
            out.emplace_back(current);
            return;
        }
        for (Digit c = 0; c < a.size(); ++c) {
            if (!current.empty() && !a(current.back(), c)) continue;
            current.push_back(c);
            extend();
            current.pop_back();
        }
    };
    extend();
    return out;
}

Point nadic_value(const AdmissibilityMatrix& a, const Word& w) {
    if (!a.admissible(w)) throw Error(ErrorKind::InadmissibleWord, "word is not admissible");
    // Horner from the last digit: x = (a_1 + (a_2 + ...)/N)/N.
    const double n = static_cast<double>(a.size());
    double value = 0.0;
    for (auto it = w.digits().rbegin(); it != w.digits().rend(); ++it) value = (value + *it) / n;
    return Point{w, value};
}

Point branch(const AdmissibilityMatrix& a, Digit i, const Point& x) {
    Word w = prepend(a, i, x.word);
    return Point{std::move(w), (x.value + i) / static_cast<double>(a.size())};
}

Word shift(const Word& w) {
    if (w.empty()) throw Error(ErrorKind::EmptyWord, "cannot shift the empty word");
    return Word(std::vector<Digit>(w.begin() + 1, w.end()));
}

Word prepend(const AdmissibilityMatrix& a, Digit i, const Word& w) {
    if (i >= a.size()) throw Error(ErrorKind::NotInDomain, "digit " + std::to_string(i) + " outside the alphabet");
    if (!w.empty() && !a(i, w.front())) {
        throw Error(ErrorKind::NotInDomain,
                    "A(" + std::to_string(i) + "," + std::to_string(w.front()) + ") = 0");
    }
    std::vector<Digit> digits;
    digits.reserve(w.size() + 1);
    digits.push_back(i);
    digits.insert(digits.end(), w.begin(), w.end());
    return Word(std::move(digits));
}

CylinderFunction::CylinderFunction(AdmissibilityMatrix a, std::size_t level)
    : matrix_(std::move(a)), level_(level), coeffs_(matrix_.word_count(level), Complex{}) {}

CylinderFunction::CylinderFunction(AdmissibilityMatrix a, std::size_t level, std::vector<Complex> coeffs)
    : matrix_(std::move(a)), level_(level), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != matrix_.word_count(level)) {
        throw Error(ErrorKind::IndexOutOfRange, "expected " + std::to_string(matrix_.word_count(level)) +
                                                    " coefficients at level " + std::to_string(level) + ", got " +
                                                    std::to_string(coeffs_.size()));
    }
}

CylinderFunction CylinderFunction::constant(const AdmissibilityMatrix& a, Complex value, std::size_t level) {
    return CylinderFunction(a, level, std::vector<Complex>(a.word_count(level), value));
}

CylinderFunction CylinderFunction::indicator(const AdmissibilityMatrix& a, const Word& w) {
    const std::size_t index = a.index_of(w);
    return basis(a, w.size(), index);
}

CylinderFunction CylinderFunction::basis(const AdmissibilityMatrix& a, std::size_t level, std::size_t index) {
    std::vector<Complex> coeffs(a.word_count(level), Complex{});
    if (index >= coeffs.size()) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
    coeffs[index] = 1.0;
    return CylinderFunction(a, level, std::move(coeffs));
}

Complex CylinderFunction::at(const Word& w) const {
    if (w.size() < level_) throw Error(ErrorKind::LevelTooLow, "word shorter than function level");
    return coeffs_[matrix_.index_of(w.prefix(level_))];
}

CylinderFunction CylinderFunction::refine(std::size_t level) const {
    if (level < level_) {
        throw Error(ErrorKind::LevelTooLow,
                    "cannot refine level " + std::to_string(level_) + " to level " + std::to_string(level));
    }
    if (level == level_) return *this;
    std::vector<Complex> out;
    out.reserve(matrix_.word_count(level));
    if (level_ == 0) {
        out.assign(matrix_.word_count(level), coeffs_[0]);
        return CylinderFunction(matrix_, level, std::move(out));
    }
    // Words of the finer level extending u form a contiguous block whose size
    // depends only on u's last digit.
    const std::size_t extra = level - level_ + 1;
    std::size_t index = 0;
    for (const Word& u : enumerate_words(matrix_, level_)) {
        const std::size_t repeat = matrix_.completions(u.back(), extra);
        out.insert(out.end(), repeat, coeffs_[index++]);
    }
    return CylinderFunction(matrix_, level, std::move(out));
}

CylinderFunction refine(const CylinderFunction& f, std::size_t level) { return f.refine(level); }

void require_same_matrix(const CylinderFunction& f, const CylinderFunction& g) {
    if (!(f.matrix() == g.matrix())) throw Error(ErrorKind::MatrixMismatch, "functions live on different matrices");
}

namespace {

template <typename Op>
CylinderFunction combine(const CylinderFunction& f, const CylinderFunction& g, Op op) {
    require_same_matrix(f, g);
    const std::size_t level = std::max(f.level(), g.level());
    const CylinderFunction fr = f.refine(level);
    const CylinderFunction gr = g.refine(level);
    std::vector<Complex> out(fr.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(fr[i], gr[i]);
    return CylinderFunction(f.matrix(), level, std::move(out));
}

}  // namespace

CylinderFunction operator+(const CylinderFunction& f, const CylinderFunction& g) {
    return combine(f, g, [](Complex x, Complex y) { return x + y; });
}

CylinderFunction operator-(const CylinderFunction& f, const CylinderFunction& g) {
    return combine(f, g, [](Complex x, Complex y) { return x - y; });
}

CylinderFunction operator*(Complex s, const CylinderFunction& f) {
    std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& c : out) c *= s;
    return CylinderFunction(f.matrix(), f.level(), std::move(out));
}

CylinderFunction multiply(const CylinderFunction& f, const CylinderFunction& g) {
    return combine(f, g, [](Complex x, Complex y) { return x * y; });
}

double max_abs_diff(const CylinderFunction& f, const CylinderFunction& g) {
    const CylinderFunction d = f - g;
    double worst = 0.0;
    for (Complex c : d.coeffs()) worst = std::max(worst, std::abs(c));
    return worst;
}

}  // namespace ckfractal
