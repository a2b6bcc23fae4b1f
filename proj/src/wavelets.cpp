#include "ckfractal/wavelets.hpp"

#include <algorithm>
#include <cmath>

#include "ckfractal/repr.hpp"

namespace ckfractal {

namespace {

Complex weighted_dot(const CoefficientVector& v, const CoefficientVector& w, std::span<const double> weights,
                     std::span<const Digit> support) {
    Complex total{};
    for (Digit j : support) total += std::conj(v[j]) * w[j] * weights[j];
    return total;
}

}  // namespace

std::vector<CoefficientVector> weighted_complement_basis(std::span<const double> weights, std::span<const Digit> support) {
    for (Digit j : support) {
        if (j >= weights.size()) throw Error(ErrorKind::IndexOutOfRange, "support digit outside the weight vector");
        if (!(weights[j] > 0.0)) throw Error(ErrorKind::NonPositiveWeight, "weight at " + std::to_string(j) + " is not positive");
    }
    std::vector<Digit> sorted(support.begin(), support.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const std::size_t d = sorted.size();
    if (d <= 1) return {};

    auto normalize = [&](CoefficientVector& v) {
        const double len = std::sqrt(weighted_dot(v, v, weights, sorted).real());
        for (auto& c : v) c /= len;
    };

    std::vector<CoefficientVector> frame;
    CoefficientVector u(weights.size(), Complex{});
    for (Digit j : sorted) u[j] = 1.0;
    normalize(u);
    frame.push_back(std::move(u));

    // {u, e_{j_1}, ..., e_{j_{d-1}}} is already a basis, so the last support
    // element is never needed.
    for (std::size_t s = 0; s + 1 < d; ++s) {
        CoefficientVector v(weights.size(), Complex{});
        v[sorted[s]] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : frame) {
                const Complex proj = weighted_dot(q, v, weights, sorted);
                for (Digit j : sorted) v[j] -= proj * q[j];
            }
        }
        normalize(v);
        frame.push_back(std::move(v));
    }
    frame.erase(frame.begin());
    return frame;
}

MotherWaveletSet::MotherWaveletSet(const PerronData& pd) : pd_(pd) {
    const AdmissibilityMatrix& a = pd_.matrix;
    const std::size_t n = a.size();
    const std::vector<double> mu2 = level_measures(pd_, 2);
    first_.assign(n + 1, 0);
    for (Digit k = 0; k < n; ++k) {
        first_[k] = wavelets_.size();
        std::vector<Digit> support;
        for (Digit j = 0; j < n; ++j) {
            if (a(k, j)) support.push_back(j);
        }
        std::vector<CoefficientVector> cs = weighted_complement_basis(pd_.p, support);
        std::size_t index = 1;
        for (auto& c : cs) {
            std::vector<Complex> values(a.word_count(2), Complex{});
            for (Digit j : support) values[a.index_of(Word{k, j})] = c[j];
            // Normalize by the computed norm instead of a closed-form constant.
            double energy = 0.0;
            for (std::size_t t = 0; t < values.size(); ++t) energy += std::norm(values[t]) * mu2[t];
            const double scale = 1.0 / std::sqrt(energy);
            for (auto& v : values) v *= scale;
            wavelets_.push_back(MotherWavelet{k, index++, std::move(c), CylinderFunction(a, 2, std::move(values))});
        }
    }
    first_[n] = wavelets_.size();
}

std::size_t MotherWaveletSet::count(Digit letter) const {
    if (letter >= matrix().size()) throw Error(ErrorKind::IndexOutOfRange, "letter outside the alphabet");
    return first_[letter + 1] - first_[letter];
}

const MotherWavelet& MotherWaveletSet::get(Digit letter, std::size_t index) const {
    if (index < 1 || index > count(letter)) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "no mother wavelet l=" + std::to_string(index) + " for letter " + std::to_string(letter));
    }
    return wavelets_[first_[letter] + index - 1];
}

MotherWaveletSet build_mother_wavelets(const PerronData& pd) { return MotherWaveletSet(pd); }

CylinderFunction wavelet(const Word& a, std::size_t index, Digit letter, const MotherWaveletSet& mw) {
    const AdmissibilityMatrix& m = mw.matrix();
    if (!m.admissible(a)) throw Error(ErrorKind::InadmissibleWord, "translation word is not admissible");
    const MotherWavelet& mother = mw.get(letter, index);
    if (!a.empty() && !m(a.back(), letter)) {
        throw Error(ErrorKind::NotComposable,
                    "A(" + std::to_string(a.back()) + "," + std::to_string(letter) + ") = 0");
    }
    return apply_S_word(a, mother.function, mw.perron(), false);
}

std::vector<BasisLabel> basis_labels(const MotherWaveletSet& mw, std::size_t level) {
    const AdmissibilityMatrix& a = mw.matrix();
    std::vector<BasisLabel> labels;
    for (Digit i = 0; i < a.size(); ++i) labels.push_back(BasisLabel{BasisLabel::Kind::Scaling, Word{}, i, 0});
    if (level < 2) return labels;
    for (const MotherWavelet& m : mw.all()) labels.push_back(BasisLabel{BasisLabel::Kind::Mother, Word{}, m.letter, m.index});
    for (std::size_t j = 1; j + 2 <= level; ++j) {
        for (const Word& w : enumerate_words(a, j)) {
            for (Digit r = 0; r < a.size(); ++r) {
                if (!a(w.back(), r)) continue;
                for (std::size_t l = 1; l <= mw.count(r); ++l) labels.push_back(BasisLabel{BasisLabel::Kind::Detail, w, r, l});
            }
        }
    }
    return labels;
}

CylinderFunction basis_function(const BasisLabel& label, const MotherWaveletSet& mw) {
    switch (label.kind) {
    case BasisLabel::Kind::Scaling: {
        const double scale = 1.0 / std::sqrt(mw.perron().p[label.letter]);
        return Complex(scale) * CylinderFunction::indicator(mw.matrix(), Word{label.letter});
    }
    case BasisLabel::Kind::Mother: return mw.get(label.letter, label.index).function;
    case BasisLabel::Kind::Detail: return wavelet(label.word, label.index, label.letter, mw);
    }
    throw Error(ErrorKind::IndexOutOfRange, "unknown basis label");
}

double WaveletCoefficients::energy() const {
    double total = 0.0;
    for (Complex c : scaling) total += std::norm(c);
    for (const auto& m : mother) total += std::norm(m.value);
    for (const auto& d : detail) total += std::norm(d.value);
    return total;
}

WaveletCoefficients analyze(const CylinderFunction& f, const MotherWaveletSet& mw) {
    if (!(f.matrix() == mw.matrix())) throw Error(ErrorKind::MatrixMismatch, "signal and wavelets differ");
    const CylinderFunction g = f.level() == 0 ? f.refine(1) : f;
    WaveletCoefficients out;
    out.n = mw.matrix().size();
    out.level = g.level();
    for (const BasisLabel& label : basis_labels(mw, g.level())) {
        const Complex value = inner_product(basis_function(label, mw), g, mw.perron());
        switch (label.kind) {
        case BasisLabel::Kind::Scaling: out.scaling.push_back(value); break;
        case BasisLabel::Kind::Mother: out.mother.push_back({label.letter, label.index, value}); break;
        case BasisLabel::Kind::Detail: out.detail.push_back({label.word, label.index, label.letter, value}); break;
        }
    }
    return out;
}

CylinderFunction synthesize(const WaveletCoefficients& coeffs, const MotherWaveletSet& mw, std::size_t level) {
    const AdmissibilityMatrix& a = mw.matrix();
    if (coeffs.scaling.size() > a.size()) throw Error(ErrorKind::IndexOutOfRange, "too many scaling coefficients");
    if (level == 0) throw Error(ErrorKind::LevelTooLow, "synthesis level must be at least 1");

    std::vector<Complex> sum(a.word_count(level), Complex{});
    auto accumulate = [&](const CylinderFunction& basis, Complex weight) {
        const CylinderFunction r = basis.refine(level);
        for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += weight * r[t];
    };
    for (std::size_t i = 0; i < coeffs.scaling.size(); ++i) {
        accumulate(basis_function({BasisLabel::Kind::Scaling, Word{}, static_cast<Digit>(i), 0}, mw), coeffs.scaling[i]);
    }
    for (const auto& m : coeffs.mother) {
        if (level < 2 || m.letter >= a.size() || m.index < 1 || m.index > mw.count(m.letter)) {
            throw Error(ErrorKind::IndexOutOfRange, "mother coefficient index outside the level-" + std::to_string(level) + " basis");
        }
        accumulate(mw.get(m.letter, m.index).function, m.value);
    }
    for (const auto& d : coeffs.detail) {
        const bool valid = !d.word.empty() && d.word.size() + 2 <= level && a.admissible(d.word) &&
                           d.letter < a.size() && a(d.word.back(), d.letter) && d.index >= 1 &&
                           d.index <= mw.count(d.letter);
        if (!valid) throw Error(ErrorKind::IndexOutOfRange, "detail coefficient index outside the level-" + std::to_string(level) + " basis");
        accumulate(wavelet(d.word, d.index, d.letter, mw), d.value);
    }
    return CylinderFunction(a, level, std::move(sum));
}

double basis_gram_residual(const MotherWaveletSet& mw, std::size_t level) {
    const std::vector<BasisLabel> labels = basis_labels(mw, level);
    const std::vector<double> mu = level_measures(mw.perron(), level);
    std::vector<CylinderFunction> functions;
    functions.reserve(labels.size());
    for (const auto& label : labels) functions.push_back(basis_function(label, mw).refine(level));
    double worst = 0.0;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        for (std::size_t j = i; j < functions.size(); ++j) {
            Complex g{};
            for (std::size_t t = 0; t < mu.size(); ++t) g += std::conj(functions[i][t]) * functions[j][t] * mu[t];
            worst = std::max(worst, std::abs(g - (i == j ? Complex(1.0) : Complex{})));
        }
    }
    return worst;
}

}  // namespace ckfractal
