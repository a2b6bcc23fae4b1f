#include "ckfractal/ruelle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ckfractal/repr.hpp"

namespace ckfractal {

namespace {

void require_potential(const CylinderFunction& w) {
    for (Complex c : w.coeffs()) {
        if (c.imag() != 0.0 || c.real() < 0.0) throw Error(ErrorKind::NegativePotential, "potential must be real and non-negative");
    }
}

void require_point(const AdmissibilityMatrix& a, const Point& x) {
    if (x.word.empty()) throw Error(ErrorKind::EmptyWord, "point needs at least one digit");
    if (!a.admissible(x.word)) throw Error(ErrorKind::InadmissibleWord, "point word is not admissible");
}

// Sum over all A^t-paths of length 1..kmax of the running W products; layer[k]
// accumulates paths of length k.
void accumulate_layers(const Point& y, double weight, std::size_t depth, std::size_t kmax, const PointwisePotential& w,
                       const AdmissibilityMatrix& a, std::vector<double>& layer) {
    if (depth == kmax) return;
    for (Digit j = 0; j < a.size(); ++j) {
        if (!a(j, y.word.front())) continue;
        const Point next = branch(a, j, y);
        const double product = weight * w(next);
        layer[depth + 1] += product;
        accumulate_layers(next, product, depth + 1, kmax, w, a, layer);
    }
}

}  // namespace

CylinderFunction ruelle_apply(const CylinderFunction& w, const CylinderFunction& f, const PerronData& pd) {
    require_same_matrix(w, f);
    if (!(f.matrix() == pd.matrix)) throw Error(ErrorKind::MatrixMismatch, "function and eigen-data differ");
    require_potential(w);
    const AdmissibilityMatrix& a = f.matrix();
    const std::size_t m = std::max({w.level(), f.level(), std::size_t{2}});
    const CylinderFunction wr = w.refine(m);
    const CylinderFunction fr = f.refine(m);
    std::vector<Complex> out(a.word_count(m - 1), Complex{});
    // Preimages i b of b: the i-block of level m, split by b's first digit.
    for (Digit i = 0; i < a.size(); ++i) {
        std::size_t src = a.block_offset(i, m);
        for (Digit c = 0; c < a.size(); ++c) {
            if (!a(i, c)) continue;
            const std::size_t len = a.completions(c, m - 1);
            const std::size_t dst = a.block_offset(c, m - 1);
            for (std::size_t t = 0; t < len; ++t) out[dst + t] += wr[src + t] * fr[src + t];
            src += len;
        }
    }
    return CylinderFunction(a, m - 1, std::move(out));
}

CylinderFunction weighted_composition(const CylinderFunction& w, const CylinderFunction& f, const PerronData& pd) {
    require_potential(w);
    const double scale = std::pow(static_cast<double>(pd.size()), pd.delta);
    return Complex(scale) * multiply(w, compose_shift(f));
}

double ruelle_adjoint_residual(const CylinderFunction& w, const PerronData& pd, std::size_t level) {
    const AdmissibilityMatrix& a = pd.matrix;
    const std::size_t count = a.word_count(level);
    std::vector<CylinderFunction> basis, forward, backward;
    for (std::size_t u = 0; u < count; ++u) {
        basis.push_back(CylinderFunction::basis(a, level, u));
        forward.push_back(weighted_composition(w, basis.back(), pd));
        backward.push_back(ruelle_apply(w, basis.back(), pd));
    }
    double worst = 0.0;
    for (std::size_t u = 0; u < count; ++u) {
        for (std::size_t v = 0; v < count; ++v) {
            const Complex lhs = inner_product(forward[u], basis[v], pd);
            const Complex rhs = inner_product(basis[u], backward[v], pd);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double keane_residual(const CylinderFunction& w, const PerronData& pd) {
    const CylinderFunction one = CylinderFunction::constant(w.matrix(), 1.0);
    const CylinderFunction image = ruelle_apply(w, one, pd);
    double worst = 0.0;
    for (Complex c : image.coeffs()) worst = std::max(worst, std::abs(c - 1.0));
    return worst;
}

double pointwise_keane_residual(const PointwisePotential& w, const AdmissibilityMatrix& a, const Point& x) {
    require_point(a, x);
    double total = 0.0;
    for (Digit j = 0; j < a.size(); ++j) {
        if (a(j, x.word.front())) total += w(branch(a, j, x));
    }
    return std::abs(total - 1.0);
}

PointwisePotential trig_potential_pointwise(const AdmissibilityMatrix& a) {
    return [a](const Point& y) {
        if (y.word.size() < 2) throw Error(ErrorKind::WordTooShort, "trigonometric potential needs two digits");
        const double n1 = static_cast<double>(a.in_degree(y.word[1]));
        const double n = static_cast<double>(a.size());
        return (1.0 - std::cos(2.0 * std::numbers::pi * n * y.value / n1)) / n1;
    };
}

PointwisePotential uniform_keane_potential(const AdmissibilityMatrix& a) {
    return [a](const Point& y) {
        if (y.word.size() < 2) throw Error(ErrorKind::WordTooShort, "preimage-uniform potential needs two digits");
        return 1.0 / static_cast<double>(a.in_degree(y.word[1]));
    };
}

CylinderFunction sample_potential(const PointwisePotential& w, const AdmissibilityMatrix& a, std::size_t level) {
    std::vector<Complex> values;
    values.reserve(a.word_count(level));
    for (const Word& word : enumerate_words(a, level)) {
        const double v = w(nadic_value(a, word));
        if (v < 0.0) throw Error(ErrorKind::NegativePotential, "potential sample is negative");
        values.emplace_back(v);
    }
    return CylinderFunction(a, level, std::move(values));
}

TrigPotential trig_potential(const PerronData& pd, std::size_t sample_level) {
    PointwisePotential w = trig_potential_pointwise(pd.matrix);
    CylinderFunction sampled = sample_potential(w, pd.matrix, std::max<std::size_t>(sample_level, 2));
    return TrigPotential{std::move(w), std::move(sampled)};
}

Complex trig_root_sum(const AdmissibilityMatrix& a, const Point& x) {
    require_point(a, x);
    const double n = static_cast<double>(a.size());
    const double n1 = static_cast<double>(a.in_degree(x.word.front()));
    Complex total{};
    for (Digit j = 0; j < a.size(); ++j) {
        if (!a(j, x.word.front())) continue;
        const double image = (x.value + j) / n;
        total += std::polar(1.0, 2.0 * std::numbers::pi * n * image / n1);
    }
    return total;
}

bool trig_potential_is_keane(const AdmissibilityMatrix& a) {
    for (Digit c = 0; c < a.size(); ++c) {
        const std::size_t n1 = a.in_degree(c);
        std::vector<bool> seen(n1, false);
        for (Digit j = 0; j < a.size(); ++j) {
            if (!a(j, c)) continue;
            if (seen[j % n1]) return false;
            seen[j % n1] = true;
        }
    }
    return true;
}

double walk_measure(const Point& x, const PointwisePotential& w, const Word& path, const AdmissibilityMatrix& a) {
    require_point(a, x);
    if (path.empty() || !a.admissible_transposed(path)) {
        throw Error(ErrorKind::InadmissibleWord, "walk path must be a non-empty word admissible for the transpose");
    }
    if (!a(path.front(), x.word.front())) return 0.0;
    Point y = x;
    double product = 1.0;
    for (Digit d : path) {
        y = branch(a, d, y);
        product *= w(y);
    }
    return product;
}

std::vector<Word> enumerate_transposed_words(const AdmissibilityMatrix& a, std::size_t k) {
    std::vector<Word> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<Digit> current;
    std::function<void()> extend = [&]() {
        if (current.size() == k) {
            out.emplace_back(current);
            return;
        }
        for (Digit c = 0; c < a.size(); ++c) {
            if (!current.empty() && !a(c, current.back())) continue;
            current.push_back(c);
            extend();
            current.pop_back();
        }
    };
    extend();
    return out;
}

std::vector<std::pair<Word, double>> walk_distribution(const Point& x, const PointwisePotential& w,
                                                       const AdmissibilityMatrix& a, std::size_t k) {
    std::vector<std::pair<Word, double>> out;
    for (Word& path : enumerate_transposed_words(a, k)) {
        const double p = walk_measure(x, w, path, a);
        out.emplace_back(std::move(path), p);
    }
    return out;
}

double walk_additivity_residual(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a,
                                std::size_t depth) {
    double worst = 0.0;
    for (std::size_t m = 1; m < depth; ++m) {
        for (const Word& path : enumerate_transposed_words(a, m)) {
            double children = 0.0;
            for (Digit j = 0; j < a.size(); ++j) {
                if (a(j, path.back())) children += walk_measure(x, w, path.append(j), a);
            }
            worst = std::max(worst, std::abs(walk_measure(x, w, path, a) - children));
        }
    }
    return worst;
}

double walk_layer_mass(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a, std::size_t k) {
    require_point(a, x);
    std::vector<double> layer(k + 1, 0.0);
    accumulate_layers(x, 1.0, 0, k, w, a, layer);
    return layer[k];
}

double harmonic_truncated(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a, std::size_t kmax) {
    require_point(a, x);
    std::vector<double> layer(kmax + 1, 0.0);
    accumulate_layers(x, 1.0, 0, kmax, w, a, layer);
    double total = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) total += layer[k];
    return total;
}

double harmonic_reindex_residual(const Point& x, const PointwisePotential& w, const AdmissibilityMatrix& a,
                                 std::size_t kmax) {
    require_point(a, x);
    if (kmax == 0) throw Error(ErrorKind::LevelTooLow, "truncation order must be at least 1");
    double transported = 0.0;
    for (Digit j = 0; j < a.size(); ++j) {
        if (!a(j, x.word.front())) continue;
        const Point y = branch(a, j, x);
        const double h = kmax > 1 ? harmonic_truncated(y, w, a, kmax - 1) : 0.0;
        transported += w(y) * h;
    }
    const double expected = harmonic_truncated(x, w, a, kmax) - walk_layer_mass(x, w, a, 1);
    return std::abs(transported - expected);
}

}  // namespace ckfractal
