#include "ckfractal/repr.hpp"

#include <algorithm>
#include <cmath>

namespace ckfractal {

namespace {

void require_pd(const CylinderFunction& f, const PerronData& pd) {
    if (!(f.matrix() == pd.matrix)) throw Error(ErrorKind::MatrixMismatch, "function and eigen-data differ");
}

void require_digit(const AdmissibilityMatrix& a, Digit i) {
    if (i >= a.size()) throw Error(ErrorKind::IndexOutOfRange, "digit " + std::to_string(i) + " outside the alphabet");
}

double l2_of(std::span<const Complex> v, const std::vector<double>& mu) {
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) total += std::norm(v[i]) * mu[i];
    return std::sqrt(total);
}

Complex dot(std::span<const Complex> f, std::span<const Complex> g, const std::vector<double>& mu) {
    Complex total{};
    for (std::size_t i = 0; i < f.size(); ++i) total += std::conj(f[i]) * g[i] * mu[i];
    return total;
}

}  // namespace

BorelSet make_borel_set(const AdmissibilityMatrix& a, std::size_t level, std::vector<Word> words) {
    for (const Word& w : words) {
        if (w.size() != level || !a.admissible(w)) {
            throw Error(ErrorKind::InadmissibleWord, "Borel set words must be admissible of length " + std::to_string(level));
        }
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return BorelSet{level, std::move(words)};
}

CylinderFunction apply_S(Digit i, const CylinderFunction& f, const PerronData& pd) {
    require_pd(f, pd);
    const AdmissibilityMatrix& a = f.matrix();
    require_digit(a, i);
    const double scale = pd.half_scale();
    const std::size_t k = f.level();
    std::vector<Complex> out(a.word_count(k + 1), Complex{});
    if (k == 0) {
        out[i] = scale * f[0];
        return CylinderFunction(a, 1, std::move(out));
    }
    // Words i b of level k+1 form one block, ordered by b's first digit.
    std::size_t dst = a.block_offset(i, k + 1);
    for (Digit c = 0; c < a.size(); ++c) {
        if (!a(i, c)) continue;
        const std::size_t len = a.completions(c, k);
        const std::size_t src = a.block_offset(c, k);
        for (std::size_t t = 0; t < len; ++t) out[dst + t] = scale * f[src + t];
        dst += len;
    }
    return CylinderFunction(a, k + 1, std::move(out));
}

CylinderFunction apply_S_star(Digit i, const CylinderFunction& f, const PerronData& pd) {
    require_pd(f, pd);
    const AdmissibilityMatrix& a = f.matrix();
    require_digit(a, i);
    const CylinderFunction g = f.level() < 2 ? f.refine(2) : f;
    const std::size_t k = g.level();
    const double scale = 1.0 / pd.half_scale();
    std::vector<Complex> out(a.word_count(k - 1), Complex{});
    std::size_t src = a.block_offset(i, k);
    for (Digit c = 0; c < a.size(); ++c) {
        if (!a(i, c)) continue;
        const std::size_t len = a.completions(c, k - 1);
        const std::size_t dst = a.block_offset(c, k - 1);
        for (std::size_t t = 0; t < len; ++t) out[dst + t] = scale * g[src + t];
        src += len;
    }
    return CylinderFunction(a, k - 1, std::move(out));
}

CylinderFunction apply_S_word(const Word& w, const CylinderFunction& f, const PerronData& pd, bool adjoint) {
    if (!f.matrix().admissible(w)) throw Error(ErrorKind::InadmissibleWord, "word is not admissible");
    CylinderFunction g = f;
    if (adjoint) {
        for (Digit d : w) g = apply_S_star(d, g, pd);
    } else {
        for (auto it = w.digits().rbegin(); it != w.digits().rend(); ++it) g = apply_S(*it, g, pd);
    }
    return g;
}

CylinderFunction range_projection(const Word& w, const CylinderFunction& f, const PerronData& pd) {
    return apply_S_word(w, apply_S_word(w, f, pd, true), pd, false);
}

CylinderFunction compose_shift(const CylinderFunction& f) {
    const AdmissibilityMatrix& a = f.matrix();
    const std::size_t k = f.level() + 1;
    std::vector<Complex> out;
    out.reserve(a.word_count(k));
    for (const Word& w : enumerate_words(a, k)) out.push_back(f.at(shift(w)));
    return CylinderFunction(a, k, std::move(out));
}

CylinderFunction pf_operator(const CylinderFunction& f, const PerronData& pd) {
    require_pd(f, pd);
    const double scale = 1.0 / pd.half_scale();
    std::vector<Complex> sum;
    std::size_t level = 0;
    for (Digit i = 0; i < pd.size(); ++i) {
        const CylinderFunction term = apply_S_star(i, f, pd);
        if (sum.empty()) {
            sum.assign(term.coeffs().begin(), term.coeffs().end());
            level = term.level();
        } else {
            for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += term[t];
        }
    }
    for (auto& c : sum) c *= scale;
    return CylinderFunction(f.matrix(), level, std::move(sum));
}

CylinderFunction pf_fixed_point(const PerronData& pd) {
    std::vector<Complex> coeffs(pd.omega.begin(), pd.omega.end());
    return CylinderFunction(pd.matrix, 1, std::move(coeffs));
}

double ck_relations_residual(const PerronData& pd, std::size_t level) {
    const AdmissibilityMatrix& a = pd.matrix;
    const std::size_t n = a.size();
    double worst = 0.0;
    for (std::size_t idx = 0; idx < a.word_count(level); ++idx) {
        const CylinderFunction e = CylinderFunction::basis(a, level, idx);

        // range projections S_j S_j* e, reused by both relations
        std::vector<CylinderFunction> ranges;
        ranges.reserve(n);
        for (Digit j = 0; j < n; ++j) {
            ranges.push_back(apply_S(j, apply_S_star(j, e, pd), pd).refine(std::max<std::size_t>(level, 2)));
        }

        const std::size_t top = ranges.front().level();
        const std::vector<double> mu_top = level_measures(pd, top);
        std::vector<Complex> cuntz(ranges.front().size(), Complex{});
        for (const auto& r : ranges) {
            for (std::size_t t = 0; t < cuntz.size(); ++t) cuntz[t] += r[t];
        }
        const CylinderFunction e_top = e.refine(top);
        for (std::size_t t = 0; t < cuntz.size(); ++t) cuntz[t] -= e_top[t];
        worst = std::max(worst, l2_of(cuntz, mu_top));

        for (Digit i = 0; i < n; ++i) {
            const CylinderFunction lhs = apply_S_star(i, apply_S(i, e, pd), pd).refine(top);
            std::vector<Complex> diff(lhs.coeffs().begin(), lhs.coeffs().end());
            for (Digit j = 0; j < n; ++j) {
                if (!a(i, j)) continue;
                for (std::size_t t = 0; t < diff.size(); ++t) diff[t] -= ranges[j][t];
            }
            worst = std::max(worst, l2_of(diff, mu_top));
        }
    }
    return worst;
}

double projection_residual(const PerronData& pd, std::size_t level) {
    const AdmissibilityMatrix& a = pd.matrix;
    const std::size_t count = a.word_count(level);
    // P_k(a) with k = level lands one level finer, so compare at level + 1.
    const std::size_t fine = level + 1;
    std::vector<std::size_t> parent_of;
    parent_of.reserve(a.word_count(fine));
    {
        std::size_t w = 0;
        for (const Word& u : enumerate_words(a, level)) {
            parent_of.insert(parent_of.end(), a.completions(u.back(), 2), w++);
        }
    }
    double worst = 0.0;
    // diag[k][a][w] holds the diagonal entry of P_k(a) at basis word w.
    std::vector<std::vector<std::vector<double>>> diag(level + 1);
    diag[0].assign(1, std::vector<double>(count, 1.0));
    for (std::size_t k = 1; k <= level; ++k) {
        const std::vector<Word> words = enumerate_words(a, k);
        diag[k].assign(words.size(), std::vector<double>(count, 0.0));
        for (std::size_t ai = 0; ai < words.size(); ++ai) {
            for (std::size_t w = 0; w < count; ++w) {
                const CylinderFunction e = CylinderFunction::basis(a, level, w);
                const CylinderFunction back = apply_S_word(words[ai], e, pd, true);
                if (std::all_of(back.coeffs().begin(), back.coeffs().end(), [](Complex z) { return z == Complex{}; })) {
                    continue;  // P(a) e_w = 0, diag entry stays 0
                }
                const CylinderFunction pe = apply_S_word(words[ai], back, pd, false).refine(fine);
                const CylinderFunction ppe = range_projection(words[ai], pe, pd).refine(fine);
                bool first = true;
                for (std::size_t t = 0; t < pe.size(); ++t) {
                    worst = std::max(worst, std::abs(ppe[t] - pe[t]));  // idempotent
                    if (parent_of[t] != w) {
                        worst = std::max(worst, std::abs(pe[t]));  // diagonal
                    } else if (first) {
                        diag[k][ai][w] = pe[t].real();
                        worst = std::max(worst, std::abs(pe[t].imag()));
                        first = false;
                    } else {
                        worst = std::max(worst, std::abs(pe[t] - diag[k][ai][w]));  // constant on e_w's cylinder
                    }
                }
            }
        }
        // Orthogonality of distinct words: at each basis word, at most one
        // projection of level k may be non-zero.
        for (std::size_t w = 0; w < count; ++w) {
            double total = 0.0;
            double largest = 0.0;
            for (const auto& d : diag[k]) {
                total += std::abs(d[w]);
                largest = std::max(largest, std::abs(d[w]));
            }
            worst = std::max(worst, largest * (total - largest));
        }
        // Nesting: sum_c P_k(a' c) = P_{k-1}(a').
        const std::size_t parents = a.word_count(k - 1);
        std::vector<std::vector<double>> sums(parents, std::vector<double>(count, 0.0));
        for (std::size_t ai = 0; ai < words.size(); ++ai) {
            const std::size_t parent = k == 1 ? 0 : a.index_of(words[ai].prefix(k - 1));
            for (std::size_t w = 0; w < count; ++w) sums[parent][w] += diag[k][ai][w];
        }
        for (std::size_t pi = 0; pi < parents; ++pi) {
            for (std::size_t w = 0; w < count; ++w) {
                worst = std::max(worst, std::abs(sums[pi][w] - diag[k - 1][pi][w]));
            }
        }
    }
    return worst;
}

double pf_adjoint_residual(const PerronData& pd, std::size_t level) {
    const AdmissibilityMatrix& a = pd.matrix;
    const std::size_t count = a.word_count(level);
    const std::size_t fine = level + 1;
    const std::size_t coarse = std::max<std::size_t>(level, 1);
    const std::vector<double> mu_fine = level_measures(pd, fine);
    const std::vector<double> mu_coarse = level_measures(pd, coarse);

    std::vector<CylinderFunction> shifted, basis_fine, pf_images, basis_coarse;
    for (std::size_t u = 0; u < count; ++u) {
        const CylinderFunction e = CylinderFunction::basis(a, level, u);
        shifted.push_back(compose_shift(e));
        basis_fine.push_back(e.refine(fine));
        pf_images.push_back(pf_operator(e, pd).refine(coarse));
        basis_coarse.push_back(e.refine(coarse));
    }
    double worst = 0.0;
    for (std::size_t u = 0; u < count; ++u) {
        for (std::size_t w = 0; w < count; ++w) {
            const Complex lhs = dot(shifted[u].coeffs(), basis_fine[w].coeffs(), mu_fine);
            const Complex rhs = dot(basis_coarse[u].coeffs(), pf_images[w].coeffs(), mu_coarse);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

StateValue kms_state(const Word& a, const Word& b, const PerronData& pd) {
    if (!pd.matrix.admissible(a) || !pd.matrix.admissible(b)) {
        throw Error(ErrorKind::InadmissibleWord, "state arguments must be admissible words");
    }
    const Complex value = a == b ? Complex(cylinder_measure(pd, a)) : Complex{};
    return StateValue{a, b, value};
}

double kms_ratio(Digit i, const PerronData& pd) {
    require_digit(pd.matrix, i);
    // phi(S_i* S_i) = sum_j A_ij phi(S_j S_j*) by the second Cuntz-Krieger relation.
    double lhs = 0.0;
    for (Digit j = 0; j < pd.size(); ++j) {
        if (pd.matrix(i, j)) lhs += kms_state(Word{j}, Word{j}, pd).value.real();
    }
    return lhs / kms_state(Word{i}, Word{i}, pd).value.real();
}

std::vector<double> cylinder_masses(const CylinderFunction& f, std::size_t k, const PerronData& pd) {
    require_pd(f, pd);
    const AdmissibilityMatrix& a = f.matrix();
    const std::size_t m = std::max(f.level(), k);
    const CylinderFunction g = f.refine(m);
    const std::vector<double> mu = level_measures(pd, m);
    std::vector<double> masses(a.word_count(k), 0.0);
    if (k == 0) {
        for (std::size_t t = 0; t < mu.size(); ++t) masses[0] += std::norm(g[t]) * mu[t];
        return masses;
    }
    // Level-m words extending a level-k prefix u are contiguous.
    std::size_t t = 0;
    std::size_t ui = 0;
    for (const Word& u : enumerate_words(a, k)) {
        const std::size_t len = a.completions(u.back(), m - k + 1);
        double total = 0.0;
        for (std::size_t s = 0; s < len; ++s, ++t) total += std::norm(g[t]) * mu[t];
        masses[ui++] = total;
    }
    return masses;
}

SpectralMass measure_mu_f(const CylinderFunction& f, const BorelSet& b, const PerronData& pd) {
    require_pd(f, pd);
    const std::vector<double> masses = cylinder_masses(f, b.level, pd);
    double total = 0.0;
    for (const Word& w : b.words) total += masses[b.level == 0 ? 0 : f.matrix().index_of(w)];
    return SpectralMass{total, std::abs(norm(f, pd) - 1.0) <= 1e-9};
}

Complex fourier_approx(const CylinderFunction& f, double t, std::size_t k, const PerronData& pd) {
    const std::vector<double> masses = cylinder_masses(f, k, pd);
    const std::vector<Word> words = enumerate_words(f.matrix(), k);
    Complex total{};
    for (std::size_t i = 0; i < words.size(); ++i) {
        const double x = nadic_value(f.matrix(), words[i]).value;
        total += std::polar(1.0, t * x) * masses[i];
    }
    return total;
}

double fourier_tail_bound(double t, std::size_t k, std::size_t n) {
    return 2.0 * std::abs(t) * std::pow(static_cast<double>(n), -static_cast<double>(k));
}

}  // namespace ckfractal
