#pragma once

/**
 * @file wavelets.hpp
 * @brief Orthonormal Haar-type wavelets on Lambda_A.
 *
 * The basis of the level-K cylinder space is
 *
 *   scaling   p_i^{-1/2} chi_{R_i}                 (N functions, level 1)
 *   mother    f^{l,k} = sum_j A_kj c^{l,k}_j chi_{R_kj}, l = 1..d_k-1   (level 2)
 *   detail    psi^{l,r}_a = S_a f^{l,r}, 1 <= |a| <= K-2, A(a_last, r) = 1
 *
 * where c^{l,k} is an orthonormal basis of the complement of (1,...,1) in the
 * inner product <v,w>_k = sum_j A_kj conj(v_j) w_j p_j.
 */

#include <span>
#include <vector>

#include "ckfractal/core.hpp"
#include "ckfractal/spectral.hpp"

namespace ckfractal {

using CoefficientVector = std::vector<Complex>;

/// Modified Gram-Schmidt in sum_{j in support} conj(v_j) w_j weights_j: the
/// normalized all-ones vector first, then e_j for ascending j in the support.
/// Returns |support| - 1 vectors of length weights.size(), zero off the
/// support, orthonormal and orthogonal to the all-ones vector.
std::vector<CoefficientVector> weighted_complement_basis(std::span<const double> weights, std::span<const Digit> support);

struct MotherWavelet {
    Digit letter = 0;
    /// 1-based level index l.
    std::size_t index = 1;
    CoefficientVector coeffs;
    /// Unit-norm level-2 function supported in R_letter.
    CylinderFunction function;
};

class MotherWaveletSet {
public:
    explicit MotherWaveletSet(const PerronData& pd);

    const PerronData& perron() const noexcept { return pd_; }
    const AdmissibilityMatrix& matrix() const noexcept { return pd_.matrix; }
    /// d_k - 1.
    std::size_t count(Digit letter) const;
    std::size_t total_count() const noexcept { return wavelets_.size(); }
    const MotherWavelet& get(Digit letter, std::size_t index) const;
    std::span<const MotherWavelet> all() const noexcept { return wavelets_; }

private:
    PerronData pd_;
    std::vector<MotherWavelet> wavelets_;
    std::vector<std::size_t> first_;  // offset of each letter in wavelets_
};

MotherWaveletSet build_mother_wavelets(const PerronData& pd);

/// psi^{l,r}_a = S_a f^{l,r}; throws NotComposable when A(a_last, r) = 0.
CylinderFunction wavelet(const Word& a, std::size_t index, Digit letter, const MotherWaveletSet& mw);

struct BasisLabel {
    enum class Kind { Scaling, Mother, Detail };
    Kind kind = Kind::Scaling;
    Word word;       // translation word a (detail only)
    Digit letter = 0;
    std::size_t index = 0;  // l (mother and detail)
};

/// Canonical order: scaling by letter, mother by (letter, l), detail by
/// (|a|, a, r, l).
std::vector<BasisLabel> basis_labels(const MotherWaveletSet& mw, std::size_t level);
CylinderFunction basis_function(const BasisLabel& label, const MotherWaveletSet& mw);

struct MotherCoefficient {
    Digit letter = 0;
    std::size_t index = 1;
    Complex value;
};

struct DetailCoefficient {
    Word word;
    std::size_t index = 1;
    Digit letter = 0;
    Complex value;
};

struct WaveletCoefficients {
    std::size_t n = 0;
    std::size_t level = 0;
    std::vector<Complex> scaling;
    std::vector<MotherCoefficient> mother;
    std::vector<DetailCoefficient> detail;

    /// Sum of squared magnitudes; equals ||f||^2 by Parseval.
    double energy() const;
};

WaveletCoefficients analyze(const CylinderFunction& f, const MotherWaveletSet& mw);
CylinderFunction synthesize(const WaveletCoefficients& coeffs, const MotherWaveletSet& mw, std::size_t level);

/// max |G - I| for the Gram matrix of the full level-K basis.
double basis_gram_residual(const MotherWaveletSet& mw, std::size_t level);

}  // namespace ckfractal
