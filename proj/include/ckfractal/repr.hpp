#pragma once

/**
 * @file repr.hpp
 * @brief Cuntz-Krieger representation of O_A on L^2(Lambda_A, mu_A).
 *
 * With the constant branch derivative N^-delta the generators act on cylinder
 * functions as
 *
 *   (S_i f)(i b)  = N^{delta/2} f(b)           (zero off R_i)
 *   (S_i* f)(b)   = N^{-delta/2} f(i b)        (b in D_i, zero elsewhere)
 *
 * and satisfy sum_i S_i S_i* = 1, S_i* S_i = sum_j A_ij S_j S_j*.
 */

#include <vector>

#include "ckfractal/core.hpp"
#include "ckfractal/spectral.hpp"

namespace ckfractal {

/// Finite union of level-k cylinders.
struct BorelSet {
    std::size_t level = 0;
    std::vector<Word> words;
};

/// Validates, sorts and deduplicates the cylinder words.
BorelSet make_borel_set(const AdmissibilityMatrix& a, std::size_t level, std::vector<Word> words);

/// phi(S_a S_b*) for the state defined by the Hausdorff measure.
struct StateValue {
    Word a;
    Word b;
    Complex value;
};

CylinderFunction apply_S(Digit i, const CylinderFunction& f, const PerronData& pd);
/// Inputs of level <= 1 are refined to level 2 first, so the result has level max(k-1, 1).
CylinderFunction apply_S_star(Digit i, const CylinderFunction& f, const PerronData& pd);
/// S_a = S_{a_1} ... S_{a_k}; with `adjoint` the product S_a* = S_{a_k}* ... S_{a_1}*.
CylinderFunction apply_S_word(const Word& a, const CylinderFunction& f, const PerronData& pd, bool adjoint);
/// P_k(a) = S_a S_a*.
CylinderFunction range_projection(const Word& a, const CylinderFunction& f, const PerronData& pd);

/// Composition with the shift, (T f)(x) = f(sigma(x)). Built by direct word
/// indexing, independently of the S_i.
CylinderFunction compose_shift(const CylinderFunction& f);

/// P_sigma = N^{-delta/2} sum_i S_i*.
CylinderFunction pf_operator(const CylinderFunction& f, const PerronData& pd);
/// sum_i omega_i chi_{R_i}.
CylinderFunction pf_fixed_point(const PerronData& pd);

/// Max L^2 residual of both Cuntz-Krieger relations over the basis e_w, w in W_{K,A}.
double ck_relations_residual(const PerronData& pd, std::size_t level);
/// Range projections P_k(a), 1 <= k <= K, tested on the level-K basis: each is
/// diagonal, idempotent, distinct words give orthogonal projections, and
/// sum_c P_k(a c) = P_{k-1}(a).
double projection_residual(const PerronData& pd, std::size_t level);
/// max |<T e_u, e_w> - <e_u, P_sigma e_w>| over level-K basis pairs.
double pf_adjoint_residual(const PerronData& pd, std::size_t level);

StateValue kms_state(const Word& a, const Word& b, const PerronData& pd);
/// phi(S_i* S_i) / phi(S_i S_i*); equals N^delta for the KMS state at beta = delta.
double kms_ratio(Digit i, const PerronData& pd);

struct SpectralMass {
    double value = 0.0;
    /// False when ||f|| differs from 1 by more than 1e-9.
    bool unit_norm = true;
};

/// mu_f(B) = <f, E(B) f>.
SpectralMass measure_mu_f(const CylinderFunction& f, const BorelSet& b, const PerronData& pd);
/// mu_f of every level-k cylinder, i.e. ||S_a* f||^2 for a in W_{k,A}.
std::vector<double> cylinder_masses(const CylinderFunction& f, std::size_t k, const PerronData& pd);

/// sum_{a in W_{k,A}} exp(i t x(a)) ||S_a* f||^2.
Complex fourier_approx(const CylinderFunction& f, double t, std::size_t k, const PerronData& pd);
/// 2 |t| N^-k: bound on |fourier_approx(k) - fourier_approx(k + m)| for unit f.
double fourier_tail_bound(double t, std::size_t k, std::size_t n);

}  // namespace ckfractal
