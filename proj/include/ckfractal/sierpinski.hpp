#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "ckfractal/core.hpp"

namespace ckfractal {

/// Planar set S_A of points (x, y) whose N-adic digits satisfy A(x_m, y_m) = 1
/// at every position.
struct SierpinskiSpec {
    AdmissibilityMatrix matrix;
    /// D = sum_i d_i, the number of allowed digit pairs.
    std::size_t D = 0;
    /// log D / (2 log N).
    double planar_dimension = 0.0;
    /// log D / log N.
    double similarity_dimension = 0.0;
    /// Allowed pairs (i, j) in row-major order; the pair's position is its letter.
    std::vector<std::pair<Digit, Digit>> letter_map;

    std::size_t letter_of(Digit i, Digit j) const;
};

/// Depth-k square [x(xword), x(xword) + N^-k] x [x(yword), x(yword) + N^-k].
struct SierpinskiCell {
    Word xword;
    Word yword;

    bool operator==(const SierpinskiCell&) const = default;
    auto operator<=>(const SierpinskiCell&) const = default;
};

inline constexpr std::size_t kDefaultCap = 200000;

SierpinskiSpec sierpinski_spec(const AdmissibilityMatrix& a);

/// A(x_m, y_m) = 1 for every m, and both words have the same length.
bool is_valid_cell(const SierpinskiSpec& spec, const SierpinskiCell& cell);

/// All D^k surviving depth-k cells, lexicographic in the pair letters.
std::vector<SierpinskiCell> cells(const SierpinskiSpec& spec, std::size_t depth, std::size_t cap = kDefaultCap);

/// D x D matrix over pair letters: (i,j) -> (l,k) allowed iff j = l and A(j,k) = 1.
AdmissibilityMatrix induced_matrix(const SierpinskiSpec& spec);

/// Xi(w) = (w_0..w_{k-2}, w_1..w_{k-1}), i.e. (x, sigma(x)) truncated.
SierpinskiCell embed_xi(const AdmissibilityMatrix& a, const Word& w);

/// Grayscale raster, row 0 at the top. Dark pixels (0) lie in surviving cells.
struct Raster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t dark_count() const;
};

inline constexpr std::size_t kMaxPixels = std::size_t{1} << 24;

/// Pixel (px, py) belongs to cell (px N^k / res, py N^k / res), with y pointing up.
Raster render(const SierpinskiSpec& spec, std::size_t depth, std::size_t resolution);
/// Plain-text PGM: "P2\nW H\n255\n" followed by one row per line.
void write_pgm(std::ostream& os, const Raster& raster);

/// The all-ones D x D strict matrix carrying the O_D calculus on pair words.
AdmissibilityMatrix sierpinski_cuntz_rep(const SierpinskiSpec& spec);

}  // namespace ckfractal
