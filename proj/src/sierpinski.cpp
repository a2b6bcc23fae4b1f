#include "ckfractal/sierpinski.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace ckfractal {

namespace {

// base^exp, or 0 when it does not fit in 62 bits.
std::uint64_t checked_power(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    for (std::size_t m = 0; m < exp; ++m) {
        if (out > (std::uint64_t{1} << 62) / base) return 0;
        out *= base;
    }
    return out;
}

}  // namespace

std::size_t SierpinskiSpec::letter_of(Digit i, Digit j) const {
    for (std::size_t t = 0; t < letter_map.size(); ++t) {
        if (letter_map[t].first == i && letter_map[t].second == j) return t;
    }
    throw Error(ErrorKind::IndexOutOfRange, "pair (" + std::to_string(i) + "," + std::to_string(j) + ") is not allowed");
}

SierpinskiSpec sierpinski_spec(const AdmissibilityMatrix& a) {
    SierpinskiSpec spec{a, 0, 0.0, 0.0, {}};
    for (Digit i = 0; i < a.size(); ++i) {
        for (Digit j = 0; j < a.size(); ++j) {
            if (a(i, j)) spec.letter_map.emplace_back(i, j);
        }
    }
    spec.D = spec.letter_map.size();
    const double logn = std::log(static_cast<double>(a.size()));
    const double logd = std::log(static_cast<double>(spec.D));
    // N = 1 leaves the single point (0,0) at every depth.
    spec.planar_dimension = a.size() > 1 ? logd / (2.0 * logn) : 0.0;
    spec.similarity_dimension = a.size() > 1 ? logd / logn : 0.0;
    return spec;
}

bool is_valid_cell(const SierpinskiSpec& spec, const SierpinskiCell& cell) {
    if (cell.xword.size() != cell.yword.size()) return false;
    const std::size_t n = spec.matrix.size();
    for (std::size_t m = 0; m < cell.xword.size(); ++m) {
        if (cell.xword[m] >= n || cell.yword[m] >= n) return false;
        if (!spec.matrix(cell.xword[m], cell.yword[m])) return false;
    }
    return true;
}

std::vector<SierpinskiCell> cells(const SierpinskiSpec& spec, std::size_t depth, std::size_t cap) {
    if (depth == 0) throw Error(ErrorKind::LevelTooLow, "depth must be at least 1");
    std::size_t total = 1;
    for (std::size_t m = 0; m < depth; ++m) {
        if (total > cap / spec.D) {
            throw Error(ErrorKind::CapExceeded, "D^" + std::to_string(depth) + " cells exceed the cap of " + std::to_string(cap));
        }
        total *= spec.D;
    }
    std::vector<SierpinskiCell> out;
    out.reserve(total);
    std::vector<std::size_t> letters(depth, 0);
    for (std::size_t t = 0; t < total; ++t) {
        std::vector<Digit> xs(depth), ys(depth);
        for (std::size_t m = 0; m < depth; ++m) {
            xs[m] = spec.letter_map[letters[m]].first;
            ys[m] = spec.letter_map[letters[m]].second;
        }
        out.push_back(SierpinskiCell{Word(std::move(xs)), Word(std::move(ys))});
        for (std::size_t m = depth; m-- > 0;) {
            if (++letters[m] < spec.D) break;
            letters[m] = 0;
        }
    }
    return out;
}

AdmissibilityMatrix induced_matrix(const SierpinskiSpec& spec) {
    const std::size_t d = spec.D;
    std::vector<std::vector<int>> raw(d, std::vector<int>(d, 0));
    for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t t = 0; t < d; ++t) {
            const auto [i, j] = spec.letter_map[s];
            const auto [l, k] = spec.letter_map[t];
            (void)i;
            raw[s][t] = (j == l && spec.matrix(j, k)) ? 1 : 0;
        }
    }
    return AdmissibilityMatrix::validate(raw, false);
}

SierpinskiCell embed_xi(const AdmissibilityMatrix& a, const Word& w) {
    if (w.size() < 2) throw Error(ErrorKind::WordTooShort, "embedding needs a word of length at least 2");
    if (!a.admissible(w)) throw Error(ErrorKind::InadmissibleWord, "word is not admissible");
    std::vector<Digit> xs(w.begin(), w.end() - 1);
    std::vector<Digit> ys(w.begin() + 1, w.end());
    return SierpinskiCell{Word(std::move(xs)), Word(std::move(ys))};
}

std::size_t Raster::dark_count() const {
    std::size_t count = 0;
    for (std::uint8_t v : pixels) count += v == 0 ? 1 : 0;
    return count;
}

Raster render(const SierpinskiSpec& spec, std::size_t depth, std::size_t resolution) {
    if (resolution == 0) throw Error(ErrorKind::Usage, "resolution must be positive");
    if (resolution > kMaxPixels / resolution) {
        throw Error(ErrorKind::CapExceeded, "raster of " + std::to_string(resolution) + "^2 pixels is too large");
    }
    const std::uint64_t n = spec.matrix.size();
    const std::uint64_t cells_per_side = checked_power(n, depth);
    if (cells_per_side == 0 || cells_per_side > (std::uint64_t{1} << 62) / resolution) {
        throw Error(ErrorKind::CapExceeded, "depth " + std::to_string(depth) + " is too fine to index");
    }

    // Per column (and row) the digit string of the cell coordinate.
    std::vector<std::vector<Digit>> digits(resolution, std::vector<Digit>(depth));
    for (std::size_t px = 0; px < resolution; ++px) {
        std::uint64_t c = px * cells_per_side / resolution;
        for (std::size_t m = depth; m-- > 0;) {
            digits[px][m] = static_cast<Digit>(c % n);
            c /= n;
        }
    }

    Raster out{resolution, resolution, std::vector<std::uint8_t>(resolution * resolution, 255)};
    for (std::size_t py = 0; py < resolution; ++py) {
        const std::size_t row = resolution - 1 - py;
        for (std::size_t px = 0; px < resolution; ++px) {
            bool alive = true;
            for (std::size_t m = 0; m < depth && alive; ++m) alive = spec.matrix(digits[px][m], digits[py][m]);
            if (alive) out.pixels[row * resolution + px] = 0;
        }
    }
    return out;
}

void write_pgm(std::ostream& os, const Raster& raster) {
    os << "P2\n" << raster.width << ' ' << raster.height << "\n255\n";
    for (std::size_t r = 0; r < raster.height; ++r) {
        for (std::size_t c = 0; c < raster.width; ++c) {
            if (c) os << ' ';
            os << static_cast<int>(raster.pixels[r * raster.width + c]);
        }
        os << '\n';
    }
}

AdmissibilityMatrix sierpinski_cuntz_rep(const SierpinskiSpec& spec) {
    return AdmissibilityMatrix::validate(std::vector<std::vector<int>>(spec.D, std::vector<int>(spec.D, 1)), true);
}

}  // namespace ckfractal
