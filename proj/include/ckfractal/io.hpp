#pragma once

/**
 * @file io.hpp
 * @brief Plain-text formats.
 *
 *   matrix        "N" then N rows of N 0/1 tokens
 *   signal        "N k" then one "word re im" line per word of W_{k,A}
 *   coefficients  "N K" then "S i re im", "M k l re im", "D word l r re im"
 *   graph         "V E" then E lines "s r"
 *
 * Words are written digit by digit for N <= 10 and ':'-separated otherwise;
 * the empty word is "-". Lines starting with '#' are ignored on input.
 */

#include <iosfwd>
#include <string>
#include <vector>

#include "ckfractal/core.hpp"
#include "ckfractal/graph.hpp"
#include "ckfractal/wavelets.hpp"

namespace ckfractal {

/// printf("%.15g"), with negative zero printed as 0.
std::string format_number(double x);

std::string word_to_string(const Word& w, std::size_t n);
Word parse_word(const std::string& text, std::size_t n);

std::vector<std::vector<int>> read_matrix(std::istream& is);
void write_matrix(std::ostream& os, const AdmissibilityMatrix& a);

CylinderFunction read_signal(std::istream& is, const AdmissibilityMatrix& a);
void write_signal(std::ostream& os, const CylinderFunction& f);

WaveletCoefficients read_coefficients(std::istream& is);
void write_coefficients(std::ostream& os, const WaveletCoefficients& c);

DirectedGraph read_graph(std::istream& is);
void write_graph(std::ostream& os, const DirectedGraph& g);

std::vector<std::vector<int>> load_matrix(const std::string& path);
CylinderFunction load_signal(const std::string& path, const AdmissibilityMatrix& a);
WaveletCoefficients load_coefficients(const std::string& path);
DirectedGraph load_graph(const std::string& path);

}  // namespace ckfractal
