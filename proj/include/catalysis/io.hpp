#pragma once

#include <string>

#include "catalysis/catalyst.hpp"
#include "catalysis/prob_vec.hpp"
#include "catalysis/qstates.hpp"
#include "catalysis/second_order.hpp"

namespace catalysis {

// JSON schemas:
//   ProbVec        {"probs": [...]}
//   GibbsSpec      {"weights": [...]}  or  {"energies": [...], "beta": x}
//   DensityMatrix  {"dims": [dA, dB], "re": [[...]], "im": [[...]]}
// Numbers are parsed with full decimal fidelity; writers emit 17 significant
// digits so values round-trip bit-exactly.

std::string fmt_g17(double v);

ProbVec read_prob_vec_file(const std::string& path);
ProbVec parse_prob_vec_json(const std::string& text);
GibbsSpec read_gibbs_file(const std::string& path);
GibbsSpec parse_gibbs_json(const std::string& text);
DensityMatrix read_density_matrix_file(const std::string& path);
DensityMatrix parse_density_matrix_json(const std::string& text);

std::string prob_vec_to_json(const ProbVec& p);
std::string report_to_json(const CatalysisReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace catalysis
