#pragma once

#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>

#include "plotarc/classifier.hpp"
#include "plotarc/error.hpp"
#include "plotarc/text_table.hpp"

namespace plotarc {

inline constexpr std::string_view kModelMagic = "plotarc-linear-svm";
inline constexpr int kModelFormatVersion = 1;

// Line 1: `plotarc-linear-svm 1 <dim> <C> <epochs> <seed>`, then dim weights,
// the bias, dim means and dim scales, one number per line, 17 significant
// digits.
inline std::string serialize_model(const LinearModel& model) {
  const std::size_t dim = model.weights.size();
  if (model.standardization.dimension() != dim) throw DimensionError("model and standardization dimensions differ");
  std::string out = std::string(kModelMagic) + ' ' + std::to_string(kModelFormatVersion) + ' ' + std::to_string(dim) +
                    ' ' + text::format_exact(model.hyperparams.C) + ' ' + std::to_string(model.hyperparams.epochs) +
                    ' ' + std::to_string(model.hyperparams.seed) + '\n';
  auto put = [&](double v) { out += text::format_exact(v) + '\n'; };
  for (double w : model.weights) put(w);
  put(model.bias);
  for (double v : model.standardization.means) put(v);
  for (double v : model.standardization.scales) put(v);
  return out;
}

inline LinearModel parse_model(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!text::read_line(in, line, line_no)) throw ParseError("empty model file", 1);
  std::istringstream header(line);
  std::string magic;
  int version = 0;
  std::size_t dim = 0;
  LinearModel model;
  if (!(header >> magic >> version >> dim >> model.hyperparams.C >> model.hyperparams.epochs >> model.hyperparams.seed) ||
      magic != kModelMagic)
    throw ParseError("not a plotarc model header", 1);
  if (version != kModelFormatVersion) throw ParseError("unsupported model format version " + std::to_string(version), 1);
  auto next = [&]() {
    if (!text::read_line(in, line, line_no)) throw ParseError("model file truncated", line_no + 1);
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (line.empty() || end != line.c_str() + line.size()) throw ParseError("bad number '" + line + "'", line_no);
    return v;
  };
  model.weights.resize(dim);
  for (double& w : model.weights) w = next();
  model.bias = next();
  model.standardization.means.resize(dim);
  model.standardization.scales.resize(dim);
  for (double& v : model.standardization.means) v = next();
  for (double& v : model.standardization.scales) {
    v = next();
    if (!(v > 0.0)) throw ParseError("standardization scale must be positive", line_no);
  }
  return model;
}

inline LinearModel parse_model(std::string_view content) {
  std::istringstream in{std::string(content)};
  return parse_model(in);
}

}  // namespace plotarc
