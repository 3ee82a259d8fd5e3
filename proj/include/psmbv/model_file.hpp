#pragma once

#include "psmbv/poisson.hpp"

namespace psmbv {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

// Line-oriented model file:
//   # comment
//   dim = 2
//   name = constant symplectic
//   alpha 1 2 = 1 + x1*x2^2
// Entries are given for i < j; the skew completion is implied. UTF-8, '\n'
// line ends with or without '\r'.
struct ModelFile {
  int dim = 0;
  std::string name;
  std::string description;
  std::vector<std::tuple<int, int, std::string>> entries;
};

// Parses a polynomial in x1..xk with rational literal coefficients and
// operators + - * ^ and parentheses.
Expr parse_polynomial(const std::string& text, int k, int line_number);

ModelFile parse_model_file(const std::string& text);
PoissonTensor to_poisson_tensor(const ModelFile& file);

PoissonTensor parse_model(const std::string& path);
ModelFile parse_model_metadata(const std::string& path);

}  // namespace psmbv
