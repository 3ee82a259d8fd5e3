#include "psmbv/model_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace psmbv {

namespace {

// Recursive-descent polynomial parser.
class PolyParser {
 public:
  PolyParser(const std::string& s, int k, int line) : s_(s), k_(k), line_(line) {}

  Expr parse() {
    Expr e = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, static_cast<int>(pos_) + 1, msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expr sum() {
    Expr e = eat('-') ? Expr() - product() : (eat('+'), product());
    for (;;) {
      if (eat('+'))
        e += product();
      else if (eat('-'))
        e -= product();
      else
        return e;
    }
  }

  Expr product() {
    Expr e = power();
    while (peek() == '*' ) {
      eat('*');
      e = mul(e, power());
    }
    return e;
  }

  Expr power() {
    Expr base = atom();
    if (eat('^')) {
      long n = integer();
      if (n < 0) fail("negative exponent");
      Expr e(Rational(1));
      for (long i = 0; i < n; ++i) e = mul(e, base);
      return e;
    }
    return base;
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  Expr atom() {
    char c = peek();
    if (c == '(') {
      eat('(');
      Expr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == 'x') {
      ++pos_;
      long i = integer();
      if (i < 1 || i > k_) fail("variable x" + std::to_string(i) + " out of range 1.." +
                                std::to_string(k_));
      return Expr::generator(GeneratorRef::abstract_symbol(static_cast<int>(i)));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = integer();
      if (eat('/')) {
        long den = integer();
        if (den == 0) fail("zero denominator");
        return Expr(Rational(num, den));
      }
      return Expr(Rational(num));
    }
    fail("expected a number, variable or '('");
  }

  const std::string& s_;
  int k_;
  int line_;
  size_t pos_ = 0;
};

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Expr parse_polynomial(const std::string& text, int k, int line_number) {
  return PolyParser(text, k, line_number).parse();
}

ModelFile parse_model_file(const std::string& text) {
  ModelFile out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = strip(line.substr(0, hash));
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, 1, "expected 'key = value'");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));

    std::istringstream ks(key);
    std::string word;
    ks >> word;
    if (word == "dim") {
      try {
        out.dim = std::stoi(value);
      } catch (...) {
        throw ParseError(lineno, static_cast<int>(eq) + 2, "invalid dimension");
      }
      if (out.dim < 1) throw ParseError(lineno, static_cast<int>(eq) + 2, "dimension must be >= 1");
    } else if (word == "name") {
      out.name = value;
    } else if (word == "description") {
      out.description = value;
    } else if (word == "alpha") {
      int i = 0, j = 0;
      if (!(ks >> i >> j) || !(ks >> std::ws).eof())
        throw ParseError(lineno, 1, "expected 'alpha i j = <polynomial>'");
      if (out.dim == 0) throw ParseError(lineno, 1, "dim must be declared before entries");
      if (i < 1 || i > out.dim || j < 1 || j > out.dim)
        throw ParseError(lineno, 1,
                         "index (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of range for dim " + std::to_string(out.dim));
      if (i >= j) throw ParseError(lineno, 1, "entries must satisfy i < j");
      if (!seen.insert({i, j}).second)
        throw ParseError(lineno, 1,
                         "duplicate entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      parse_polynomial(value, out.dim, lineno);  // diagnose early, with location
      out.entries.emplace_back(i, j, value);
    } else {
      throw ParseError(lineno, 1, "unknown key '" + word + "'");
    }
  }
  if (out.dim == 0) throw ParseError(lineno, 1, "missing 'dim = k' line");
  return out;
}

PoissonTensor to_poisson_tensor(const ModelFile& file) {
  std::map<std::pair<int, int>, Expr> entries;
  for (const auto& [i, j, poly] : file.entries)
    entries[{i, j}] = parse_polynomial(poly, file.dim, 0);
  return PoissonTensor(file.dim, std::move(entries));
}

ModelFile parse_model_metadata(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_file(buf.str());
}

PoissonTensor parse_model(const std::string& path) {
  return to_poisson_tensor(parse_model_metadata(path));
}

}  // namespace psmbv
