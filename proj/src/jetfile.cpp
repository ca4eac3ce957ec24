#include "grassconv/jetfile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace grassconv {

namespace {

// Token reader that remembers which line each token came from.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& token) {
    while (pos_ >= line_.size()) {
      if (!std::getline(in_, buffer_)) return false;
      ++line_number_;
      line_.clear();
      std::istringstream split(buffer_);
      std::string t;
      while (split >> t) line_.push_back(t);
      pos_ = 0;
    }
    token = line_[pos_++];
    return true;
  }

  int line_number() const { return line_number_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::vector<std::string> line_;
  std::size_t pos_ = 0;
  int line_number_ = 0;
};

double read_real(TokenReader& reader, const char* what) {
  std::string token;
  if (!reader.next(token))
    throw JetFileError(reader.line_number() + 1, std::string("unexpected end of file reading ") + what);
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw JetFileError(reader.line_number(), "expected a real number for " + std::string(what) +
                                                 ", got '" + token + "'");
  }
}

long read_count(TokenReader& reader, const char* what, long lo, long hi) {
  const double value = read_real(reader, what);
  const long count = static_cast<long>(value);
  if (static_cast<double>(count) != value || count < lo || count > hi)
    throw JetFileError(reader.line_number(), std::string(what) + " out of range");
  return count;
}

}  // namespace

std::vector<GraphJet> parse_jet_stream(std::istream& in) {
  TokenReader reader(in);
  const Index n = read_count(reader, "n", 1, kMaxDim);
  const Index m = read_count(reader, "m", 1, kMaxDim);
  const long count = read_count(reader, "count", 1, 1000000);

  std::vector<GraphJet> jets;
  jets.reserve(static_cast<std::size_t>(count));
  for (long sample = 0; sample < count; ++sample) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = read_real(reader, "x");
    Matrix df(n, m);
    for (Index i = 0; i < n; ++i)
      for (Index a = 0; a < m; ++a) df(i, a) = read_real(reader, "Df");
    std::vector<Matrix> d2f(static_cast<std::size_t>(m), Matrix(n, n));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index a = 0; a < m; ++a) d2f[static_cast<std::size_t>(a)](i, j) = read_real(reader, "D2f");
    try {
      jets.push_back(make_graph_jet(std::move(x), std::move(df), std::move(d2f)));
    } catch (const std::invalid_argument& err) {
      throw JetFileError(reader.line_number(),
                         "sample " + std::to_string(sample) + ": " + err.what());
    }
  }
  return jets;
}

std::vector<GraphJet> load_jet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open jet file: " + path);
  return parse_jet_stream(in);
}

void save_jet_file(const std::string& path, const std::vector<GraphJet>& jets) {
  if (jets.empty()) throw std::invalid_argument("save_jet_file: no jets");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write jet file: " + path);
  const Index n = jets.front().n(), m = jets.front().m();
  char buf[40];
  auto put = [&](double value) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    out << buf;
  };
  out << n << ' ' << m << ' ' << jets.size() << '\n';
  for (const GraphJet& jet : jets) {
    for (Index i = 0; i < n; ++i) {
      if (i) out << ' ';
      put(jet.x(i));
    }
    out << '\n';
    for (Index i = 0; i < n; ++i)
      for (Index a = 0; a < m; ++a) {
        if (i || a) out << ' ';
        put(jet.df(i, a));
      }
    out << '\n';
    bool first = true;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index a = 0; a < m; ++a) {
          if (!first) out << ' ';
          first = false;
          put(jet.d2f[static_cast<std::size_t>(a)](i, j));
        }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on jet file: " + path);
}

}  // namespace grassconv
