#include "graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mhaug {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line))
      throw ParseError(line_no_ + 1, std::string("unexpected end of file, expected ") + what);
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) fields.push_back(tok);
  return fields;
}

std::int64_t parse_int(const std::string& tok, std::size_t line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected integer for ") + what + ", got '" + tok + "'");
  return value;
}

double parse_real(const std::string& tok, std::size_t line, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected real for ") + what + ", got '" + tok + "'");
  return value;
}

std::vector<std::uint8_t> parse_mask(LineReader& reader, std::size_t n, const char* name) {
  const std::string line = reader.next(name);
  const auto fields = split_fields(line);
  if (fields.size() != n)
    throw ParseError(reader.line_no(),
                     std::string(name) + " must have exactly " + std::to_string(n) + " entries");
  std::vector<std::uint8_t> mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = parse_int(fields[i], reader.line_no(), name);
    if (v != 0 && v != 1) throw ParseError(reader.line_no(), std::string(name) + " entries must be 0/1");
    mask[i] = static_cast<std::uint8_t>(v);
  }
  return mask;
}

}  // namespace

Graph read_graph(std::istream& in) {
  LineReader reader(in);

  const auto header = split_fields(reader.next("header `n m d c`"));
  if (header.size() != 4) throw ParseError(reader.line_no(), "header must be `n m d c`");
  const auto n = parse_int(header[0], 1, "node count");
  const auto m = parse_int(header[1], 1, "edge count");
  const auto d = parse_int(header[2], 1, "feature dim");
  const auto c = parse_int(header[3], 1, "class count");
  if (n < 0 || m < 0 || d < 0 || c < 0)
    throw ParseError(reader.line_no(), "header counts must be nonnegative");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    const auto fields = split_fields(reader.next("edge line `u v`"));
    if (fields.size() != 2) throw ParseError(reader.line_no(), "edge line must be `u v`");
    const auto u = parse_int(fields[0], reader.line_no(), "edge endpoint");
    const auto v = parse_int(fields[1], reader.line_no(), "edge endpoint");
    if (u < 0 || v < 0) throw ParseError(reader.line_no(), "edge endpoints must be nonnegative");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }

  std::vector<double> features(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto fields = split_fields(reader.next("feature line"));
    if (static_cast<std::int64_t>(fields.size()) != d)
      throw ParseError(reader.line_no(),
                       "feature line must have " + std::to_string(d) + " values");
    for (std::int64_t j = 0; j < d; ++j)
      features[static_cast<std::size_t>(i * d + j)] =
          parse_real(fields[j], reader.line_no(), "feature");
  }

  std::vector<int> labels(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto fields = split_fields(reader.next("label line"));
    if (fields.size() != 1) throw ParseError(reader.line_no(), "label line must hold one integer");
    labels[static_cast<std::size_t>(i)] =
        static_cast<int>(parse_int(fields[0], reader.line_no(), "label"));
  }

  auto train = parse_mask(reader, static_cast<std::size_t>(n), "train mask");
  auto val = parse_mask(reader, static_cast<std::size_t>(n), "val mask");
  auto test = parse_mask(reader, static_cast<std::size_t>(n), "test mask");

  try {
    return Graph(static_cast<NodeId>(n), std::move(edges), std::move(features),
                 static_cast<std::size_t>(d), std::move(labels), static_cast<int>(c),
                 std::move(train), std::move(val), std::move(test));
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(std::string("validation error: ") + err.what());
  }
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string graph_to_string(const Graph& graph) {
  std::string out;
  out += std::to_string(graph.num_nodes()) + " " + std::to_string(graph.num_edges()) + " " +
         std::to_string(graph.feature_dim()) + " " + std::to_string(graph.num_classes()) + "\n";
  for (const auto& e : graph.edges())
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  for (NodeId i = 0; i < graph.num_nodes(); ++i) {
    for (std::size_t j = 0; j < graph.feature_dim(); ++j) {
      if (j) out += ' ';
      out += format_double(graph.feature(i, j));
    }
    out += '\n';
  }
  for (NodeId i = 0; i < graph.num_nodes(); ++i)
    out += std::to_string(graph.labels()[i]) + "\n";
  for (const auto* mask : {&graph.train_mask(), &graph.val_mask(), &graph.test_mask()}) {
    for (NodeId i = 0; i < graph.num_nodes(); ++i) {
      if (i) out += ' ';
      out += (*mask)[i] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void save_graph(const Graph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << graph_to_string(graph);
  if (!out) throw std::runtime_error("failed writing graph file: " + path);
}

}  // namespace mhaug
