#pragma once

#include <iosfwd>
#include <string>

#include "graph.hpp"

namespace mhaug {

// Raised on malformed files; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format, UTF-8 with LF endings:
//   header `n m d c` (nodes, edges, feature dim, classes)
//   m edge lines `u v`
//   n feature lines of d space-separated reals
//   n label lines (class index, or -1 for unlabeled)
//   three mask lines (train/val/test) of n space-separated 0/1
Graph load_graph(const std::string& path);
Graph read_graph(std::istream& in);

// Canonical serialization: sorted edges, shortest round-trip float formatting.
// save(load(f)) is byte-identical whenever f is canonical.
void save_graph(const Graph& graph, const std::string& path);
std::string graph_to_string(const Graph& graph);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace mhaug
