#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "steiner/graph.hpp"

namespace steiner {
namespace {

constexpr int kMaxDecimalDigits = 9;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return tokens;
}

std::int64_t parse_int(const std::string& s, int line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" +
                               s + "'");
  }
  return value;
}

struct RawWeight {
  bool negative = false;
  std::string integral;
  std::string fraction;
};

RawWeight parse_weight(const std::string& s, int line) {
  RawWeight w;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    w.negative = s[pos] == '-';
    ++pos;
  }
  std::size_t dot = s.find('.', pos);
  w.integral = s.substr(pos, dot == std::string::npos ? std::string::npos
                                                      : dot - pos);
  if (dot != std::string::npos) w.fraction = s.substr(dot + 1);
  while (!w.fraction.empty() && w.fraction.back() == '0') w.fraction.pop_back();
  auto digits = [](const std::string& t) {
    return std::all_of(t.begin(), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  if ((w.integral.empty() && w.fraction.empty()) || !digits(w.integral) ||
      !digits(w.fraction)) {
    throw ParseError(line, "malformed edge weight '" + s + "'");
  }
  if (w.fraction.size() > kMaxDecimalDigits) {
    throw ParseError(line, "edge weight has too many decimal digits");
  }
  if (w.integral.empty()) w.integral = "0";
  return w;
}

}  // namespace

Graph parse_stp(std::istream& in) {
  std::optional<std::int64_t> nodes;
  std::optional<std::int64_t> declared_edges;
  std::optional<std::int64_t> declared_terminals;
  std::vector<std::pair<VertexId, VertexId>> endpoints;
  std::vector<RawWeight> weights;
  std::vector<int> edge_lines;
  std::vector<VertexId> terminals;
  std::vector<int> terminal_lines;
  bool saw_eof = false;

  enum class Section { kNone, kGraph, kTerminals, kSkipped };
  Section section = Section::kNone;
  int line_no = 0;
  int section_line = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split(line);
    if (tokens.empty()) continue;
    const std::string key = lower(tokens[0]);

    if (section == Section::kSkipped) {
      if (key == "end") section = Section::kNone;
      continue;
    }
    if (section == Section::kNone) {
      if (key == "eof") {
        saw_eof = true;
        break;
      }
      if (key == "33d32945") continue;  // magic header line
      if (key != "section" || tokens.size() < 2) {
        throw ParseError(line_no, "expected SECTION, got '" + tokens[0] + "'");
      }
      const std::string name = lower(tokens[1]);
      section_line = line_no;
      if (name == "graph") {
        section = Section::kGraph;
      } else if (name == "terminals") {
        section = Section::kTerminals;
      } else {
        section = Section::kSkipped;
      }
      continue;
    }
    if (key == "end") {
      section = Section::kNone;
      continue;
    }

    if (section == Section::kGraph) {
      if (key == "nodes" && tokens.size() == 2) {
        nodes = parse_int(tokens[1], line_no, "node count");
        if (*nodes < 1) throw ParseError(line_no, "node count must be positive");
      } else if ((key == "edges" || key == "arcs") && tokens.size() == 2) {
        declared_edges = parse_int(tokens[1], line_no, "edge count");
      } else if (key == "e" && tokens.size() == 4) {
        if (!nodes) throw ParseError(line_no, "edge before Nodes declaration");
        std::int64_t u = parse_int(tokens[1], line_no, "vertex id");
        std::int64_t v = parse_int(tokens[2], line_no, "vertex id");
        if (u < 1 || u > *nodes || v < 1 || v > *nodes) {
          throw ParseError(line_no, "vertex id out of range");
        }
        RawWeight w = parse_weight(tokens[3], line_no);
        if (w.negative && (w.integral != "0" || !w.fraction.empty())) {
          throw ParseError(line_no, "negative weight");
        }
        endpoints.emplace_back(static_cast<VertexId>(u),
                               static_cast<VertexId>(v));
        weights.push_back(std::move(w));
        edge_lines.push_back(line_no);
      } else if (key == "a") {
        throw ParseError(line_no, "directed arcs are not supported");
      } else {
        throw ParseError(line_no, "unexpected '" + tokens[0] +
                                      "' in Graph section");
      }
    } else if (section == Section::kTerminals) {
      if (key == "terminals" && tokens.size() == 2) {
        declared_terminals = parse_int(tokens[1], line_no, "terminal count");
      } else if (key == "t" && tokens.size() == 2) {
        std::int64_t t = parse_int(tokens[1], line_no, "terminal id");
        if (!nodes || t < 1 || t > *nodes) {
          throw ParseError(line_no, "terminal id out of range");
        }
        terminals.push_back(static_cast<VertexId>(t));
        terminal_lines.push_back(line_no);
      } else if (key == "root" || key == "rootp" || key == "tp") {
        // Rooted variants carry no information for the undirected problem.
      } else {
        throw ParseError(line_no, "unexpected '" + tokens[0] +
                                      "' in Terminals section");
      }
    }
  }
  if (section != Section::kNone) {
    throw ParseError(section_line, "section not closed by END");
  }
  if (!saw_eof) throw ParseError(line_no, "missing EOF");
  if (!nodes) throw ParseError(line_no, "missing Graph section");
  if (declared_edges && *declared_edges != static_cast<std::int64_t>(
                                               endpoints.size())) {
    throw ParseError(line_no, "declared " + std::to_string(*declared_edges) +
                                  " edges but found " +
                                  std::to_string(endpoints.size()));
  }
  if (declared_terminals &&
      *declared_terminals != static_cast<std::int64_t>(terminals.size())) {
    throw ParseError(line_no, "declared " +
                                  std::to_string(*declared_terminals) +
                                  " terminals but found " +
                                  std::to_string(terminals.size()));
  }

  std::size_t digits = 0;
  for (const RawWeight& w : weights) digits = std::max(digits, w.fraction.size());
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < digits; ++i) scale *= 10;

  std::vector<Edge> edges;
  edges.reserve(endpoints.size());
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    const RawWeight& w = weights[i];
    std::string frac = w.fraction;
    frac.resize(digits, '0');
    std::int64_t integral = parse_int(w.integral, edge_lines[i], "weight");
    std::int64_t fractional =
        frac.empty() ? 0 : parse_int(frac, edge_lines[i], "weight");
    if (integral > (kInfiniteCost / 4 - fractional) / scale) {
      throw ParseError(edge_lines[i], "edge weight too large");
    }
    edges.push_back({endpoints[i].first, endpoints[i].second,
                     integral * scale + fractional});
  }

  Graph g(static_cast<VertexId>(*nodes), std::move(edges), std::move(terminals),
          scale);
  if (!g.is_connected()) throw ParseError(line_no, "graph is disconnected");
  return g;
}

Graph parse_stp_string(const std::string& text) {
  std::istringstream in(text);
  return parse_stp(in);
}

Graph load_stp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_stp(in);
}

namespace {

std::string format_cost(Cost c, std::int64_t scale) {
  if (scale == 1) return std::to_string(c);
  std::string frac = std::to_string(c % scale);
  std::string digits = std::to_string(scale).substr(1);
  frac.insert(0, digits.size() - frac.size(), '0');
  return std::to_string(c / scale) + "." + frac;
}

}  // namespace

void write_stp(std::ostream& out, const Graph& g) {
  out << "33D32945 STP File, STP Format Version 1.0\n\n";
  out << "SECTION Graph\n";
  out << "Nodes " << g.vertex_count() << "\n";
  out << "Edges " << g.edge_count() << "\n";
  for (const Edge& e : g.edges()) {
    out << "E " << e.u << " " << e.v << " " << format_cost(e.cost, g.cost_scale())
        << "\n";
  }
  out << "END\n\n";
  out << "SECTION Terminals\n";
  out << "Terminals " << g.terminal_count() << "\n";
  for (VertexId t : g.terminals()) out << "T " << t << "\n";
  out << "END\n\nEOF\n";
}

}  // namespace steiner
