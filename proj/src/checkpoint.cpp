// Checkpoint text format, version 1. One record per line, doubles written as
// C99 hexfloats so that a round trip is exact:
//
//   korteweg-checkpoint 1
//   grid <dim> <n> <length>
//   params <mu> <kappa> <a> <gamma> <rho_bar>
//   formulation primitive|effective
//   step <index>
//   dt <dt>
//   accumulator <count>
//   <key> <value>            (count lines)
//   field scalar <size>
//   <value>                  (size lines)
//   field vector<j> <size>   (once per component)
//   ...
//   end

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "korteweg/errors.hpp"
#include "korteweg/solver.hpp"

namespace korteweg {

namespace {

std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_double(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') throw IoError("checkpoint: bad number '" + token + "'");
  return v;
}

void write_field(std::ostringstream& os, const std::string& name, const RealField& f) {
  os << "field " << name << " " << f.size() << "\n";
  for (double v : f.values()) os << hex(v) << "\n";
}

class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  std::vector<std::string> line() {
    std::string s;
    if (!std::getline(in_, s)) throw IoError("checkpoint: unexpected end of file");
    ++line_no_;
    std::istringstream ls(s);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    return tokens;
  }

  std::vector<std::string> expect(const std::string& key, std::size_t arity) {
    auto t = line();
    if (t.empty() || t[0] != key || t.size() != arity + 1) {
      std::ostringstream os;
      os << "checkpoint line " << line_no_ << ": expected '" << key << "' with " << arity << " values";
      throw IoError(os.str());
    }
    return t;
  }

  RealField field(const Grid& grid, const std::string& name) {
    auto t = expect("field", 2);
    if (t[1] != name) throw IoError("checkpoint: expected field '" + name + "', found '" + t[1] + "'");
    const auto size = static_cast<std::size_t>(std::stoull(t[2]));
    if (size != grid.size()) throw IoError("checkpoint: field '" + name + "' does not match the grid size");
    RealField f(grid);
    for (std::size_t i = 0; i < size; ++i) {
      auto v = line();
      if (v.size() != 1) throw IoError("checkpoint: malformed value in field '" + name + "'");
      f[i] = parse_double(v[0]);
    }
    return f;
  }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

}  // namespace

std::string format_checkpoint(const Checkpoint& c) {
  const Grid& g = c.state.grid();
  std::ostringstream os;
  os << "korteweg-checkpoint 1\n";
  os << "grid " << g.dim() << " " << g.n() << " " << hex(g.length()) << "\n";
  os << "params " << hex(c.params.mu) << " " << hex(c.params.kappa) << " " << hex(c.params.a) << " "
     << hex(c.params.gamma) << " " << hex(c.params.rho_bar) << "\n";
  os << "formulation " << formulation_name(c.state.formulation) << "\n";
  os << "step " << c.step << "\n";
  os << "dt " << hex(c.dt) << "\n";
  os << "accumulator " << c.accumulator.size() << "\n";
  for (const auto& [k, v] : c.accumulator) os << k << " " << hex(v) << "\n";
  write_field(os, "scalar", c.state.scalar);
  for (std::size_t j = 0; j < c.state.vector.size(); ++j) write_field(os, "vector" + std::to_string(j), c.state.vector[j]);
  os << "end\n";
  return os.str();
}

Checkpoint parse_checkpoint(const std::string& text) {
  Reader r(text);
  auto head = r.expect("korteweg-checkpoint", 1);
  if (head[1] != "1") throw IoError("checkpoint: unsupported version " + head[1]);
  auto g = r.expect("grid", 3);
  const Grid grid(std::stoi(g[1]), std::stoi(g[2]), parse_double(g[3]));
  auto pr = r.expect("params", 5);
  Checkpoint c;
  c.params = {parse_double(pr[1]), parse_double(pr[2]), parse_double(pr[3]), parse_double(pr[4]), parse_double(pr[5])};
  const Formulation f = parse_formulation(r.expect("formulation", 1)[1]);
  c.step = std::stoll(r.expect("step", 1)[1]);
  c.dt = parse_double(r.expect("dt", 1)[1]);
  const auto count = std::stoull(r.expect("accumulator", 1)[1]);
  for (std::size_t i = 0; i < count; ++i) {
    auto kv = r.line();
    if (kv.size() != 2) throw IoError("checkpoint: malformed accumulator entry");
    c.accumulator[kv[0]] = parse_double(kv[1]);
  }
  RealField scalar = r.field(grid, "scalar");
  VectorField vec;
  for (int j = 0; j < grid.dim(); ++j) vec.push_back(r.field(grid, "vector" + std::to_string(j)));
  r.expect("end", 0);
  c.state = SolverState{f, std::move(scalar), std::move(vec)};
  return c;
}

void write_checkpoint(const std::string& path, const Checkpoint& c) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open checkpoint file for writing: " + path);
  out << format_checkpoint(c);
  if (!out) throw IoError("failed writing checkpoint file: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

}  // namespace korteweg
