#include "pinnproj/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pinnproj/prng.hpp"

namespace pinnproj {

void MlpArchitecture::validate() const {
  if (layer_sizes.size() < 2) throw ConfigError("architecture needs at least input and output sizes");
  if (layer_sizes.front() != 2) throw ConfigError("input layer must be 2-wide (x, t)");
  if (layer_sizes.back() != 1) throw ConfigError("output layer must be 1-wide (u)");
  for (const std::size_t n : layer_sizes) {
    if (n == 0) throw ConfigError("zero-width layer");
  }
  if (!(bounds.x_min < bounds.x_max) || !(bounds.t_min < bounds.t_max)) {
    throw ConfigError("input bounds must satisfy x_min < x_max and t_min < t_max");
  }
}

std::size_t MlpArchitecture::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    n += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
  }
  return n;
}

std::vector<LayerSlice> param_layout(const MlpArchitecture& arch) {
  std::vector<LayerSlice> layout;
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < arch.layer_sizes.size(); ++l) {
    LayerSlice s;
    s.n_in = arch.layer_sizes[l];
    s.n_out = arch.layer_sizes[l + 1];
    s.w_off = off;
    s.b_off = off + s.n_in * s.n_out;
    off = s.b_off + s.n_out;
    layout.push_back(s);
  }
  return layout;
}

ParamVector init_xavier_normal(const MlpArchitecture& arch, std::uint64_t seed) {
  arch.validate();
  ParamVector theta;
  theta.values.assign(arch.param_count(), 0.0);
  Prng rng(seed, RngStream::kInit);
  for (const LayerSlice& l : param_layout(arch)) {
    const double sigma = std::sqrt(2.0 / static_cast<double>(l.n_in + l.n_out));
    for (std::size_t i = 0; i < l.n_in * l.n_out; ++i) {
      theta.values[l.w_off + i] = sigma * rng.next_normal();
    }
    // biases stay zero
  }
  return theta;
}

void save_checkpoint(const ParamVector& theta, const MlpArchitecture& arch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open checkpoint file for writing: " + path);
  out << "#pinnproj-checkpoint v1\n";
  out << "layers:";
  for (const std::size_t n : arch.layer_sizes) out << ' ' << n;
  out << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g", arch.bounds.x_min, arch.bounds.x_max,
                arch.bounds.t_min, arch.bounds.t_max);
  out << "bounds: " << buf << '\n';
  for (const double v : theta.values) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

ParamVector load_checkpoint(const std::string& path, MlpArchitecture* arch_out) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open checkpoint file: " + path);
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(std::string("missing ") + what, lineno + 1);
    ++lineno;
  };

  next_line("magic header");
  if (line != "#pinnproj-checkpoint v1") throw ParseError("bad checkpoint magic", lineno);

  next_line("layer sizes");
  MlpArchitecture arch;
  {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "layers:") throw ParseError("expected 'layers:'", lineno);
    std::size_t n;
    while (ss >> n) arch.layer_sizes.push_back(n);
    if (arch.layer_sizes.size() < 2) throw ParseError("too few layer sizes", lineno);
  }

  next_line("bounds");
  {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "bounds:") throw ParseError("expected 'bounds:'", lineno);
    if (!(ss >> arch.bounds.x_min >> arch.bounds.x_max >> arch.bounds.t_min >> arch.bounds.t_max)) {
      throw ParseError("malformed bounds", lineno);
    }
  }
  arch.validate();

  ParamVector theta;
  theta.values.reserve(arch.param_count());
  for (std::size_t i = 0; i < arch.param_count(); ++i) {
    next_line("parameter value");
    try {
      theta.values.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ParseError("non-numeric parameter value", lineno);
    }
  }
  if (arch_out) *arch_out = arch;
  return theta;
}

}  // namespace pinnproj
