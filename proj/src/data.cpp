#include "lfopt/data.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "lfopt/errors.hpp"
#include "lfopt/rng.hpp"

namespace lfopt {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string gunzip(const std::string& raw) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    throw InvalidInput("gzip: inflateInit failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(raw.data()));
  zs.avail_in = static_cast<uInt>(raw.size());
  std::string out;
  char chunk[1 << 15];
  int ret = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(chunk);
    zs.avail_out = sizeof(chunk);
    ret = inflate(&zs, Z_NO_FLUSH);
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&zs);
      throw InvalidInput("gzip: corrupt stream");
    }
    out.append(chunk, sizeof(chunk) - zs.avail_out);
  } while (ret != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

double parse_double(std::string_view tok, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(tok), &used);
    if (used != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(tok) + "'", line);
  }
}

}  // namespace

double Dataset::prior() const {
  if (labels.empty()) return 0.0;
  std::size_t pos = 0;
  for (int y : labels) pos += y > 0;
  return static_cast<double>(pos) / static_cast<double>(labels.size());
}

Dataset parse_libsvm(std::string_view text, std::string name) {
  struct SparseRow {
    int label;
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<SparseRow> rows;
  std::size_t dim = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::istringstream ss{std::string(line)};
    std::string tok;
    if (!(ss >> tok)) continue;  // blank line

    SparseRow row;
    row.label = parse_double(tok, line_no, "label") > 0.0 ? +1 : -1;
    std::size_t prev_index = 0;
    while (ss >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
        throw ParseError("malformed feature token '" + tok + "'", line_no);
      }
      const double idx_val = parse_double(tok.substr(0, colon), line_no, "feature index");
      if (idx_val < 1.0 || idx_val != std::floor(idx_val)) {
        throw ParseError("feature index must be a positive integer", line_no);
      }
      const std::size_t index = static_cast<std::size_t>(idx_val);
      if (index <= prev_index) {
        throw ParseError("feature indices must be strictly ascending", line_no);
      }
      prev_index = index;
      row.entries.emplace_back(index, parse_double(tok.substr(colon + 1), line_no, "value"));
    }
    dim = std::max(dim, prev_index);
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw ParseError("empty input", line_no == 0 ? 1 : line_no);

  Dataset ds;
  ds.name = std::move(name);
  ds.labels.reserve(rows.size());
  ds.features.reserve(rows.size());
  for (auto& row : rows) {
    ds.labels.push_back(row.label);
    std::vector<double> x(dim, 0.0);
    for (const auto& [index, value] : row.entries) x[index - 1] = value;
    ds.features.push_back(std::move(x));
  }
  return ds;
}

std::string serialize_libsvm(const Dataset& ds) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out += ds.labels[i] > 0 ? "+1" : "-1";
    for (std::size_t j = 0; j < ds.features[i].size(); ++j) {
      if (ds.features[i][j] == 0.0) continue;
      std::snprintf(buf, sizeof(buf), " %zu:%.17g", j + 1, ds.features[i][j]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Dataset load_dataset(const std::string& path, std::string name) {
  std::string raw = read_file(path);
  if (raw.size() >= 2 && static_cast<unsigned char>(raw[0]) == 0x1f &&
      static_cast<unsigned char>(raw[1]) == 0x8b) {
    raw = gunzip(raw);
  }
  return parse_libsvm(raw, name.empty() ? path : std::move(name));
}

MinMaxScaler MinMaxScaler::fit(const Dataset& train) {
  if (train.size() == 0) throw InvalidInput("MinMaxScaler: empty training set");
  const std::size_t d = train.dim();
  MinMaxScaler s;
  s.lo_.assign(d, std::numeric_limits<double>::infinity());
  s.hi_.assign(d, -std::numeric_limits<double>::infinity());
  for (const auto& row : train.features) {
    for (std::size_t j = 0; j < d; ++j) {
      s.lo_[j] = std::min(s.lo_[j], row[j]);
      s.hi_[j] = std::max(s.hi_[j], row[j]);
    }
  }
  return s;
}

Dataset MinMaxScaler::transform(const Dataset& ds) const {
  if (ds.dim() != lo_.size()) throw InvalidInput("MinMaxScaler: dimension mismatch");
  Dataset out = ds;
  for (auto& row : out.features) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double range = hi_[j] - lo_[j];
      row[j] = range == 0.0 ? 0.0
                            : std::clamp((row[j] - lo_[j]) / range, 0.0, 1.0);
    }
  }
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double ratio, std::uint64_t seed) {
  if (ds.size() < 2) throw InvalidInput("split: need at least two rows");
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidInput("split: ratio must lie in (0, 1)");
  const auto idx = shuffled_indices(ds.size(), seed);
  const std::size_t cut =
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(ds.size()) + 0.5));
  Dataset a, b;
  a.name = ds.name;
  b.name = ds.name;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    Dataset& part = i < cut ? a : b;
    part.features.push_back(ds.features[idx[i]]);
    part.labels.push_back(ds.labels[idx[i]]);
  }
  return {std::move(a), std::move(b)};
}

std::vector<Example> to_examples(const Dataset& ds) {
  std::vector<Example> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out.push_back({ds.features[i], ds.labels[i]});
  }
  return out;
}

SplitSample make_split(const Dataset& ds, std::uint64_t seed) {
  return make_split(to_examples(ds), seed);
}

namespace {

// Lower-triangular Cholesky factor; throws InvalidInput unless SPD.
std::vector<double> cholesky(const std::vector<double>& a, std::size_t d) {
  std::vector<double> l(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * d + k] * l[j * d + k];
      if (i == j) {
        if (s <= 0.0) throw InvalidInput("covariance is not positive definite");
        l[i * d + i] = std::sqrt(s);
      } else {
        l[i * d + j] = s / l[j * d + j];
      }
    }
  }
  return l;
}

// Solves A z = b given the Cholesky factor L (forward + back substitution).
std::vector<double> spd_solve(const std::vector<double>& l, std::size_t d,
                              std::vector<double> b) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l[i * d + k] * b[k];
    b[i] /= l[i * d + i];
  }
  for (std::size_t i = d; i-- > 0;) {
    for (std::size_t k = i + 1; k < d; ++k) b[i] -= l[k * d + i] * b[k];
    b[i] /= l[i * d + i];
  }
  return b;
}

double sigmoid(double t) {
  return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

SyntheticSample generate_gaussians(const TwoGaussians& g, std::size_t n,
                                   std::uint64_t seed) {
  const std::size_t d = g.dim;
  if (d == 0 || g.mean_pos.size() != d || g.mean_neg.size() != d ||
      g.covariance.size() != d * d) {
    throw InvalidInput("TwoGaussians: inconsistent dimensions");
  }
  if (!(g.pi > 0.0 && g.pi < 1.0)) throw InvalidInput("TwoGaussians: pi must lie in (0, 1)");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(g.covariance[i * d + j] - g.covariance[j * d + i]) > 1e-12) {
        throw InvalidInput("TwoGaussians: covariance must be symmetric");
      }
    }
  }
  const std::vector<double> l = cholesky(g.covariance, d);

  // Shared-covariance posterior: eta(x) = sigmoid(w.x + b).
  std::vector<double> diff(d);
  for (std::size_t j = 0; j < d; ++j) diff[j] = g.mean_pos[j] - g.mean_neg[j];
  const std::vector<double> w = spd_solve(l, d, diff);
  double b = std::log(g.pi / (1.0 - g.pi));
  for (std::size_t j = 0; j < d; ++j) b -= 0.5 * w[j] * (g.mean_pos[j] + g.mean_neg[j]);

  SyntheticSample out;
  out.data.name = "two-gaussians";
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = rng.bernoulli(g.pi) ? +1 : -1;
    std::vector<double> z(d);
    for (auto& v : z) v = rng.normal();
    std::vector<double> x = y > 0 ? g.mean_pos : g.mean_neg;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t k = 0; k <= r; ++k) x[r] += l[r * d + k] * z[k];
    }
    out.data.features.push_back(std::move(x));
    out.data.labels.push_back(y);
  }
  out.eta = [w, b](std::span<const double> x) {
    double t = b;
    for (std::size_t j = 0; j < w.size(); ++j) t += w[j] * x[j];
    return sigmoid(t);
  };
  return out;
}

SyntheticSample generate_discrete(const DiscreteDistribution& dist, std::size_t n,
                                  std::uint64_t seed) {
  dist.validate();
  SyntheticSample out;
  out.data.name = "discrete";
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng.uniform();
    std::size_t k = 0;
    while (k + 1 < dist.points.size() && u >= dist.points[k].mass) {
      u -= dist.points[k].mass;
      ++k;
    }
    out.data.features.push_back(dist.points[k].x);
    out.data.labels.push_back(rng.bernoulli(dist.points[k].eta) ? +1 : -1);
  }
  out.eta = [dist](std::span<const double> x) {
    for (const auto& p : dist.points) {
      bool match = p.x.size() == x.size();
      for (std::size_t j = 0; match && j < x.size(); ++j) match = p.x[j] == x[j];
      if (match) return p.eta;
    }
    throw InvalidInput("eta: point is not in the support");
  };
  return out;
}

}  // namespace

SyntheticSample generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n == 0) throw InvalidInput("generate_synthetic: n must be positive");
  if (const auto* g = std::get_if<TwoGaussians>(&spec.kind)) {
    return generate_gaussians(*g, spec.n, spec.seed);
  }
  return generate_discrete(std::get<DiscreteDistribution>(spec.kind), spec.n, spec.seed);
}

std::vector<std::pair<std::string, std::string>> load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open registry: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string name, file;
    if (ss >> name >> file) entries.emplace_back(name, file);
  }
  return entries;
}

}  // namespace lfopt
