#ifndef LFOPT_DATA_HPP_
#define LFOPT_DATA_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lfopt/metrics.hpp"
#include "lfopt/surrogate.hpp"

namespace lfopt {

struct Dataset {
  std::vector<std::vector<double>> features;  // n x d dense
  std::vector<int> labels;                    // +1 / -1
  std::string name;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.empty() ? 0 : features.front().size(); }
  double prior() const;
};

// Parses `label idx:val ...` lines with 1-based strictly ascending indices.
// Labels > 0 map to +1, everything else to -1 (covers both {0,1} and {-1,+1}
// labelings). Throws ParseError with the offending line number.
Dataset parse_libsvm(std::string_view text, std::string name = "");

// Writes the dataset back in the sparse text format (zeros omitted).
std::string serialize_libsvm(const Dataset& ds);

// Reads a file, transparently inflating gzip content (magic 1f 8b).
Dataset load_dataset(const std::string& path, std::string name = "");

// Per-column affine map fitted on a training set; transformed values are
// clipped to [0, 1] and constant columns collapse to 0.
class MinMaxScaler {
 public:
  static MinMaxScaler fit(const Dataset& train);
  Dataset transform(const Dataset& ds) const;

 private:
  std::vector<double> lo_, hi_;
};

// Seeded shuffle, then a prefix of round(ratio * n) rows (round half up).
std::pair<Dataset, Dataset> split(const Dataset& ds, double ratio, std::uint64_t seed);

std::vector<Example> to_examples(const Dataset& ds);

// Dataset rows as a SplitSample (first floor(n/2) shuffled rows in s0).
SplitSample make_split(const Dataset& ds, std::uint64_t seed);

struct TwoGaussians {
  std::size_t dim = 0;
  std::vector<double> mean_pos;
  std::vector<double> mean_neg;
  std::vector<double> covariance;  // d x d row-major, symmetric positive definite
  double pi = 0.5;
};

struct SyntheticSpec {
  std::variant<TwoGaussians, DiscreteDistribution> kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

using EtaEvaluator = std::function<double(std::span<const double>)>;

struct SyntheticSample {
  Dataset data;
  EtaEvaluator eta;  // exact posterior of the generating distribution
};

SyntheticSample generate_synthetic(const SyntheticSpec& spec);

// `name path` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> load_registry(const std::string& path);

}  // namespace lfopt

#endif  // LFOPT_DATA_HPP_
