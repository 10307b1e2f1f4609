#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ltlnrm/core/matrix.hpp"
#include "ltlnrm/core/rng.hpp"

namespace ltlnrm::nrm {

/// Linear-softmax symbol classifier: p = softmax(W^T s + b), W is
/// feature_dim x num_symbols. The output covers the whole alphabet,
/// `_empty` included.
class Grounder {
 public:
  Grounder() = default;
  /// Zero weights: uniform predictions.
  Grounder(std::size_t feature_dim, std::size_t num_symbols);
  Grounder(Matrix weights, std::vector<double> bias);

  /// Weights drawn uniformly from [-scale, scale], zero bias.
  static Grounder random(std::size_t feature_dim, std::size_t num_symbols, Rng& rng, double scale = 0.01);

  std::size_t feature_dim() const noexcept { return weights_.rows(); }
  std::size_t num_symbols() const noexcept { return bias_.size(); }

  const Matrix& weights() const noexcept { return weights_; }
  Matrix& weights() noexcept { return weights_; }
  std::span<const double> bias() const noexcept { return bias_; }
  std::span<double> bias() noexcept { return bias_; }

  /// Writes the symbol distribution for one observation into `out`.
  /// Throws DimensionMismatchError on size mismatch.
  void predict(std::span<const double> observation, std::span<double> out) const;
  std::vector<double> predict(std::span<const double> observation) const;
  /// Most probable symbol, lowest index on ties.
  std::uint32_t argmax(std::span<const double> observation) const;

  friend bool operator==(const Grounder&, const Grounder&) = default;

 private:
  Matrix weights_;
  std::vector<double> bias_;
};

std::vector<std::uint8_t> serialize(const Grounder& g);
Grounder deserialize_grounder(std::span<const std::uint8_t> bytes);
void save_grounder(const Grounder& g, const std::filesystem::path& path);
Grounder load_grounder(const std::filesystem::path& path);

}  // namespace ltlnrm::nrm
