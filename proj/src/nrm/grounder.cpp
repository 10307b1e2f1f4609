#include "ltlnrm/nrm/grounder.hpp"

#include <algorithm>
#include <limits>

#include "ltlnrm/core/binary_io.hpp"
#include "ltlnrm/core/error.hpp"
#include "ltlnrm/nrm/params.hpp"

namespace ltlnrm::nrm {

namespace {
constexpr std::uint64_t kMaxDimension = 1u << 24;
}

Grounder::Grounder(std::size_t feature_dim, std::size_t num_symbols)
    : weights_(feature_dim, num_symbols), bias_(num_symbols, 0.0) {}

Grounder::Grounder(Matrix weights, std::vector<double> bias) : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.cols() != bias_.size()) throw DimensionMismatchError("grounder weight columns must match bias length");
}

Grounder Grounder::random(std::size_t feature_dim, std::size_t num_symbols, Rng& rng, double scale) {
  Grounder g(feature_dim, num_symbols);
  for (auto& w : g.weights_.data()) w = uniform_real(rng, -scale, scale);
  return g;
}

void Grounder::predict(std::span<const double> observation, std::span<double> out) const {
  if (observation.size() != feature_dim()) throw DimensionMismatchError("observation size does not match grounder");
  if (out.size() != num_symbols()) throw DimensionMismatchError("output size does not match grounder");
  std::copy(bias_.begin(), bias_.end(), out.begin());
  for (std::size_t i = 0; i < observation.size(); ++i) {
    const double s = observation[i];
    if (s == 0.0) continue;
    const auto row = weights_.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += s * row[j];
  }
  softmax(out, 1.0, out);
}

std::vector<double> Grounder::predict(std::span<const double> observation) const {
  std::vector<double> out(num_symbols());
  predict(observation, out);
  return out;
}

std::uint32_t Grounder::argmax(std::span<const double> observation) const {
  const auto p = predict(observation);
  return static_cast<std::uint32_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::vector<std::uint8_t> serialize(const Grounder& g) {
  ByteWriter w;
  w.bytes("NRMG");
  w.u64(g.feature_dim());
  w.u64(g.num_symbols());
  for (double v : g.weights().data()) w.f64(v);
  for (double v : g.bias()) w.f64(v);
  return w.take();
}

Grounder deserialize_grounder(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect("NRMG", "grounder file");
  const auto at_dim = r.offset();
  const auto dim = r.u64();
  if (dim == 0 || dim > kMaxDimension) throw MalformedFileError("implausible feature dimension", at_dim);
  const auto at_symbols = r.offset();
  const auto symbols = r.u64();
  if (symbols == 0 || symbols > kMaxDimension) throw MalformedFileError("implausible symbol count", at_symbols);
  if (r.remaining() / 8 < (dim + 1) * symbols) throw MalformedFileError("truncated grounder parameters", r.offset());
  std::vector<double> weights(dim * symbols);
  for (auto& v : weights) v = r.f64();
  std::vector<double> bias(symbols);
  for (auto& v : bias) v = r.f64();
  r.expect_end();
  return Grounder(Matrix(dim, symbols, std::move(weights)), std::move(bias));
}

void save_grounder(const Grounder& g, const std::filesystem::path& path) { write_file(path, serialize(g)); }

Grounder load_grounder(const std::filesystem::path& path) { return deserialize_grounder(read_file(path)); }

}  // namespace ltlnrm::nrm
