#include "matsamp/samplers.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "matsamp/rng.hpp"

namespace matsamp {

std::string_view to_string(SampleMode mode) {
  switch (mode) {
    case SampleMode::WithReplacement: return "iid";
    case SampleMode::WithoutReplacement: return "noreplace";
    case SampleMode::Bernoulli: return "bernoulli";
  }
  return "unknown";
}

std::optional<SampleMode> parse_sample_mode(std::string_view name) {
  if (name == "iid") return SampleMode::WithReplacement;
  if (name == "noreplace") return SampleMode::WithoutReplacement;
  if (name == "bernoulli") return SampleMode::Bernoulli;
  return std::nullopt;
}

SampleVector sample_with_replacement(std::size_t size, std::size_t m, std::uint64_t seed) {
  if (size < 1) {
    throw std::invalid_argument("sample_with_replacement: size must be >= 1");
  }
  if (m < 1) {
    throw std::invalid_argument("sample_with_replacement: m must be >= 1");
  }
  Rng rng(derive_seed(seed, "sample-iid"));
  SampleVector v{{}, SampleMode::WithReplacement, size, seed};
  v.indices.reserve(m);
  for (std::size_t i = 0; i < m; ++i) v.indices.push_back(rng.next_below(size));
  return v;
}

SampleVector sample_without_replacement(std::size_t size, std::size_t m, std::uint64_t seed) {
  if (size < 1) {
    throw std::invalid_argument("sample_without_replacement: size must be >= 1");
  }
  if (m < 1) {
    throw std::invalid_argument("sample_without_replacement: m must be >= 1");
  }
  if (m > size) {
    throw std::invalid_argument("sample_without_replacement: m = " + std::to_string(m) +
                                " exceeds the ensemble size " + std::to_string(size));
  }
  Rng rng(derive_seed(seed, "sample-noreplace"));
  std::vector<std::size_t> pool(size);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.next_below(size - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return SampleVector{std::move(pool), SampleMode::WithoutReplacement, size, seed};
}

SampleVector sample_bernoulli(std::size_t size, double m_expected, std::uint64_t seed) {
  if (!(m_expected >= 0.0) || m_expected > static_cast<double>(size)) {
    throw std::invalid_argument("sample_bernoulli: m_expected must lie in [0, size]");
  }
  Rng rng(derive_seed(seed, "sample-bernoulli"));
  const double p = size == 0 ? 0.0 : m_expected / static_cast<double>(size);
  SampleVector v{{}, SampleMode::Bernoulli, size, seed};
  for (std::size_t i = 0; i < size; ++i) {
    if (rng.next_double() < p) v.indices.push_back(i);
  }
  return v;
}

std::vector<HermitianMatrix> realize(const SampleVector& v, const MatrixEnsemble& e) {
  if (v.ensemble_size != e.size()) {
    throw std::invalid_argument("realize: sample vector was drawn from a set of size " +
                                std::to_string(v.ensemble_size) + ", ensemble has " +
                                std::to_string(e.size()) + " members");
  }
  std::vector<HermitianMatrix> out;
  out.reserve(v.indices.size());
  for (const std::size_t idx : v.indices) {
    if (idx >= e.size()) {
      throw std::invalid_argument("realize: index " + std::to_string(idx) + " out of range [0, " +
                                  std::to_string(e.size()) + ")");
    }
    out.push_back(e.members()[idx]);
  }
  return out;
}

}  // namespace matsamp
