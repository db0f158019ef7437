#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "matsamp/ensemble.hpp"

namespace matsamp {

enum class SampleMode { WithReplacement, WithoutReplacement, Bernoulli };

/// CLI names: "iid", "noreplace", "bernoulli".
std::string_view to_string(SampleMode mode);
std::optional<SampleMode> parse_sample_mode(std::string_view name);

/// An ordered draw of ensemble indices plus the model that produced it.
///
/// WithoutReplacement draws have pairwise distinct indices; Bernoulli draws
/// are strictly increasing (they reveal a subset, not a sequence).
struct SampleVector {
  std::vector<std::size_t> indices;
  SampleMode mode = SampleMode::WithReplacement;
  std::size_t ensemble_size = 0;
  std::uint64_t seed = 0;
};

/// m i.i.d. uniform indices in [0, size).
SampleVector sample_with_replacement(std::size_t size, std::size_t m, std::uint64_t seed);

/// A uniformly random ordered m-subset of [0, size) via a partial
/// Fisher-Yates shuffle; all m! * binom(size, m) ordered outcomes are
/// equiprobable. Requires m <= size.
SampleVector sample_without_replacement(std::size_t size, std::size_t m, std::uint64_t seed);

/// Each index in [0, size) independently included with probability
/// m_expected / size; result sorted ascending.
SampleVector sample_bernoulli(std::size_t size, double m_expected, std::uint64_t seed);

/// The ensemble members selected by the draw, in index order.
std::vector<HermitianMatrix> realize(const SampleVector& v, const MatrixEnsemble& e);

}  // namespace matsamp
