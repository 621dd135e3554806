#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "pmkit/matrix.hpp"

namespace pmkit {

enum class ClassTag { PDiagDom, MMatrix, SymPD, Z, PSD, NonP, Arbitrary };

std::string_view to_string(ClassTag tag);
std::optional<ClassTag> parse_class_tag(std::string_view name);

struct GenSpec {
  ClassTag tag = ClassTag::Arbitrary;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

/// Draws a matrix of the requested class and validates it against the class
/// oracle before returning it. Same GenSpec, same matrix.
Matrix generate(const GenSpec& g);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng);

}  // namespace pmkit
