#pragma once

#include <stdexcept>
#include <string>

namespace kumanet {

// Shape mismatch between operands; the message names both shapes.
class shape_error : public std::invalid_argument {
 public:
  explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file (IDX container, checkpoint); the message carries a byte offset
// where that is meaningful.
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Training produced non-finite values; the message names the epoch/batch.
class divergence_error : public std::runtime_error {
 public:
  explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// API misuse (missing rng in Train mode, empty metric input, bad flag combination).
class usage_error : public std::invalid_argument {
 public:
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace kumanet
