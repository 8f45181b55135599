#pragma once

#include <cstddef>
#include <cstdint>

namespace magma {

/// Resource caps shared by enumeration and mean arithmetic.
struct Limits {
  /// Largest level enumerate_level() and uniform_level() will materialize.
  std::uint64_t max_level = 12;
  /// Largest support a materialized mean may reach.
  std::size_t max_support = 4096;
};

}  // namespace magma
