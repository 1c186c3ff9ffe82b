#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qet/su2.hpp"

namespace qet {

/// Thrown when candidate scoring cannot separate physically distinct
/// reconstructions (degenerate truths / uninformative coarse data).
class AmbiguityError : public std::runtime_error {
 public:
  AmbiguityError(const std::string& what, std::vector<UnitaryParams> tied)
      : std::runtime_error(what), tied_candidates(std::move(tied)) {}

  std::vector<UnitaryParams> tied_candidates;
};

}  // namespace qet
