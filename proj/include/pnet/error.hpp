#pragma once

#include <stdexcept>
#include <string>

namespace pnet {

struct PnetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pnet
