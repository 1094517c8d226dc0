#include "turnarcs/errors.hpp"

#include <sstream>

namespace turnarcs {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out = "invalid model:";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i == 0 ? " " : "; ");
    out += items[i];
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

QuadratureError::QuadratureError(const std::string& what, double error_estimate)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << what << " (error estimate " << error_estimate << ")";
        return os.str();
      }()),
      error_estimate_(error_estimate) {}

}  // namespace turnarcs
