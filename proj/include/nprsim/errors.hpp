#ifndef NPRSIM_ERRORS_HPP
#define NPRSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nprsim {

/// Raised when a configuration file or parameter set is unusable.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nprsim

#endif
