#ifndef FHLAB_ERROR_HPP
#define FHLAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fhlab {

// Error raised by any module operation. Carries enough structure for the
// CLI to emit a machine-readable error object and a nonzero exit code.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string operation, std::string message,
          std::vector<std::pair<std::string, std::string>> params = {})
        : std::runtime_error(module + "." + operation + ": " + message),
          module_(std::move(module)),
          operation_(std::move(operation)),
          message_(std::move(message)),
          params_(std::move(params)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& operation() const noexcept { return operation_; }
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::pair<std::string, std::string>>& params() const noexcept {
        return params_;
    }

private:
    std::string module_;
    std::string operation_;
    std::string message_;
    std::vector<std::pair<std::string, std::string>> params_;
};

}  // namespace fhlab

#endif
