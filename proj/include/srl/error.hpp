#pragma once

#include <stdexcept>
#include <string>

namespace srl {

enum class errc {
  invalid_parameter,
  empty_measure,
  no_edges,
  oracle_limit,
  inconsistent_state,
  stiff_failure,
  instability,
  io,
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::invalid_parameter: return "invalid-parameter";
    case errc::empty_measure: return "empty-measure";
    case errc::no_edges: return "no-edges";
    case errc::oracle_limit: return "oracle-limit";
    case errc::inconsistent_state: return "inconsistent-state";
    case errc::stiff_failure: return "stiff-failure";
    case errc::instability: return "instability";
    case errc::io: return "io";
  }
  return "unknown";
}

/// Library error carrying a machine-readable code.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

  /// Numerical failures map to a distinct CLI exit status.
  bool numerical() const noexcept {
    return code_ == errc::stiff_failure || code_ == errc::instability;
  }

 private:
  errc code_;
};

}  // namespace srl
