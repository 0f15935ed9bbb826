#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace minkray {

/// Domain error with a stable machine-readable code, e.g. "not_convex".
/// The CLI maps these to error JSON and exit code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* not_centrally_symmetric = "not_centrally_symmetric";
inline constexpr const char* not_convex = "not_convex";
inline constexpr const char* degenerate_side = "degenerate_side";
inline constexpr const char* zero_vector = "zero_vector";
inline constexpr const char* invalid_norm = "invalid_norm";
inline constexpr const char* precondition_violated = "precondition_violated";
inline constexpr const char* length_mismatch = "length_mismatch";
inline constexpr const char* no_witness = "no_witness";
inline constexpr const char* segment_too_short = "segment_too_short";
inline constexpr const char* sampler_exhausted = "sampler_exhausted";
inline constexpr const char* out_of_range = "out_of_range";
inline constexpr const char* correspondence_mismatch = "correspondence_mismatch";
inline constexpr const char* no_accumulation = "no_accumulation";
inline constexpr const char* too_large = "too_large";
inline constexpr const char* infeasible_core = "infeasible_core";
inline constexpr const char* too_few_points = "too_few_points";
inline constexpr const char* iteration_limit = "iteration_limit";
inline constexpr const char* bad_input = "bad_input";
}  // namespace errc

}  // namespace minkray
