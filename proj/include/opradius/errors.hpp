#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opradius {

enum class Errc {
  not_hermitian,
  non_square,
  not_psd,
  non_diagonalizable,
  complex_spectrum,
  negative_base,
  singular_power,
  dimension_mismatch,
  not_in_ba,
  unbounded_form,
  degenerate_space,
  bad_rank,
  signature_mismatch,
  bad_parameter,
  config_error,
  corrupt_record,
  parse_error,
  unknown_entry,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace opradius
