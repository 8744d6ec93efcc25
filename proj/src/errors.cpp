#include "opradius/errors.hpp"

namespace opradius {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::not_hermitian: return "NotHermitian";
    case Errc::non_square: return "NonSquare";
    case Errc::not_psd: return "NotPSD";
    case Errc::non_diagonalizable: return "NonDiagonalizable";
    case Errc::complex_spectrum: return "ComplexSpectrum";
    case Errc::negative_base: return "NegativeBase";
    case Errc::singular_power: return "SingularPower";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_in_ba: return "NotInBA";
    case Errc::unbounded_form: return "UnboundedForm";
    case Errc::degenerate_space: return "DegenerateSpace";
    case Errc::bad_rank: return "BadRank";
    case Errc::signature_mismatch: return "SignatureMismatch";
    case Errc::bad_parameter: return "BadParameter";
    case Errc::config_error: return "ConfigError";
    case Errc::corrupt_record: return "CorruptRecord";
    case Errc::parse_error: return "ParseError";
    case Errc::unknown_entry: return "UnknownEntry";
  }
  return "Unknown";
}

void raise(Errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace opradius
