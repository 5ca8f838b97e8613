#include "screenforge/error.hpp"

namespace screenforge {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::parse_error: return "ParseError";
    case Errc::unknown_attribute: return "UnknownAttribute";
    case Errc::schema_mismatch: return "SchemaMismatch";
    case Errc::asset_root_missing: return "AssetRootMissing";
    case Errc::no_eligible_product: return "NoEligibleProduct";
    case Errc::missing_generator: return "MissingGenerator";
    case Errc::bad_pattern: return "BadPattern";
    case Errc::negative_amount: return "NegativeAmount";
    case Errc::missing_key: return "MissingKey";
    case Errc::fill_mismatch: return "FillMismatch";
    case Errc::bad_density: return "BadDensity";
    case Errc::empty_value: return "EmptyValue";
    case Errc::navigation_timeout: return "NavigationTimeout";
    case Errc::script_error: return "ScriptError";
    case Errc::protocol_error: return "ProtocolError";
    case Errc::browser_crashed: return "BrowserCrashed";
    case Errc::unknown_brand: return "UnknownBrand";
    case Errc::unknown_page_type: return "UnknownPageType";
    case Errc::unvalidated_sample: return "UnvalidatedSample";
    case Errc::leakage_unresolved: return "LeakageUnresolved";
    case Errc::unknown_sample_id: return "UnknownSampleId";
    case Errc::runner_failed: return "RunnerFailed";
    case Errc::unknown_layout: return "UnknownLayout";
    case Errc::io_error: return "IoError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

static std::string with_position(const std::string& what, int line, int column) {
  if (line <= 0) return what;
  return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(Errc::parse_error, with_position(what, line, column)), line_(line), column_(column) {}

}  // namespace screenforge
