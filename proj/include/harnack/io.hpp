#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "harnack/comparators.hpp"
#include "harnack/errors.hpp"
#include "harnack/ratio_analysis.hpp"
#include "harnack/solutions.hpp"
#include "harnack/verify.hpp"

namespace harnack {

/// Malformed solution-spec document. The message starts with a JSON pointer to the offending
/// member, or with the 1-based byte position for syntax errors.
class SpecError : public ContractError {
 public:
  using ContractError::ContractError;
};

namespace io {

using Json = nlohmann::ordered_json;

/// {"kind": "cauchy"|"gaussian", "mixture": [{"weight", "center", "time_offset"}, ...]} or
/// {"kind": ..., "datum": {"name", "params": {...}, "growth_certificate": b[, "growth_scale": M]}}.
/// Catalog params: constant {value}; cauchy_bump, gaussian_bump {mass, center, spread};
/// indicator {lo, hi, value}.
SolutionModel parse_solution_spec(std::string_view text);
SolutionModel load_solution_spec(const std::filesystem::path& path);

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// Serialises with every number at 17 significant digits; non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const PointPair& pair);
Json to_json(const SharpBracket& b);
Json to_json(const RatioExtrema& e);
Json to_json(const ComparatorResult& r);
Json to_json(const VerificationReport& rep);

inline constexpr std::string_view kReportCsvHeader =
    "pair_index,x1,t1,x2,t2,ratio,lower,upper,lower_margin,upper_margin,status";

/// Header plus one row per pair; absent bounds are empty cells.
void write_csv(std::ostream& os, const VerificationReport& rep);

}  // namespace io
}  // namespace harnack
