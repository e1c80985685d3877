#ifndef WALLSUN_REPORT_HPP
#define WALLSUN_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "wallsun/mono.hpp"
#include "wallsun/wss.hpp"

namespace wallsun {

/// Key order in emitted objects is alphabetical (nlohmann::json uses std::map).
using Json = nlohmann::json;

namespace report {

inline constexpr const char* kSchemaVersion = "1";

/// Integers that fit in int64 become JSON numbers, larger ones decimal strings.
Json big_to_json(const Big& v);
/// Accepts either form; throws InvalidArgument otherwise.
Big big_from_json(const Json& j);

/// One recomputed row of the published WSS table.
struct Table1Row {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> expected;  ///< (p, pi(p^2))
  std::vector<std::pair<std::uint64_t, std::uint64_t>> found;
  bool pass = false;

  friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

/// {schema_version, command, inputs, results, timing_ms}
Json envelope(const std::string& command, Json inputs, Json results, double timing_ms);

/// Pretty-printed with a trailing newline.
std::string emit(const Json& j);

/// Comma-joined header followed by one line per row. Cells are quoted only
/// when they contain a comma or a quote.
std::string emit_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

void to_json(Json& j, const Table1Row& r);
void from_json(const Json& j, Table1Row& r);

}  // namespace report

void to_json(Json& j, const PeriodResult& r);
void from_json(const Json& j, PeriodResult& r);
void to_json(Json& j, const WssCertificate& c);
void from_json(const Json& j, WssCertificate& c);

namespace mono {
void to_json(Json& j, const TrinomialSpec& t);
void from_json(const Json& j, TrinomialSpec& t);
void to_json(Json& j, const PrimeVerdict& v);
void from_json(const Json& j, PrimeVerdict& v);
void to_json(Json& j, const MonogenicityReport& r);
void from_json(const Json& j, MonogenicityReport& r);
void to_json(Json& j, const TheoremHypotheses& h);
void from_json(const Json& j, TheoremHypotheses& h);
void to_json(Json& j, const CrossValidationRow& r);
void from_json(const Json& j, CrossValidationRow& r);
void to_json(Json& j, const CrossValidation& c);
void from_json(const Json& j, CrossValidation& c);
}  // namespace mono

}  // namespace wallsun

#endif  // WALLSUN_REPORT_HPP
