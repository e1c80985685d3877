#include "wallsun/report.hpp"

#include <array>

namespace wallsun {

namespace {

template <class E, std::size_t K>
E enum_from(const Json& j, const std::array<E, K>& all, const char* what) {
  const auto name = j.get<std::string>();
  for (E e : all) {
    if (to_string(e) == name) return e;
  }
  throw InvalidArgument(std::string(what) + ": unknown value '" + name + "'");
}

constexpr std::array kPeriodMethods{PeriodMethod::BruteIteration, PeriodMethod::MatrixOrder,
                                    PeriodMethod::LiftCheck, PeriodMethod::DirectMod2Table};
constexpr std::array kWssPaths{WssPath::Lemma3_p2, WssPath::Lemma3_pDividesA,
                               WssPath::Lemma3_delta0, WssPath::GeneralPeriodCompare};
constexpr std::array kDeciders{mono::Decider::JKS1, mono::Decider::JKS2, mono::Decider::JKS3,
                               mono::Decider::JKS4, mono::Decider::JKS5,
                               mono::Decider::DedekindGeneric};
constexpr std::array kSources{mono::IrreducibilitySource::LemmaIrreducibleStarConditions,
                              mono::IrreducibilitySource::AssumedByCaller};

Json pairs_to_json(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& v) {
  Json out = Json::array();
  for (const auto& [p, pi] : v) out.push_back(Json::array({p, pi}));
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_from_json(const Json& j) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>());
  return out;
}

}  // namespace

namespace report {

Json big_to_json(const Big& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return Json(v.get_si());
  return Json(v.get_str());
}

Big big_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Big(static_cast<unsigned long>(j.get<std::uint64_t>()));
    return Big(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Big out;
    if (out.set_str(j.get<std::string>(), 10) != 0) {
      throw InvalidArgument("not a decimal integer: " + j.get<std::string>());
    }
    return out;
  }
  throw InvalidArgument("expected an integer, got " + j.dump());
}

Json envelope(const std::string& command, Json inputs, Json results, double timing_ms) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"timing_ms", timing_ms}};
}

std::string emit(const Json& j) { return j.dump(2) + "\n"; }

std::string emit_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + cell(v[i]);
    return out + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

void to_json(Json& j, const Table1Row& r) {
  j = Json{{"a", r.a},
           {"b", r.b},
           {"expected", pairs_to_json(r.expected)},
           {"found", pairs_to_json(r.found)},
           {"pass", r.pass}};
}

void from_json(const Json& j, Table1Row& r) {
  r.a = j.at("a").get<std::uint64_t>();
  r.b = j.at("b").get<std::uint64_t>();
  r.expected = pairs_from_json(j.at("expected"));
  r.found = pairs_from_json(j.at("found"));
  r.pass = j.at("pass").get<bool>();
}

}  // namespace report

void to_json(Json& j, const PeriodResult& r) {
  j = Json{{"modulus", r.modulus}, {"pi", r.pi}, {"method", to_string(r.method)}};
}

void from_json(const Json& j, PeriodResult& r) {
  r.modulus = j.at("modulus").get<std::uint64_t>();
  r.pi = j.at("pi").get<std::uint64_t>();
  r.method = enum_from(j.at("method"), kPeriodMethods, "method");
}

void to_json(Json& j, const WssCertificate& c) {
  j = Json{{"p", c.p},
           {"pi_p", c.pi_p},
           {"pi_p2", c.pi_p2},
           {"is_wss", c.is_wss},
           {"path", to_string(c.path)},
           {"usub_condition", c.usub_condition}};
}

void from_json(const Json& j, WssCertificate& c) {
  c.p = j.at("p").get<std::uint64_t>();
  c.pi_p = j.at("pi_p").get<std::uint64_t>();
  c.pi_p2 = j.at("pi_p2").get<std::uint64_t>();
  c.is_wss = j.at("is_wss").get<bool>();
  c.path = enum_from(j.at("path"), kWssPaths, "path");
  c.usub_condition = j.at("usub_condition").get<bool>();
}

namespace mono {

using report::big_from_json;
using report::big_to_json;

void to_json(Json& j, const TrinomialSpec& t) {
  j = Json{{"N", t.N},   {"M", t.M},   {"A", big_to_json(t.A)}, {"B", big_to_json(t.B)},
           {"r", t.r},   {"N1", t.N1}, {"M1", t.M1},            {"D", big_to_json(t.D)}};
}

void from_json(const Json& j, TrinomialSpec& t) {
  t = TrinomialSpec::make(j.at("N").get<std::uint64_t>(), j.at("M").get<std::uint64_t>(),
                          big_from_json(j.at("A")), big_from_json(j.at("B")));
}

void to_json(Json& j, const PrimeVerdict& v) {
  j = Json{{"p", v.p}, {"index_coprime", v.index_coprime}, {"decided_by", to_string(v.decided_by)}};
}

void from_json(const Json& j, PrimeVerdict& v) {
  v.p = j.at("p").get<std::uint64_t>();
  v.index_coprime = j.at("index_coprime").get<bool>();
  v.decided_by = enum_from(j.at("decided_by"), kDeciders, "decided_by");
}

void to_json(Json& j, const MonogenicityReport& r) {
  j = Json{{"poly", r.poly},
           {"prime_verdicts", r.prime_verdicts},
           {"monogenic", r.monogenic},
           {"irreducibility_source", to_string(r.irreducibility_source)}};
}

void from_json(const Json& j, MonogenicityReport& r) {
  r.poly = j.at("poly").get<TrinomialSpec>();
  r.prime_verdicts = j.at("prime_verdicts").get<std::vector<PrimeVerdict>>();
  r.monogenic = j.at("monogenic").get<bool>();
  r.irreducibility_source =
      enum_from(j.at("irreducibility_source"), kSources, "irreducibility_source");
}

void to_json(Json& j, const TheoremHypotheses& h) {
  j = Json{{"star", h.star},
           {"gcd_bs", h.gcd_bs},
           {"delta_conditions", h.delta_conditions},
           {"overall", h.overall}};
}

void from_json(const Json& j, TheoremHypotheses& h) {
  h.star = j.at("star").get<bool>();
  h.gcd_bs = j.at("gcd_bs").get<bool>();
  h.delta_conditions = j.at("delta_conditions").get<bool>();
  h.overall = j.at("overall").get<bool>();
}

void to_json(Json& j, const CrossValidationRow& r) {
  j = Json{{"n", r.n}, {"report", r.report}, {"agrees", r.agrees}};
}

void from_json(const Json& j, CrossValidationRow& r) {
  r.n = j.at("n").get<std::uint64_t>();
  r.report = j.at("report").get<MonogenicityReport>();
  r.agrees = j.at("agrees").get<bool>();
}

void to_json(Json& j, const CrossValidation& c) {
  j = Json{{"hypotheses", c.hypotheses},
           {"prediction", c.prediction ? Json(*c.prediction) : Json(nullptr)},
           {"rows", c.rows},
           {"agreement", c.agreement},
           {"n_independent", c.n_independent},
           {"outside_hypotheses", c.outside_hypotheses}};
}

void from_json(const Json& j, CrossValidation& c) {
  c.hypotheses = j.at("hypotheses").get<TheoremHypotheses>();
  const auto& pred = j.at("prediction");
  c.prediction = pred.is_null() ? std::nullopt : std::optional<bool>(pred.get<bool>());
  c.rows = j.at("rows").get<std::vector<CrossValidationRow>>();
  c.agreement = j.at("agreement").get<bool>();
  c.n_independent = j.at("n_independent").get<bool>();
  c.outside_hypotheses = j.at("outside_hypotheses").get<bool>();
}

}  // namespace mono

}  // namespace wallsun
