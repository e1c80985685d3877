#include "wallsun/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wallsun/report.hpp"

namespace wallsun::cli {

namespace {

using report::big_to_json;
using Hits = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Emission {
  Json inputs = Json::object();
  Json results = Json::object();
  std::string plain;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int code = kOk;
};

struct Table1Entry {
  std::uint64_t a, b;
  Hits hits;
};

const std::vector<Table1Entry> kTable1 = {
    {2, 1, {{13, 28}, {31, 30}}}, {3, 26, {{71, 126}}},
    {10, 41, {{29, 120}}},        {11, 43, {{2, 3}, {5, 24}}},
    {15, 14, {{29, 28}}},         {23, 11, {{2, 3}, {3, 3}, {71, 35}}},
    {25, 7, {{5, 8}}},            {27, 22, {{13, 84}}},
};

std::string yes_no(bool v) { return v ? "yes" : "no"; }
std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }

std::string hits_string(const Hits& hits) {
  if (hits.empty()) return "{}";
  std::string out;
  for (const auto& [p, pi] : hits) {
    out += (out.empty() ? "" : ",") + ("[" + str(p) + "," + str(pi) + "]");
  }
  return out;
}

std::string trinomial_string(const mono::TrinomialSpec& t) {
  auto term = [](const Big& c, std::uint64_t k) {
    std::string out = c < 0 ? " - " : " + ";
    const Big m = abs(c);
    if (m != 1 || k == 0) out += m.get_str();
    if (k > 0) out += k == 1 ? "x" : "x^" + str(k);
    return out;
  };
  std::string out = "x^" + str(t.N);
  if (t.A != 0) out += term(t.A, t.M);
  if (t.B != 0) out += term(t.B, 0);
  return out;
}

// key = value lines; '#' starts a comment; keys are flag names without dashes.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void collect_names(const CLI::App& app, std::set<std::string>& names) {
  for (const CLI::Option* opt : app.get_options()) {
    for (const auto& n : opt->get_lnames()) names.insert(n);
  }
  for (const CLI::App* sub : app.get_subcommands({})) collect_names(*sub, names);
}

/// Values of the selected command: command line first, then the config file.
class Args {
 public:
  Args(std::vector<const CLI::App*> chain, std::map<std::string, std::string> config)
      : chain_(std::move(chain)), config_(std::move(config)) {}

  std::optional<std::string> raw(const std::string& key) const {
    for (const CLI::App* app : chain_) {
      const CLI::Option* opt = app->get_option_no_throw("--" + key);
      if (opt != nullptr && opt->count() > 0) {
        return opt->get_type_size() == 0 ? "true" : opt->as<std::string>();
      }
    }
    if (const auto it = config_.find(key); it != config_.end()) return it->second;
    return std::nullopt;
  }

  std::string need(const std::string& key) const {
    auto v = raw(key);
    if (!v) throw UsageError("missing required option --" + key);
    return *v;
  }

  std::uint64_t u64(const std::string& key) const { return parse_u64(key, need(key)); }
  std::uint64_t u64_or(const std::string& key, std::uint64_t fallback) const {
    const auto v = raw(key);
    return v ? parse_u64(key, *v) : fallback;
  }
  Big big(const std::string& key) const {
    const std::string s = need(key);
    Big v;
    if (s.empty() || v.set_str(s, 10) != 0) {
      throw UsageError("--" + key + ": expected an integer, got '" + s + "'");
    }
    return v;
  }
  bool flag(const std::string& key) const {
    const auto v = raw(key);
    if (!v) return false;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw UsageError("--" + key + ": expected true or false, got '" + *v + "'");
  }

  static std::uint64_t parse_u64(const std::string& key, const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("--" + key + ": expected a non-negative integer, got '" + s + "'");
    }
    return v;
  }

 private:
  std::vector<const CLI::App*> chain_;
  std::map<std::string, std::string> config_;
};

unsigned default_jobs() {
  if (const char* env = std::getenv("WALLSUN_JOBS"); env != nullptr && *env != '\0') {
    const auto v = Args::parse_u64("jobs (WALLSUN_JOBS)", env);
    if (v == 0) throw UsageError("WALLSUN_JOBS must be positive");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

LucasParams params_from(const Args& args) { return LucasParams::make(args.big("a"), args.big("b")); }

Json ab_inputs(const LucasParams& params) {
  return Json{{"a", big_to_json(params.a)}, {"b", big_to_json(params.b)}};
}

std::string verdict_table(const mono::MonogenicityReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "p" << std::setw(16) << "index_coprime"
     << "decided_by\n";
  for (const auto& v : r.prime_verdicts) {
    os << std::setw(10) << v.p << std::setw(16) << yes_no(v.index_coprime)
       << mono::to_string(v.decided_by) << "\n";
  }
  return os.str();
}

void verdict_csv(const mono::MonogenicityReport& r, Emission& e) {
  e.csv_header = {"p", "index_coprime", "decided_by"};
  for (const auto& v : r.prime_verdicts) {
    e.csv_rows.push_back({str(v.p), str(v.index_coprime), std::string(mono::to_string(v.decided_by))});
  }
}

std::string hypotheses_line(const mono::TheoremHypotheses& h) {
  return "hypotheses: star=" + yes_no(h.star) + " gcd(b,s)=1=" + yes_no(h.gcd_bs) +
         " delta=" + yes_no(h.delta_conditions) + " overall=" + yes_no(h.overall) + "\n";
}

Emission cmd_wss_search(const Args& args, unsigned jobs) {
  const auto params = params_from(args);
  const std::uint64_t pmax = args.u64("pmax");
  const auto hits = search_wss(params, pmax, jobs);
  Emission e;
  e.inputs = ab_inputs(params);
  e.inputs["pmax"] = pmax;
  e.results["hits"] = hits;
  std::ostringstream os;
  os << "(a,b) = (" << params.a << "," << params.b << "), primes p <= " << pmax
     << " not dividing b\n";
  os << std::left << std::setw(12) << "p" << std::setw(14) << "pi(p)" << std::setw(14)
     << "pi(p^2)" << "path\n";
  for (const auto& c : hits) {
    os << std::setw(12) << c.p << std::setw(14) << c.pi_p << std::setw(14) << c.pi_p2
       << to_string(c.path) << "\n";
  }
  os << hits.size() << (hits.size() == 1 ? " WSS prime\n" : " WSS primes\n");
  e.plain = os.str();
  e.csv_header = {"p", "pi_p", "pi_p2", "is_wss", "path", "usub_condition"};
  for (const auto& c : hits) {
    e.csv_rows.push_back({str(c.p), str(c.pi_p), str(c.pi_p2), str(c.is_wss),
                          std::string(to_string(c.path)), str(c.usub_condition)});
  }
  return e;
}

Emission cmd_table1(const Args& args, unsigned jobs) {
  const std::uint64_t pmax = args.u64_or("pmax", 100);
  Emission e;
  std::vector<report::Table1Row> rows;
  std::ostringstream os;
  os << std::left << std::setw(10) << "(a,b)" << std::setw(28) << "expected" << std::setw(28)
     << "found" << "status\n";
  std::size_t passed = 0;
  for (const auto& entry : kTable1) {
    report::Table1Row row;
    row.a = entry.a;
    row.b = entry.b;
    row.expected = entry.hits;
    for (const auto& c : search_wss(LucasParams::make(entry.a, entry.b), pmax, jobs)) {
      row.found.emplace_back(c.p, c.pi_p2);
    }
    row.pass = row.found == row.expected;
    passed += row.pass;
    const std::string ab = "(" + str(entry.a) + "," + str(entry.b) + ")";
    os << std::setw(10) << ab << std::setw(28) << hits_string(row.expected) << std::setw(28)
       << hits_string(row.found) << (row.pass ? "PASS" : "FAIL") << "\n";
    e.csv_rows.push_back({str(row.a), str(row.b), hits_string(row.expected),
                          hits_string(row.found), row.pass ? "PASS" : "FAIL"});
    rows.push_back(std::move(row));
  }
  os << passed << "/" << kTable1.size() << " PASS\n";
  e.inputs["pmax"] = pmax;
  e.results["rows"] = rows;
  e.results["passed"] = passed;
  e.results["total"] = kTable1.size();
  e.plain = os.str();
  e.csv_header = {"a", "b", "expected", "found", "pass"};
  e.code = passed == kTable1.size() ? kOk : kCheckFailure;
  return e;
}

Emission cmd_period(const Args& args) {
  const auto params = params_from(args);
  const std::uint64_t m = args.u64("m");
  if (m < 2) throw UsageError("--m must be at least 2");
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;
  PeriodResult r;
  const Big root = sqrt(Big(static_cast<unsigned long>(m)));
  const std::uint64_t q = root * root == m ? root.get_ui() : 0;
  if (m < kLimit && arith::is_prime(m)) {
    r = period_prime(params, m);
  } else if (q > 1 && q < kLimit && arith::is_prime(q)) {
    r = period_prime_squared(params, q);
  } else {
    r = period(params, m);
  }
  Emission e;
  e.inputs = ab_inputs(params);
  e.inputs["m"] = m;
  e.results = r;
  e.plain = "pi(" + str(m) + ") = " + str(r.pi) + " for (a,b) = (" + params.a.get_str() + "," +
            params.b.get_str() + ")  [" + std::string(to_string(r.method)) + "]\n";
  e.csv_header = {"modulus", "pi", "method"};
  e.csv_rows.push_back({str(r.modulus), str(r.pi), std::string(to_string(r.method))});
  return e;
}

Emission cmd_mono_check(const Args& args) {
  const auto params = params_from(args);
  const std::uint64_t s = args.u64("s");
  const std::uint64_t n = args.u64_or("n", 1);
  const mono::MonoOptions opts{args.flag("dedekind-check")};
  const auto spec = mono::PowerCompositionalSpec::make(params, s, n);
  const auto rep = mono::is_monogenic_Fn(spec, opts);
  const auto hyp = mono::theorem_hypotheses(params, s);
  std::optional<bool> prediction;
  if (hyp.overall) prediction = mono::predict_monogenic(params, s);

  Emission e;
  e.inputs = ab_inputs(params);
  e.inputs["s"] = s;
  e.inputs["n"] = n;
  e.results["report"] = rep;
  e.results["hypotheses"] = hyp;
  e.results["prediction"] = prediction ? Json(*prediction) : Json(nullptr);
  e.results["agreement"] = prediction ? Json(*prediction == rep.monogenic) : Json(nullptr);

  std::ostringstream os;
  os << "F_n(x) = " << trinomial_string(rep.poly) << "\n" << verdict_table(rep);
  os << "monogenic: " << yes_no(rep.monogenic) << "\n" << hypotheses_line(hyp);
  if (prediction) {
    os << "prediction: " << (*prediction ? "monogenic" : "not monogenic") << "\n";
    os << "agreement: " << str(*prediction == rep.monogenic) << "\n";
  } else {
    os << "prediction: none (outside theorem hypotheses)\n";
  }
  e.plain = os.str();
  verdict_csv(rep, e);
  if (prediction && *prediction != rep.monogenic) e.code = kCheckFailure;
  return e;
}

Emission cmd_mono_trinomial(const Args& args) {
  const std::uint64_t N = args.u64("N");
  const std::uint64_t M = args.u64("M");
  const Big A = args.big("A");
  const Big B = args.big("B");
  if (A == 0 || B == 0) throw UsageError("--A and --B must be nonzero");
  const auto t = mono::TrinomialSpec::make(N, M, A, B);
  std::optional<std::uint64_t> certificate;
  for (std::uint64_t q : arith::primes_up_to(200)) {
    if (poly::is_irreducible(t.to_poly().reduce(q))) {
      certificate = q;
      break;
    }
  }
  const auto rep = mono::is_monogenic_trinomial(t, {args.flag("dedekind-check")});

  Emission e;
  e.inputs = Json{{"N", N}, {"M", M}, {"A", big_to_json(A)}, {"B", big_to_json(B)}};
  e.results["report"] = rep;
  e.results["irreducibility_certificate"] = certificate ? Json(*certificate) : Json(nullptr);
  std::ostringstream os;
  os << "f(x) = " << trinomial_string(t) << "\n";
  if (certificate) {
    os << "irreducible mod " << *certificate << "\n";
  } else {
    os << "irreducibility not certified by any prime q <= 200; verdicts assume it\n";
  }
  os << verdict_table(rep) << "monogenic: " << yes_no(rep.monogenic) << "\n";
  e.plain = os.str();
  verdict_csv(rep, e);
  return e;
}

Emission cmd_cross_validate(const Args& args) {
  const auto params = params_from(args);
  const std::uint64_t s = args.u64("s");
  const std::uint64_t n_max = args.u64_or("n-max", 2);
  if (n_max < 1) throw UsageError("--n-max must be at least 1");
  const auto cv = mono::cross_validate(params, s, n_max, {args.flag("dedekind-check")});

  Emission e;
  e.inputs = ab_inputs(params);
  e.inputs["s"] = s;
  e.inputs["n_max"] = n_max;
  e.results = cv;
  std::ostringstream os;
  os << hypotheses_line(cv.hypotheses);
  if (cv.prediction) {
    os << "prediction: " << (*cv.prediction ? "monogenic" : "not monogenic") << "\n";
  } else {
    os << "prediction: none (outside theorem hypotheses)\n";
  }
  os << std::left << std::setw(6) << "n" << std::setw(10) << "degree" << std::setw(12)
     << "monogenic" << "agrees\n";
  for (const auto& row : cv.rows) {
    os << std::setw(6) << row.n << std::setw(10) << row.report.poly.N << std::setw(12)
       << yes_no(row.report.monogenic) << (cv.prediction ? str(row.agrees) : "-") << "\n";
    e.csv_rows.push_back({str(row.n), str(row.report.poly.N), str(row.report.monogenic),
                          cv.prediction ? str(row.agrees) : ""});
  }
  os << "agreement: " << str(cv.agreement) << "\nn_independent: " << str(cv.n_independent)
     << "\n";
  if (cv.outside_hypotheses) os << "outside theorem hypotheses\n";
  e.plain = os.str();
  e.csv_header = {"n", "degree", "monogenic", "agrees"};
  if (!cv.outside_hypotheses && (!cv.agreement || !cv.n_independent)) e.code = kCheckFailure;
  return e;
}

// Selected subcommand chain, innermost first.
void leaf(const CLI::App& app, std::vector<const CLI::App*>& chain) {
  chain.insert(chain.begin(), &app);
  const auto subs = app.get_subcommands();
  if (!subs.empty()) leaf(*subs.front(), chain);
}

std::string command_name(const std::vector<const CLI::App*>& chain) {
  std::string out;
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    out += (out.empty() ? "" : " ") + (*it)->get_name();
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wall-Sun-Sun primes of Lucas sequences and monogenic trinomials", "wallsun"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", "Output format: plain, json or csv (default plain)");
  app.add_option("--config", "key = value file supplying defaults for any flag");
  app.add_option("--jobs", "Worker threads for prime scans (default WALLSUN_JOBS or all cores)");
  app.add_flag("--timing", "Report measured timing_ms in JSON (otherwise 0)");

  auto add_ab = [](CLI::App* sub) {
    sub->add_option("--a", "Lucas parameter a >= 1");
    sub->add_option("--b", "Lucas parameter b >= 1");
  };
  auto* wss = app.add_subcommand("wss", "Wall-Sun-Sun primes");
  wss->require_subcommand(1);
  auto* search = wss->add_subcommand("search", "List the (a,b)-WSS primes p <= pmax");
  add_ab(search);
  search->add_option("--pmax", "Largest prime to examine");

  auto* table1 = app.add_subcommand("table1", "Recompute the published WSS table");
  table1->add_option("--pmax", "Largest prime to examine (default 100)");

  auto* per = app.add_subcommand("period", "Period of U_n modulo m");
  add_ab(per);
  per->add_option("--m", "Modulus m >= 2 with gcd(b, m) = 1");

  auto* mono_cmd = app.add_subcommand("mono", "Monogenicity checks");
  mono_cmd->require_subcommand(1);
  auto* check = mono_cmd->add_subcommand("check", "Is x^{2s^n} - a x^{s^n} - b monogenic?");
  add_ab(check);
  check->add_option("--s", "s >= 1");
  check->add_option("--n", "n >= 1 (default 1)");
  check->add_flag("--dedekind-check", "Re-decide every prime with Dedekind's criterion");
  auto* tri = mono_cmd->add_subcommand("trinomial", "Is x^N + A x^M + B monogenic?");
  tri->add_option("--N", "Degree N");
  tri->add_option("--M", "Middle exponent 0 < M < N");
  tri->add_option("--A", "Middle coefficient, nonzero");
  tri->add_option("--B", "Constant term, nonzero");
  tri->add_flag("--dedekind-check", "Re-decide every prime with Dedekind's criterion");

  auto* cv = app.add_subcommand("cross-validate", "Compare the prediction with direct verdicts");
  add_ab(cv);
  cv->add_option("--s", "s >= 1");
  cv->add_option("--n-max", "Check n = 1..n-max (default 2)");
  cv->add_flag("--dedekind-check", "Re-decide every prime with Dedekind's criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::vector<const CLI::App*> chain;
    leaf(app, chain);
    std::map<std::string, std::string> config;
    if (const auto* opt = app.get_option("--config"); opt->count() > 0) {
      config = read_config(opt->as<std::string>());
      std::set<std::string> known;
      collect_names(app, known);
      for (const auto& [key, value] : config) {
        if (!known.count(key) || key == "config") {
          throw UsageError("config: unknown key '" + key + "'");
        }
      }
    }
    const Args args(chain, std::move(config));

    const std::string format = args.raw("format").value_or("plain");
    if (format != "plain" && format != "json" && format != "csv") {
      throw UsageError("--format must be plain, json or csv, got '" + format + "'");
    }
    unsigned jobs = 0;
    if (const auto j = args.raw("jobs")) {
      const auto v = Args::parse_u64("jobs", *j);
      if (v == 0 || v > 4096) throw UsageError("--jobs must be between 1 and 4096");
      jobs = static_cast<unsigned>(v);
    } else {
      jobs = default_jobs();
    }

    const std::string name = command_name(chain);
    const auto start = std::chrono::steady_clock::now();
    Emission e;
    if (name == "wss search") {
      e = cmd_wss_search(args, jobs);
    } else if (name == "table1") {
      e = cmd_table1(args, jobs);
    } else if (name == "period") {
      e = cmd_period(args);
    } else if (name == "mono check") {
      e = cmd_mono_check(args);
    } else if (name == "mono trinomial") {
      e = cmd_mono_trinomial(args);
    } else if (name == "cross-validate") {
      e = cmd_cross_validate(args);
    } else {
      throw UsageError("unknown command '" + name + "'");
    }
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;

    if (format == "json") {
      const double ms = args.flag("timing") ? elapsed.count() : 0.0;
      out << report::emit(report::envelope(name, e.inputs, e.results, ms));
    } else if (format == "csv") {
      out << report::emit_csv(e.csv_header, e.csv_rows);
    } else {
      out << e.plain;
    }
    return e.code;
  } catch (const UsageError& e) {
    err << "wallsun: " << e.what() << "\nRun with --help for more information.\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "wallsun: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const IncompleteFactorization& e) {
    err << "wallsun: resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "wallsun: resource limit: out of memory\n";
    return kResource;
  } catch (const InternalInconsistency& e) {
    err << "wallsun: internal inconsistency: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const std::exception& e) {
    err << "wallsun: error: " << e.what() << "\n";
    return kCheckFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"wallsun"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wallsun::cli
