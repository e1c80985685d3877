#include "wallsun/mono.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "wallsun/wss.hpp"

namespace wallsun::mono {

namespace {

Big big(std::uint64_t v) { return Big(static_cast<unsigned long>(v)); }

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y, const char* what) {
  unsigned __int128 v = static_cast<unsigned __int128>(x) * y;
  if (v >> 64) throw InvalidArgument(std::string(what) + ": overflows 64 bits");
  return static_cast<std::uint64_t>(v);
}

void add_primes(std::set<std::uint64_t>& out, const Big& v) {
  if (v == 0) return;
  for (const auto& f : arith::factorize(abs(v)).factors) {
    out.insert(arith::to_u64(f.prime, "prime divisor"));
  }
}

Decider decider_of(JksCase c) {
  switch (c) {
    case JksCase::JKS1: return Decider::JKS1;
    case JksCase::JKS2: return Decider::JKS2;
    case JksCase::JKS3: return Decider::JKS3;
    case JksCase::JKS4: return Decider::JKS4;
    case JksCase::JKS5: return Decider::JKS5;
  }
  return Decider::DedekindGeneric;
}

MonogenicityReport decide(const TrinomialSpec& t, const std::vector<std::uint64_t>& primes,
                          IrreducibilitySource source, MonoOptions opts) {
  MonogenicityReport report;
  report.poly = t;
  report.irreducibility_source = source;
  std::optional<poly::IntPoly> T;
  for (std::uint64_t p : primes) {
    const JksVerdict v = jks_prime_check(t, p);
    if (opts.dedekind_cross_check) {
      if (!T) T = t.to_poly();
      if (dedekind_index_coprime(*T, p) != v.index_coprime) {
        throw InternalInconsistency("JKS and Dedekind disagree for " + T->to_string() +
                                    " at p=" + std::to_string(p));
      }
    }
    report.prime_verdicts.push_back({p, v.index_coprime, decider_of(v.which)});
  }
  report.monogenic = std::all_of(report.prime_verdicts.begin(), report.prime_verdicts.end(),
                                 [](const PrimeVerdict& v) { return v.index_coprime; });
  return report;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  const auto inv = arith::invmod(a, m);
  if (!inv) throw InvalidArgument("inverse does not exist");
  return *inv;
}

}  // namespace

// ------------------------------------------------------------ specs

PowerCompositionalSpec PowerCompositionalSpec::make(const LucasParams& params, std::uint64_t s,
                                                    std::uint64_t n) {
  if (s < 1) throw InvalidArgument("PowerCompositionalSpec: s must be >= 1");
  PowerCompositionalSpec out{params, s, n};
  checked_mul(2, out.s_pow_n(), "PowerCompositionalSpec: 2 s^n");
  return out;
}

std::uint64_t PowerCompositionalSpec::s_pow_n() const {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < n; ++i) v = checked_mul(v, s, "PowerCompositionalSpec: s^n");
  return v;
}

TrinomialSpec PowerCompositionalSpec::trinomial() const {
  const std::uint64_t k = s_pow_n();
  return TrinomialSpec::make(2 * k, k, -params.a, -params.b);
}

std::vector<std::uint64_t> disc_primes(const PowerCompositionalSpec& spec) {
  std::set<std::uint64_t> primes;
  const std::uint64_t k = spec.s_pow_n();
  if (k > 1) {
    add_primes(primes, spec.params.b);
    add_primes(primes, big(spec.s));
  }
  add_primes(primes, spec.params.quadratic_discriminant());
  return {primes.begin(), primes.end()};
}

// ------------------------------------------------------------ quadratic ring

QuadElem QuadElem::scalar(const LucasParams& params, std::uint64_t c, std::uint64_t modulus) {
  return {c % modulus, 0, modulus, params.a_mod(modulus), params.b_mod(modulus)};
}

QuadElem QuadElem::alpha(const LucasParams& params, std::uint64_t modulus) {
  return {0, 1 % modulus, modulus, params.a_mod(modulus), params.b_mod(modulus)};
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  using arith::addmod;
  using arith::mulmod;
  const std::uint64_t m = x.modulus;
  // alpha^2 = a alpha + b
  const std::uint64_t dd = mulmod(x.d, y.d, m);
  QuadElem out = x;
  out.c = addmod(mulmod(x.c, y.c, m), mulmod(dd, x.b, m), m);
  out.d = addmod(addmod(mulmod(x.c, y.d, m), mulmod(x.d, y.c, m), m), mulmod(dd, x.a, m), m);
  return out;
}

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  QuadElem out = x;
  out.c = arith::addmod(x.c, y.c, x.modulus);
  out.d = arith::addmod(x.d, y.d, x.modulus);
  return out;
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  QuadElem out = x;
  out.c = arith::submod(x.c, y.c, x.modulus);
  out.d = arith::submod(x.d, y.d, x.modulus);
  return out;
}

QuadElem quad_pow(const QuadElem& base, const Big& k) {
  if (sgn(k) < 0) throw InvalidArgument("quad_pow: negative exponent");
  QuadElem acc = base;
  acc.c = 1 % base.modulus;
  acc.d = 0;
  const auto bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = acc * acc;
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = acc * base;
  }
  return acc;
}

QuadElem quad_pow(const QuadElem& base, std::uint64_t k) {
  return quad_pow(base, big(k));
}

std::uint64_t quad_order(const QuadElem& x) {
  QuadElem one = x;
  one.c = 1 % x.modulus;
  one.d = 0;
  QuadElem cur = x;
  // Unit groups here have at most modulus^2 elements.
  const std::uint64_t bound = checked_mul(x.modulus, x.modulus, "quad_order");
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (cur == one) return k;
    cur = cur * x;
  }
  return 0;
}

bool lemma_main2_check_at(const LucasParams& params, std::uint64_t p, std::uint64_t m,
                          std::uint64_t root) {
  const std::uint64_t p2 = p * p;
  const QuadElem x = QuadElem::scalar(params, root, p2);
  const Big pm = [&] {
    Big v;
    mpz_ui_pow_ui(v.get_mpz_t(), p, static_cast<unsigned long>(m));
    return v;
  }();
  const QuadElem xp = quad_pow(x, pm);
  const QuadElem value = xp * xp - QuadElem::scalar(params, params.a_mod(p2), p2) * xp -
                         QuadElem::scalar(params, params.b_mod(p2), p2);
  return value.is_zero();
}

bool lemma_main2_check(const LucasParams& params, std::uint64_t p, std::uint64_t m) {
  if (p < 3 || !arith::is_prime(p)) {
    throw InvalidArgument("lemma_main2_check: p must be an odd prime, got " + std::to_string(p));
  }
  if (m < 1) throw InvalidArgument("lemma_main2_check: m must be >= 1");
  if (params.b_mod(p) == 0) {
    throw InvalidArgument("lemma_main2_check: p=" + std::to_string(p) + " divides b");
  }
  const int d = delta(params, p);
  if (d == 1) {
    throw InvalidArgument("lemma_main2_check: delta_p = +1 at p=" + std::to_string(p));
  }
  const std::uint64_t p2 = p * p;
  if (d == 0) {
    const std::uint64_t root = arith::mulmod(params.a_mod(p2), inv_mod(2, p2), p2);
    return lemma_main2_check_at(params, p, m, root);
  }
  Big pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), p, static_cast<unsigned long>(m));
  const QuadElem beta = quad_pow(QuadElem::alpha(params, p2), pm);
  const QuadElem value = beta * beta - QuadElem::scalar(params, params.a_mod(p2), p2) * beta -
                         QuadElem::scalar(params, params.b_mod(p2), p2);
  return value.is_zero();
}

// ------------------------------------------------------------ verdicts

std::string_view to_string(Decider d) {
  switch (d) {
    case Decider::JKS1: return "JKS1";
    case Decider::JKS2: return "JKS2";
    case Decider::JKS3: return "JKS3";
    case Decider::JKS4: return "JKS4";
    case Decider::JKS5: return "JKS5";
    case Decider::DedekindGeneric: return "DedekindGeneric";
  }
  return "?";
}

std::string_view to_string(IrreducibilitySource s) {
  switch (s) {
    case IrreducibilitySource::LemmaIrreducibleStarConditions: return "LemmaIrreducibleStarConditions";
    case IrreducibilitySource::AssumedByCaller: return "AssumedByCaller";
  }
  return "?";
}

MonogenicityReport is_monogenic_Fn(const PowerCompositionalSpec& spec, MonoOptions opts) {
  if (!spec.params.star_valid) {
    throw InvalidArgument("is_monogenic_Fn: (a,b)=(" + spec.params.a.get_str() + "," +
                          spec.params.b.get_str() + ") violates the standing conditions");
  }
  return decide(spec.trinomial(), disc_primes(spec),
                IrreducibilitySource::LemmaIrreducibleStarConditions, opts);
}

MonogenicityReport is_monogenic_trinomial(const TrinomialSpec& t, MonoOptions opts) {
  if (t.D == 0 || (t.M > 1 && t.B == 0)) {
    throw InvalidArgument("is_monogenic_trinomial: discriminant vanishes, polynomial not separable");
  }
  std::set<std::uint64_t> primes;
  if (t.M > 1) add_primes(primes, t.B);
  add_primes(primes, t.D);
  return decide(t, {primes.begin(), primes.end()}, IrreducibilitySource::AssumedByCaller, opts);
}

// ------------------------------------------------------------ theorem

TheoremHypotheses theorem_hypotheses(const LucasParams& params, std::uint64_t s) {
  if (s < 1) throw InvalidArgument("theorem_hypotheses: s must be >= 1");
  TheoremHypotheses h;
  h.star = params.star_valid;
  h.gcd_bs = std::gcd(params.b_mod(s), s) == 1;
  h.delta_conditions = true;
  for (const auto& f : arith::factorize(s).factors) {
    const std::uint64_t p = arith::to_u64(f.prime, "s");
    if (p < 3) continue;
    const int d = delta(params, p);
    if (d == 1 || (p == 3 && d != -1)) h.delta_conditions = false;
  }
  h.overall = h.star && h.gcd_bs && h.delta_conditions;
  return h;
}

bool predict_monogenic(const LucasParams& params, std::uint64_t s) {
  const TheoremHypotheses h = theorem_hypotheses(params, s);
  if (!h.overall) {
    throw InvalidArgument("predict_monogenic: hypotheses fail for (a,b,s)=(" + params.a.get_str() +
                          "," + params.b.get_str() + "," + std::to_string(s) + ")");
  }
  for (const auto& f : arith::factorize(s).factors) {
    if (is_wss(params, arith::to_u64(f.prime, "s")).is_wss) return false;
  }
  return true;
}

CrossValidation cross_validate(const LucasParams& params, std::uint64_t s, std::uint64_t n_max,
                               MonoOptions opts) {
  if (n_max < 1) throw InvalidArgument("cross_validate: n_max must be >= 1");
  CrossValidation out;
  out.hypotheses = theorem_hypotheses(params, s);
  if (!params.star_valid) {
    throw InvalidArgument("cross_validate: (a,b) violates the standing conditions");
  }
  out.outside_hypotheses = !out.hypotheses.overall;
  if (out.hypotheses.overall) out.prediction = predict_monogenic(params, s);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    CrossValidationRow row;
    row.n = n;
    row.report = is_monogenic_Fn(PowerCompositionalSpec::make(params, s, n), opts);
    if (out.prediction) row.agrees = row.report.monogenic == *out.prediction;
    out.agreement = out.agreement && row.agrees;
    if (!out.rows.empty() && out.rows.front().report.monogenic != row.report.monogenic) {
      out.n_independent = false;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace wallsun::mono
