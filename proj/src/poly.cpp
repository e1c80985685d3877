#include "wallsun/poly.hpp"

#include <algorithm>
#include <sstream>

namespace wallsun::poly {

namespace {

std::uint64_t reduce_long(long v, std::uint64_t p) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p;
  const std::uint64_t neg = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return (p - neg % p) % p;
}

void check_same_modulus(const ModPoly& a, const ModPoly& b) {
  if (a.modulus() != b.modulus()) {
    throw InvalidArgument("ModPoly: modulus mismatch (" + std::to_string(a.modulus()) + " vs " +
                          std::to_string(b.modulus()) + ")");
  }
}

template <class Coeff>
std::string render(const std::vector<Coeff>& c, auto&& str) {
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    const bool unit = c[i] == 1;
    if (!unit || i == 0) out << str(c[i]);
    if (i > 0) out << (unit ? "" : "*") << "x";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly::IntPoly(std::vector<Big> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::monomial(std::size_t n, const Big& c) {
  std::vector<Big> v(n + 1, Big(0));
  v[n] = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Big& IntPoly::lc() const {
  if (coeffs_.empty()) throw InvalidArgument("IntPoly: zero polynomial has no leading coefficient");
  return coeffs_.back();
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Big> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

Big IntPoly::content() const {
  Big g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  Big c = content();
  if (lc() < 0) c = -c;
  return divide_exact(c);
}

Big IntPoly::eval(const Big& x) const {
  Big acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

IntPoly IntPoly::divide_exact(const Big& d) const {
  if (d == 0) throw InvalidArgument("IntPoly::divide_exact: division by zero");
  std::vector<Big> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), d.get_mpz_t())) {
      throw InternalInconsistency("IntPoly::divide_exact: coefficient " + coeffs_[i].get_str() +
                                  " of x^" + std::to_string(i) + " not divisible by " +
                                  d.get_str());
    }
    mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), d.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

ModPoly IntPoly::reduce(std::uint64_t p) const {
  std::vector<std::uint64_t> out(coeffs_.size());
  const Big pm(static_cast<unsigned long>(p));
  Big r;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    mpz_fdiv_r(r.get_mpz_t(), coeffs_[i].get_mpz_t(), pm.get_mpz_t());
    out[i] = arith::to_u64(r, "IntPoly::reduce");
  }
  return ModPoly(p, std::move(out));
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Big(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Big(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const Big& k) {
  for (auto& c : coeffs_) c *= k;
  normalize();
  return *this;
}

IntPoly operator*(const IntPoly& x, const IntPoly& y) {
  if (x.is_zero() || y.is_zero()) return {};
  std::vector<Big> out(x.coeffs_.size() + y.coeffs_.size() - 1, Big(0));
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), x.coeffs_[i].get_mpz_t(), y.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
  return render(coeffs_, [](const Big& c) { return c < 0 ? "(" + c.get_str() + ")" : c.get_str(); });
}

IntPoly pow(const IntPoly& base, std::uint64_t k) {
  IntPoly acc{1};
  IntPoly sq = base;
  while (k > 0) {
    if (k & 1) acc = acc * sq;
    k >>= 1;
    if (k > 0) sq = sq * sq;
  }
  return acc;
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw InvalidArgument("pseudo_remainder: division by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<Big> r = a.coeffs();
  const int db = b.degree();
  const Big& lb = b.lc();
  int dr = a.degree();
  unsigned steps = 0;
  while (dr >= db) {
    const Big lead = r[dr];
    for (auto& c : r) c *= lb;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= lead * b.coeffs()[i];
    ++steps;
    r.pop_back();
    --dr;
    while (dr >= 0 && r[dr] == 0) {
      r.pop_back();
      --dr;
    }
  }
  // Total multiplier must be lc(b)^{deg a - deg b + 1}.
  const unsigned want = static_cast<unsigned>(a.degree() - db + 1);
  Big extra;
  mpz_pow_ui(extra.get_mpz_t(), lb.get_mpz_t(), want - steps);
  return IntPoly(std::move(r)) * extra;
}

Big resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw InvalidArgument("resultant: zero polynomial");
  IntPoly a = f, b = g;
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -s;
  }
  if (b.degree() == 0) {
    Big out;
    mpz_pow_ui(out.get_mpz_t(), b.lc().get_mpz_t(), static_cast<unsigned long>(a.degree()));
    return s * out;
  }
  const Big ca = a.content(), cb = b.content();
  a = a.divide_exact(ca);
  b = b.divide_exact(cb);
  Big t, tb;
  mpz_pow_ui(t.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(b.degree()));
  mpz_pow_ui(tb.get_mpz_t(), cb.get_mpz_t(), static_cast<unsigned long>(a.degree()));
  t *= tb;

  Big gg = 1, h = 1;
  for (;;) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    a = b;
    if (r.is_zero()) return 0;
    Big hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    b = r.divide_exact(gg * hd);
    gg = a.lc();
    if (delta == 0) {
      // h unchanged
    } else {
      Big num, den;
      mpz_pow_ui(num.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(delta));
      mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.degree() <= 0) break;
  }
  // b is a nonzero constant here.
  const int da = a.degree();
  Big num, den;
  mpz_pow_ui(num.get_mpz_t(), b.lc().get_mpz_t(), static_cast<unsigned long>(da));
  mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(da - 1));
  mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return s * t * h;
}

Big discriminant(const IntPoly& f) {
  const int n = f.degree();
  if (n < 1) throw InvalidArgument("discriminant: degree must be >= 1");
  const Big r = resultant(f, f.derivative());
  Big out;
  mpz_divexact(out.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
  const long long half = static_cast<long long>(n) * (n - 1) / 2;
  return half % 2 == 0 ? out : Big(-out);
}

// ---------------------------------------------------------------- ModPoly

ModPoly::ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= p_;
  normalize();
}

ModPoly::ModPoly(std::uint64_t p, std::initializer_list<long> coeffs) : p_(p) {
  for (long c : coeffs) coeffs_.push_back(reduce_long(c, p));
  normalize();
}

void ModPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t ModPoly::lc() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  const auto inv = arith::invmod(lc(), p_);
  if (!inv) throw InvalidArgument("ModPoly::monic: leading coefficient not invertible");
  return *this * *inv;
}

ModPoly ModPoly::derivative() const {
  if (coeffs_.size() <= 1) return ModPoly(p_);
  std::vector<std::uint64_t> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = arith::mulmod(coeffs_[i], i % p_, p_);
  return ModPoly(p_, std::move(d));
}

std::uint64_t ModPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = arith::addmod(arith::mulmod(acc, x, p_), coeffs_[i], p_);
  }
  return acc;
}

IntPoly ModPoly::lift() const {
  std::vector<Big> out;
  out.reserve(coeffs_.size());
  for (auto c : coeffs_) out.emplace_back(static_cast<unsigned long>(c));
  return IntPoly(std::move(out));
}

ModPoly& ModPoly::operator+=(const ModPoly& o) {
  check_same_modulus(*this, o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = arith::addmod(coeffs_[i], o.coeffs_[i], p_);
  normalize();
  return *this;
}

ModPoly& ModPoly::operator-=(const ModPoly& o) {
  check_same_modulus(*this, o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = arith::submod(coeffs_[i], o.coeffs_[i], p_);
  normalize();
  return *this;
}

ModPoly& ModPoly::operator*=(std::uint64_t k) {
  k %= p_;
  for (auto& c : coeffs_) c = arith::mulmod(c, k, p_);
  normalize();
  return *this;
}

ModPoly operator*(const ModPoly& x, const ModPoly& y) {
  check_same_modulus(x, y);
  if (x.is_zero() || y.is_zero()) return ModPoly(x.p_);
  const std::uint64_t p = x.p_;
  std::vector<std::uint64_t> out(x.coeffs_.size() + y.coeffs_.size() - 1, 0);
  if (p < (std::uint64_t{1} << 31)) {
    // Products fit in 62 bits; accumulate a few before reducing.
    std::vector<unsigned __int128> acc(out.size(), 0);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j) acc[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<std::uint64_t>(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
        out[i + j] = arith::addmod(out[i + j], arith::mulmod(x.coeffs_[i], y.coeffs_[j], p), p);
      }
    }
  }
  return ModPoly(p, std::move(out));
}

std::string ModPoly::to_string() const {
  return render(coeffs_, [](std::uint64_t c) { return std::to_string(c); });
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
  check_same_modulus(a, b);
  if (b.is_zero()) throw InvalidArgument("ModPoly: division by zero polynomial");
  const std::uint64_t p = a.p_;
  if (a.degree() < b.degree()) return {ModPoly(p), a};
  const auto inv = arith::invmod(b.lc(), p);
  if (!inv) throw InvalidArgument("ModPoly: leading coefficient not invertible");
  std::vector<std::uint64_t> r = a.coeffs_;
  const int db = b.degree();
  std::vector<std::uint64_t> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    const std::uint64_t coef = arith::mulmod(r[i], *inv, p);
    q[i - db] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= db; ++j) {
      r[i - db + j] = arith::submod(r[i - db + j], arith::mulmod(coef, b.coeffs_[j], p), p);
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
}

ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }
ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }

}  // namespace wallsun::poly
