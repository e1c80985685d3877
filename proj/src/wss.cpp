#include "wallsun/wss.hpp"

#include <algorithm>
#include <future>
#include <string>

namespace wallsun {

namespace {

WssCertificate certify(const LucasParams& params, std::uint64_t p) {
  const PeriodResult pi_p = period_prime(params, p);
  const PeriodResult pi_p2 = period_prime_squared(params, p, pi_p);

  WssCertificate cert;
  cert.p = p;
  cert.pi_p = pi_p.pi;
  cert.pi_p2 = pi_p2.pi;
  cert.is_wss = pi_p.pi == pi_p2.pi;
  cert.usub_condition = lucas_u_mod(params, pi_p.pi, p * p) == 0;

  if (const auto fast = lemma3_fast_path_tagged(params, p)) {
    cert.path = fast->second;
    if (fast->first != cert.is_wss) {
      throw InternalInconsistency("is_wss: " + std::string(to_string(fast->second)) +
                                  " verdict disagrees with periods at p=" + std::to_string(p));
    }
  }
  return cert;
}

}  // namespace

std::string_view to_string(WssPath p) {
  switch (p) {
    case WssPath::Lemma3_p2: return "Lemma3_p2";
    case WssPath::Lemma3_pDividesA: return "Lemma3_pDividesA";
    case WssPath::Lemma3_delta0: return "Lemma3_delta0";
    case WssPath::GeneralPeriodCompare: return "GeneralPeriodCompare";
  }
  return "?";
}

std::optional<std::pair<bool, WssPath>> lemma3_fast_path_tagged(const LucasParams& params,
                                                                std::uint64_t p) {
  if (!arith::is_prime(p)) {
    throw InvalidArgument("lemma3_fast_path: " + std::to_string(p) + " is not prime");
  }
  if (params.b_mod(p) == 0) {
    throw InvalidArgument("lemma3_fast_path: p=" + std::to_string(p) + " divides b");
  }
  if (p == 2) {
    // The pi(2)/pi(4) table only covers a != 0 (mod 4).
    if (params.a_mod(4) == 0) return std::nullopt;
    return std::pair{params.a_mod(4) == 3 && params.b_mod(4) == 3, WssPath::Lemma3_p2};
  }
  const std::uint64_t p2 = p * p;
  if (params.a_mod(p) == 0) {
    const std::uint64_t b = params.b_mod(p2);
    const bool same_order = arith::mul_order(Big(static_cast<unsigned long>(b)), p2) ==
                            arith::mul_order(Big(static_cast<unsigned long>(b % p)), p);
    return std::pair{same_order && params.a_mod(p2) == 0, WssPath::Lemma3_pDividesA};
  }
  if (p >= 5 && delta(params, p) == 0 && params.quadratic_discriminant() % p2 != 0) {
    return std::pair{false, WssPath::Lemma3_delta0};
  }
  return std::nullopt;
}

std::optional<bool> lemma3_fast_path(const LucasParams& params, std::uint64_t p) {
  if (auto tagged = lemma3_fast_path_tagged(params, p)) return tagged->first;
  return std::nullopt;
}

WssCertificate is_wss(const LucasParams& params, std::uint64_t p) {
  if (!arith::is_prime(p)) throw InvalidArgument("is_wss: " + std::to_string(p) + " is not prime");
  if (params.b_mod(p) == 0) {
    throw InvalidArgument("is_wss: p=" + std::to_string(p) + " divides b");
  }
  return certify(params, p);
}

bool usub_condition(const LucasParams& params, std::uint64_t p) {
  if (!arith::is_prime(p)) {
    throw InvalidArgument("usub_condition: " + std::to_string(p) + " is not prime");
  }
  if (params.b_mod(p) == 0) {
    throw InvalidArgument("usub_condition: p=" + std::to_string(p) + " divides b");
  }
  return lucas_u_mod(params, period_prime(params, p).pi, p * p) == 0;
}

std::vector<WssCertificate> search_wss(const LucasParams& params, std::uint64_t p_max,
                                       unsigned jobs) {
  if (p_max < 2) throw InvalidArgument("search_wss: p_max must be >= 2");
  const std::vector<std::uint64_t> primes = arith::primes_up_to(p_max);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));

  auto scan = [&](std::size_t begin, std::size_t end) {
    std::vector<WssCertificate> hits;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t p = primes[i];
      if (params.b_mod(p) == 0) continue;
      WssCertificate cert = certify(params, p);
      if (cert.is_wss) hits.push_back(cert);
    }
    return hits;
  };

  if (jobs == 1) return scan(0, primes.size());

  // Interleaved chunks keep the (larger, slower) primes spread over workers.
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
  std::vector<std::future<std::vector<std::vector<WssCertificate>>>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      std::vector<std::vector<WssCertificate>> out;
      for (std::size_t c = w; c < chunks; c += jobs) {
        out.push_back(scan(c * kChunk, std::min(primes.size(), (c + 1) * kChunk)));
      }
      return out;
    }));
  }
  std::vector<WssCertificate> merged;
  for (auto& w : workers) {
    for (auto& part : w.get()) merged.insert(merged.end(), part.begin(), part.end());
  }
  std::sort(merged.begin(), merged.end(),
            [](const WssCertificate& x, const WssCertificate& y) { return x.p < y.p; });
  return merged;
}

}  // namespace wallsun
