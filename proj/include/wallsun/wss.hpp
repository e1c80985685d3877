#ifndef WALLSUN_WSS_HPP
#define WALLSUN_WSS_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wallsun/lucas.hpp"

namespace wallsun {

/// Which test settled the verdict. The Lemma3_* paths are closed-form
/// shortcuts; the certificate still carries both periods.
enum class WssPath { Lemma3_p2, Lemma3_pDividesA, Lemma3_delta0, GeneralPeriodCompare };

std::string_view to_string(WssPath p);

/// p is an (a,b)-Wall-Sun-Sun prime iff pi(p^2) == pi(p).
struct WssCertificate {
  std::uint64_t p = 0;
  std::uint64_t pi_p = 0;
  std::uint64_t pi_p2 = 0;
  bool is_wss = false;
  WssPath path = WssPath::GeneralPeriodCompare;
  /// U_{pi(p)} = 0 (mod p^2). Implied by is_wss, not conversely in general.
  bool usub_condition = false;

  friend bool operator==(const WssCertificate&, const WssCertificate&) = default;
};

/// Closed-form verdicts that avoid comparing periods:
///  - p = 2 (with a != 0 mod 4): WSS iff (a, b) = (3, 3) mod 4;
///  - p >= 3, p | a: WSS iff ord_{p^2}(b) = ord_p(b) and p^2 | a;
///  - p >= 5, p | dtilde: never WSS (needs dtilde squarefree at p).
/// nullopt when none applies.
std::optional<bool> lemma3_fast_path(const LucasParams& params, std::uint64_t p);

/// Same, also reporting which case fired.
std::optional<std::pair<bool, WssPath>> lemma3_fast_path_tagged(const LucasParams& params,
                                                                std::uint64_t p);

/// Throws InvalidArgument when p is not prime or p | b.
WssCertificate is_wss(const LucasParams& params, std::uint64_t p);

bool usub_condition(const LucasParams& params, std::uint64_t p);

/// All WSS primes p <= p_max with p not dividing b, ascending. The prime
/// range is split across `jobs` workers; the result does not depend on it.
std::vector<WssCertificate> search_wss(const LucasParams& params, std::uint64_t p_max,
                                       unsigned jobs = 1);

}  // namespace wallsun

#endif  // WALLSUN_WSS_HPP
