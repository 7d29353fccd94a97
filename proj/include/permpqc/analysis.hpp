#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "permpqc/group.hpp"
#include "permpqc/permutation.hpp"
#include "permpqc/protocols.hpp"

namespace permpqc {

struct NotInSubgroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedStructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest e in [0, limit) with base^e == target, by stepping one
// multiplication at a time. Test oracle; exponential in the subgroup order.
inline std::optional<u128> dlp_brute_force(const Permutation& base, const Permutation& target,
                                           u128 limit) {
  if (base.degree() != target.degree())
    throw std::invalid_argument("dlp_brute_force: degree mismatch");
  if (limit == 0) throw std::invalid_argument("dlp_brute_force: limit must be >= 1");
  Permutation current = Permutation::identity(base.degree());
  for (u128 e = 0; e < limit; ++e) {
    if (current == target) return e;
    current = base * current;
  }
  return std::nullopt;
}

struct CycleResidue {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
};

// Unique x < product(moduli) with x = residue_i (mod modulus_i), built
// incrementally (Garner). Moduli must be pairwise coprime.
inline u128 crt_combine(const std::vector<CycleResidue>& residues) {
  u128 x = 0;
  u128 modulus = 1;
  for (const auto& [residue, m] : residues) {
    if (m == 0) throw std::invalid_argument("crt_combine: zero modulus");
    if (residue >= m) throw std::invalid_argument("crt_combine: residue not reduced");
    if (m == 1) continue;
    const std::uint64_t m_red = static_cast<std::uint64_t>(modulus % m);
    if (std::gcd(m_red == 0 ? m : m_red, m) != 1)
      throw std::invalid_argument("crt_combine: moduli are not pairwise coprime");
    // t = (residue - x) / modulus (mod m), all in small arithmetic
    std::uint64_t x_red = static_cast<std::uint64_t>(x % m);
    std::uint64_t diff = (residue >= x_red) ? residue - x_red : m - (x_red - residue);
    // modular inverse of m_red mod m by extended Euclid
    std::int64_t t0 = 0, t1 = 1;
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(m_red);
    while (r1 != 0) {
      const std::int64_t quot = r0 / r1;
      t0 = std::exchange(t1, t0 - quot * t1);
      r0 = std::exchange(r1, r0 - quot * r1);
    }
    std::int64_t inv = t0 % static_cast<std::int64_t>(m);
    if (inv < 0) inv += static_cast<std::int64_t>(m);
    const std::uint64_t t =
        static_cast<std::uint64_t>((static_cast<u128>(diff) * static_cast<u128>(inv)) % m);
    if (modulus > u128_max / m)
      throw std::overflow_error("crt_combine: combined modulus exceeds 128 bits");
    x += modulus * t;
    modulus *= m;
  }
  return x;
}

struct DlpSolution {
  u128 exponent = 0;
  u128 modulus = 1;                    // product of the cycle lengths used
  std::vector<CycleResidue> residues;  // per cycle, in canonical cycle order
};

// Discrete log in <p> from cycle structure: within each cycle of p, target
// acts as a rotation whose shift is the exponent mod the cycle length; CRT
// combines the shifts. O(n) plus one verification power, so the DLP here is
// polynomial, not brute-force hard.
inline DlpSolution dlp_cycle_attack(const Permutation& p, const Permutation& target) {
  if (p.degree() != target.degree())
    throw std::invalid_argument("dlp_cycle_attack: degree mismatch");
  const auto dec = cycle_decomposition(p);

  // Lengths >= 2 must be pairwise coprime for the residues to determine the
  // exponent; repeated lengths are the common failure shape.
  {
    const auto lengths = dec.sorted_lengths();
    for (std::size_t i = 0; i < lengths.size(); ++i)
      for (std::size_t j = i + 1; j < lengths.size(); ++j)
        if (lengths[i] > 1 && std::gcd(lengths[i], lengths[j]) != 1)
          throw UnsupportedStructureError(
              "dlp_cycle_attack: cycle lengths are not pairwise coprime");
  }

  DlpSolution sol;
  std::vector<std::uint32_t> pos_in_cycle(p.degree(), 0);
  std::vector<std::uint32_t> cycle_of(p.degree(), 0);
  for (std::size_t c = 0; c < dec.cycles.size(); ++c)
    for (std::size_t i = 0; i < dec.cycles[c].size(); ++i) {
      pos_in_cycle[dec.cycles[c][i]] = static_cast<std::uint32_t>(i);
      cycle_of[dec.cycles[c][i]] = static_cast<std::uint32_t>(c);
    }

  for (std::size_t c = 0; c < dec.cycles.size(); ++c) {
    const auto& cycle = dec.cycles[c];
    const std::uint32_t x = cycle.front();  // minimum point, position 0
    const std::uint32_t tx = target(x);
    if (cycle_of[tx] != c)
      throw NotInSubgroupError("dlp_cycle_attack: target moves a point out of its cycle");
    sol.residues.push_back({pos_in_cycle[tx], cycle.size()});
  }

  sol.exponent = crt_combine(sol.residues);
  sol.modulus = 1;
  for (const auto& r : sol.residues)
    if (r.modulus > 1) sol.modulus *= r.modulus;

  if (power(p, sol.exponent) != target)
    throw NotInSubgroupError("dlp_cycle_attack: verification failed, target not in <p>");
  return sol;
}

// --- session audits ---------------------------------------------------------

struct AuditCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  std::vector<std::string> anomalies;
  // The protocol path itself (public values reproduce, recovery succeeds);
  // informational listing checks do not affect it.
  bool protocol_consistent = false;

  void add(std::string name, bool ok, std::string detail = "") {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  bool all_ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

inline std::string render_text(const AuditReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks)
    out << (c.ok ? "  ok      " : "  MISMATCH") << "  " << c.name
        << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  for (const auto& a : report.anomalies) out << "  anomaly   " << a << "\n";
  out << (report.protocol_consistent ? "protocol path consistent"
                                     : "PROTOCOL PATH INCONSISTENT")
      << "\n";
  return out.str();
}

struct DhTranscript {
  Permutation generator;
  u128 alice_secret = 0;
  u128 bob_secret = 0;
  Permutation alice_token;
  Permutation bob_token;
  Permutation alice_key;
  Permutation bob_key;
};

// Recomputes every public value and cross-recovers the secrets from the
// published tokens.
inline AuditReport audit_dh_session(const GroupParams& params, const DhTranscript& t) {
  AuditReport report;
  const auto gen_check = validate_generator(params, t.generator);
  report.add("generator.cycle-type", gen_check.valid, gen_check.diagnostic);
  report.add("generator.order", order(t.generator) == params.omega);

  report.add("alice.token", power(t.generator, t.alice_secret) == t.alice_token);
  report.add("bob.token", power(t.generator, t.bob_secret) == t.bob_token);

  for (const auto& [name, token, secret] :
       {std::tuple{"alice.secret-recovery", &t.alice_token, t.alice_secret},
        std::tuple{"bob.secret-recovery", &t.bob_token, t.bob_secret}}) {
    try {
      const auto sol = dlp_cycle_attack(t.generator, *token);
      report.add(name, sol.exponent == secret,
                 "recovered " + to_string(sol.exponent));
    } catch (const std::exception& e) {
      report.add(name, false, e.what());
    }
  }

  report.add("alice.key", power(t.bob_token, t.alice_secret) == t.alice_key);
  report.add("bob.key", power(t.alice_token, t.bob_secret) == t.bob_key);
  report.add("shared-key.equal", t.alice_key == t.bob_key);

  report.protocol_consistent = report.all_ok();
  return report;
}

struct ElGamalDcpTranscript {
  Permutation generator;
  Permutation auxiliary;
  u128 m = 0, n = 0;  // sender private exponents
  u128 r = 0, s = 0;  // receiver private exponents
  u128 t = 0;         // published session exponent
  // Printed private-component listings; optional because they are the
  // untrusted part of the record.
  std::optional<Permutation> sender_pm, sender_pn, receiver_pr, receiver_ps;
  Permutation sender_public;
  Permutation receiver_public;
  Permutation session_key;  // k = p^t as published
  Permutation message;
  Permutation y1, y2;
  Permutation recovered;
};

inline AuditReport audit_elgamal_dcp_session(const GroupParams& params,
                                             const ElGamalDcpTranscript& t) {
  AuditReport report;
  const auto gen_check = validate_generator(params, t.generator);
  report.add("generator.cycle-type", gen_check.valid, gen_check.diagnostic);
  report.add("generator.order", order(t.generator) == params.omega);

  const auto check_component = [&](const char* name, const std::optional<Permutation>& listing,
                                   u128 exponent) {
    if (!listing) return;
    report.add(name, power(t.generator, exponent) == *listing);
    try {
      dlp_cycle_attack(t.generator, *listing);
    } catch (const NotInSubgroupError&) {
      report.anomalies.push_back(std::string(name) +
                                 " listing is not any power of the generator");
    }
  };
  check_component("sender.component-m", t.sender_pm, t.m);
  check_component("sender.component-n", t.sender_pn, t.n);
  check_component("receiver.component-r", t.receiver_pr, t.r);
  check_component("receiver.component-s", t.receiver_ps, t.s);
  if (t.sender_pm && t.receiver_pr && *t.sender_pm == *t.receiver_pr)
    report.anomalies.push_back(
        "receiver.component-r listing duplicates sender.component-m listing");
  if (t.sender_pn && t.receiver_ps && *t.sender_pn == *t.receiver_ps)
    report.anomalies.push_back(
        "receiver.component-s listing duplicates sender.component-n listing");

  report.add("sender.public-key",
             elgamal_dcp_public(t.generator, t.auxiliary, t.m, t.n) == t.sender_public);
  report.add("receiver.public-key",
             elgamal_dcp_public(t.generator, t.auxiliary, t.r, t.s) == t.receiver_public);
  report.add("session.key", power(t.generator, t.t) == t.session_key);

  const Ciphertext rebuilt = elgamal_dcp_encrypt_with(
      t.generator, t.auxiliary, t.receiver_public, {t.m, t.n}, t.message, t.t);
  report.add("ciphertext.y1", rebuilt.y1 == t.y1,
             rebuilt.y1 == t.y1 ? "" : "published y1 does not reproduce from the published session exponent");
  report.add("ciphertext.y2", rebuilt.y2 == t.y2,
             rebuilt.y2 == t.y2 ? "" : "published y2 does not reproduce from the published session exponent");

  const Permutation decrypted =
      elgamal_dcp_decrypt({t.r, t.s}, t.generator, {t.y1, t.y2});
  report.add("decryption.of-published-ciphertext", decrypted == t.recovered);
  report.add("recovered.equals-message", t.recovered == t.message);

  report.protocol_consistent = true;
  for (const auto& c : report.checks) {
    const bool informational = c.name.ends_with("component-m") ||
                               c.name.ends_with("component-n") ||
                               c.name.ends_with("component-r") ||
                               c.name.ends_with("component-s") ||
                               c.name.starts_with("ciphertext.");
    if (!informational && !c.ok) report.protocol_consistent = false;
  }
  return report;
}

}  // namespace permpqc
