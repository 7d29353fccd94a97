#pragma once

#include <stdexcept>
#include <utility>

#include "permpqc/group.hpp"
#include "permpqc/permutation.hpp"

namespace permpqc {

// The three protocols over the cyclic subgroup <p>:
//   key exchange      token = p^a, shared key = (other token)^own
//   cipher, DCP form  public = p^m g p^n, y1 = k^m g k^n, y2 = msg (k^m pub_B k^n)
//   cipher, DP form   public = p^m g q^n, y1 = k^m g l^n, y2 = msg (k^m pub_B l^n)
// Products follow the pinned convention: the rightmost factor acts first.

// Uniform secret exponent in [1, omega-1]; 0 and omega are excluded since
// both map to the identity token.
inline u128 sample_exponent(const GroupParams& params, SeededRng& rng) {
  return rng.uniform_u128_below(params.omega_u128() - 1) + 1;
}

struct DhKeyPair {
  u128 secret = 0;
  Permutation token;
};

inline DhKeyPair dh_keygen(const GroupParams& params, const Permutation& generator,
                           SeededRng& rng) {
  const auto check = validate_generator(params, generator);
  if (!check.valid)
    throw std::invalid_argument("dh_keygen: invalid generator: " + check.diagnostic);
  const u128 secret = sample_exponent(params, rng);
  return {secret, power(generator, secret)};
}

inline Permutation dh_shared_key(u128 own_secret, const Permutation& other_token) {
  return power(other_token, own_secret);
}

struct ElGamalPrivateDcp {
  u128 m = 0;
  u128 n = 0;
};

struct ElGamalPrivateDp {
  u128 m = 0;  // exponent of p
  u128 n = 0;  // exponent of q
};

struct Ciphertext {
  Permutation y1;
  Permutation y2;
};

// left^a * middle * right^b (rightmost factor first).
inline Permutation power_sandwich(const Permutation& left, u128 a, const Permutation& middle,
                                  const Permutation& right, u128 b) {
  return power(left, a) * middle * power(right, b);
}

// --- DCP variant -----------------------------------------------------------

inline Permutation elgamal_dcp_public(const Permutation& p, const Permutation& g, u128 m,
                                      u128 n) {
  if (p.degree() != g.degree())
    throw std::invalid_argument("elgamal_dcp_public: degree mismatch");
  return power_sandwich(p, m, g, p, n);
}

inline std::pair<ElGamalPrivateDcp, Permutation> elgamal_dcp_keygen(const GroupParams& params,
                                                                    const Permutation& p,
                                                                    const Permutation& g,
                                                                    SeededRng& rng) {
  const auto check = validate_generator(params, p);
  if (!check.valid)
    throw std::invalid_argument("elgamal_dcp_keygen: invalid generator: " + check.diagnostic);
  ElGamalPrivateDcp priv{sample_exponent(params, rng), sample_exponent(params, rng)};
  return {priv, elgamal_dcp_public(p, g, priv.m, priv.n)};
}

// Deterministic core with the session exponent supplied; the sampling wrapper
// below draws a fresh one per call.
inline Ciphertext elgamal_dcp_encrypt_with(const Permutation& p, const Permutation& g,
                                           const Permutation& receiver_public,
                                           const ElGamalPrivateDcp& sender,
                                           const Permutation& message, u128 t) {
  if (message.degree() != p.degree() || g.degree() != p.degree() ||
      receiver_public.degree() != p.degree())
    throw std::invalid_argument("elgamal_dcp_encrypt: degree mismatch");
  const Permutation k = power(p, t);
  Ciphertext ct;
  ct.y1 = power_sandwich(k, sender.m, g, k, sender.n);
  ct.y2 = message * power_sandwich(k, sender.m, receiver_public, k, sender.n);
  return ct;
}

inline Ciphertext elgamal_dcp_encrypt(const GroupParams& params, const Permutation& p,
                                      const Permutation& g, const Permutation& receiver_public,
                                      const ElGamalPrivateDcp& sender, const Permutation& message,
                                      SeededRng& rng) {
  return elgamal_dcp_encrypt_with(p, g, receiver_public, sender, message,
                                  sample_exponent(params, rng));
}

// msg = y2 (p^r y1 p^s)^{-1}; k-powers commute with p-powers, so the sandwich
// reproduces the mask used in y2.
inline Permutation elgamal_dcp_decrypt(const ElGamalPrivateDcp& receiver, const Permutation& p,
                                       const Ciphertext& ct) {
  if (ct.y1.degree() != p.degree() || ct.y2.degree() != p.degree())
    throw std::invalid_argument("elgamal_dcp_decrypt: degree mismatch");
  return ct.y2 * inverse(power_sandwich(p, receiver.m, ct.y1, p, receiver.n));
}

// --- DP variant ------------------------------------------------------------

inline Permutation elgamal_dp_public(const Permutation& p, const Permutation& g,
                                     const Permutation& q, u128 m, u128 n) {
  if (p.degree() != g.degree() || q.degree() != p.degree())
    throw std::invalid_argument("elgamal_dp_public: degree mismatch");
  return power(p, m) * g * power(q, n);
}

inline std::pair<ElGamalPrivateDp, Permutation> elgamal_dp_keygen(const GroupParams& params,
                                                                  const Permutation& p,
                                                                  const Permutation& q,
                                                                  const Permutation& g,
                                                                  SeededRng& rng) {
  const auto check_p = validate_generator(params, p);
  if (!check_p.valid)
    throw std::invalid_argument("elgamal_dp_keygen: invalid generator p: " + check_p.diagnostic);
  const auto check_q = validate_generator(params, q);
  if (!check_q.valid)
    throw std::invalid_argument("elgamal_dp_keygen: invalid generator q: " + check_q.diagnostic);
  ElGamalPrivateDp priv{sample_exponent(params, rng), sample_exponent(params, rng)};
  return {priv, elgamal_dp_public(p, g, q, priv.m, priv.n)};
}

inline Ciphertext elgamal_dp_encrypt_with(const Permutation& p, const Permutation& q,
                                          const Permutation& g,
                                          const Permutation& receiver_public,
                                          const ElGamalPrivateDp& sender,
                                          const Permutation& message, u128 t, u128 u) {
  if (message.degree() != p.degree() || q.degree() != p.degree() ||
      g.degree() != p.degree() || receiver_public.degree() != p.degree())
    throw std::invalid_argument("elgamal_dp_encrypt: degree mismatch");
  const Permutation k = power(p, t);
  const Permutation l = power(q, u);
  Ciphertext ct;
  ct.y1 = power(k, sender.m) * g * power(l, sender.n);
  ct.y2 = message * (power(k, sender.m) * receiver_public * power(l, sender.n));
  return ct;
}

inline Ciphertext elgamal_dp_encrypt(const GroupParams& params, const Permutation& p,
                                     const Permutation& q, const Permutation& g,
                                     const Permutation& receiver_public,
                                     const ElGamalPrivateDp& sender, const Permutation& message,
                                     SeededRng& rng) {
  const u128 t = sample_exponent(params, rng);
  const u128 u = sample_exponent(params, rng);
  return elgamal_dp_encrypt_with(p, q, g, receiver_public, sender, message, t, u);
}

inline Permutation elgamal_dp_decrypt(const ElGamalPrivateDp& receiver, const Permutation& p,
                                      const Permutation& q, const Ciphertext& ct) {
  if (ct.y1.degree() != p.degree() || ct.y2.degree() != p.degree() ||
      q.degree() != p.degree())
    throw std::invalid_argument("elgamal_dp_decrypt: degree mismatch");
  return ct.y2 * inverse(power(p, receiver.m) * ct.y1 * power(q, receiver.n));
}

}  // namespace permpqc
