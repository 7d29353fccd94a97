#pragma once

#include <filesystem>

#include "permpqc/analysis.hpp"
#include "permpqc/keyfile.hpp"

namespace permpqc {

// Loaders for the bundled reference vectors: one worked key-exchange record
// under <data>/dh and one worked cipher record under <data>/elgamal, stored
// as 1-based permutation lines and decimal exponents.

namespace detail {

struct VectorDir {
  std::filesystem::path dir;
  Permutation perm(const std::string& name) const {
    return load_permutation_line(dir / (name + ".txt"));
  }
  u128 exponent(const std::string& name) const {
    return parse_u128(load_decimal_line(dir / (name + ".txt")));
  }
};

}  // namespace detail

inline DhTranscript load_dh_vector(const std::filesystem::path& data_dir) {
  detail::VectorDir v{data_dir / "dh"};
  DhTranscript t;
  t.generator = v.perm("generator");
  t.alice_secret = v.exponent("alice_secret");
  t.bob_secret = v.exponent("bob_secret");
  t.alice_token = v.perm("alice_token");
  t.bob_token = v.perm("bob_token");
  t.alice_key = v.perm("alice_key");
  t.bob_key = v.perm("bob_key");
  return t;
}

inline ElGamalDcpTranscript load_elgamal_vector(const std::filesystem::path& data_dir) {
  detail::VectorDir v{data_dir / "elgamal"};
  ElGamalDcpTranscript t;
  t.generator = v.perm("generator");
  t.auxiliary = v.perm("auxiliary");
  t.m = v.exponent("alice_m");
  t.n = v.exponent("alice_n");
  t.r = v.exponent("bob_r");
  t.s = v.exponent("bob_s");
  t.t = v.exponent("session_t");
  t.sender_pm = v.perm("alice_pm_listing");
  t.sender_pn = v.perm("alice_pn_listing");
  t.receiver_pr = v.perm("bob_pr_listing");
  t.receiver_ps = v.perm("bob_ps_listing");
  t.sender_public = v.perm("alice_public");
  t.receiver_public = v.perm("bob_public");
  t.session_key = v.perm("session_key");
  t.message = v.perm("message");
  t.y1 = v.perm("y1");
  t.y2 = v.perm("y2");
  t.recovered = v.perm("recovered");
  return t;
}

}  // namespace permpqc
