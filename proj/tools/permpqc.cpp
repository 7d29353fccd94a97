// Command-line front end: parameter display, key generation, the key
// exchange, both cipher variants, factoradic encoding, discrete-log
// recovery, transcript audits, and latency benchmarks.
//
// Exit codes: 0 success, 1 protocol mismatch, 2 analysis failure,
// 64 usage error, 65 malformed input data.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permpqc/analysis.hpp"
#include "permpqc/bench.hpp"
#include "permpqc/group.hpp"
#include "permpqc/keyfile.hpp"
#include "permpqc/lehmer.hpp"
#include "permpqc/permutation.hpp"
#include "permpqc/protocols.hpp"
#include "permpqc/vectors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace permpqc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProtocolMismatch = 1;
constexpr int kExitAnalysisFailure = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

constexpr double kReferenceSessionMs = 93.75;  // published baseline for the exchange

struct SeedChoice {
  std::uint64_t value = 0;
  bool from_entropy = false;
};

SeedChoice resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return {*flag, false};
  if (const char* env = std::getenv("PERMPQC_SEED")) {
    try {
      return {std::stoull(env), false};
    } catch (const std::exception&) {
      throw CLI::ValidationError("PERMPQC_SEED", "not a valid unsigned integer");
    }
  }
  std::random_device rd;
  const std::uint64_t value =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  return {value, true};
}

void note_entropy_seed(const SeedChoice& seed) {
  if (seed.from_entropy)
    std::cout << "# seed drawn from OS entropy: " << seed.value << "\n";
}

GroupParams checked_params(unsigned dim, bool allow_large) {
  if (dim == 0) throw CLI::ValidationError("--dim", "must be >= 1");
  if (dim > 50) throw CLI::ValidationError("--dim", "at most 50 is supported");
  if (dim > 16 && !allow_large)
    throw CLI::ValidationError("--dim", "values above 16 require --allow-large-dim");
  return make_params(dim);
}

std::string brace_list(const std::vector<std::uint32_t>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i)
    out += (i ? ", " : "") + std::to_string(values[i]);
  return out + "}";
}

std::vector<BigUint> primorials(const GroupParams& params) {
  std::vector<BigUint> out;
  BigUint acc = 1;
  for (std::uint32_t p : params.primes) {
    acc *= p;
    out.push_back(acc);
  }
  return out;
}

// Loads a permutation payload from either a key file or a bare text line.
Permutation load_any_permutation(const fs::path& path) {
  const std::string text = read_file(path);
  if (text.rfind("permpqc ", 0) == 0) {
    const KeyFile file = parse_keyfile(text);
    for (const auto& e : file.entries)
      if (e.kind == KeyEntry::Kind::perm) return e.perm;
    throw std::invalid_argument(path.string() + ": no permutation payload");
  }
  return parse_permutation_line(text);
}

json report_to_json(const AuditReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"checks", checks},
          {"anomalies", report.anomalies},
          {"protocol_consistent", report.protocol_consistent}};
}

int run_audit(const std::string& vector_name, const fs::path& data_dir,
              const std::string& format, int inconsistent_exit) {
  AuditReport report;
  unsigned dim = 16;
  if (vector_name == "appendix-dh") {
    report = audit_dh_session(make_params(dim), load_dh_vector(data_dir));
  } else {
    report = audit_elgamal_dcp_session(make_params(dim), load_elgamal_vector(data_dir));
  }
  if (format == "json")
    std::cout << report_to_json(report).dump(2) << "\n";
  else
    std::cout << "audit " << vector_name << "\n" << render_text(report);
  return report.protocol_consistent ? kExitOk : inconsistent_exit;
}

KeyFile make_perm_keyfile(KeyRole role, unsigned dim, const std::string& name,
                          Permutation p) {
  KeyFile file;
  file.role = role;
  file.dim = dim;
  file.add_perm(name, std::move(p));
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation-group key exchange and cipher toolkit"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "deterministic seed (fallback: PERMPQC_SEED, then OS entropy)");

  // --- params ---
  auto* cmd_params = app.add_subcommand("params", "print the public group parameters");
  unsigned params_dim = 16;
  bool allow_large = false;
  std::string params_format = "text";
  cmd_params->add_option("--dim", params_dim, "number of prime cycles")->required();
  cmd_params->add_flag("--allow-large-dim", allow_large, "accept dim in (16, 50]");
  cmd_params->add_option("--format", params_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- gen ---
  auto* cmd_gen = app.add_subcommand("gen", "generate key material");
  unsigned gen_dim = 16;
  std::string gen_role = "generator";
  std::string gen_variant = "dcp";
  std::string gen_out, gen_gen, gen_aux, gen_gen_q;
  cmd_gen->add_option("--dim", gen_dim, "number of prime cycles");
  cmd_gen->add_flag("--allow-large-dim", allow_large, "accept dim in (16, 50]");
  cmd_gen->add_option("--role", gen_role, "generator, auxiliary, or elgamal")
      ->check(CLI::IsMember({"generator", "auxiliary", "elgamal"}));
  cmd_gen->add_option("--variant", gen_variant, "dcp or dp (role elgamal)")
      ->check(CLI::IsMember({"dcp", "dp"}));
  cmd_gen->add_option("--gen", gen_gen, "generator key file (role elgamal)");
  cmd_gen->add_option("--gen-q", gen_gen_q, "second generator key file (dp)");
  cmd_gen->add_option("--aux", gen_aux, "auxiliary key file (role elgamal)");
  cmd_gen->add_option("--out", gen_out, "output path")->required();

  // --- dh ---
  auto* cmd_dh = app.add_subcommand("dh", "run a key exchange or replay a reference vector");
  std::string dh_gen, dh_out_dir, dh_vector, dh_data = "data/appendix", dh_format = "text";
  std::optional<std::uint64_t> dh_seed_a, dh_seed_b;
  cmd_dh->add_option("--gen", dh_gen, "generator key file");
  cmd_dh->add_option("--seed-a", dh_seed_a, "first party seed");
  cmd_dh->add_option("--seed-b", dh_seed_b, "second party seed");
  cmd_dh->add_option("--out-dir", dh_out_dir, "write the transcript key files here");
  cmd_dh->add_option("--vector", dh_vector, "replay a bundled vector (appendix-dh)")
      ->check(CLI::IsMember({"appendix-dh"}));
  cmd_dh->add_option("--data", dh_data, "vector data directory");
  cmd_dh->add_option("--format", dh_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- encrypt ---
  auto* cmd_enc = app.add_subcommand("encrypt", "encrypt a message permutation");
  std::string enc_variant = "dcp", enc_gen, enc_gen_q, enc_aux, enc_pub, enc_priv;
  std::string enc_message, enc_message_int, enc_out, enc_vector, enc_data = "data/appendix";
  cmd_enc->add_option("--variant", enc_variant, "dcp or dp")
      ->check(CLI::IsMember({"dcp", "dp"}));
  cmd_enc->add_option("--gen", enc_gen, "generator key file");
  cmd_enc->add_option("--gen-q", enc_gen_q, "second generator key file (dp)");
  cmd_enc->add_option("--aux", enc_aux, "auxiliary key file");
  cmd_enc->add_option("--receiver-pub", enc_pub, "receiver public key file");
  cmd_enc->add_option("--sender-priv", enc_priv, "sender private key file");
  cmd_enc->add_option("--message", enc_message, "message key file or bare permutation line");
  cmd_enc->add_option("--message-int", enc_message_int, "message as a decimal rank");
  cmd_enc->add_option("--out", enc_out, "ciphertext output path");
  cmd_enc->add_option("--vector", enc_vector, "replay a bundled vector (appendix-elgamal)")
      ->check(CLI::IsMember({"appendix-elgamal"}));
  cmd_enc->add_option("--data", enc_data, "vector data directory");

  // --- decrypt ---
  auto* cmd_dec = app.add_subcommand("decrypt", "decrypt a ciphertext");
  std::string dec_variant = "dcp", dec_gen, dec_gen_q, dec_priv, dec_ct, dec_out;
  std::string dec_vector, dec_data = "data/appendix";
  bool dec_as_int = false;
  cmd_dec->add_option("--variant", dec_variant, "dcp or dp")
      ->check(CLI::IsMember({"dcp", "dp"}));
  cmd_dec->add_option("--gen", dec_gen, "generator key file");
  cmd_dec->add_option("--gen-q", dec_gen_q, "second generator key file (dp)");
  cmd_dec->add_option("--receiver-priv", dec_priv, "receiver private key file");
  cmd_dec->add_option("--ct", dec_ct, "ciphertext key file");
  cmd_dec->add_option("--out", dec_out, "write the message key file here");
  cmd_dec->add_flag("--as-int", dec_as_int, "print the factoradic rank instead of images");
  cmd_dec->add_option("--vector", dec_vector, "replay a bundled vector (appendix-elgamal)")
      ->check(CLI::IsMember({"appendix-elgamal"}));
  cmd_dec->add_option("--data", dec_data, "vector data directory");

  // --- rank / unrank ---
  auto* cmd_rank = app.add_subcommand("rank", "factoradic rank of a permutation");
  std::string rank_in;
  cmd_rank->add_option("--in", rank_in, "key file or bare permutation line")->required();

  auto* cmd_unrank = app.add_subcommand("unrank", "permutation with the given factoradic rank");
  std::string unrank_value, unrank_out;
  unsigned unrank_dim = 0;
  std::size_t unrank_degree = 0;
  cmd_unrank->add_option("--value", unrank_value, "decimal rank")->required();
  cmd_unrank->add_option("--dim", unrank_dim, "use the parameter set's degree");
  cmd_unrank->add_option("--degree", unrank_degree, "explicit degree");
  cmd_unrank->add_option("--out", unrank_out, "output path");
  cmd_unrank->add_flag("--allow-large-dim", allow_large, "accept dim in (16, 50]");

  // --- attack ---
  auto* cmd_attack = app.add_subcommand("attack", "recover the exponent behind a token");
  std::string attack_gen, attack_token;
  std::string attack_format = "text";
  cmd_attack->add_option("--gen", attack_gen, "generator key file")->required();
  cmd_attack->add_option("--token", attack_token, "token key file")->required();
  cmd_attack->add_option("--format", attack_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- audit ---
  auto* cmd_audit = app.add_subcommand("audit", "consistency-check a bundled vector set");
  std::string audit_vector, audit_data = "data/appendix", audit_format = "text";
  cmd_audit->add_option("--vector", audit_vector, "appendix-dh or appendix-elgamal")
      ->required()
      ->check(CLI::IsMember({"appendix-dh", "appendix-elgamal"}));
  cmd_audit->add_option("--data", audit_data, "vector data directory");
  cmd_audit->add_option("--format", audit_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- bench ---
  auto* cmd_bench = app.add_subcommand("bench", "latency benchmark");
  std::string bench_op = "dh-session", bench_format = "text";
  std::size_t bench_iterations = 10000;
  unsigned bench_dim = 16;
  cmd_bench->add_option("--op", bench_op, "dh-session, power, or compose")
      ->check(CLI::IsMember({"dh-session", "power", "compose"}));
  cmd_bench->add_option("--iterations", bench_iterations, "iteration count");
  cmd_bench->add_option("--dim", bench_dim, "number of prime cycles");
  cmd_bench->add_flag("--allow-large-dim", allow_large, "accept dim in (16, 50]");
  cmd_bench->add_option("--format", bench_format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    // ----- params -----
    if (cmd_params->parsed()) {
      const GroupParams params = checked_params(params_dim, allow_large);
      if (params_format == "json") {
        json out{{"dim", params.dim},
                 {"primes", params.primes},
                 {"partition_sums", params.partition_sums},
                 {"degree", params.degree},
                 {"omega", params.omega.str()}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "Dim= " << params.dim << "\n";
        std::cout << "Prime list= " << brace_list(params.primes) << "\n";
        std::cout << "Partition sum= " << brace_list(params.partition_sums) << "\n";
        std::cout << "Primorial list= {";
        const auto prims = primorials(params);
        for (std::size_t i = 0; i < prims.size(); ++i)
          std::cout << (i ? ", " : "") << prims[i].str();
        std::cout << "}\n";
      }
      return kExitOk;
    }

    // ----- gen -----
    if (cmd_gen->parsed()) {
      if (gen_role == "generator" || gen_role == "auxiliary") {
        const GroupParams params = checked_params(gen_dim, allow_large);
        const SeedChoice seed = resolve_seed(seed_flag);
        note_entropy_seed(seed);
        SeededRng rng(seed.value);
        if (gen_role == "generator") {
          const Permutation p = generate_generator(params, rng);
          if (!validate_generator(params, p).valid || order(p) != params.omega)
            throw std::logic_error("generated element failed the order check");
          save_keyfile(gen_out, make_perm_keyfile(KeyRole::generator, params.dim, "images", p));
        } else {
          save_keyfile(gen_out, make_perm_keyfile(KeyRole::auxiliary, params.dim,
                                                  "images", random_permutation(params.degree, rng)));
        }
        std::cout << "wrote " << gen_out << "\n";
        return kExitOk;
      }

      // role elgamal: derive a key pair from generator + auxiliary files
      if (gen_gen.empty() || gen_aux.empty())
        throw CLI::ValidationError("--role elgamal", "requires --gen and --aux");
      const KeyFile gen_file = load_keyfile(gen_gen);
      const KeyFile aux_file = load_keyfile(gen_aux);
      const GroupParams params = make_params(gen_file.dim);
      const Permutation p = gen_file.perm("images");
      const Permutation g = aux_file.perm("images");
      const SeedChoice seed = resolve_seed(seed_flag);
      note_entropy_seed(seed);
      SeededRng rng(seed.value);

      KeyFile priv, pub;
      priv.role = KeyRole::elgamal_private;
      pub.role = KeyRole::elgamal_public;
      priv.dim = pub.dim = params.dim;
      priv.add_meta("variant", gen_variant);
      pub.add_meta("variant", gen_variant);
      if (gen_variant == "dcp") {
        auto [sk, pk] = elgamal_dcp_keygen(params, p, g, rng);
        priv.add_exponent("m", sk.m);
        priv.add_exponent("n", sk.n);
        pub.add_perm("value", pk);
      } else {
        if (gen_gen_q.empty()) throw CLI::ValidationError("--variant dp", "requires --gen-q");
        const Permutation q = load_keyfile(gen_gen_q).perm("images");
        auto [sk, pk] = elgamal_dp_keygen(params, p, q, g, rng);
        priv.add_exponent("m", sk.m);
        priv.add_exponent("n", sk.n);
        pub.add_perm("value", pk);
      }
      save_keyfile(gen_out + ".priv", priv);
      save_keyfile(gen_out + ".pub", pub);
      std::cout << "wrote " << gen_out << ".priv and " << gen_out << ".pub\n";
      return kExitOk;
    }

    // ----- dh -----
    if (cmd_dh->parsed()) {
      if (!dh_vector.empty()) return run_audit(dh_vector, dh_data, dh_format, kExitProtocolMismatch);
      if (dh_gen.empty()) throw CLI::ValidationError("dh", "requires --gen or --vector");
      const KeyFile gen_file = load_keyfile(dh_gen);
      const GroupParams params = make_params(gen_file.dim);
      const Permutation p = gen_file.perm("images");

      std::uint64_t sa, sb;
      if (dh_seed_a && dh_seed_b) {
        sa = *dh_seed_a;
        sb = *dh_seed_b;
      } else {
        const SeedChoice seed = resolve_seed(seed_flag);
        note_entropy_seed(seed);
        sa = dh_seed_a.value_or(seed.value);
        sb = dh_seed_b.value_or(seed.value + 1);
      }
      SeededRng rng_a(sa), rng_b(sb);
      const DhKeyPair alice = dh_keygen(params, p, rng_a);
      const DhKeyPair bob = dh_keygen(params, p, rng_b);
      const Permutation key_a = dh_shared_key(alice.secret, bob.token);
      const Permutation key_b = dh_shared_key(bob.secret, alice.token);
      const bool equal = key_a == key_b;

      if (dh_format == "json") {
        json out{{"alice_token", alice.token.one_based()},
                 {"bob_token", bob.token.one_based()},
                 {"alice_key", key_a.one_based()},
                 {"bob_key", key_b.one_based()},
                 {"shared_key_equal", equal}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "alice token " << permutation_line(alice.token) << "\n";
        std::cout << "bob token " << permutation_line(bob.token) << "\n";
        std::cout << "alice key " << permutation_line(key_a) << "\n";
        std::cout << "bob key " << permutation_line(key_b) << "\n";
        std::cout << (equal ? "shared keys equal\n" : "SHARED KEYS DIFFER\n");
      }
      if (!dh_out_dir.empty()) {
        fs::create_directories(dh_out_dir);
        const fs::path dir(dh_out_dir);
        KeyFile sa_file, sb_file;
        sa_file.role = sb_file.role = KeyRole::dh_secret;
        sa_file.dim = sb_file.dim = params.dim;
        sa_file.add_exponent("value", alice.secret);
        sb_file.add_exponent("value", bob.secret);
        save_keyfile(dir / "alice_secret.key", sa_file);
        save_keyfile(dir / "bob_secret.key", sb_file);
        save_keyfile(dir / "alice_token.key",
                     make_perm_keyfile(KeyRole::dh_token, params.dim, "images", alice.token));
        save_keyfile(dir / "bob_token.key",
                     make_perm_keyfile(KeyRole::dh_token, params.dim, "images", bob.token));
        save_keyfile(dir / "shared_key.key",
                     make_perm_keyfile(KeyRole::dh_token, params.dim, "shared", key_a));
      }
      return equal ? kExitOk : kExitProtocolMismatch;
    }

    // ----- encrypt -----
    if (cmd_enc->parsed()) {
      if (!enc_vector.empty())
        return run_audit(enc_vector, enc_data, "text", kExitProtocolMismatch);
      if (enc_gen.empty() || enc_aux.empty() || enc_pub.empty() || enc_priv.empty() ||
          enc_out.empty())
        throw CLI::ValidationError(
            "encrypt", "requires --gen, --aux, --receiver-pub, --sender-priv, --out");
      const KeyFile gen_file = load_keyfile(enc_gen);
      const GroupParams params = make_params(gen_file.dim);
      const Permutation p = gen_file.perm("images");
      const Permutation g = load_keyfile(enc_aux).perm("images");
      const KeyFile pub_file = load_keyfile(enc_pub);
      const KeyFile priv_file = load_keyfile(enc_priv);
      const Permutation receiver_pub = pub_file.perm("value");
      const u128 m = priv_file.exponent("m");
      const u128 n = priv_file.exponent("n");

      Permutation message;
      if (!enc_message_int.empty()) {
        const BigUint value(enc_message_int);
        const EncodedMessage encoded = encode_message(params.degree, value, params.omega);
        if (encoded.exceeds_subgroup_order)
          std::cerr << "warning: message rank is not below the subgroup order "
                    << params.omega.str() << "; it still encodes and decodes exactly\n";
        message = encoded.value;
      } else if (!enc_message.empty()) {
        message = load_any_permutation(enc_message);
      } else {
        throw CLI::ValidationError("encrypt", "requires --message or --message-int");
      }

      const SeedChoice seed = resolve_seed(seed_flag);
      note_entropy_seed(seed);
      SeededRng rng(seed.value);

      Ciphertext ct;
      if (enc_variant == "dcp") {
        ct = elgamal_dcp_encrypt(params, p, g, receiver_pub, {m, n}, message, rng);
      } else {
        if (enc_gen_q.empty()) throw CLI::ValidationError("--variant dp", "requires --gen-q");
        const Permutation q = load_keyfile(enc_gen_q).perm("images");
        ct = elgamal_dp_encrypt(params, p, q, g, receiver_pub, {m, n}, message, rng);
      }
      KeyFile out;
      out.role = KeyRole::ciphertext;
      out.dim = params.dim;
      out.add_meta("variant", enc_variant);
      out.add_perm("y1", ct.y1);
      out.add_perm("y2", ct.y2);
      save_keyfile(enc_out, out);
      std::cout << "wrote " << enc_out << "\n";
      return kExitOk;
    }

    // ----- decrypt -----
    if (cmd_dec->parsed()) {
      if (!dec_vector.empty())
        return run_audit(dec_vector, dec_data, "text", kExitProtocolMismatch);
      if (dec_gen.empty() || dec_priv.empty() || dec_ct.empty())
        throw CLI::ValidationError("decrypt", "requires --gen, --receiver-priv, --ct");
      const KeyFile gen_file = load_keyfile(dec_gen);
      const GroupParams params = make_params(gen_file.dim);
      const Permutation p = gen_file.perm("images");
      const KeyFile priv_file = load_keyfile(dec_priv);
      const KeyFile ct_file = load_keyfile(dec_ct);
      const Ciphertext ct{ct_file.perm("y1"), ct_file.perm("y2")};
      const u128 m = priv_file.exponent("m");
      const u128 n = priv_file.exponent("n");

      Permutation message;
      if (dec_variant == "dcp") {
        message = elgamal_dcp_decrypt({m, n}, p, ct);
      } else {
        if (dec_gen_q.empty()) throw CLI::ValidationError("--variant dp", "requires --gen-q");
        const Permutation q = load_keyfile(dec_gen_q).perm("images");
        message = elgamal_dp_decrypt({m, n}, p, q, ct);
      }
      if (dec_as_int)
        std::cout << decode_message(message).str() << "\n";
      else
        std::cout << permutation_line(message) << "\n";
      if (!dec_out.empty())
        save_keyfile(dec_out,
                     make_perm_keyfile(KeyRole::message, params.dim, "images", message));
      return kExitOk;
    }

    // ----- rank -----
    if (cmd_rank->parsed()) {
      const Permutation p = load_any_permutation(rank_in);
      std::cout << rank(p).str() << "\n";
      return kExitOk;
    }

    // ----- unrank -----
    if (cmd_unrank->parsed()) {
      if ((unrank_dim == 0) == (unrank_degree == 0))
        throw CLI::ValidationError("unrank", "requires exactly one of --dim or --degree");
      const BigUint value(unrank_value);
      if (unrank_dim != 0) {
        const GroupParams params = checked_params(unrank_dim, allow_large);
        const EncodedMessage encoded = encode_message(params.degree, value, params.omega);
        if (encoded.exceeds_subgroup_order)
          std::cerr << "warning: rank is not below the subgroup order " << params.omega.str()
                    << "\n";
        if (unrank_out.empty())
          std::cout << permutation_line(encoded.value) << "\n";
        else
          save_keyfile(unrank_out, make_perm_keyfile(KeyRole::message, params.dim, "images",
                                                     encoded.value));
      } else {
        const Permutation p = unrank(unrank_degree, value);
        if (unrank_out.empty()) {
          std::cout << permutation_line(p) << "\n";
        } else {
          std::ofstream out(unrank_out, std::ios::binary);
          out << permutation_line(p) << "\n";
        }
      }
      return kExitOk;
    }

    // ----- attack -----
    if (cmd_attack->parsed()) {
      const Permutation p = load_any_permutation(attack_gen);
      const Permutation token = load_any_permutation(attack_token);
      const auto start = std::chrono::steady_clock::now();
      DlpSolution sol;
      try {
        sol = dlp_cycle_attack(p, token);
      } catch (const NotInSubgroupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysisFailure;
      } catch (const UnsupportedStructureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysisFailure;
      }
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      if (attack_format == "json") {
        json residues = json::array();
        for (const auto& r : sol.residues)
          residues.push_back({{"residue", r.residue}, {"modulus", r.modulus}});
        json out{{"exponent", to_string(sol.exponent)},
                 {"modulus", to_string(sol.modulus)},
                 {"residues", residues},
                 {"milliseconds", ms}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << to_string(sol.exponent) << "\n";
        std::cerr << "# recovered from cycle structure in " << ms
                  << " ms; brute force would scan an exponent space of size "
                  << to_string(sol.modulus) << "\n";
      }
      return kExitOk;
    }

    // ----- audit -----
    if (cmd_audit->parsed())
      return run_audit(audit_vector, audit_data, audit_format, kExitAnalysisFailure);

    // ----- bench -----
    if (cmd_bench->parsed()) {
      const GroupParams params = checked_params(bench_dim, allow_large);
      const SeedChoice seed = resolve_seed(seed_flag);
      note_entropy_seed(seed);
      SeededRng rng(seed.value);
      const Permutation p = generate_generator(params, rng);

      BenchReport report;
      if (bench_op == "dh-session") {
        report = run_bench("dh-session", bench_iterations, [&] {
          const DhKeyPair alice = dh_keygen(params, p, rng);
          const DhKeyPair bob = dh_keygen(params, p, rng);
          const Permutation key_a = dh_shared_key(alice.secret, bob.token);
          const Permutation key_b = dh_shared_key(bob.secret, alice.token);
          if (key_a != key_b) throw std::logic_error("shared keys differ");
        });
      } else if (bench_op == "power") {
        const u128 exponent = sample_exponent(params, rng);
        report = run_bench("power", bench_iterations, [&] {
          volatile std::uint32_t sink = power(p, exponent).images()[0];
          (void)sink;
        });
      } else {
        SeededRng perm_rng(seed.value + 1);
        const Permutation a = random_permutation(params.degree, perm_rng);
        const Permutation b = random_permutation(params.degree, perm_rng);
        report = run_bench("compose", bench_iterations, [&] {
          volatile std::uint32_t sink = compose(a, b).images()[0];
          (void)sink;
        });
      }

      if (bench_format == "json") {
        json out{{"operation", report.operation}, {"iterations", report.iterations},
                 {"mean_us", report.mean_us},     {"p50_us", report.p50_us},
                 {"p99_us", report.p99_us},       {"min_us", report.min_us},
                 {"max_us", report.max_us},       {"hardware", report.hardware_note}};
        if (bench_op == "dh-session")
          out["ratio_to_reference_93_75_ms"] = (report.mean_us / 1000.0) / kReferenceSessionMs;
        std::cout << out.dump(2) << "\n";
      } else if (bench_format == "csv") {
        std::cout << to_csv(report);
      } else {
        std::cout << to_text(report) << to_csv(report);
        if (bench_op == "dh-session") {
          const double mean_ms = report.mean_us / 1000.0;
          std::cout << "session mean " << mean_ms << " ms; reference baseline "
                    << kReferenceSessionMs << " ms; ratio " << mean_ms / kReferenceSessionMs
                    << "\n";
        }
      }
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
