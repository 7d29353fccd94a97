#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "permpqc/group.hpp"
#include "permpqc/permutation.hpp"

namespace permpqc {

// --- plain permutation text form --------------------------------------------
// One line of whitespace-separated 1-based images; the layout used by the
// bundled reference vectors.

inline std::string permutation_line(const Permutation& p) {
  std::ostringstream out;
  const auto img = p.one_based();
  for (std::size_t i = 0; i < img.size(); ++i) out << (i ? " " : "") << img[i];
  return out.str();
}

inline Permutation parse_permutation_line(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::uint32_t> img;
  std::uint32_t v = 0;
  while (in >> v) img.push_back(v);
  if (!in.eof()) throw std::invalid_argument("permutation text: non-integer token");
  return Permutation::from_one_based(img);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Permutation load_permutation_line(const std::filesystem::path& path) {
  return parse_permutation_line(read_file(path));
}

inline std::string load_decimal_line(const std::filesystem::path& path) {
  std::string text = read_file(path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.pop_back();
  return text;
}

// --- key files --------------------------------------------------------------
// Versioned line-oriented text record:
//
//   permpqc 1
//   role generator
//   dim 16
//   exp <name> <decimal>
//   perm <name> <1-based images>
//   meta <name> <text>
//
// Entries keep their order, so re-serialization is byte-exact.

enum class KeyRole {
  generator,
  auxiliary,
  dh_secret,
  dh_token,
  elgamal_private,
  elgamal_public,
  ciphertext,
  message,
};

inline std::string to_string(KeyRole role) {
  switch (role) {
    case KeyRole::generator: return "generator";
    case KeyRole::auxiliary: return "auxiliary";
    case KeyRole::dh_secret: return "dh_secret";
    case KeyRole::dh_token: return "dh_token";
    case KeyRole::elgamal_private: return "elgamal_private";
    case KeyRole::elgamal_public: return "elgamal_public";
    case KeyRole::ciphertext: return "ciphertext";
    case KeyRole::message: return "message";
  }
  throw std::logic_error("unknown KeyRole");
}

inline KeyRole role_from_string(std::string_view text) {
  for (KeyRole role :
       {KeyRole::generator, KeyRole::auxiliary, KeyRole::dh_secret, KeyRole::dh_token,
        KeyRole::elgamal_private, KeyRole::elgamal_public, KeyRole::ciphertext,
        KeyRole::message})
    if (to_string(role) == text) return role;
  throw std::invalid_argument("unknown key role: " + std::string(text));
}

struct KeyEntry {
  enum class Kind { exponent, perm, meta };
  Kind kind = Kind::meta;
  std::string name;
  std::string text;  // exponent decimal or meta value
  Permutation perm;  // set when kind == perm
};

struct KeyFile {
  int format_version = 1;
  KeyRole role = KeyRole::generator;
  unsigned dim = 0;
  std::vector<KeyEntry> entries;

  void add_exponent(std::string name, u128 value) {
    entries.push_back({KeyEntry::Kind::exponent, std::move(name), to_string(value), {}});
  }
  void add_exponent(std::string name, std::string decimal) {
    entries.push_back({KeyEntry::Kind::exponent, std::move(name), std::move(decimal), {}});
  }
  void add_perm(std::string name, Permutation p) {
    entries.push_back({KeyEntry::Kind::perm, std::move(name), "", std::move(p)});
  }
  void add_meta(std::string name, std::string value) {
    entries.push_back({KeyEntry::Kind::meta, std::move(name), std::move(value), {}});
  }

  const KeyEntry* find(std::string_view name, KeyEntry::Kind kind) const {
    for (const auto& e : entries)
      if (e.kind == kind && e.name == name) return &e;
    return nullptr;
  }
  const Permutation& perm(std::string_view name) const {
    const KeyEntry* e = find(name, KeyEntry::Kind::perm);
    if (!e) throw std::invalid_argument("key file: missing permutation \"" + std::string(name) + "\"");
    return e->perm;
  }
  u128 exponent(std::string_view name) const {
    const KeyEntry* e = find(name, KeyEntry::Kind::exponent);
    if (!e) throw std::invalid_argument("key file: missing exponent \"" + std::string(name) + "\"");
    return parse_u128(e->text);
  }
  std::string meta(std::string_view name) const {
    const KeyEntry* e = find(name, KeyEntry::Kind::meta);
    return e ? e->text : std::string{};
  }
};

inline std::string serialize(const KeyFile& file) {
  std::ostringstream out;
  out << "permpqc " << file.format_version << "\n";
  out << "role " << to_string(file.role) << "\n";
  out << "dim " << file.dim << "\n";
  for (const auto& e : file.entries) {
    switch (e.kind) {
      case KeyEntry::Kind::exponent: out << "exp " << e.name << " " << e.text << "\n"; break;
      case KeyEntry::Kind::perm: out << "perm " << e.name << " " << permutation_line(e.perm) << "\n"; break;
      case KeyEntry::Kind::meta: out << "meta " << e.name << " " << e.text << "\n"; break;
    }
  }
  return out.str();
}

inline KeyFile parse_keyfile(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  KeyFile file;

  if (!std::getline(in, line)) throw std::invalid_argument("key file: empty");
  {
    std::istringstream head(line);
    std::string magic;
    head >> magic >> file.format_version;
    if (magic != "permpqc" || head.fail())
      throw std::invalid_argument("key file: bad header line");
    if (file.format_version != 1)
      throw std::invalid_argument("key file: unsupported format version " +
                                  std::to_string(file.format_version));
  }

  bool saw_role = false, saw_dim = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "role") {
      std::string value;
      ls >> value;
      file.role = role_from_string(value);
      saw_role = true;
    } else if (tag == "dim") {
      if (!(ls >> file.dim) || file.dim == 0)
        throw std::invalid_argument("key file: bad dim");
      saw_dim = true;
    } else if (tag == "exp" || tag == "meta") {
      std::string name, value;
      ls >> name;
      std::getline(ls, value);
      if (!value.empty() && value.front() == ' ') value.erase(value.begin());
      if (name.empty()) throw std::invalid_argument("key file: unnamed entry");
      if (tag == "exp")
        file.add_exponent(name, value);
      else
        file.add_meta(name, value);
    } else if (tag == "perm") {
      std::string name, rest;
      ls >> name;
      std::getline(ls, rest);
      if (name.empty()) throw std::invalid_argument("key file: unnamed permutation");
      file.add_perm(name, parse_permutation_line(rest));
    } else {
      throw std::invalid_argument("key file: unknown line tag \"" + tag + "\"");
    }
  }
  if (!saw_role || !saw_dim) throw std::invalid_argument("key file: missing role or dim");

  const GroupParams params = make_params(file.dim);
  for (const auto& e : file.entries)
    if (e.kind == KeyEntry::Kind::perm && e.perm.degree() != params.degree)
      throw std::invalid_argument("key file: permutation \"" + e.name +
                                  "\" degree does not match dim " + std::to_string(file.dim));
  return file;
}

inline KeyFile load_keyfile(const std::filesystem::path& path) {
  try {
    return parse_keyfile(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

inline void save_keyfile(const std::filesystem::path& path, const KeyFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize(file);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace permpqc
