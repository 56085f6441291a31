#pragma once

// Group spec files: `key = value` lines, `#` starts a comment.
//
//   kind = cyclic       order = 9; action = 4              (h -> h^4)
//   kind = product      normal = 3 3; action = 1 0; 1 1    (images of the generators)
//   kind = semidirect   normal = 3 3; complement = 3; twist = 1 1, 0 1; action = identity
//   kind = table        table = 0 1 2; 1 2 0; 2 0 1; action = 0 2 1   (element images)
//   kind = builtin      name = heisenberg27                 (corpus/<name>.spec)
//
// Common keys: l, m (optional, must be minimal), designated_s (exponent vector
// or element index of a generator of the cyclic normal part), description.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iwadec/errors.hpp"
#include "iwadec/groups.hpp"

namespace iwadec {

struct SpecFile {
  std::string origin;
  std::vector<std::pair<std::string, std::string>> entries;  // canonical key order
  std::map<std::string, int> lines;

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return v;
    return std::nullopt;
  }
  bool operator==(const SpecFile& o) const { return entries == o.entries; }
};

namespace specfile_detail {

inline const std::vector<std::string>& key_order() {
  static const std::vector<std::string> keys{"kind", "name", "description", "l", "m", "order", "normal", "complement",
                                             "twist", "table", "action", "designated_s"};
  return keys;
}

inline const std::map<std::string, std::vector<std::string>>& allowed() {
  static const std::map<std::string, std::vector<std::string>> a{
      {"cyclic", {"order", "action"}},
      {"product", {"normal", "action"}},
      {"semidirect", {"normal", "complement", "twist", "action"}},
      {"table", {"table", "action"}},
      {"builtin", {"name"}},
  };
  return a;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Whitespace collapsed, separators written as "; ", "| ", ", ".
inline std::string normalize(const std::string& v) {
  std::string out;
  bool space = false;
  for (char c : v) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (c == ';' || c == '|' || c == ',') {
      out += c;
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline std::vector<long> numbers(const SpecFile& f, const std::string& key, const std::string& text) {
  std::istringstream in(text);
  std::vector<long> out;
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') {
      auto it = f.lines.find(key);
      throw MalformedInput(f.origin + ":" + std::to_string(it == f.lines.end() ? 0 : it->second) + ": " + key +
                           ": not an integer: '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace specfile_detail

inline SpecFile parse_spec_text(const std::string& text, const std::string& origin = "<input>") {
  using namespace specfile_detail;
  SpecFile f;
  f.origin = origin;
  std::map<std::string, std::string> found;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto eq = line.find('=');
    auto where = origin + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw MalformedInput(where + "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = normalize(trim(line.substr(eq + 1)));
    if (std::find(key_order().begin(), key_order().end(), key) == key_order().end())
      throw MalformedInput(where + "unknown key '" + key + "'");
    if (found.count(key)) throw MalformedInput(where + "duplicate key '" + key + "'");
    if (val.empty()) throw MalformedInput(where + "empty value for '" + key + "'");
    found[key] = val;
    f.lines[key] = lineno;
  }
  if (!found.count("kind")) throw MalformedInput(origin + ": missing 'kind'");
  auto kinds = allowed();
  auto kit = kinds.find(found["kind"]);
  if (kit == kinds.end()) throw MalformedInput(origin + ":" + std::to_string(f.lines["kind"]) + ": unknown kind '" + found["kind"] + "'");
  for (const auto& [k, v] : found) {
    if (k == "kind" || k == "description") continue;
    bool common = k == "l" || k == "m" || k == "designated_s";
    bool ok = std::find(kit->second.begin(), kit->second.end(), k) != kit->second.end();
    if (found["kind"] == "builtin" ? !ok : !(ok || common))
      throw MalformedInput(origin + ":" + std::to_string(f.lines[k]) + ": key '" + k + "' does not apply to kind " + found["kind"]);
  }
  for (const auto& k : key_order())
    if (found.count(k)) f.entries.emplace_back(k, found[k]);
  return f;
}

inline std::string serialize(const SpecFile& f) {
  std::string out;
  for (const auto& [k, v] : f.entries) out += k + " = " + v + "\n";
  return out;
}

inline std::string corpus_dir() {
  if (const char* env = std::getenv("IWADEC_CORPUS")) return env;
#ifdef IWADEC_CORPUS_DIR
  return IWADEC_CORPUS_DIR;
#else
  return "corpus";
#endif
}

inline SpecFile load_spec_file(const std::string& path) {
  if (path.rfind("builtin:", 0) == 0) return load_spec_file(corpus_dir() + "/" + path.substr(8) + ".spec");
  std::ifstream in(path);
  if (!in) throw MalformedInput(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path);
}

struct LoadedSpec {
  SpecFile file;                          // the file as given
  SpecFile resolved;                      // after following builtin references
  GSpec spec;
  std::optional<PresentedGroup> presented;
  std::optional<int> designated_s;        // element of H
};

inline LoadedSpec build_spec(const SpecFile& file, int depth = 0) {
  using specfile_detail::numbers;
  using specfile_detail::split;
  const std::string kind = *file.get("kind");
  if (kind == "builtin") {
    if (depth > 4) throw MalformedInput(file.origin + ": builtin references nest too deeply");
    const std::string name = *file.get("name");
    for (char c : name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw MalformedInput(file.origin + ":" + std::to_string(file.lines.at("name")) + ": bad builtin name '" + name + "'");
    LoadedSpec inner = build_spec(load_spec_file("builtin:" + name), depth + 1);
    inner.file = file;
    return inner;
  }
  auto req = [&](const std::string& k) {
    auto v = file.get(k);
    if (!v) throw MalformedInput(file.origin + ": kind " + kind + " needs '" + k + "'");
    return *v;
  };
  auto where = [&](const std::string& k) {
    auto it = file.lines.find(k);
    return file.origin + ":" + std::to_string(it == file.lines.end() ? 0 : it->second) + ": ";
  };
  auto one = [&](const std::string& k, const std::string& text) {
    auto v = numbers(file, k, text);
    if (v.size() != 1) throw MalformedInput(where(k) + k + ": expected one integer");
    return v[0];
  };
  LoadedSpec out;
  out.file = file;
  out.resolved = file;
  const long l = file.get("l") ? one("l", *file.get("l")) : 3;
  const long m = file.get("m") ? one("m", *file.get("m")) : -1;
  try {
    FiniteGroup h;
    GroupAut alpha;
    if (kind == "table") {
      auto rows = split(req("table"), ';');
      std::vector<int> t;
      for (const auto& r : rows)
        for (long v : numbers(file, "table", r)) t.push_back(static_cast<int>(v));
      h = FiniteGroup(t, rows.size());
      const std::string act = req("action");
      if (act == "identity") {
        alpha = GroupAut::identity(h);
      } else {
        std::vector<int> img;
        for (long v : numbers(file, "action", act)) img.push_back(static_cast<int>(v));
        alpha = GroupAut(h, img);
      }
    } else {
      std::vector<long> normal, complement;
      std::vector<std::vector<std::vector<long>>> twists;
      if (kind == "cyclic") {
        normal = {one("order", req("order"))};
      } else {
        normal = numbers(file, "normal", req("normal"));
      }
      if (kind == "semidirect") {
        complement = numbers(file, "complement", req("complement"));
        for (const auto& mtx : split(req("twist"), '|')) {
          std::vector<std::vector<long>> rows;
          for (const auto& r : split(mtx, ',')) rows.push_back(numbers(file, "twist", r));
          twists.push_back(std::move(rows));
        }
      }
      PresentedGroup p = semidirect_abelian(normal, complement, twists);
      h = p.group;
      const std::string act = req("action");
      const std::size_t ngens = normal.size() + complement.size();
      if (act == "identity") {
        alpha = GroupAut::identity(h);
      } else if (kind == "cyclic") {
        alpha = aut_from_generator_images(p, {p.element({one("action", act)})});
      } else {
        auto parts = split(act, ';');
        if (parts.size() != ngens) throw MalformedInput(where("action") + "action: expected " + std::to_string(ngens) + " generator images");
        std::vector<int> img;
        for (const auto& s : parts) {
          auto v = numbers(file, "action", s);
          if (v.size() != ngens) throw MalformedInput(where("action") + "action: image '" + s + "' has the wrong length");
          img.push_back(p.element(v));
        }
        alpha = aut_from_generator_images(p, img);
      }
      out.presented = p;
    }
    out.spec = GSpec(h, alpha, l, m);
    if (auto ds = file.get("designated_s")) {
      auto v = numbers(file, "designated_s", *ds);
      int s = out.presented ? out.presented->element(v) : static_cast<int>(v.size() == 1 ? v[0] : -1);
      if (s < 0 || s >= h.order()) throw MalformedInput(where("designated_s") + "designated_s: not an element");
      out.designated_s = s;
    }
  } catch (const MalformedInput& e) {
    std::string msg = e.what();
    if (msg.rfind(file.origin, 0) == 0) throw;
    throw MalformedInput(file.origin + ": " + msg);
  }
  return out;
}

inline LoadedSpec load_spec(const std::string& path) { return build_spec(load_spec_file(path)); }

}  // namespace iwadec
