#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "iwadec/report.hpp"
#include "iwadec/selfcheck.hpp"

using namespace iwadec;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kInternal = 3, kConditional = 10, kUnknown = 11 };

std::size_t default_cap() {
  if (const char* env = std::getenv("IWADEC_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    std::cerr << "warning: ignoring IWADEC_CAP=" << env << "\n";
  }
  return kDefaultCap;
}

int exit_for(Status s) {
  switch (s) {
    case Status::Trivial: return kOk;
    case Status::ConditionalOnProL: return kConditional;
    case Status::Unknown: return kUnknown;
  }
  return kInternal;
}

void print_table(const CharacterTable& t) {
  std::cout << "|H| = " << t.group_order << ", " << t.size() << " classes, values in Q(zeta_" << t.conductor << ")\n";
  std::cout << "classes:";
  for (const auto& c : t.classes) std::cout << " " << c[0] << "[" << c.size() << "]";
  std::cout << "\n";
  for (std::size_t x = 0; x < t.size(); ++x) {
    std::cout << "chi_" << x << " (deg " << t.degrees[x] << "):";
    for (const auto& v : t.values[x]) std::cout << "  " << v.minimized().str();
    std::cout << "\n";
  }
}

void print_decompose(const json& doc) {
  const auto& s = doc["spec"];
  std::cout << "|H| = " << s["h_order"] << ", l = " << s["l"] << ", m = " << s["m"] << ", |G_fin| = " << s["fin_order"] << "\n";
  for (const auto& c : doc["components"]) {
    std::cout << "component chi_" << c["representative"] << ": dim " << c["dim"] << ", center " << c["center_dim"] << ", chi(1) "
              << c["chi_degree"] << ", w " << c["w"] << ", v " << c["v"] << ", schur index " << c["schur_index"]["value"]
              << ", matrix degree " << c["matrix_degree"]["value"] << "\n";
  }
  if (doc.contains("elementary"))
    for (const auto& p : doc["elementary"]) {
      std::cout << "e_i for zeta of order " << p["zeta_order"] << ": dim " << p["dim"] << ", |U_i| " << p["u_i_order"] << ", n "
                << p["n"] << ", orbits d =";
      for (const auto& o : p["orbits"]) std::cout << " " << o["d"];
      std::cout << "\n";
    }
  if (doc.contains("verdict")) std::cout << "verdict: " << doc["verdict"]["status"].get<std::string>() << " [" << doc["verdict"]["rule"].get<std::string>() << "]\n";
  if (doc["status"] != "ok") std::cout << "FAILED: " << doc["error"].get<std::string>() << "\n";
}

void print_verdict(const Verdict& v, int depth = 0) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  std::cout << pad << to_string(v.status) << " [" << v.rule << "]";
  if (!v.subgroup.empty()) std::cout << " " << v.subgroup;
  if (v.footnote) std::cout << " (direct product, any H)";
  std::cout << "\n";
  for (const auto& o : v.obligations)
    std::cout << pad << "  needs SK_1(Q_l(zeta_" << o.conductor << ") (x) Q U) = 1, U: |H| = " << o.u.H->order() << ", m = " << o.u.m << "\n";
  for (const auto& n : v.notes) std::cout << pad << "  note: " << n << "\n";
  for (const auto& c : v.reduction_tree) print_verdict(c, depth + 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iwadec: Wedderburn components and SK_1 verdicts for Iwasawa algebras of l-adic Lie groups of dimension one"};
  app.require_subcommand(1);
  std::string path;
  bool as_json = false, timing = false, inject = false;
  std::size_t cap = default_cap();
  long level = -1;

  auto* table = app.add_subcommand("table", "character table of H");
  table->add_option("spec", path, "spec file or builtin:NAME")->required();
  table->add_flag("--json", as_json);

  auto* dec = app.add_subcommand("decompose", "Wedderburn components with all checks");
  dec->add_option("spec", path, "spec file or builtin:NAME")->required();
  dec->add_flag("--json", as_json);
  dec->add_flag("--timing", timing, "record wall time in the report (breaks byte-stability)");
  dec->add_option("--cap", cap, "subgroup enumeration cap");
  dec->add_option("--quotient-level", level, "truncation level for the subgroup reduction");

  auto* sk = app.add_subcommand("sk1", "SK_1 verdict");
  sk->add_option("spec", path, "spec file or builtin:NAME")->required();
  sk->add_flag("--json", as_json);
  sk->add_option("--cap", cap, "subgroup enumeration cap");
  sk->add_option("--quotient-level", level, "truncation level for the subgroup reduction");

  auto* self = app.add_subcommand("selfcheck", "corpus invariant suites");
  path = corpus_dir();
  self->add_option("corpus", path, "corpus directory");
  self->add_option("--cap", cap, "subgroup enumeration cap");
  self->add_flag("--inject-bad-idempotent", inject, "negative control: corrupt one idempotent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*self) {
      auto r = run_selfcheck({path, inject, cap}, std::cout);
      std::cout << "warnings: " << r.warnings << "\n";
      if (!r.pass()) {
        for (const auto& s : r.suites)
          if (!s.pass) std::cerr << "selfcheck failed in suite " << s.name << "\n";
        return kFailure;
      }
      return kOk;
    }
    const LoadedSpec ls = load_spec(path);
    if (*table) {
      auto t = character_table(*ls.spec.H);
      if (as_json)
        std::cout << table_json(t).dump(2) << "\n";
      else
        print_table(t);
      return kOk;
    }
    if (*dec) {
      auto doc = decompose_document(ls, {cap, level, timing, true});
      if (as_json)
        std::cout << doc.dump(2) << "\n";
      else
        print_decompose(doc);
      return doc["status"] == "ok" ? kOk : kInternal;
    }
    if (*sk) {
      auto v = verdict(ls.spec, cap, level);
      if (as_json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["spec"] = spec_json(ls);
        j["verdict"] = verdict_json(v);
        std::cout << j.dump(2) << "\n";
      } else {
        print_verdict(v);
      }
      return exit_for(v.status);
    }
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kUnknown;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
