#pragma once

// Corpus-wide invariant suites behind `iwadec selfcheck`.

#include <chrono>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "iwadec/report.hpp"

namespace iwadec {

struct SelfcheckOptions {
  std::string corpus;
  bool inject_bad_idempotent = false;  // negative control for the crossed suite
  std::size_t cap = kDefaultCap;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  double seconds = 0;
  std::vector<std::string> failures;
};

struct SelfcheckResult {
  std::vector<SuiteResult> suites;
  int warnings = 0;
  bool pass() const {
    for (const auto& s : suites)
      if (!s.pass) return false;
    return true;
  }
};

inline std::vector<std::string> corpus_files(const std::string& dir) {
  std::vector<std::string> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".spec") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline SelfcheckResult run_selfcheck(const SelfcheckOptions& opt, std::ostream& log) {
  SelfcheckResult res;
  const auto files = corpus_files(opt.corpus);
  if (files.empty()) {
    ++res.warnings;
    log << "warning: no .spec files in " << opt.corpus << "\n";
  }
  std::vector<LoadedSpec> specs;
  auto suite = [&](const std::string& name, const std::function<void(SuiteResult&)>& body) {
    SuiteResult s;
    s.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(s);
    } catch (const std::exception& e) {
      s.failures.push_back(e.what());
    }
    s.pass = s.failures.empty();
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log << (s.pass ? "PASS " : "FAIL ") << name << " (" << s.seconds << " s)\n";
    for (const auto& f : s.failures) log << "  " << f << "\n";
    res.suites.push_back(std::move(s));
  };

  suite("specfile", [&](SuiteResult& s) {
    for (const auto& f : files) {
      auto a = load_spec_file(f);
      auto b = parse_spec_text(serialize(a), f);
      if (!(a == b)) s.failures.push_back(f + ": parse/serialize round trip differs");
      specs.push_back(build_spec(a));
    }
  });

  suite("chars", [&](SuiteResult& s) {
    for (const auto& ls : specs) {
      const auto t = character_table(*ls.spec.H);
      long sq = 0;
      for (long d : t.degrees) sq += d * d;
      if (sq != t.group_order) s.failures.push_back(ls.file.origin + ": sum of squared degrees != |H|");
      const std::size_t k = t.size();
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) {
          CycNumber sum(0);
          for (std::size_t c = 0; c < k; ++c)
            sum += t.values[x][c] * t.values[y][static_cast<std::size_t>(t.inverse_class[c])] * CycNumber(static_cast<long>(t.classes[c].size()));
          if (!(sum.minimized() == CycNumber(x == y ? t.group_order : 0)))
            s.failures.push_back(ls.file.origin + ": row orthogonality fails");
        }
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t c2 = 0; c2 < k; ++c2) {
          CycNumber sum(0);
          for (std::size_t x = 0; x < k; ++x) sum += t.values[x][c] * t.values[x][static_cast<std::size_t>(t.inverse_class[c2])];
          long expect = c == c2 ? t.group_order / static_cast<long>(t.classes[c].size()) : 0;
          if (!(sum.minimized() == CycNumber(expect))) s.failures.push_back(ls.file.origin + ": column orthogonality fails");
        }
    }
  });

  suite("crossed", [&](SuiteResult& s) {
    for (const auto& ls : specs) {
      const Truncation tr = truncate(ls.spec);
      const auto A = character_actions(ls.spec);
      const FiniteGroup& g = tr.group;
      std::vector<GroupRingElement> es;
      for (const auto& o : galois_orbits(A, ls.spec.l)) es.push_back(idempotent_e_chi(tr, A, o.members));
      if (opt.inject_bad_idempotent && !es.empty()) es[0][static_cast<std::size_t>(g.identity())] += CycNumber(Rational(1, 2));
      GroupRingElement sum = gr_zero(g);
      for (std::size_t a = 0; a < es.size(); ++a) {
        sum = gr_add(sum, es[a]);
        if (!is_idempotent(g, es[a])) s.failures.push_back(ls.file.origin + ": component idempotent is not idempotent");
        if (!commutes_with(g, es[a], generating_set(g, whole(g)))) s.failures.push_back(ls.file.origin + ": idempotent not central");
        for (std::size_t b = a + 1; b < es.size(); ++b)
          if (!gr_is_zero(gr_mul(g, es[a], es[b]))) s.failures.push_back(ls.file.origin + ": idempotents not orthogonal");
      }
      if (!gr_equal(sum, gr_basis(g, g.identity()))) s.failures.push_back(ls.file.origin + ": idempotents do not sum to 1");
    }
  });

  suite("wedderburn", [&](SuiteResult& s) {
    for (const auto& ls : specs) {
      long total = 0;
      for (const auto& r : component_reports(ls.spec)) total += r.dim;
      if (total != ls.spec.fin_order()) s.failures.push_back(ls.file.origin + ": component dims do not sum to |G_fin|");
      auto d = is_q_elementary(ls.spec, ls.spec.l);
      if (!d) continue;
      const Truncation tr = truncate(ls.spec);
      for (const auto& part : elementary_decomposition(ls.spec, tr, *d))
        for (const auto& og : part.star.orbits) verify_orbit(tr.group, part.star, og, ls.spec.l);
    }
  });

  suite("shift", [&](SuiteResult& s) {
    for (long ln : {1L, 3L, 9L, 27L}) shift_power_check(ln);
    bool caught = false;
    try {
      shift_power_check(9, CycNumber::zeta(3));
    } catch (const InternalConsistency&) {
      caught = true;
    }
    if (!caught) s.failures.push_back("perturbed M_0 passed");
  });

  suite("sk1", [&](SuiteResult& s) {
    for (const auto& ls : specs) {
      auto v1 = verdict(ls.spec, opt.cap);
      auto v2 = verdict(ls.spec, opt.cap);
      if (verdict_json(v1).dump() != verdict_json(v2).dump()) s.failures.push_back(ls.file.origin + ": verdict not deterministic");
      if (v1.status == Status::Trivial && !v1.obligations.empty()) s.failures.push_back(ls.file.origin + ": trivial verdict with obligations");
      for (const auto& o : v1.obligations)
        if (!o.u.h_is_l_group()) s.failures.push_back(ls.file.origin + ": obligation is not pro-l");
      if (v1.rule == "KnownCases-iii" && !ls.spec.h_prime_to_l()) s.failures.push_back(ls.file.origin + ": prime-to-l rule misapplied");
    }
  });
  return res;
}

}  // namespace iwadec
