// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwadec/report.hpp"
#include "iwadec/selfcheck.hpp"

using namespace iwadec;
namespace fs = std::filesystem;

namespace {

// pinned limits; every algebraic comparison is exact
constexpr double kSecondsPerSpec = 10.0;
constexpr double kShiftSeconds = 5.0;
constexpr long kCommutationOracleMax = 27;

std::string corpus(const std::string& name) { return std::string(IWADEC_CORPUS_DIR) + "/" + name + ".spec"; }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
};

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  static int n = 0;
  const fs::path out = fs::temp_directory_path() / ("iwadec_acc_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
  const int st = std::system((std::string(IWADEC_BIN) + " " + args + " > " + out.string() + " 2>/dev/null").c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, ss.str()};
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// rank of left multiplication by an idempotent is its trace |G| e(1)
long trace_dim(const FiniteGroup& g, const GroupRingElement& e, long order) {
  CycNumber t = e[static_cast<std::size_t>(g.identity())].minimized().scaled(Rational(order));
  if (!t.is_rational() || !t.rational_part().is_integer()) return -1;
  return t.rational_part().num().get_si();
}

// dim Z(eK[G]) by solving z g = g z on a basis of eK[G]
long commutation_center_dim(const FiniteGroup& g, const GroupRingElement& e) {
  const auto N = static_cast<std::size_t>(g.order());
  EchelonSpace<CycNumber> ideal(N);
  for (int h = 0; h < g.order(); ++h) {
    std::vector<CycNumber> v(N, CycNumber(0));
    for (std::size_t x = 0; x < N; ++x)
      if (!e[x].is_zero()) v[static_cast<std::size_t>(g.mul(static_cast<int>(x), h))] += e[x];
    ideal.insert(std::move(v));
  }
  std::vector<int> gens;
  for (int h = 0; h < g.order(); ++h) gens.push_back(h);
  std::vector<std::vector<CycNumber>> images;
  for (const auto& b : ideal.rows()) {
    std::vector<CycNumber> img;
    for (int h : gens) {
      std::vector<CycNumber> c(N, CycNumber(0));
      for (std::size_t x = 0; x < N; ++x) {
        if (b[x].is_zero()) continue;
        c[static_cast<std::size_t>(g.mul(h, static_cast<int>(x)))] += b[x];
        c[static_cast<std::size_t>(g.mul(static_cast<int>(x), h))] -= b[x];
      }
      img.insert(img.end(), c.begin(), c.end());
    }
    images.push_back(std::move(img));
  }
  return static_cast<long>(ideal.rank() - rank_of(images, N * gens.size()));
}

std::multiset<long> dims_of(const std::vector<ComponentReport>& rs) {
  std::multiset<long> d;
  for (const auto& r : rs) d.insert(r.dim);
  return d;
}

std::string show(const std::multiset<long>& s) {
  std::string out = "{";
  for (long v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

Outcome census() {
  Outcome o;
  const std::vector<std::pair<std::string, std::multiset<long>>> want{
      {"metacyclic27", {3, 6, 18}}, {"heisenberg27", {1, 2, 2, 2, 2, 18}}, {"transvection27", {3, 6, 18}}, {"cyclic7_gamma", {3, 18}}};
  for (const auto& [name, dims] : want) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ls = load_spec(corpus(name));
    const auto rs = component_reports(ls.spec);
    const Truncation tr = truncate(ls.spec);
    long total = 0;
    for (const auto& r : rs) {
      total += r.dim;
      o.expect(r.dim_method == "row-reduction", name + " dims row-reduced");
      o.expect(trace_dim(tr.group, r.idempotent, tr.group.order()) == r.dim, name + " trace oracle");
    }
    o.expect(dims_of(rs) == dims, name + " dims " + show(dims_of(rs)));
    o.expect(total == tr.group.order(), name + " dims sum to |G_fin|");
    std::string extra;
    if (name == "cyclic7_gamma") {
      auto d = is_q_elementary(ls.spec, ls.spec.l);
      o.expect(d.has_value(), name + " is l-elementary");
      if (d) {
        std::multiset<long> ei;
        for (const auto& part : elementary_decomposition(ls.spec, tr, *d)) {
          ei.insert(part.ideal.dim);
          o.expect(trace_dim(tr.group, part.e_i, tr.group.order()) == part.ideal.dim, name + " e_i trace oracle");
        }
        o.expect(ei == std::multiset<long>{3, 18}, name + " e_i dims " + show(ei));
        extra = " e_i " + show(ei);
      }
    }
    const double s = since(t0);
    o.expect(s < kSecondsPerSpec, name + " runtime");
    std::ostringstream n;
    n << name << " " << show(dims_of(rs)) << extra << " " << s << "s";
    o.notes.push_back(n.str());
  }
  return o;
}

Outcome structure_identities(const std::vector<LoadedSpec>& specs) {
  Outcome o;
  long comps = 0, oracle_centers = 0;
  for (const auto& ls : specs) {
    const Truncation tr = truncate(ls.spec);
    const FiniteGroup& g = tr.group;
    const long lm = ls.spec.gamma_order();
    for (const auto& r : component_reports(ls.spec)) {
      ++comps;
      const auto& ob = r.orbit;
      const std::string at = ls.file.origin + " chi_" + std::to_string(ob.representative) + " ";
      const long dim = trace_dim(g, r.idempotent, g.order());
      long center = r.center_dim;
      if (g.order() <= kCommutationOracleMax) {
        center = commutation_center_dim(g, r.idempotent);
        ++oracle_centers;
        o.expect(center == r.center_dim, at + "center oracle");
      }
      const long chi1 = ob.w * ob.degree;
      o.expect(dim == lm * ob.v * ob.eta_field_degree * ob.degree * ob.degree, at + "dim formula");
      o.expect(center * ob.w == ob.field_degree * lm, at + "center formula");
      o.expect(dim == center * chi1 * chi1, at + "quotient chi(1)^2");
      o.expect(ob.g0_order * ob.v == ob.w, at + "|G_0| = w/v");
      o.expect(r.chi_degree == chi1 && r.dim == dim, at + "report fields");
    }
  }
  o.notes.push_back(std::to_string(comps) + " components, " + std::to_string(oracle_centers) + " centers by commutation solve");
  return o;
}

Outcome family_laws(const std::vector<LoadedSpec>& specs) {
  Outcome o;
  long families = 0;
  for (const auto& ls : specs) {
    const Truncation tr = truncate(ls.spec);
    const FiniteGroup& g = tr.group;
    std::vector<int> all;
    for (int h = 0; h < g.order(); ++h) all.push_back(h);
    const std::vector<int> gens = generating_set(g, all);
    auto check = [&](const std::vector<GroupRingElement>& es, const std::string& what) {
      ++families;
      GroupRingElement sum = gr_zero(g);
      for (std::size_t a = 0; a < es.size(); ++a) {
        sum = gr_add(sum, es[a]);
        o.expect(gr_equal(gr_mul(g, es[a], es[a]), es[a]), ls.file.origin + " " + what + " idempotent");
        for (int h : gens) o.expect(gr_equal(gr_mul(g, gr_basis(g, h), es[a]), gr_mul(g, es[a], gr_basis(g, h))), ls.file.origin + " " + what + " central");
        for (std::size_t b = a + 1; b < es.size(); ++b) o.expect(gr_is_zero(gr_mul(g, es[a], es[b])), ls.file.origin + " " + what + " orthogonal");
      }
      o.expect(gr_equal(sum, gr_basis(g, g.identity())), ls.file.origin + " " + what + " sum is 1");
    };
    std::vector<GroupRingElement> eps;
    for (const auto& r : component_reports(ls.spec)) eps.push_back(r.idempotent);
    check(eps, "eps");
    if (auto d = is_q_elementary(ls.spec, ls.spec.l)) {
      std::vector<GroupRingElement> es;
      for (const auto& part : elementary_decomposition(ls.spec, tr, *d)) es.push_back(part.e_i);
      check(es, "e_i");
    }
  }
  o.notes.push_back(std::to_string(families) + " families");
  return o;
}

// M_0 is monomial: walk each row through ln steps and multiply the entries
bool shift_walk(long ln, const CycNumber& corner) {
  const auto m = shift_m0(ln, corner);
  const auto n = static_cast<std::size_t>(ln);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t at = i;
    long exp = 0;
    CycNumber c(1);
    for (long k = 0; k < ln; ++k) {
      std::size_t next = n;
      for (std::size_t j = 0; j < n; ++j)
        if (!m[at][j].empty()) next = j;
      if (next == n || m[at][next].size() != 1) return false;
      exp += m[at][next].begin()->first;
      c *= m[at][next].begin()->second;
      at = next;
    }
    if (at != i || exp != 0 || !(c == CycNumber(1))) return false;
  }
  return true;
}

Outcome shift_power() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (long ln : {1L, 3L, 9L, 27L}) {
    bool ok = true;
    try {
      shift_power_check(ln);
    } catch (const InternalConsistency&) {
      ok = false;
    }
    o.expect(ok, "M_0^" + std::to_string(ln) + " = 1");
    o.expect(shift_walk(ln, CycNumber(1)), "walk oracle " + std::to_string(ln));
  }
  bool caught = false;
  try {
    shift_power_check(9, CycNumber::zeta(3));
  } catch (const InternalConsistency&) {
    caught = true;
  }
  o.expect(caught, "perturbed corner rejected");
  o.expect(!shift_walk(9, CycNumber::zeta(3)), "walk oracle rejects perturbed corner");
  const double s = since(t0);
  o.expect(s < kShiftSeconds, "runtime");
  o.notes.push_back("l^n in {1,3,9,27}, " + std::to_string(s) + "s");
  return o;
}

std::vector<ElementarySummand> parts_of(const LoadedSpec& ls, Truncation& tr) {
  tr = truncate(ls.spec);
  auto d = is_q_elementary(ls.spec, ls.spec.l);
  if (!d) throw InternalConsistency(ls.file.origin + " is not l-elementary");
  return elementary_decomposition(ls.spec, tr, *d);
}

Outcome star_orbits() {
  Outcome o;
  {
    const auto ls = load_spec(corpus("cyclic7_gamma"));
    Truncation tr;
    const auto parts = parts_of(ls, tr);
    long center18 = -1;
    for (const auto& r : component_reports(ls.spec))
      if (r.dim == 18) center18 = r.center_dim;
    bool seen = false;
    for (const auto& part : parts) {
      if (part.zeta_order != 7) continue;
      for (const auto& og : part.star.orbits) {
        o.expect(og.d == 0, "Z/7 orbit has d = 0");
        verify_orbit(tr.group, part.star, og, ls.spec.l);
        const long zv = center_of(tr.group, ideal_of(tr.group, whole(tr.group), og.idempotent)).dim;
        o.expect(zv == 2, "Z(V) has dimension 2");
        o.expect(zv == center18, "Z(V) matches the 18-dim component center");
        o.notes.push_back("Z/7: Z(V) = " + std::to_string(zv));
        seen = true;
      }
    }
    o.expect(seen, "Z/7 orbit found");
  }
  {
    const auto ls = load_spec(corpus("wrapped_transvection"));
    Truncation tr;
    const auto parts = parts_of(ls, tr);
    const FiniteGroup& g = tr.group;
    long full = 0;
    for (const auto& part : parts)
      for (const auto& og : part.star.orbits) {
        verify_orbit(g, part.star, og, ls.spec.l);
        if (og.d != part.star.n || part.star.n == 0) continue;
        const auto& W = part.star.base[og.members.front()];
        const long wt = trace_dim(g, og.idempotent, g.order());
        const long w = trace_dim(g, W.idempotent, static_cast<long>(part.star.b.size()));
        o.expect(wt == part.star.ln * part.star.ln * w, "dim W~ = l^{2n} dim W");
        o.notes.push_back("wrapped transvection: W~ = " + std::to_string(wt) + " = " + std::to_string(part.star.ln * part.star.ln) + "*" +
                          std::to_string(w));
        ++full;
      }
    o.expect(full > 0, "d = n orbit found");
  }
  return o;
}

Outcome centralizer() {
  Outcome o;
  const auto ls = load_spec(corpus("cyclic7_gamma"));
  Truncation tr;
  const auto parts = parts_of(ls, tr);
  bool ran = false;
  for (const auto& part : parts) {
    if (part.star.ln != 3) continue;
    for (const auto& og : part.star.orbits) {
      const auto& W = part.star.base[og.members.front()];
      if (og.d != 0 || W.ideal.dim > kCentralizerMaxDimW) continue;
      const auto r = centralizer_check(tr.group, part.star.b, part.star.x, part.star.ln, W.idempotent);
      o.expect(r.dim_centralizer == r.dim_fixed, "centralizer = fixed matrices");
      for (const auto& c : r.verified) o.expect(c.pass, c.name);
      o.notes.push_back("dim W " + std::to_string(r.dim_w) + ", centralizer " + std::to_string(r.dim_centralizer) + " = fixed " +
                        std::to_string(r.dim_fixed));
      bool caught = false;
      try {
        centralizer_check(tr.group, part.star.b, part.star.x, part.star.ln, W.idempotent, CycNumber::zeta(7));
      } catch (const InternalConsistency&) {
        caught = true;
      }
      o.expect(caught, "negative control");
      ran = true;
    }
  }
  o.expect(ran, "an l^n = 3, d = 0 instance");
  return o;
}

Outcome verdicts() {
  Outcome o;
  struct Want {
    std::string name, status, rule;
    int code;
  };
  const std::vector<Want> want{
      {"cyclic9", "Trivial", "KnownCases-i", 0},        {"heisenberg27", "Trivial", "KnownCases-i", 0},
      {"metacyclic27", "Trivial", "KnownCases-ii", 0},  {"transvection27", "Trivial", "KnownCases-ii", 0},
      {"cyclic7_gamma", "Trivial", "KnownCases-iii", 0}, {"wrapped_metacyclic", "ConditionalOnProL", "Thm-sk1", 10},
  };
  for (const auto& w : want) {
    const auto r = cli("sk1 --json " + corpus(w.name));
    o.expect(r.code == w.code, w.name + " exit " + std::to_string(r.code));
    try {
      const auto v = nlohmann::json::parse(r.out)["verdict"];
      o.expect(v["status"] == w.status && v["rule"] == w.rule, w.name + " " + v["status"].get<std::string>() + " [" + v["rule"].get<std::string>() + "]");
      if (w.code == 10) {
        o.expect(v["obligations"].size() == 1, w.name + " one obligation");
        for (const auto& ob : v["obligations"]) o.expect(ob["conductor"] == 7 && ob["u_h_order"] == 9, w.name + " obligation (7, U_1)");
      } else {
        o.expect(v["obligations"].empty(), w.name + " no obligations");
      }
    } catch (const nlohmann::json::exception& e) {
      o.expect(false, w.name + " json: " + e.what());
    }
  }
  o.expect(cli("sk1 --cap 50 " + corpus("general108")).code == 11, "cap exhaustion exits 11");
  o.expect(cli("sk1 " + corpus("general108")).code == 0, "general108 reduces to Trivial");
  o.notes.push_back("6 builtin verdicts and exit codes, cap path");
  return o;
}

Outcome character_tables(const std::vector<LoadedSpec>& specs) {
  Outcome o;
  for (const auto& ls : specs) {
    const auto t = character_table(*ls.spec.H);
    const std::size_t k = t.size();
    long sq = 0;
    for (long d : t.degrees) sq += d * d;
    o.expect(sq == t.group_order, ls.file.origin + " sum of squares");
    bool rows = true, cols = true;
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) {
        CycNumber s(0);
        for (std::size_t c = 0; c < k; ++c)
          s += t.values[x][c] * t.values[y][static_cast<std::size_t>(t.inverse_class[c])] * CycNumber(static_cast<long>(t.classes[c].size()));
        rows = rows && s.minimized() == CycNumber(x == y ? t.group_order : 0);
      }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        CycNumber s(0);
        for (std::size_t x = 0; x < k; ++x) s += t.values[x][a] * t.values[x][static_cast<std::size_t>(t.inverse_class[b])];
        cols = cols && s.minimized() == CycNumber(a == b ? t.group_order / static_cast<long>(t.classes[a].size()) : 0);
      }
    o.expect(rows, ls.file.origin + " row orthogonality");
    o.expect(cols, ls.file.origin + " column orthogonality");
  }
  o.notes.push_back(std::to_string(specs.size()) + " tables");
  return o;
}

Outcome determinism(const std::vector<std::string>& files) {
  Outcome o;
  for (const auto& f : files)
    for (const char* cmd : {"decompose --json ", "sk1 --json ", "table --json "}) {
      const auto a = cli(cmd + f);
      const auto b = cli(cmd + f);
      o.expect(!a.out.empty() && a.out == b.out && a.code == b.code, std::string(cmd) + f);
    }
  o.notes.push_back(std::to_string(files.size()) + " specs x {decompose, sk1, table}");
  return o;
}

}  // namespace

int main() {
  const auto files = corpus_files(IWADEC_CORPUS_DIR);
  std::vector<LoadedSpec> specs;
  for (const auto& f : files) specs.push_back(load_spec(f));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"dimension census", census},
      {"structure identities", [&] { return structure_identities(specs); }},
      {"idempotent family laws", [&] { return family_laws(specs); }},
      {"shift matrix identity", shift_power},
      {"star orbit checks", star_orbits},
      {"centralizer at cap", centralizer},
      {"verdict provenance", verdicts},
      {"character tables", [&] { return character_tables(specs); }},
      {"determinism", [&] { return determinism(files); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double s = since(t0);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << s << " s)";
    for (const auto& n : o.notes) std::cout << "; " << n;
    std::cout << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
