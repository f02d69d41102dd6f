#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrep/decomp.hpp"
#include "qrep/errors.hpp"
#include "qrep/gen.hpp"
#include "qrep/homext.hpp"
#include "qrep/io.hpp"
#include "qrep/perp.hpp"
#include "qrep/quiver.hpp"
#include "qrep/rep.hpp"
#include "qrep/subcat.hpp"

namespace qrep::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kTheoremFailed = 2, kInconclusive = 3 };

/// Settings shared by all subcommands.
struct RunConfig {
  std::optional<std::string> field_text;
  FieldSpec field = FieldSpec::prime(2);
  std::uint64_t seed = 0;
  std::size_t maxlen = 6;
  std::size_t samples = 100;
  std::uint64_t budget = 1'000'000;
  std::string quiver_path;
  std::string out_dir;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline DimVector parse_dims(const std::string& s, std::size_t n) {
  DimVector d;
  for (const auto& t : split_list(s)) {
    if (t.find_first_not_of("0123456789") != std::string::npos) throw ParseError(0, "bad dimension vector '" + s + "'");
    d.push_back(std::stoul(t));
  }
  if (d.size() != n) throw ParseError(0, "dimension vector '" + s + "' needs " + std::to_string(n) + " entries");
  return d;
}

inline std::string morphism_text(const RepMorphism& f) {
  std::ostringstream os;
  for (std::size_t v = 0; v < f.comps.size(); ++v) os << "  v" << v + 1 << " " << f.comps[v] << "\n";
  return os.str();
}

inline std::string rep_line(const Representation& m) {
  std::ostringstream os;
  os << "dim " << to_string(m.dims());
  const auto& arrows = m.quiver().arrows();
  for (std::size_t k = 0; k < arrows.size(); ++k)
    if (!m.mat(k).empty()) os << " " << arrows[k].id << "=" << m.mat(k);
  return os.str();
}

// Loads the quiver and representation files, resolving the run field: an
// explicit --field wins, else the first file's field line, else F2.
struct Session {
  RunConfig cfg;
  QuiverPtr quiver;

  void load_quiver() {
    if (cfg.quiver_path.empty()) throw ParseError(0, "missing -q <quiver file>");
    std::filesystem::path p(cfg.quiver_path);
    quiver = std::make_shared<const Quiver>(parse_quiver(read_file(cfg.quiver_path), p.stem().string()));
  }

  void resolve_field(const std::vector<std::string>& files) {
    if (cfg.field_text) {
      cfg.field = FieldSpec::parse(*cfg.field_text);
      return;
    }
    for (const auto& f : files)
      if (auto fld = rep_file_field(read_file(f))) {
        cfg.field = *fld;
        return;
      }
  }

  Representation load(const std::string& path) const {
    try {
      return parse_rep_file(read_file(path), quiver, cfg.field);
    } catch (const ParseError& e) {
      throw ParseError(0, path + ": " + e.what());
    }
  }

  std::vector<Representation> load_all(const std::vector<std::string>& paths) const {
    std::vector<Representation> out;
    for (const auto& p : paths) out.push_back(load(p));
    return out;
  }

  std::vector<Representation> simples() const {
    std::vector<Representation> s;
    for (std::size_t v = 1; v <= quiver->vertex_count(); ++v) s.push_back(Representation::simple(quiver, cfg.field, v));
    return s;
  }

  std::string header(const std::string& cmd) const {
    std::ostringstream os;
    os << "# qrep " << cmd;
    if (quiver) os << " quiver=" << quiver->name();
    os << " field=" << cfg.field.name() << " seed=" << cfg.seed << " maxlen=" << cfg.maxlen
       << " samples=" << cfg.samples << " budget=" << cfg.budget << "\n";
    return os.str();
  }
};

inline std::string universe_text(const ObjectUniverse& u) {
  std::ostringstream os;
  os << "indecomposables " << u.size() << (u.complete ? " (complete)" : " (incomplete: verified up to length " +
                                                                           std::to_string(u.maxlen) + ")")
     << "\n";
  for (std::size_t k = 0; k < u.size(); ++k) os << "  [" << k << "] " << rep_line(u.indecs[k]) << "\n";
  return os.str();
}

}  // namespace detail

/// Runs one command line; the report goes to `out` (and to --out/<cmd>.txt).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quiver representation toolkit: Hom/Ext, decompositions, thick subcategories, generators"};
  app.require_subcommand(1);
  app.fallthrough();
  detail::Session s;
  RunConfig& cfg = s.cfg;
  std::string field_opt;
  app.add_option("-q,--quiver", cfg.quiver_path, "Quiver file (.qv)");
  auto* field_flag = app.add_option("--field", field_opt, "Q or F<p>");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--maxlen", cfg.maxlen, "Length bound for universes and towers");
  app.add_option("--samples", cfg.samples, "Random samples");
  app.add_option("--budget", cfg.budget, "Enumeration budget");
  app.add_option("--out", cfg.out_dir, "Directory for a copy of the report");

  std::vector<std::string> files;
  std::string mode = "brick", bricks, dims, cmd;
  std::size_t max_dim = 3;
  std::uint32_t prime = 5;

  auto* hom = app.add_subcommand("hom", "Basis of Hom(A, B)");
  hom->add_option("files", files)->required()->expected(2);
  auto* ext = app.add_subcommand("ext", "Basis of Ext^1(A, B)");
  ext->add_option("files", files)->required()->expected(2);
  auto* dec = app.add_subcommand("decompose", "Indecomposable summands");
  dec->add_option("file", files)->required()->expected(1);
  auto* comp = app.add_subcommand("compseries", "Composition factors, top to bottom");
  comp->add_option("file", files)->required()->expected(1);
  auto* brick = app.add_subcommand("brick", "Is End(M) a division ring?");
  brick->add_option("file", files)->required()->expected(1);
  auto* clo = app.add_subcommand("closure", "Closure C(S) of seed objects");
  clo->add_option("files", files)->required();
  clo->add_option("--mode", mode)->check(CLI::IsMember({"brick", "generic"}));
  auto* sim = app.add_subcommand("simples", "Relative simples of C(S)");
  sim->add_option("files", files)->required();
  sim->add_option("--mode", mode)->check(CLI::IsMember({"brick", "generic"}));
  auto* thick = app.add_subcommand("thick", "Thickness of the additive hull of the given objects");
  thick->add_option("files", files);
  auto* verify = app.add_subcommand("verify", "Theorem checks");
  verify->require_subcommand(1);
  auto* v_bij = verify->add_subcommand("bijection", "Relative simples of C(S) equal S");
  v_bij->add_option("--bricks", bricks, "Comma-separated brick files")->required();
  auto* v_euler = verify->add_subcommand("euler", "dim Hom - dim Ext = Euler form on random pairs");
  auto* v_jh = verify->add_subcommand("jordan-holder", "Composition factors match dimension vectors");
  auto* v_ks = verify->add_subcommand("krull-schmidt", "Decompositions stable under conjugation");
  for (auto* v : {v_euler, v_jh, v_ks}) v->add_option("--max-dim", max_dim, "Largest dimension per vertex");
  auto* v_gen = verify->add_subcommand("generator", "A generator forces a projective generator");
  v_gen->add_option("--bricks", bricks, "Comma-separated seed bricks (default: vertex simples)");
  auto* tow = app.add_subcommand("tower", "Extension tower from a relative simple");
  tow->add_option("file", files)->required()->expected(1);
  tow->add_option("--bricks", bricks, "Comma-separated seed bricks (default: vertex simples)");
  auto* pg = app.add_subcommand("projgen", "Projective generator of C(S)");
  pg->add_option("--bricks", bricks, "Comma-separated seed bricks (default: vertex simples)");
  auto* perp = app.add_subcommand("perp", "Membership evidence for A(d)");
  perp->add_option("file", files)->required()->expected(1);
  perp->add_option("--dim", dims, "Dimension vector d, comma-separated")->required();
  auto* rigid = app.add_subcommand("rigid", "Search for V with Ext^1(V,V) = 0");
  rigid->add_option("--dim", dims, "Dimension vector, comma-separated")->required();
  auto* kron = app.add_subcommand("kronecker", "Regular simples of the Kronecker quiver over F_p");
  kron->add_option("--p", prime, "Prime");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (*field_flag) cfg.field_text = field_opt;

  std::ostringstream rep;
  int code = kOk;
  try {
    auto brick_paths = detail::split_list(bricks);
    bool needs_quiver = !kron->parsed();
    if (needs_quiver) s.load_quiver();
    std::vector<std::string> all_files = files;
    all_files.insert(all_files.end(), brick_paths.begin(), brick_paths.end());
    s.resolve_field(all_files);
    Rng rng(cfg.seed);
    auto seeds_or_simples = [&]() { return brick_paths.empty() ? s.simples() : s.load_all(brick_paths); };
    auto brick_universe = [&](const std::vector<Representation>& seeds) {
      return closure(seeds, s.quiver, cfg.field, {cfg.maxlen, ClosureMode::Brick, cfg.budget}, rng);
    };

    if (hom->parsed()) {
      cmd = "hom";
      rep << s.header(cmd);
      auto a = s.load(files[0]), b = s.load(files[1]);
      HomSpace h = hom_basis(a, b);
      rep << "dim " << h.dim() << "\n";
      for (std::size_t k = 0; k < h.dim(); ++k) rep << "basis " << k + 1 << "\n" << detail::morphism_text(h.basis[k]);
    } else if (ext->parsed()) {
      cmd = "ext";
      rep << s.header(cmd);
      auto a = s.load(files[0]), b = s.load(files[1]);
      ExtSpace e = ext_basis(a, b);
      rep << "dim " << e.dim() << "\n";
      rep << "euler " << euler_form(*s.quiver, a.dims(), b.dims()) << " = dim Hom " << hom_dim(a, b) << " - dim Ext "
          << e.dim() << "\n";
      const auto& arrows = s.quiver->arrows();
      for (std::size_t k = 0; k < e.dim(); ++k) {
        rep << "cocycle " << k + 1 << "\n";
        for (std::size_t t = 0; t < arrows.size(); ++t) rep << "  " << arrows[t].id << " " << e.basis[k].blocks[t] << "\n";
      }
    } else if (dec->parsed()) {
      cmd = "decompose";
      rep << s.header(cmd);
      auto d = decompose(s.load(files[0]), rng);
      rep << "summands " << d.count() << " (" << d.summands.size() << " distinct)\n";
      for (const auto& x : d.summands) rep << "  " << x.multiplicity << " x " << detail::rep_line(x.rep) << "\n";
    } else if (comp->parsed()) {
      cmd = "compseries";
      rep << s.header(cmd);
      auto labels = composition_series(s.load(files[0]));
      rep << "length " << labels.size() << "\nfactors";
      for (auto l : labels) rep << " S" << l;
      rep << "\n";
    } else if (brick->parsed()) {
      cmd = "brick";
      rep << s.header(cmd);
      auto m = s.load(files[0]);
      BrickVerdict v = brick_test(m, rng, cfg.budget);
      rep << "dim End " << endomorphism_dim(m) << "\n";
      if (v.status == BrickStatus::Brick) {
        rep << "brick: yes\n";
      } else if (v.status == BrickStatus::NotBrick) {
        rep << "brick: no\nwitness (nonzero non-invertible endomorphism)\n" << detail::morphism_text(*v.witness);
      } else {
        rep << "brick: inconclusive\n";
        code = kInconclusive;
      }
    } else if (clo->parsed() || sim->parsed()) {
      cmd = clo->parsed() ? "closure" : "simples";
      rep << s.header(cmd) << "mode " << mode << "\n";
      auto seeds = s.load_all(files);
      ClosureResult c = closure(seeds, s.quiver, cfg.field,
                                {cfg.maxlen, mode == "brick" ? ClosureMode::Brick : ClosureMode::Generic, cfg.budget},
                                rng);
      rep << detail::universe_text(c.universe);
      rep << "rounds " << c.rounds << " sampled " << (c.sampled ? "yes" : "no") << " truncated "
          << (c.truncated ? "yes" : "no") << "\n";
      rep << "audited sequences " << c.audits.audited << " failed " << c.audits.failed << "\n";
      for (const auto& v : c.violations) rep << "violation: " << v << "\n";
      if (sim->parsed()) {
        auto simples = relative_simples(c.universe, rng);
        rep << "relative simples " << simples.size() << "\n";
        for (const auto& x : simples) rep << "  " << detail::rep_line(x) << "\n";
      }
      if (c.audits.failed || !c.violations.empty()) code = kTheoremFailed;
    } else if (thick->parsed()) {
      cmd = "thick";
      rep << s.header(cmd);
      ObjectUniverse u{s.quiver, cfg.field, cfg.maxlen, {}, true};
      for (const auto& m : s.load_all(files))
        for (const auto& x : decompose(m, rng).summands)
          if (!u.find(x.rep, rng)) u.indecs.push_back(x.rep);
      rep << detail::universe_text(u);
      ThickVerdict v = is_thick(u, cfg.budget, rng);
      rep << "thick: " << (v.thick ? "yes" : "no") << "\n";
      if (!v.thick) {
        rep << "reason: " << v.reason << "\n";
        if (v.outsider) rep << "outsider " << detail::rep_line(*v.outsider) << "\n";
        if (v.witness) rep << "witness morphism\n" << detail::morphism_text(*v.witness);
      }
    } else if (v_bij->parsed()) {
      cmd = "verify bijection";
      rep << s.header(cmd);
      BrickSet bs{s.load_all(brick_paths)};
      BijectionReport b = verify_bijection(bs, s.quiver, cfg.field, cfg.maxlen, cfg.budget, rng);
      rep << detail::universe_text(b.closure.universe);
      rep << "relative simples " << b.simples.size() << " (bricks given " << bs.bricks.size() << ")\n";
      rep << "audited sequences " << b.closure.audits.audited << " failed " << b.closure.audits.failed << "\n";
      rep << "verdict: " << (b.pass ? "pass" : "FAIL")
          << (b.complete ? "" : " (verified up to length " + std::to_string(cfg.maxlen) + ")") << "\n";
      if (!b.pass) code = kTheoremFailed;
    } else if (v_euler->parsed() || v_jh->parsed() || v_ks->parsed()) {
      cmd = v_euler->parsed() ? "verify euler" : v_jh->parsed() ? "verify jordan-holder" : "verify krull-schmidt";
      rep << s.header(cmd) << "max-dim " << max_dim << "\n";
      std::uniform_int_distribution<std::size_t> dim_dist(0, max_dim);
      auto random_dims = [&]() {
        DimVector d;
        for (std::size_t v = 0; v < s.quiver->vertex_count(); ++v) d.push_back(dim_dist(rng));
        return d;
      };
      std::size_t failures = 0;
      for (std::size_t t = 0; t < cfg.samples; ++t) {
        Representation m = random_rep(s.quiver, random_dims(), cfg.field, rng);
        if (v_euler->parsed()) {
          Representation n = random_rep(s.quiver, random_dims(), cfg.field, rng);
          long long lhs = static_cast<long long>(hom_dim(m, n)) - static_cast<long long>(ext_dim(m, n));
          if (lhs != euler_form(*s.quiver, m.dims(), n.dims())) ++failures;
        } else if (v_jh->parsed()) {
          DimVector counts(s.quiver->vertex_count(), 0);
          for (auto l : composition_series(m)) ++counts[l - 1];
          if (counts != m.dims()) ++failures;
        } else {
          auto [conj, iso] = random_conjugate(m, rng);
          auto a = decompose(m, rng), b = decompose(conj, rng);
          std::vector<Representation> la, lb;
          for (const auto& x : a.summands)
            for (std::size_t c = 0; c < x.multiplicity; ++c) la.push_back(x.rep);
          for (const auto& x : b.summands)
            for (std::size_t c = 0; c < x.multiplicity; ++c) lb.push_back(x.rep);
          if (!same_up_to_iso(la, lb, rng)) ++failures;
        }
      }
      rep << "cases " << cfg.samples << " failures " << failures << "\n";
      rep << "verdict: " << (failures ? "FAIL" : "pass") << "\n";
      if (failures) code = kTheoremFailed;
    } else if (v_gen->parsed() || pg->parsed()) {
      cmd = v_gen->parsed() ? "verify generator" : "projgen";
      rep << s.header(cmd);
      ClosureResult c = brick_universe(seeds_or_simples());
      rep << detail::universe_text(c.universe);
      GeneratorTheoremReport g = check_generator_theorem(c.universe, cfg.maxlen, rng);
      rep << "generator (sum of all members): " << (g.generator_exists ? "yes" : "no") << "\n";
      for (std::size_t k = 0; k < g.projective.towers.size(); ++k) {
        const TowerTrace& t = g.projective.towers[k];
        rep << "tower " << k + 1 << ": " << t.steps.size() - 1 << " steps, "
            << (t.outcome == TowerOutcome::ProjectiveReached ? "projective reached" : "bound exceeded") << ", top "
            << detail::rep_line(t.last()) << "\n";
      }
      if (g.projective.found) {
        rep << "projective generator " << detail::rep_line(*g.projective.generator) << "\n";
        rep << "dim End " << g.projective_end_dim << "\n";
        rep << "dim Hom(P, x):";
        for (auto h : g.hom_from_projective) rep << " " << h;
        rep << "\nsummand of generator: " << (g.projective_is_summand.value_or(false) ? "yes" : "no") << "\n";
      } else {
        rep << "projective generator: none\n";
      }
      if (v_gen->parsed()) {
        if (!g.verdict_issued) {
          rep << "verdict: not issued (universe incomplete)\n";
          code = kInconclusive;
        } else {
          rep << "verdict: " << (g.pass ? "pass" : "FAIL") << "\n";
          if (!g.pass) code = kTheoremFailed;
        }
      }
    } else if (tow->parsed()) {
      cmd = "tower";
      rep << s.header(cmd);
      ClosureResult c = brick_universe(seeds_or_simples());
      rep << detail::universe_text(c.universe);
      TowerTrace t = tower(s.load(files[0]), c.universe, cfg.maxlen, rng);
      for (std::size_t k = 0; k < t.steps.size(); ++k) {
        rep << "E" << k << " " << detail::rep_line(t.steps[k].object);
        if (t.steps[k].simple_index) rep << " via simple " << *t.steps[k].simple_index;
        rep << (t.steps[k].unique_simple_quotient ? "" : " [non-unique top]") << "\n";
      }
      rep << "outcome: "
          << (t.outcome == TowerOutcome::ProjectiveReached ? "projective_reached" : "bound_exceeded") << "\n";
      if (!t.audits_ok()) code = kTheoremFailed;
    } else if (perp->parsed()) {
      cmd = "perp";
      rep << s.header(cmd);
      auto x = s.load(files[0]);
      DimVector d = detail::parse_dims(dims, s.quiver->vertex_count());
      PerpVerdict v = in_Ad(x, d, cfg.samples, cfg.seed);
      rep << "d " << to_string(d) << "\n";
      rep << "status: " << (v.status == PerpStatus::MemberWithWitness ? "member_with_witness" : "no_witness_found")
          << "\nreason: " << v.reason << "\nsamples drawn " << v.samples << "\n";
      if (v.witness) rep << "witness " << detail::rep_line(*v.witness) << "\n";
    } else if (rigid->parsed()) {
      cmd = "rigid";
      rep << s.header(cmd);
      DimVector d = detail::parse_dims(dims, s.quiver->vertex_count());
      auto v = find_rigid(s.quiver, d, cfg.field, cfg.samples, cfg.seed);
      rep << "d " << to_string(d) << "\n";
      if (v)
        rep << "rigid: " << detail::rep_line(*v) << "\n";
      else
        rep << "rigid: none in " << cfg.samples << " samples\n";
    } else if (kron->parsed()) {
      cmd = "kronecker";
      cfg.field = FieldSpec::prime(prime);
      rep << s.header(cmd);
      KroneckerReport k = kronecker_report(prime, cfg.maxlen, cfg.samples, cfg.seed);
      rep << "regular simples " << k.simples << "\n";
      for (const auto& pt : projective_line(cfg.field)) rep << "  R" << pt.str() << "\n";
      for (const auto& c : k.checks)
        rep << (c.pass ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
      rep << "verdict: " << (k.pass() ? "pass" : "FAIL") << "\n";
      if (!k.pass()) code = kTheoremFailed;
    }
  } catch (const InconclusiveError& e) {
    rep << "inconclusive: " << e.what() << "\n";
    code = kInconclusive;
  } catch (const BudgetError& e) {
    rep << "budget exhausted: " << e.what() << "\n";
    code = kInconclusive;
  } catch (const std::exception& e) {
    out << rep.str();
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  out << rep.str();
  if (!cfg.out_dir.empty()) {
    std::string name = cmd;
    std::replace(name.begin(), name.end(), ' ', '-');
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream(std::filesystem::path(cfg.out_dir) / (name + ".txt")) << rep.str();
  }
  return code;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace qrep::cli
