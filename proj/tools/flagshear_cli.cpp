// Batch front end: validates laminations, runs the forward invariant map,
// polytope checks, interior sampling, reconstruction, round trips and the
// randomized exact identity suites. All I/O is JSON; exact rationals travel
// as "p/q" strings. Exit codes: 0 success, 1 malformed input, 2 violated
// mathematical precondition, 3 reconstruction inconsistency, 4 exact
// identity violation.

#include <CLI11.hpp>
#include <iostream>

#include "flagshear/json_io.hpp"
#include "flagshear/synthesis.hpp"

using namespace flagshear;

namespace {

struct RunConfig {
  long precision = kDefaultPrecision;
  bool exact = false;
  uint64_t seed = 0;
  long tolerance = 128;  // comparisons at 2^-tolerance
  std::string out;
  bool logs = false;
};

void emit(const RunConfig& cfg, const json& report) {
  if (cfg.out.empty()) {
    std::cout << report.dump(1) << "\n";
  } else {
    save_json_file(cfg.out, report);
  }
}

Representation load_rep(const std::string& path, const RunConfig& cfg) {
  json j = load_json_file(path);
  Representation rep = representation_from_json(j, cfg.precision);
  if (cfg.exact) {
    for (const auto& [name, m] : rep.generators())
      if (!m.all_exact()) throw parse_error("exact mode rejects non-rational matrix entries");
  }
  return rep;
}

struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  Scalar rational() {
    long num = static_cast<long>(next() % 17) - 8;
    long den = 1 + static_cast<long>(next() % 5);
    return Scalar(num, den);
  }
  Matrix matrix(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rational();
    return m;
  }
};

int cmd_validate(const std::string& lam_path, const RunConfig& cfg) {
  LaminationComplex lam = lamination_from_json(load_json_file(lam_path));
  auto rep = lam.validate();
  json out{{"valid", rep.valid},
           {"violations", rep.violations},
           {"counts", {{"s", rep.s}, {"t", rep.t}, {"u", rep.u}}},
           {"spiral_multiplicities", rep.spiral_multiplicity}};
  emit(cfg, out);
  if (!rep.valid) throw error(errc::math_precondition, "lamination invalid");
  return 0;
}

int cmd_invariants(const std::string& rep_path, const std::string& lam_path, const std::string& atlas_path,
                   const RunConfig& cfg) {
  Representation rep = load_rep(rep_path, cfg);
  LaminationComplex lam = lamination_from_json(load_json_file(lam_path));
  LiftAtlas atlas = atlas_from_json(load_json_file(atlas_path));
  atlas.validate_against(lam);
  CoordinateVector cv = full_coordinates(rep, lam, atlas, cfg.precision);
  emit(cfg, to_json(cv, cfg.logs ? cfg.precision : 0));
  return 0;
}

int cmd_check_polytope(const std::string& coords_path, const std::string& lam_path, const RunConfig& cfg) {
  LaminationComplex lam = lamination_from_json(load_json_file(lam_path));
  CoordinateVector cv = coordinates_from_json(load_json_file(coords_path), cfg.precision, cfg.exact);
  auto rep = check_membership(cv, lam, cfg.tolerance);
  json out{{"pass", rep.pass}, {"violations", rep.violations}, {"dimension", affine_dimension(lam, cv.n)}};
  emit(cfg, out);
  return rep.pass ? 0 : 2;
}

int cmd_sample(const std::string& lam_path, int n, const RunConfig& cfg) {
  LaminationComplex lam = lamination_from_json(load_json_file(lam_path));
  CoordinateVector cv = sample_interior(lam, n, cfg.seed);
  emit(cfg, to_json(cv, cfg.logs ? cfg.precision : 0));
  return 0;
}

int cmd_reconstruct(const std::string& coords_path, const std::string& lam_path, const std::string& atlas_path,
                    const RunConfig& cfg) {
  LaminationComplex lam = lamination_from_json(load_json_file(lam_path));
  LiftAtlas atlas = atlas_from_json(load_json_file(atlas_path));
  atlas.validate_against(lam);
  CoordinateVector cv = coordinates_from_json(load_json_file(coords_path), cfg.precision, cfg.exact);
  Representation rep = reconstruct(cv, lam, atlas, cfg.precision);
  emit(cfg, to_json(rep));
  return 0;
}

int cmd_roundtrip(const std::string& lam_path, const std::string& atlas_path, int n, const RunConfig& cfg) {
  LaminationComplex lam = lamination_from_json(load_json_file(lam_path));
  LiftAtlas atlas = atlas_from_json(load_json_file(atlas_path));
  atlas.validate_against(lam);
  CoordinateVector cv = sample_interior(lam, n, cfg.seed);
  Representation rep = reconstruct(cv, lam, atlas, cfg.precision);
  CoordinateVector back = full_coordinates(rep, lam, atlas, cfg.precision);
  // max componentwise deviation |back/orig - 1|
  Scalar dev(0);
  auto upd = [&](const Scalar& a, const Scalar& b) {
    Scalar d = (a / b - Scalar(1)).abs();
    if (d > dev) dev = d;
  };
  for (auto& [k, v] : cv.triangle_exp) upd(back.triangle_exp.at(k), v);
  for (auto& [k, v] : cv.shear_exp) upd(back.shear_exp.at(k), v);
  bool exact_zero = dev.is_exact() && dev.is_zero();
  Scalar tol = Scalar::pow2(-cfg.tolerance, cfg.precision);
  bool pass = exact_zero || dev < tol;
  json out{{"lamination", lam.name},
           {"n", n},
           {"seed", cfg.seed},
           {"deviation", exact_zero ? "0" : dev.str()},
           {"exact", exact_zero},
           {"pass", pass}};
  emit(cfg, out);
  return pass ? 0 : 2;
}

int cmd_identities(int n, int trials, const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0x5eedb00c);
  int done = 0, skipped = 0;
  auto fail = [](const std::string& what) { throw error(errc::identity_violation, "identity violated: " + what); };
  while (done < trials) {
    Matrix me = rng.matrix(n), mf = rng.matrix(n), mg = rng.matrix(n), mgp = rng.matrix(n);
    if (det(me).is_zero() || det(mf).is_zero() || det(mg).is_zero() || det(mgp).is_zero()) {
      ++skipped;
      continue;
    }
    Flag e{me}, f{mf}, g{mg}, gp{mgp};
    if (!is_generic({e, f, g}) || !is_generic({e, f, g, gp})) {
      ++skipped;
      continue;
    }
    ++done;
    for (auto [a, b, c] : triangle_index_set(n)) {
      Scalar t = triple_ratio(e, f, g, a, b, c);
      if (t != triple_ratio(f, g, e, b, c, a)) fail("triple ratio cyclic permutation");
      if (t * triple_ratio(f, e, g, b, a, c) != Scalar(1)) fail("triple ratio transposition inverse");
    }
    for (int a = 1; a <= n - 1; ++a) {
      Scalar prod(1);
      for (int b = 1; b <= n - a - 1; ++b) prod *= triple_ratio(e, f, g, a, b, n - a - b);
      if (quadruple_ratio(e, f, g, a) != prod) fail("quadruple ratio product expansion");
      Scalar d = double_ratio(e, f, g, gp, a);
      if (double_ratio(e, f, gp, g, a) * d != Scalar(1)) fail("double ratio swap inverse");
      if (double_ratio(f, e, g, gp, n - a) * d != Scalar(1)) fail("double ratio flag swap");
    }
    if (quadruple_ratio(e, f, g, n - 1) != Scalar(1)) fail("top quadruple ratio is 1");
    // invariance under a projective change of basis and column rescaling
    Matrix A = rng.matrix(n);
    if (!det(A).is_zero()) {
      for (auto [a, b, c] : triangle_index_set(n))
        if (triple_ratio(A * e, A * f, A * g, a, b, c) != triple_ratio(e, f, g, a, b, c))
          fail("projective invariance");
    }
    Matrix resc = mg;
    for (int i = 0; i < n; ++i) resc(i, 0) = resc(i, 0) * Scalar(-3, 7);
    Flag g2{resc};
    for (int a = 1; a <= n - 1; ++a)
      if (double_ratio(e, f, g2, gp, a) != double_ratio(e, f, g, gp, a)) fail("representative independence");
  }
  json out{{"n", n}, {"trials", done}, {"skipped_degenerate", skipped}, {"pass", true}};
  emit(cfg, out);
  return 0;
}

int cmd_relations(const std::string& coords_path, const std::string& lam_path, const RunConfig& cfg) {
  LaminationComplex lam = lamination_from_json(load_json_file(lam_path));
  CoordinateVector cv = coordinates_from_json(load_json_file(coords_path), cfg.precision, cfg.exact);
  json residuals = json::object();
  bool all_one = true;
  for (int a = 1; a <= cv.n - 1; ++a) {
    Scalar r = global_relation_residual(cv, lam, a);
    residuals[std::to_string(a)] = r.str();
    all_one = all_one && r == Scalar(1);
  }
  emit(cfg, json{{"residuals", residuals}, {"all_one", all_one}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coordinates for Hitchin representations from flag triple ratios and shear parameters"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--precision", cfg.precision, "working precision in bits (default 256)");
  app.add_flag("--exact", cfg.exact, "reject non-rational input scalars");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--tolerance", cfg.tolerance, "comparison tolerance exponent k: 2^-k");
  app.add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  app.add_flag("--logs", cfg.logs, "include logarithms at the working precision in coordinate output");

  std::string rep_path, lam_path, atlas_path, coords_path;
  int n = 3, trials = 100;

  auto* validate = app.add_subcommand("validate-lamination", "check a lamination file");
  validate->add_option("lamination", lam_path)->required();

  auto* invariants = app.add_subcommand("invariants", "compute triangle/shear/length invariants of a representation");
  invariants->add_option("representation", rep_path)->required();
  invariants->add_option("lamination", lam_path)->required();
  invariants->add_option("atlas", atlas_path)->required();

  auto* checkp = app.add_subcommand("check-polytope", "test coordinates against the constraint polytope");
  checkp->add_option("coordinates", coords_path)->required();
  checkp->add_option("lamination", lam_path)->required();

  auto* sample = app.add_subcommand("sample", "sample an interior point of the polytope");
  sample->add_option("lamination", lam_path)->required();
  sample->add_option("--n", n, "matrix dimension")->required();

  auto* recon = app.add_subcommand("reconstruct", "build a representation from coordinates");
  recon->add_option("coordinates", coords_path)->required();
  recon->add_option("lamination", lam_path)->required();
  recon->add_option("atlas", atlas_path)->required();

  auto* roundtrip = app.add_subcommand("roundtrip", "sample, reconstruct, recompute, compare");
  roundtrip->add_option("lamination", lam_path)->required();
  roundtrip->add_option("atlas", atlas_path)->required();
  roundtrip->add_option("--n", n, "matrix dimension")->required();

  auto* identities = app.add_subcommand("identities", "randomized exact ratio identity suite");
  identities->add_option("--n", n, "flag dimension");
  identities->add_option("--trials", trials, "number of generic tuples");

  auto* relations = app.add_subcommand("relations", "global triangle-invariant relation residuals");
  relations->add_option("coordinates", coords_path)->required();
  relations->add_option("lamination", lam_path)->required();

  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(lam_path, cfg);
    if (invariants->parsed()) return cmd_invariants(rep_path, lam_path, atlas_path, cfg);
    if (checkp->parsed()) return cmd_check_polytope(coords_path, lam_path, cfg);
    if (sample->parsed()) return cmd_sample(lam_path, n, cfg);
    if (recon->parsed()) return cmd_reconstruct(coords_path, lam_path, atlas_path, cfg);
    if (roundtrip->parsed()) return cmd_roundtrip(lam_path, atlas_path, n, cfg);
    if (identities->parsed()) return cmd_identities(n, trials, cfg);
    if (relations->parsed()) return cmd_relations(coords_path, lam_path, cfg);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
