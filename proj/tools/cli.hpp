#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "spdcone/spdcone.hpp"

namespace spdcone::cli {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Options shared by every command.
struct Settings {
  double tol = 1e-10;
  double residual_tol = 1e-8;
  long long max_cycles = 1'000'000;
  std::string backend = "auto";
  std::uint64_t seed = 0x5eed;
  bool json = false;
  bool allow_extrapolation = false;
  long dense_ceiling = kDefaultDenseCeiling;
  std::string manifest;  ///< manifest path; empty selects the command default
};

inline std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline SpdMatrix load_spd(const std::string& path) {
  SymMatrix m = read_matrix_market_file(path);
  try {
    return make_spd(std::move(m));
  } catch (const NotPositiveDefiniteError& e) {
    throw Error(ErrorCode::NotPositiveDefinite, path + " is not positive definite (Cholesky pivot " +
                                                    std::to_string(e.pivot()) + " is " +
                                                    format17(e.pivot_value()) + ")");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NumericalBreakdown)
      throw Error(e.code(), path + " is numerically singular");
    throw;
  }
}

/// State of one command invocation: options, eigensolver tally, manifest.
class Invocation {
 public:
  Invocation(std::string command, std::vector<std::string> inputs, Settings s)
      : settings_(std::move(s)), tally_(std::make_shared<IterationTally>()),
        start_(std::chrono::steady_clock::now()) {
    manifest_["command"] = std::move(command);
    manifest_["inputs"] = std::move(inputs);
    manifest_["options"] = {{"tol", settings_.tol},
                            {"residual_tol", settings_.residual_tol},
                            {"max_cycles", settings_.max_cycles},
                            {"backend", settings_.backend},
                            {"dense_ceiling", settings_.dense_ceiling},
                            {"allow_extrapolation", settings_.allow_extrapolation}};
    manifest_["seed"] = settings_.seed;
    manifest_["outputs"] = Json::object();
  }

  const Settings& settings() const { return settings_; }
  Json& options() { return manifest_["options"]; }
  Json& outputs() { return manifest_["outputs"]; }
  Json& manifest() { return manifest_; }

  EigenOptions eigen() const {
    EigenOptions eo;
    eo.tol = settings_.tol;
    eo.backend = backend_from_string(settings_.backend);
    eo.seed = settings_.seed;
    eo.dense_ceiling = settings_.dense_ceiling;
    eo.tally = tally_;
    eo.validate();
    return eo;
  }

  MeanOptions mean(MeanStrategy strategy) const {
    MeanOptions mo;
    mo.tol = settings_.tol;
    mo.residual_tol = settings_.residual_tol;
    mo.max_cycles = settings_.max_cycles;
    mo.strategy = strategy;
    mo.eigen = eigen();
    mo.validate();
    return mo;
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

  void fail(const Error& e) {
    manifest_["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  }

  /// Stamps timing and eigensolver totals, then writes the manifest.
  void finish(const std::string& path, std::ostream& out) {
    manifest_["wall_time_ms"] = elapsed_ms();
    manifest_["eigen"] = {{"solves", tally_->solves.load()}, {"iterations", tally_->iterations.load()}};
    if (!path.empty()) {
      if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
      std::ofstream f(path);
      if (!f) throw Error(ErrorCode::IoError, "cannot write manifest " + path);
      f << manifest_.dump(2) << '\n';
    }
    if (settings_.json) out << manifest_.dump(2) << '\n';
  }

 private:
  Settings settings_;
  std::shared_ptr<IterationTally> tally_;
  std::chrono::steady_clock::time_point start_;
  Json manifest_;
};

inline int exit_code_for(const Error& e) { return e.is_numerical() ? kExitNumerical : kExitInput; }

/// Runs `body`, maps failures onto exit codes and always emits the manifest.
template <class Body>
int execute(Invocation& inv, const std::string& manifest_path, std::ostream& out, std::ostream& err, Body&& body) {
  int code = kExitOk;
  try {
    body();
  } catch (const Error& e) {
    inv.fail(e);
    err << "error: " << e.what() << '\n';
    code = exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    inv.fail(Error(ErrorCode::IoError, e.what()));
    err << "error: " << e.what() << '\n';
    code = kExitInput;
  } catch (const std::bad_alloc&) {
    inv.fail(Error(ErrorCode::NumericalBreakdown, "out of memory"));
    err << "error: out of memory\n";
    code = kExitNumerical;
  }
  try {
    inv.finish(manifest_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (code == kExitOk) code = kExitInput;
  }
  return code;
}

inline std::string default_manifest(const Settings& s, const std::string& fallback) {
  return s.manifest.empty() ? fallback : s.manifest;
}

// ---------------------------------------------------------------- distance

struct DistanceArgs {
  std::string x, y;
  std::string metric = "thompson";  ///< thompson | hilbert | riemannian | phi-<p> (p may be "inf")
};

inline int cmd_distance(const DistanceArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
  Invocation inv("distance", {a.x, a.y}, s);
  inv.options()["metric"] = a.metric;
  return execute(inv, default_manifest(s, "spdcone-distance.json"), out, err, [&] {
    const EigenOptions eo = inv.eigen();
    const SpdMatrix x = load_spd(a.x);
    const SpdMatrix y = load_spd(a.y);
    require_same_size(x, y);
    double d = 0.0;
    if (a.metric == "thompson") {
      d = thompson_distance(x, y, eo);
    } else if (a.metric == "hilbert") {
      d = hilbert_distance(x, y, eo);
    } else if (a.metric == "riemannian") {
      d = riemannian_distance(x, y, eo.dense_ceiling);
    } else if (a.metric.rfind("phi-", 0) == 0) {
      const std::string p = a.metric.substr(4);
      GaugeParameter g;
      if (p == "inf") {
        g = GaugeParameter::infinity();
      } else {
        try {
          std::size_t used = 0;
          g.p = std::stod(p, &used);
          if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::exception&) {
          throw Error(ErrorCode::InvalidGauge, "cannot read gauge parameter '" + p + "'");
        }
      }
      d = phi_distance(x, y, g, eo.dense_ceiling);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown metric '" + a.metric + "'");
    }
    inv.outputs()["distance"] = d;
    if (!s.json) out << format17(d) << '\n';
  });
}

// ---------------------------------------------------------------- geodesic

struct GeodesicArgs {
  std::string x, y;
  std::string family = "star";
  std::vector<double> ts{0.0, 0.5, 1.0};
  std::string outdir = "geodesic";
};

inline int cmd_geodesic(const GeodesicArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
  Invocation inv("geodesic", {a.x, a.y}, s);
  inv.options()["family"] = a.family;
  inv.options()["ts"] = a.ts;
  inv.options()["outdir"] = a.outdir;
  return execute(inv, default_manifest(s, (fs::path(a.outdir) / "manifest.json").string()), out, err, [&] {
    const EigenOptions eo = inv.eigen();
    const GeodesicFamily family = family_from_string(a.family);
    if (a.ts.empty()) throw Error(ErrorCode::InvalidArgument, "no t values given");
    for (double t : a.ts) {
      if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite");
      if ((t < 0.0 || t > 1.0) && !s.allow_extrapolation)
        throw Error(ErrorCode::InvalidArgument, "t = " + format17(t) + " lies outside [0,1]; pass --allow-extrapolation");
    }
    const SpdMatrix x = load_spd(a.x);
    const SpdMatrix y = load_spd(a.y);
    require_same_size(x, y);
    const bool sparse = x.is_sparse() && y.is_sparse();
    const Index n = x.size();
    inv.outputs()["n"] = n;
    inv.outputs()["nnz_x"] = x.nnz();
    inv.outputs()["nnz_y"] = y.nnz();
    inv.outputs()["nnz_union"] = linear_combination(1.0, x.matrix().pruned(), 1.0, y.matrix().pruned()).stored_entries();
    fs::create_directories(a.outdir);
    Json points = Json::array();
    if (!s.json) out << "t nnz file\n";
    for (std::size_t i = 0; i < a.ts.size(); ++i) {
      const double t = a.ts[i];
      GeodesicPoint p = geodesic_point(family, x, y, t, eo, false);
      bool spd = p.certified;
      if (!spd) {
        try {
          SpdMatrix::certify(p.matrix);
          spd = true;
        } catch (const Error&) {
        }
      }
      const SymMatrix m = p.matrix.with_storage(sparse).pruned();
      char name[32];
      std::snprintf(name, sizeof name, "point_%03zu.mtx", i);
      const fs::path file = fs::path(a.outdir) / name;
      write_matrix_market_file(file, m, a.family + " geodesic at t = " + format17(t));
      points.push_back({{"t", t},
                        {"file", file.string()},
                        {"nnz", m.nnz()},
                        {"fill_fraction", static_cast<double>(m.nnz()) / static_cast<double>(n * n)},
                        {"extrapolated", p.extrapolated},
                        {"spd", spd}});
      if (!s.json) out << format17(t) << ' ' << m.nnz() << ' ' << file.string() << '\n';
    }
    inv.outputs()["points"] = std::move(points);
  });
}

// ---------------------------------------------------------------- mean

struct MeanArgs {
  std::vector<std::string> files;
  std::string strategy = "hybrid";
  std::string out = "mean.mtx";
  std::string init;  ///< optional starting point
};

inline int cmd_mean(const MeanArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
  Invocation inv("mean", a.files, s);
  inv.options()["strategy"] = a.strategy;
  inv.options()["out"] = a.out;
  if (!a.init.empty()) inv.options()["init"] = a.init;
  const std::string manifest_path = default_manifest(s, a.out + ".json");
  return execute(inv, manifest_path, out, err, [&] {
    const MeanOptions mo = inv.mean(strategy_from_string(a.strategy));
    if (a.files.empty()) throw Error(ErrorCode::InvalidArgument, "mean needs at least one input file");
    MeanProblem problem;
    problem.opts = mo;
    for (const auto& f : a.files) problem.points.push_back(load_spd(f));
    if (!a.init.empty()) problem.init = load_spd(a.init);
    const bool sparse = std::all_of(problem.points.begin(), problem.points.end(),
                                    [](const SpdMatrix& p) { return p.is_sparse(); });
    auto record = [&](const SymMatrix& m, long long cycles, double disp, double res, bool cert) {
      write_matrix_market_file(a.out, m.with_storage(sparse).pruned(), "inductive Thompson mean");
      Json& o = inv.outputs();
      o["mean_file"] = a.out;
      o["cycles"] = cycles;
      o["displacement"] = disp;
      o["residual"] = res;
      o["certified"] = cert;
      o["nnz"] = m.nnz();
    };
    try {
      const MeanResult r = inductive_mean(problem);
      record(r.mean.matrix(), r.cycles_used, r.final_displacement, r.residual_norm, r.certified);
      inv.outputs()["fixed_point_iterations"] = r.fixed_point_iterations;
      inv.outputs()["contraction_bound"] = r.contraction_bound;
      inv.outputs()["wall_time_ms"] = inv.elapsed_ms();
      if (!s.json)
        out << "mean " << a.out << "\ncycles " << r.cycles_used << "\ndisplacement " << format17(r.final_displacement)
            << "\nresidual " << format17(r.residual_norm) << "\ncertified " << (r.certified ? "yes" : "no") << '\n';
    } catch (const MeanNoConvergence& e) {
      record(e.last_iterate().matrix(), mo.max_cycles, e.displacement(), e.residual(), false);
      inv.outputs()["wall_time_ms"] = inv.elapsed_ms();
      throw;
    } catch (const FixedPointStalled& e) {
      record(e.best_iterate().matrix(), 0, e.displacement(), residual(problem.points, e.best_iterate(), mo.eigen).norm,
             false);
      inv.outputs()["wall_time_ms"] = inv.elapsed_ms();
      throw;
    }
  });
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string x, y;
  std::string mode = "extremes";  ///< extremes | full
};

inline int cmd_spectrum(const SpectrumArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
  Invocation inv("spectrum", {a.x, a.y}, s);
  inv.options()["mode"] = a.mode;
  return execute(inv, default_manifest(s, "spdcone-spectrum.json"), out, err, [&] {
    const EigenOptions eo = inv.eigen();
    if (a.mode != "extremes" && a.mode != "full")
      throw Error(ErrorCode::InvalidArgument, "unknown spectrum mode '" + a.mode + "'");
    const SpdMatrix x = load_spd(a.x);
    const SpdMatrix y = load_spd(a.y);
    require_same_size(x, y);
    if (a.mode == "extremes") {
      const PencilExtremes e = extreme_pair(x, y, eo);
      Json& o = inv.outputs();
      o["alpha"] = e.alpha;
      o["beta"] = e.beta;
      o["residual_alpha"] = e.residual_alpha;
      o["residual_beta"] = e.residual_beta;
      o["iterations_alpha"] = e.iterations_alpha;
      o["iterations_beta"] = e.iterations_beta;
      o["backend"] = std::string(to_string(e.backend));
      if (!s.json)
        out << "alpha " << format17(e.alpha) << " residual " << format17(e.residual_alpha) << '\n'
            << "beta " << format17(e.beta) << " residual " << format17(e.residual_beta) << '\n';
    } else {
      const Spectrum sp = spectrum_dense(x, y, eo.dense_ceiling);
      std::vector<double> values(sp.eigenvalues.data(), sp.eigenvalues.data() + sp.eigenvalues.size());
      inv.outputs()["eigenvalues"] = values;
      if (!s.json)
        for (double v : values) out << format17(v) << '\n';
    }
  });
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite = "distance";
  std::vector<long> sizes{64};
  double density = 0.01;
  int points = 3;
  long riemannian_max_n = 512;
};

inline int cmd_bench(const BenchArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
  Invocation inv("bench", {}, s);
  inv.options()["suite"] = a.suite;
  inv.options()["sizes"] = a.sizes;
  inv.options()["density"] = a.density;
  inv.options()["points"] = a.points;
  inv.options()["riemannian_max_n"] = a.riemannian_max_n;
  return execute(inv, default_manifest(s, "spdcone-bench.json"), out, err, [&] {
    bench::BenchConfig cfg;
    cfg.suite = a.suite;
    cfg.sizes.assign(a.sizes.begin(), a.sizes.end());
    cfg.density = a.density;
    cfg.seed = s.seed;
    cfg.points = a.points;
    cfg.riemannian_max_n = a.riemannian_max_n;
    cfg.mean = inv.mean(MeanStrategy::Hybrid);
    const auto rows = bench::run_bench(cfg);
    Json table = Json::array();
    for (const auto& r : rows)
      table.push_back({{"suite", r.suite},
                       {"op", r.op},
                       {"n", r.n},
                       {"density", r.density},
                       {"backend", r.backend},
                       {"wall_time_ms", r.wall_ms},
                       {"eigen_solves", r.eigen_solves},
                       {"eigen_iterations", r.eigen_iterations},
                       {"nnz_in", r.nnz_in},
                       {"nnz_out", r.nnz_out},
                       {"value", r.value}});
    inv.outputs()["rows"] = std::move(table);
    if (!s.json) {
      out << std::left << std::setw(20) << "op" << std::right << std::setw(7) << "n" << std::setw(10) << "backend"
          << std::setw(12) << "wall_ms" << std::setw(8) << "solves" << std::setw(8) << "iters" << std::setw(10)
          << "nnz_in" << std::setw(10) << "nnz_out" << "  value\n";
      for (const auto& r : rows) {
        std::ostringstream wall;
        wall << std::fixed << std::setprecision(3) << r.wall_ms;
        out << std::left << std::setw(20) << r.op << std::right << std::setw(7) << r.n << std::setw(10) << r.backend
            << std::setw(12) << wall.str() << std::setw(8) << r.eigen_solves << std::setw(8) << r.eigen_iterations
            << std::setw(10) << r.nnz_in << std::setw(10) << r.nnz_out << "  " << format17(r.value) << '\n';
      }
    }
  });
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind = "spd";  ///< spd | sparse | tridiagonal | toeplitz | diagonal | pair
  long n = 10;
  double density = 0.05;
  long nnz = 68;             ///< pair: target stored entries per matrix
  double condition = 10.0;   ///< spd | diagonal: spectral spread
  std::string out = "matrix.mtx";
};

inline int cmd_generate(const GenerateArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
  Invocation inv("generate", {}, s);
  inv.options()["kind"] = a.kind;
  inv.options()["n"] = a.n;
  inv.options()["out"] = a.out;
  return execute(inv, default_manifest(s, a.out + ".json"), out, err, [&] {
    if (a.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    Rng rng(s.seed);
    std::vector<std::pair<std::string, SymMatrix>> files;
    if (a.kind == "spd") {
      files.emplace_back(a.out, random_spd(a.n, a.condition, rng).matrix());
    } else if (a.kind == "sparse") {
      files.emplace_back(a.out, random_sparse_spd(a.n, a.density, rng).matrix());
    } else if (a.kind == "tridiagonal") {
      files.emplace_back(a.out, random_tridiagonal_spd(a.n, rng).matrix());
    } else if (a.kind == "toeplitz") {
      files.emplace_back(a.out, random_toeplitz_spd(a.n, rng).matrix());
    } else if (a.kind == "diagonal") {
      files.emplace_back(a.out, random_diagonal_spd(a.n, a.condition, rng, true).matrix());
    } else if (a.kind == "pair") {
      auto [x, y] = sparse_interpolation_pair(a.n, a.nnz, rng);
      const fs::path base(a.out);
      const fs::path stem = base.parent_path() / base.stem();
      files.emplace_back(stem.string() + "_x.mtx", x.matrix());
      files.emplace_back(stem.string() + "_y.mtx", y.matrix());
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown matrix kind '" + a.kind + "'");
    }
    Json written = Json::array();
    for (const auto& [path, m] : files) {
      write_matrix_market_file(path, m, "generated " + a.kind + " seed " + std::to_string(s.seed));
      written.push_back({{"file", path}, {"nnz", m.nnz()}});
      if (!s.json) out << path << '\n';
    }
    inv.outputs()["files"] = std::move(written);
  });
}

// ---------------------------------------------------------------- entry point

/// Parses argv and dispatches. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hilbert and Thompson geometry of the SPD cone"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--tol", s.tol, "eigensolver residual and mean displacement tolerance")->envname("SPDCONE_TOL");
  app.add_option("--residual-tol", s.residual_tol, "mean residual certificate threshold")
      ->envname("SPDCONE_RESIDUAL_TOL");
  app.add_option("--max-cycles", s.max_cycles, "mean cycle cap")->envname("SPDCONE_MAX_CYCLES");
  app.add_option("--backend", s.backend, "auto | dense | iterative")
      ->envname("SPDCONE_BACKEND")
      ->check(CLI::IsMember({"auto", "dense", "iterative"}));
  app.add_option("--seed", s.seed, "seed for eigensolver start vectors and generators")->envname("SPDCONE_SEED");
  app.add_flag("--json", s.json, "print the manifest on stdout instead of plain text")->envname("SPDCONE_JSON");
  app.add_flag("--allow-extrapolation", s.allow_extrapolation, "accept geodesic t outside [0,1]")
      ->envname("SPDCONE_ALLOW_EXTRAPOLATION");
  app.add_option("--dense-ceiling", s.dense_ceiling, "largest n for dense spectral work")
      ->envname("SPDCONE_DENSE_CEILING");
  app.add_option("--manifest", s.manifest, "manifest path (default depends on the command)")
      ->envname("SPDCONE_MANIFEST");

  DistanceArgs dist;
  auto* c_dist = app.add_subcommand("distance", "distance between two SPD matrices");
  c_dist->add_option("x", dist.x)->required();
  c_dist->add_option("y", dist.y)->required();
  c_dist->add_option("-m,--metric", dist.metric, "thompson | hilbert | riemannian | phi-<p>");

  GeodesicArgs geo;
  auto* c_geo = app.add_subcommand("geodesic", "sample a geodesic into Matrix Market files");
  c_geo->add_option("x", geo.x)->required();
  c_geo->add_option("y", geo.y)->required();
  c_geo->add_option("-f,--family", geo.family, "star | riemannian | diamond");
  c_geo->add_option("-t,--ts", geo.ts, "comma-separated t values")->delimiter(',');
  c_geo->add_option("-o,--outdir", geo.outdir, "output directory");

  MeanArgs mean;
  auto* c_mean = app.add_subcommand("mean", "inductive Thompson mean of k matrices");
  c_mean->add_option("files", mean.files)->required();
  c_mean->add_option("-s,--strategy", mean.strategy, "hybrid | inductive | fixed-point");
  c_mean->add_option("-o,--out", mean.out, "output Matrix Market file");
  c_mean->add_option("--init", mean.init, "starting point");

  SpectrumArgs spec;
  auto* c_spec = app.add_subcommand("spectrum", "eigenvalues of the pencil (Y, X)");
  c_spec->add_option("x", spec.x)->required();
  c_spec->add_option("y", spec.y)->required();
  c_spec->add_option("--mode", spec.mode, "extremes | full");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "timing and eigensolver work against dense operations");
  c_bench->add_option("--suite", bench.suite, "distance | geodesic | mean");
  c_bench->add_option("--sizes", bench.sizes, "comma-separated matrix sizes")->delimiter(',');
  c_bench->add_option("--density", bench.density, "density of generated sparse inputs");
  c_bench->add_option("--points", bench.points, "inputs for the mean suite");
  c_bench->add_option("--riemannian-max", bench.riemannian_max_n, "largest n for dense comparisons");

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "write a seeded random SPD matrix");
  c_gen->add_option("kind", gen.kind, "spd | sparse | tridiagonal | toeplitz | diagonal | pair");
  c_gen->add_option("-n", gen.n, "dimension");
  c_gen->add_option("--density", gen.density, "sparse: target density");
  c_gen->add_option("--nnz", gen.nnz, "pair: stored entries per matrix");
  c_gen->add_option("--condition", gen.condition, "spd, diagonal: eigenvalue spread");
  c_gen->add_option("-o,--out", gen.out, "output file (pair: stem for _x/_y files)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (c_dist->parsed()) return cmd_distance(dist, s, out, err);
  if (c_geo->parsed()) return cmd_geodesic(geo, s, out, err);
  if (c_mean->parsed()) return cmd_mean(mean, s, out, err);
  if (c_spec->parsed()) return cmd_spectrum(spec, s, out, err);
  if (c_bench->parsed()) return cmd_bench(bench, s, out, err);
  if (c_gen->parsed()) return cmd_generate(gen, s, out, err);
  return kExitInput;
}

}  // namespace spdcone::cli
