#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "turnarcs/covariance.hpp"
#include "turnarcs/degree_distribution.hpp"
#include "turnarcs/diagnostics.hpp"
#include "turnarcs/errors.hpp"
#include "turnarcs/grid.hpp"
#include "turnarcs/multivariate.hpp"
#include "turnarcs/realization_io.hpp"
#include "turnarcs/recommend.hpp"
#include "turnarcs/simulator.hpp"

namespace turnarcs::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelOptions {
  std::string model;
  int d = 2;
  int p = 1;
  std::optional<double> delta, alpha, nu, tau, rho;
  std::optional<double> delta11, delta12, delta22, nu11, nu12, nu22;
  std::string coeffs;
  bool allow_invalid_cross = false;
  std::string degree_dist;
  bool auto_degree = false;
};

struct Model {
  std::optional<CovarianceModel> scalar;
  std::optional<MultiCovarianceModel> multi;
};

double need(const std::optional<double>& v, const char* flag, const std::string& model) {
  if (!v) throw UsageError(std::string(flag) + " is required for --model " + model);
  return *v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageError("bad number '" + tok + "' in --coeffs");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--coeffs needs at least one value");
  return out;
}

Model build_model(const ModelOptions& o) {
  Model m;
  const std::string& name = o.model;
  if (o.p == 2) {
    BivariateSpec s;
    if (name == "nb") {
      s = BivariateSpec::negative_binomial(need(o.delta11, "--delta11", name),
                                           need(o.delta12, "--delta12", name),
                                           need(o.delta22, "--delta22", name), need(o.rho, "--rho", name),
                                           o.d);
    } else if (name == "sm") {
      s = BivariateSpec::spectral_matern(need(o.alpha, "--alpha", name), need(o.nu11, "--nu11", name),
                                         need(o.nu12, "--nu12", name), need(o.nu22, "--nu22", name),
                                         need(o.rho, "--rho", name), o.d);
    } else {
      throw UsageError("--p 2 is available for --model nb and sm");
    }
    s.allow_invalid_cross = o.allow_invalid_cross;
    m.multi.emplace(s);
    return m;
  }
  if (o.p != 1) throw UsageError("--p must be 1 or 2");
  CovarianceSpec s;
  if (name == "nb") {
    s = CovarianceSpec::negative_binomial(need(o.delta, "--delta", name), o.d);
  } else if (name == "sm") {
    s = CovarianceSpec::spectral_matern(need(o.alpha, "--alpha", name), need(o.nu, "--nu", name), o.d);
  } else if (name == "f") {
    s = CovarianceSpec::generalized_f(need(o.alpha, "--alpha", name), need(o.nu, "--nu", name),
                                      need(o.tau, "--tau", name), o.d);
  } else if (name == "chentsov") {
    s = CovarianceSpec::chentsov(o.d);
  } else if (name == "exp") {
    s = CovarianceSpec::exponential(need(o.nu, "--nu", name), o.d);
  } else if (name == "finite") {
    if (o.coeffs.empty()) throw UsageError("--coeffs is required for --model finite");
    s = CovarianceSpec::finite(parse_list(o.coeffs), o.d);
  } else {
    throw UsageError("unknown model '" + name + "'");
  }
  m.scalar.emplace(s);
  return m;
}

// Degree law from --degree-dist, or the recommended one.
DegreeDistribution choose_degrees(const ModelOptions& o, const Model& m, std::string* why) {
  if (!o.degree_dist.empty() && o.auto_degree) {
    throw UsageError("--degree-dist and --auto-degree are mutually exclusive");
  }
  if (!o.degree_dist.empty()) return DegreeDistribution::parse(o.degree_dist);
  const Recommendation r = m.scalar ? recommend_distribution(*m.scalar) : recommend_distribution(*m.multi);
  if (why) *why = r.summary();
  return r.distribution;
}

void add_model_options(CLI::App* app, ModelOptions& o, bool degrees) {
  app->add_option("--model", o.model, "nb, sm, f, chentsov, exp or finite")
      ->required()
      ->check(CLI::IsMember({"nb", "sm", "f", "chentsov", "exp", "finite"}));
  app->add_option("--d", o.d, "sphere dimension")->capture_default_str();
  app->add_option("--p", o.p, "number of components (1 or 2)")->capture_default_str();
  app->add_option("--delta", o.delta, "negative binomial delta");
  app->add_option("--alpha", o.alpha, "alpha (sm, f)");
  app->add_option("--nu", o.nu, "nu (sm, f, exp)");
  app->add_option("--tau", o.tau, "tau (f)");
  app->add_option("--rho", o.rho, "cross correlation (p = 2)");
  app->add_option("--delta11", o.delta11);
  app->add_option("--delta12", o.delta12);
  app->add_option("--delta22", o.delta22);
  app->add_option("--nu11", o.nu11);
  app->add_option("--nu12", o.nu12);
  app->add_option("--nu22", o.nu22);
  app->add_option("--coeffs", o.coeffs, "comma-separated b_0,b_1,... (finite)");
  app->add_flag("--allow-invalid-cross", o.allow_invalid_cross,
                "skip the sufficient cross-parameter conditions (p = 2)");
  if (degrees) {
    app->add_option("--degree-dist", o.degree_dist, "geometric:P, zeta:T, oddzeta:T or finite:a0,a1,...");
    app->add_flag("--auto-degree", o.auto_degree, "use the recommended degree law (default)");
  }
}

// Output stream for --out; "-" is standard output.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot write '" + path + "'");
    out_ = file_.get();
  }
  std::ostream& operator*() { return *out_; }
  void close(const std::string& path) {
    if (file_) {
      file_->close();
      if (!*file_) throw IoError("error while writing '" + path + "'");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  RandomStream s(seed, (std::uint64_t{1} << 63) | k);
  return s();
}

SimulationConfig make_config(const Model& m, DegreeDistribution dist, std::int64_t L, std::uint64_t seed) {
  if (m.scalar) return SimulationConfig(*m.scalar, std::move(dist), L, seed);
  return SimulationConfig(*m.multi, std::move(dist), L, seed);
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turning-arcs simulation of Gaussian random fields on spheres", "turnarcs"};
  app.require_subcommand(1);

  ModelOptions mo;
  std::int64_t L = 1500;
  std::uint64_t seed = 1;
  std::string grid_text = "latlon:500x500";
  std::string out_path = "-";
  unsigned threads = 1;
  bool compensated = false;
  std::int64_t n_max = 20;
  std::int64_t realizations = 200;
  std::int64_t n_points = 100;
  int bins = 20;

  auto* sim = app.add_subcommand("simulate", "simulate a realization on a grid");
  add_model_options(sim, mo, true);
  sim->add_option("--L", L, "number of waves")->capture_default_str();
  sim->add_option("--seed", seed)->capture_default_str();
  sim->add_option("--grid", grid_text, "latlon:NxM, slice3:W:NxM, section:D:NxM or points:FILE")
      ->capture_default_str();
  sim->add_option("--out", out_path, "output CSV ('-' for stdout)")->capture_default_str();
  sim->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();
  sim->add_flag("--compensated", compensated, "compensated summation of the waves");

  auto* coeffs = app.add_subcommand("coeffs", "print Schoenberg coefficients");
  add_model_options(coeffs, mo, false);
  coeffs->add_option("--n-max", n_max, "largest degree")->capture_default_str();
  coeffs->add_option("--out", out_path)->capture_default_str();

  auto* val = app.add_subcommand("validate", "compare the empirical covariance with the model");
  add_model_options(val, mo, true);
  val->add_option("--L", L)->capture_default_str();
  val->add_option("--seed", seed)->capture_default_str();
  val->add_option("--realizations", realizations)->capture_default_str();
  val->add_option("--points", n_points, "number of random points")->capture_default_str();
  val->add_option("--bins", bins)->capture_default_str();
  val->add_option("--threads", threads)->capture_default_str();
  val->add_option("--out", out_path, "report CSV")->capture_default_str();

  auto* mu3 = app.add_subcommand("mu3", "third absolute moment and Berry-Esseen bound");
  add_model_options(mu3, mo, true);
  mu3->add_option("--L", L)->capture_default_str();
  mu3->add_option("--n-max", n_max, "truncation degree, 0 for automatic")->default_val(0);

  auto* rec = app.add_subcommand("recommend", "recommended degree law");
  add_model_options(rec, mo, false);

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Model model = build_model(mo);
    const int p = model.scalar ? 1 : model.multi->components();
    const int d = mo.d;

    if (*rec) {
      const Recommendation r =
          model.scalar ? recommend_distribution(*model.scalar) : recommend_distribution(*model.multi);
      out << "case: " << r.case_number << '\n';
      if (r.case_number == 2) {
        out << "rate: " << format_real(r.rate) << '\n'
            << "criterion: liminf a_n^(1/n) >= " << format_real(r.rate * r.rate * r.rate) << '\n';
      }
      if (r.case_number == 3) {
        out << "theta: " << format_real(r.rate) << '\n'
            << "interval: ]1," << format_real(r.theta_prime_max) << "[" << (r.interval_empty ? " (empty)" : "")
            << '\n';
      }
      out << "distribution: " << r.distribution.describe() << '\n';
      if (!r.tag.empty()) out << "note: " << r.tag << '\n';
      return kOk;
    }

    if (*coeffs) {
      if (n_max < 0) throw UsageError("--n-max must be >= 0");
      Sink sink(out_path, out);
      std::ostream& os = *sink;
      os << (p == 1 ? "n,b_n\n" : "n,b11,b12,b22\n");
      for (std::int64_t n = 0; n <= n_max; ++n) {
        os << n;
        if (model.scalar) {
          os << ',' << format_real(model.scalar->schoenberg_coeff(n));
        } else {
          const auto B = model.multi->schoenberg_matrix(n);
          os << ',' << format_real(B(0, 0)) << ',' << format_real(B(0, 1)) << ',' << format_real(B(1, 1));
        }
        os << '\n';
      }
      sink.close(out_path);
      return kOk;
    }

    std::string why;
    DegreeDistribution dist = choose_degrees(mo, model, &why);

    if (*mu3) {
      if (d < 2) throw UsageError("mu3 needs --d >= 2");
      if (L < 1) throw UsageError("--L must be >= 1");
      std::vector<Mu3Result> results;
      std::vector<double> sigma;
      if (model.scalar) {
        results.push_back(mu3_wave(*model.scalar, dist, n_max));
        sigma.push_back(std::sqrt(model.scalar->variance()));
      } else {
        results = mu3_wave(*model.multi, dist, n_max);
        const auto K0 = model.multi->covariance_eval(0.0);
        for (int i = 0; i < p; ++i) sigma.push_back(std::sqrt(K0(i, i)));
      }
      out << "degrees: " << dist.describe() << '\n';
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const std::string tag = p == 1 ? "" : "[" + std::to_string(i + 1) + "]";
        if (r.divergent) {
          out << "mu3" << tag << ": divergent\n" << "bound" << tag << ": inf\n";
          continue;
        }
        out << "mu3" << tag << ": " << format_real(r.value) << '\n'
            << "tail" << tag << ": " << format_real(r.tail_bound) << '\n'
            << "terms" << tag << ": " << r.terms << '\n'
            << "sigma" << tag << ": " << format_real(sigma[i]) << '\n'
            << "bound" << tag << ": " << format_real(berry_esseen_bound(r.value, sigma[i], L)) << '\n';
      }
      return kOk;
    }

    if (*sim) {
      const GridSpec gs = GridSpec::parse(grid_text);
      if (gs.kind == GridKind::PointList && !std::ifstream(gs.path)) {
        throw IoError("cannot read point file '" + gs.path + "'");
      }
      Grid grid = build_grid(gs);
      if (grid.points.dimension() != d) {
        throw UsageError("grid points live on S^" + std::to_string(grid.points.dimension()) +
                         " but --d is " + std::to_string(d));
      }
      SimulationConfig cfg = make_config(model, std::move(dist), L, seed);
      cfg.threads = threads;
      cfg.compensated = compensated;
      Sink sink(out_path, out);
      const Realization r = simulate(cfg, grid.points);
      std::vector<std::pair<std::string, std::string>> extra;
      if (!why.empty()) extra.emplace_back("auto-degree", why);
      write_realization_csv(*sink, r, grid, gs, extra);
      sink.close(out_path);
      return kOk;
    }

    if (*val) {
      if (realizations < 2) throw UsageError("--realizations must be >= 2");
      if (n_points < 2) throw UsageError("--points must be >= 2");
      const auto t0 = std::chrono::steady_clock::now();
      RandomStream prng(seed, ~std::uint64_t{0});
      PointSet pts(d);
      for (std::int64_t i = 0; i < n_points; ++i) pts.push_back(sample_pole(d, prng));
      std::vector<PointPair> pairs;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i; j < pts.size(); ++j) pairs.push_back({i, j});
      }
      std::vector<Realization> reals;
      for (std::int64_t m = 0; m < realizations; ++m) {
        SimulationConfig cfg = make_config(model, dist, L, derive_seed(seed, static_cast<std::uint64_t>(m)));
        cfg.threads = threads;
        reals.push_back(simulate(cfg, pts));
      }
      const CovarianceEstimate est = empirical_covariance(reals, pairs, bins);

      // Model covariance averaged over the lags that fall in each bin.
      const auto np = static_cast<std::size_t>(p * p);
      std::vector<std::vector<double>> theory(est.bins(), std::vector<double>(np, 0.0));
      for (const auto& pr : pairs) {
        const double th = geodesic(pts[pr.first], pts[pr.second]);
        const auto b = std::min(est.bins() - 1, static_cast<std::size_t>(th / (M_PI / bins)));
        if (model.scalar) {
          theory[b][0] += (*model.scalar)(th);
        } else {
          const auto K = model.multi->covariance_eval(th);
          for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) theory[b][static_cast<std::size_t>(i * p + j)] += K(i, j);
          }
        }
      }
      Sink sink(out_path, out);
      std::ostream& os = *sink;
      os << "# model: " << (model.scalar ? model.scalar->spec().describe() : model.multi->describe()) << '\n'
         << "# degrees: " << dist.describe() << '\n'
         << "# L: " << L << '\n'
         << "# seed: " << seed << '\n'
         << "# realizations: " << realizations << '\n'
         << "bin,lower,upper,pairs,i,j,estimate,theoretical,se,z\n";
      std::size_t checked = 0;
      std::size_t failed = 0;
      double worst = 0.0;
      for (std::size_t b = 0; b < est.bins(); ++b) {
        if (est.empty(b)) continue;
        for (int i = 0; i < p; ++i) {
          for (int j = i; j < p; ++j) {
            const auto e = static_cast<std::size_t>(i * p + j);
            const double th = theory[b][e] / static_cast<double>(est.pair_count[b]);
            const double se = est.standard_error[b][e];
            const double z = se > 0.0 ? (est.estimate[b][e] - th) / se : 0.0;
            ++checked;
            if (std::fabs(z) > 4.0) ++failed;
            worst = std::max(worst, std::fabs(z));
            os << b << ',' << format_real(est.bin_lower[b]) << ',' << format_real(est.bin_upper[b]) << ','
               << est.pair_count[b] << ',' << i + 1 << ',' << j + 1 << ',' << format_real(est.estimate[b][e])
               << ',' << format_real(th) << ',' << format_real(se) << ',' << format_real(z) << '\n';
          }
        }
      }
      sink.close(out_path);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      err << "validate: " << checked << " bin entries, " << failed << " beyond 4 SE, max |z| = " << worst
          << ", " << secs << " s\n";
      return failed == 0 ? kOk : kValidation;
    }
  } catch (const UsageError& e) {
    err << "turnarcs: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "turnarcs: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "turnarcs: invalid parameters: " << join(e.violations(), "; ") << '\n';
    return kUsage;
  } catch (const ModelError& e) {
    err << "turnarcs: " << e.what() << '\n';
    return kValidation;
  } catch (const DomainError& e) {
    err << "turnarcs: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "turnarcs: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "turnarcs: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace turnarcs::cli
