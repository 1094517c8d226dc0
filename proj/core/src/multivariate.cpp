#include "turnarcs/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "turnarcs/errors.hpp"
#include "shortest.hpp"
#include "turnarcs/gegenbauer.hpp"

namespace turnarcs {

namespace {

constexpr double kEigenTolerance = 1e-12;
constexpr double kReconstructionTolerance = 1e-12;

// Degrees at which the bivariate matrices are checked numerically: every
// degree up to 1000, then a sparse sweep further out for the asymptotics.
std::vector<std::int64_t> psd_check_degrees() {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 0; n <= 1000; ++n) out.push_back(n);
  for (std::int64_t n : {2000, 5000, 10000, 100000, 1000000}) out.push_back(n);
  return out;
}

std::vector<std::string> entry_violations(const CovarianceSpec& s, const char* label) {
  std::vector<std::string> out;
  for (auto& v : validate(s)) out.push_back(std::string(label) + ": " + v);
  return out;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

BivariateSpec BivariateSpec::negative_binomial(double delta11, double delta12, double delta22,
                                               double rho, int d) {
  BivariateSpec s;
  s.family = CovarianceFamily::NegativeBinomial;
  s.delta11 = delta11;
  s.delta12 = delta12;
  s.delta22 = delta22;
  s.rho = rho;
  s.d = d;
  return s;
}

BivariateSpec BivariateSpec::spectral_matern(double alpha, double nu11, double nu12, double nu22,
                                             double rho, int d) {
  BivariateSpec s;
  s.family = CovarianceFamily::SpectralMatern;
  s.alpha = alpha;
  s.nu11 = nu11;
  s.nu12 = nu12;
  s.nu22 = nu22;
  s.rho = rho;
  s.d = d;
  return s;
}

CovarianceSpec BivariateSpec::entry(int i, int j) const {
  const int k = i + j;  // 0 -> 11, 1 -> 12, 2 -> 22
  if (family == CovarianceFamily::NegativeBinomial) {
    return CovarianceSpec::negative_binomial(k == 0 ? delta11 : k == 1 ? delta12 : delta22, d);
  }
  return CovarianceSpec::spectral_matern(alpha, k == 0 ? nu11 : k == 1 ? nu12 : nu22, d);
}

std::string BivariateSpec::describe() const {
  std::ostringstream os;
  if (family == CovarianceFamily::NegativeBinomial) {
    os << "nb delta11=" << detail::shortest(delta11) << " delta12=" << detail::shortest(delta12) << " delta22=" << detail::shortest(delta22);
  } else {
    os << "sm alpha=" << detail::shortest(alpha) << " nu11=" << detail::shortest(nu11) << " nu12=" << detail::shortest(nu12)
       << " nu22=" << detail::shortest(nu22);
  }
  os << " rho=" << detail::shortest(rho) << " d=" << d;
  if (allow_invalid_cross) os << " allow_invalid_cross";
  return os.str();
}

std::vector<std::string> validate(const BivariateSpec& spec) {
  std::vector<std::string> v;
  if (spec.family != CovarianceFamily::NegativeBinomial &&
      spec.family != CovarianceFamily::SpectralMatern) {
    v.emplace_back("bivariate family must be nb or sm");
    return v;
  }
  for (auto [i, j, label] : {std::tuple{0, 0, "11"}, {0, 1, "12"}, {1, 1, "22"}}) {
    auto e = entry_violations(spec.entry(i, j), label);
    v.insert(v.end(), e.begin(), e.end());
  }
  if (!std::isfinite(spec.rho)) v.emplace_back("ρ finite");
  if (!v.empty()) return v;

  if (!spec.allow_invalid_cross) {
    if (spec.family == CovarianceFamily::NegativeBinomial) {
      if (!(spec.delta12 <= std::min(spec.delta11, spec.delta22))) {
        v.emplace_back("δ₁₂ ≤ min(δ₁₁,δ₂₂)");
      }
      const double bound =
          std::sqrt((1.0 - spec.delta11) * (1.0 - spec.delta22)) / (1.0 - spec.delta12);
      if (!(std::fabs(spec.rho) <= bound)) v.emplace_back("|ρ| ≤ √((1−δ₁₁)(1−δ₂₂))/(1−δ₁₂)");
    } else {
      if (!(spec.nu12 >= 0.5 * (spec.nu11 + spec.nu22))) v.emplace_back("ν₁₂ ≥ (ν₁₁+ν₂₂)/2");
      const double bound =
          std::min(1.0, std::pow(spec.alpha, 2.0 * spec.nu12 - spec.nu11 - spec.nu22));
      if (!(std::fabs(spec.rho) <= bound)) v.emplace_back("|ρ| ≤ min(1, α^(2ν₁₂−ν₁₁−ν₂₂))");
    }
    if (!v.empty()) return v;
  }

  // The conditions above are sufficient for the covariance-level model, not
  // for this entrywise construction of B_n; check it numerically.
  const CovarianceModel m11(spec.entry(0, 0));
  const CovarianceModel m12(spec.entry(0, 1));
  const CovarianceModel m22(spec.entry(1, 1));
  for (std::int64_t n : psd_check_degrees()) {
    const double b11 = m11.schoenberg_coeff(n);
    const double b22 = m22.schoenberg_coeff(n);
    const double b12 = spec.rho * m12.schoenberg_coeff(n);
    // 2 x 2 symmetric: PSD iff both diagonals and the determinant are >= 0.
    const double trace = b11 + b22;
    const double lmin = 0.5 * (trace - std::hypot(b11 - b22, 2.0 * b12));
    if (lmin < -kEigenTolerance * trace) {
      std::ostringstream os;
      os << "B_n positive semidefinite (fails at n = " << n << ")";
      v.push_back(os.str());
      break;
    }
  }
  return v;
}

double min_eigenvalue(const Eigen::MatrixXd& B) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SchoenbergFactor factor_schoenberg_matrix(const Eigen::MatrixXd& B, std::int64_t degree) {
  if (B.rows() != B.cols() || B.rows() == 0) {
    throw DomainError("Schoenberg matrix must be square and nonempty");
  }
  if (max_abs(B - B.transpose()) > kReconstructionTolerance * std::max(1.0, max_abs(B))) {
    throw DomainError("Schoenberg matrix must be symmetric");
  }
  SchoenbergFactor f;
  f.degree = degree;
  const double scale = std::max(max_abs(B), std::numeric_limits<double>::min());

  Eigen::LLT<Eigen::MatrixXd> llt(B);
  if (llt.info() == Eigen::Success) {
    Eigen::MatrixXd L = llt.matrixL();
    if (max_abs(L * L.transpose() - B) <= kReconstructionTolerance * scale) {
      f.gamma = std::move(L);
      f.cholesky = true;
      return f;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double trace = B.trace();
  if (ev.minCoeff() < -kEigenTolerance * std::max(trace, 0.0)) {
    std::ostringstream os;
    os << "Schoenberg matrix at degree " << degree << " is indefinite (smallest eigenvalue "
       << ev.minCoeff() << ")";
    throw ModelError(os.str());
  }
  const Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  f.gamma = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  f.cholesky = false;
  return f;
}

struct MultiCovarianceModel::State {
  int d = 2;
  int p = 2;
  std::optional<BivariateSpec> spec;
  // Bivariate: entry models 11, 12, 22.
  std::vector<CovarianceModel> entries;
  // Matrix-sequence models.
  std::vector<Eigen::MatrixXd> matrices;
};

MultiCovarianceModel::MultiCovarianceModel(std::shared_ptr<const State> state)
    : state_(std::move(state)) {}

MultiCovarianceModel::MultiCovarianceModel(BivariateSpec spec) {
  if (auto v = validate(spec); !v.empty()) throw ValidationError(std::move(v));
  auto st = std::make_shared<State>();
  st->d = spec.d;
  st->p = 2;
  st->entries.emplace_back(spec.entry(0, 0));
  st->entries.emplace_back(spec.entry(0, 1));
  st->entries.emplace_back(spec.entry(1, 1));
  st->spec = std::move(spec);
  state_ = std::move(st);
}

MultiCovarianceModel MultiCovarianceModel::from_matrices(int d, std::vector<Eigen::MatrixXd> matrices) {
  std::vector<std::string> v;
  if (d < 1) v.emplace_back("d ≥ 1");
  if (matrices.empty()) v.emplace_back("at least one Schoenberg matrix");
  const auto p = matrices.empty() ? 0 : matrices.front().rows();
  for (std::size_t n = 0; n < matrices.size() && v.empty(); ++n) {
    const auto& B = matrices[n];
    if (B.rows() != p || B.cols() != p) {
      v.emplace_back("all Schoenberg matrices share one square shape");
      break;
    }
    try {
      factor_schoenberg_matrix(B, static_cast<std::int64_t>(n));
    } catch (const std::exception& e) {
      v.emplace_back(e.what());
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  auto st = std::make_shared<State>();
  st->d = d;
  st->p = static_cast<int>(p);
  st->matrices = std::move(matrices);
  return MultiCovarianceModel(std::shared_ptr<const State>(std::move(st)));
}

int MultiCovarianceModel::dimension() const noexcept { return state_->d; }
int MultiCovarianceModel::components() const noexcept { return state_->p; }

const BivariateSpec* MultiCovarianceModel::bivariate() const noexcept {
  return state_->spec ? &*state_->spec : nullptr;
}

Eigen::MatrixXd MultiCovarianceModel::schoenberg_matrix(std::int64_t n) const {
  if (n < 0) throw DomainError("degree must be nonnegative");
  const State& st = *state_;
  if (st.spec) {
    Eigen::MatrixXd B(2, 2);
    B(0, 0) = st.entries[0].schoenberg_coeff(n);
    B(1, 1) = st.entries[2].schoenberg_coeff(n);
    B(0, 1) = B(1, 0) = st.spec->rho * st.entries[1].schoenberg_coeff(n);
    return B;
  }
  if (n < static_cast<std::int64_t>(st.matrices.size())) {
    return st.matrices[static_cast<std::size_t>(n)];
  }
  return Eigen::MatrixXd::Zero(st.p, st.p);
}

SchoenbergFactor MultiCovarianceModel::factor(std::int64_t n) const {
  return factor_schoenberg_matrix(schoenberg_matrix(n), n);
}

Eigen::MatrixXd MultiCovarianceModel::covariance_eval(double theta) const {
  if (!(theta >= 0.0 && theta <= M_PI)) {
    throw DomainError("geodesic distance must lie in [0, pi]");
  }
  const State& st = *state_;
  if (st.spec) {
    Eigen::MatrixXd K(2, 2);
    K(0, 0) = st.entries[0](theta);
    K(1, 1) = st.entries[2](theta);
    K(0, 1) = K(1, 0) = st.spec->rho * st.entries[1](theta);
    return K;
  }
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(st.p, st.p);
  const double x = std::cos(theta);
  const auto top = static_cast<std::int64_t>(st.matrices.size()) - 1;
  if (st.d == 1) {
    for (std::int64_t n = 0; n <= top; ++n) {
      K += st.matrices[static_cast<std::size_t>(n)] * std::cos(static_cast<double>(n) * theta);
    }
    return K;
  }
  const double lambda = 0.5 * (st.d - 1);
  const auto g = gegenbauer_eval_table(lambda, top, x);
  for (std::int64_t n = 0; n <= top; ++n) {
    K += st.matrices[static_cast<std::size_t>(n)] * g[static_cast<std::size_t>(n)];
  }
  return K;
}

DecayProfile MultiCovarianceModel::decay() const {
  const State& st = *state_;
  if (!st.spec) {
    std::int64_t last = -1;
    for (std::size_t n = 0; n < st.matrices.size(); ++n) {
      if (st.matrices[n].cwiseAbs().maxCoeff() > 0.0) last = static_cast<std::int64_t>(n);
    }
    return {CoefficientDecay::FiniteSupport, 0.0, last, false};
  }
  // The cross entry never decays slower than the diagonal ones once B_n is
  // semidefinite, so the diagonal decides.
  DecayProfile a = st.entries[0].decay();
  DecayProfile b = st.entries[2].decay();
  if (a.kind == CoefficientDecay::Geometric) {
    return a.rate >= b.rate ? a : b;
  }
  return a.rate <= b.rate ? a : b;
}

std::string MultiCovarianceModel::describe() const {
  const State& st = *state_;
  if (st.spec) return st.spec->describe();
  std::ostringstream os;
  os << "matrices p=" << st.p << " N=" << st.matrices.size() << " d=" << st.d;
  return os.str();
}

}  // namespace turnarcs
