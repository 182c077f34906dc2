#include "shorlab/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shorlab {

namespace {

constexpr double kZeroEigenvalue = 1e-12;
constexpr double kKrausCompletenessTol = 1e-9;
constexpr double kUnitaryTol = 1e-10;

// Eigensystem of a density matrix with tiny eigenvalues snapped to zero.
EigenSystem state_spectrum(const CMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw Error(ErrorCode::kNotAState, "density matrix must be square");
  }
  EigenSystem es;
  try {
    es = hermitian_eigensystem(rho);
  } catch (const Error&) {
    throw Error(ErrorCode::kNotAState, "not hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kHermitianTol) {
    throw Error(ErrorCode::kNotAState, "trace " + std::to_string(rho.trace().real()));
  }
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) < -kPsdClamp) {
      throw Error(ErrorCode::kNotAState, "negative eigenvalue " + std::to_string(es.values(i)));
    }
    if (es.values(i) < kZeroEigenvalue) es.values(i) = 0.0;
  }
  return es;
}

// diag(V^dagger Y V) without forming the full product.
RVector diagonal_in_basis(const CMatrix& y, const CMatrix& v) {
  const CMatrix yv = y * v;
  return (v.conjugate().array() * yv.array()).colwise().sum().real().transpose();
}

// W(i, j) = <phi_i| Phi(|phi_j><phi_j|) |phi_i>, filled only where the
// eigenvalue pair (i, j) can contribute to a spectral sum.
Eigen::MatrixXd transition_weights(const EigenSystem& es, const QuantumChannel& phi) {
  const CMatrix& v = es.vectors;
  const Eigen::Index d = v.rows();

  if (std::holds_alternative<Measurement>(phi.form())) {
    const Eigen::MatrixXd a = v.cwiseAbs2();
    return a.transpose() * a;
  }
  if (const auto* u = std::get_if<UnitaryMap>(&phi.form())) {
    return (v.adjoint() * u->u * v).cwiseAbs2();
  }

  // Generic route. Pairs inside one eigenvalue cluster carry a zero
  // (lambda_i - lambda_j)^2 factor, so only rows and columns outside the
  // largest cluster are needed: columns through Phi, rows through Phi^dagger.
  std::vector<Eigen::Index> cluster_of(static_cast<std::size_t>(d));
  Eigen::Index cluster = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i > 0 && std::abs(es.values(i) - es.values(i - 1)) > kZeroEigenvalue) ++cluster;
    cluster_of[static_cast<std::size_t>(i)] = cluster;
  }
  std::vector<Eigen::Index> sizes(static_cast<std::size_t>(cluster + 1), 0);
  for (Eigen::Index c : cluster_of) ++sizes[static_cast<std::size_t>(c)];
  const auto largest = static_cast<Eigen::Index>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  const Eigen::Index outside = d - sizes[static_cast<std::size_t>(largest)];
  const bool columns_only = 2 * outside >= d;

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!columns_only && cluster_of[static_cast<std::size_t>(j)] == largest) continue;
    const CMatrix image = phi.apply(projector(v.col(j)));
    w.col(j) = diagonal_in_basis(image, v);
  }
  if (!columns_only) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if (cluster_of[static_cast<std::size_t>(i)] == largest) continue;
      const CMatrix image = phi.apply_adjoint(projector(v.col(i)));
      w.row(i) = diagonal_in_basis(image, v).transpose();
    }
  }
  return w;
}

bool has_kraus_form(const QuantumChannel& phi) {
  if (std::holds_alternative<Depolarizing>(phi.form())) return false;
  if (const auto* c = std::get_if<Composed>(&phi.form())) {
    return std::all_of(c->stages.begin(), c->stages.end(), has_kraus_form);
  }
  return true;
}

void require_square(const CMatrix& m, std::size_t dim, const char* what) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != dim) {
    throw Error(ErrorCode::kShape, std::string(what) + " must be " + std::to_string(dim) + "x" +
                                       std::to_string(dim));
  }
}

}  // namespace

// OperatorMonotoneFunction ----------------------------------------------------

OperatorMonotoneFunction OperatorMonotoneFunction::create(std::string name, Fn fn, double f0) {
  if (!fn) throw Error(ErrorCode::kInvalidArgument, "operator monotone function is empty");
  if (!(f0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, name + ": f(0) must be positive");
  if (std::abs(fn(0.0) - f0) > 1e-12 * std::max(1.0, f0)) {
    throw Error(ErrorCode::kInvalidArgument, name + ": f(0) does not match the declared f0");
  }
  constexpr int kGridPoints = 121;
  double previous = -1.0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = std::pow(10.0, -6.0 + 12.0 * i / (kGridPoints - 1));
    const double fx = fn(x);
    const double scale = std::max(1.0, std::abs(fx));
    if (!std::isfinite(fx) || std::abs(x * fn(1.0 / x) - fx) > 1e-10 * scale) {
      throw Error(ErrorCode::kInvalidArgument, name + ": x f(1/x) != f(x) at x = " +
                                                   std::to_string(x));
    }
    if (fx < previous - 1e-12 * scale) {
      throw Error(ErrorCode::kInvalidArgument, name + ": not monotone near x = " +
                                                   std::to_string(x));
    }
    previous = fx;
  }
  return OperatorMonotoneFunction(std::move(name), std::move(fn), f0);
}

const OperatorMonotoneFunction& OperatorMonotoneFunction::wigner_yanase() {
  static const OperatorMonotoneFunction wy = create(
      "wy",
      [](double x) {
        const double h = 0.5 * (1.0 + std::sqrt(x));
        return h * h;
      },
      0.25);
  return wy;
}

const OperatorMonotoneFunction& OperatorMonotoneFunction::sld() {
  static const OperatorMonotoneFunction sld_fn =
      create("sld", [](double x) { return 0.5 * (1.0 + x); }, 0.5);
  return sld_fn;
}

const OperatorMonotoneFunction& OperatorMonotoneFunction::by_name(const std::string& name) {
  if (name == "wy") return wigner_yanase();
  if (name == "sld") return sld();
  throw Error(ErrorCode::kInvalidArgument, "unknown operator monotone function '" + name + "'");
}

double morozova_chentsov(const OperatorMonotoneFunction& f, double x, double y) {
  if (x < 0.0 || y < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "c_f needs nonnegative arguments");
  }
  if (x == 0.0 && y == 0.0) throw Error(ErrorCode::kUndefined, "c_f(0, 0)");
  // y f(x/y) -> x f(0) as y -> 0, by x f(1/x) = f(x).
  if (y == 0.0) return 1.0 / (x * f.f0());
  return 1.0 / (y * f(x / y));
}

// QuantumChannel --------------------------------------------------------------

QuantumChannel::QuantumChannel(Form form) : form_(std::move(form)) {
  dim_ = std::visit(
      [](const auto& f) -> std::size_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, KrausList>) {
          return f.operators.empty() ? 0 : static_cast<std::size_t>(f.operators.front().rows());
        } else if constexpr (std::is_same_v<T, UnitaryMap>) {
          return static_cast<std::size_t>(f.u.rows());
        } else if constexpr (std::is_same_v<T, Composed>) {
          return f.stages.empty() ? 0 : f.stages.front().dim();
        } else {
          return f.dim;
        }
      },
      form_);
}

CMatrix QuantumChannel::apply(const CMatrix& x) const {
  require_square(x, dim_, "channel input");
  return std::visit(
      [&](const auto& f) -> CMatrix {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, KrausList>) {
          CMatrix out = CMatrix::Zero(x.rows(), x.cols());
          for (const auto& k : f.operators) out.noalias() += k * x * k.adjoint();
          return out;
        } else if constexpr (std::is_same_v<T, UnitaryMap>) {
          return f.u * x * f.u.adjoint();
        } else if constexpr (std::is_same_v<T, Measurement>) {
          CMatrix out = CMatrix::Zero(x.rows(), x.cols());
          out.diagonal() = x.diagonal();
          return out;
        } else if constexpr (std::is_same_v<T, Depolarizing>) {
          CMatrix out = f.lambda * (f.v * x * f.v.adjoint());
          out.diagonal().array() += (1.0 - f.lambda) * x.trace() / static_cast<double>(f.dim);
          return out;
        } else {
          CMatrix out = x;
          for (const auto& stage : f.stages) out = stage.apply(out);
          return out;
        }
      },
      form_);
}

CMatrix QuantumChannel::apply_adjoint(const CMatrix& y) const {
  require_square(y, dim_, "channel input");
  return std::visit(
      [&](const auto& f) -> CMatrix {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, KrausList>) {
          CMatrix out = CMatrix::Zero(y.rows(), y.cols());
          for (const auto& k : f.operators) out.noalias() += k.adjoint() * y * k;
          return out;
        } else if constexpr (std::is_same_v<T, UnitaryMap>) {
          return f.u.adjoint() * y * f.u;
        } else if constexpr (std::is_same_v<T, Measurement>) {
          CMatrix out = CMatrix::Zero(y.rows(), y.cols());
          out.diagonal() = y.diagonal();
          return out;
        } else if constexpr (std::is_same_v<T, Depolarizing>) {
          CMatrix out = f.lambda * (f.v.adjoint() * y * f.v);
          out.diagonal().array() += (1.0 - f.lambda) * y.trace() / static_cast<double>(f.dim);
          return out;
        } else {
          CMatrix out = y;
          for (auto it = f.stages.rbegin(); it != f.stages.rend(); ++it) {
            out = it->apply_adjoint(out);
          }
          return out;
        }
      },
      form_);
}

std::optional<std::vector<CMatrix>> QuantumChannel::kraus_operators() const {
  return std::visit(
      [&](const auto& f) -> std::optional<std::vector<CMatrix>> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, KrausList>) {
          return f.operators;
        } else if constexpr (std::is_same_v<T, UnitaryMap>) {
          return std::vector<CMatrix>{f.u};
        } else if constexpr (std::is_same_v<T, Measurement>) {
          std::vector<CMatrix> ops;
          const auto d = static_cast<Eigen::Index>(f.dim);
          for (Eigen::Index i = 0; i < d; ++i) {
            CMatrix k = CMatrix::Zero(d, d);
            k(i, i) = 1.0;
            ops.push_back(std::move(k));
          }
          return ops;
        } else if constexpr (std::is_same_v<T, Depolarizing>) {
          return std::nullopt;
        } else {
          const auto d = static_cast<Eigen::Index>(dim_);
          std::vector<CMatrix> ops{CMatrix::Identity(d, d)};
          for (const auto& stage : f.stages) {
            auto stage_ops = stage.kraus_operators();
            if (!stage_ops) return std::nullopt;
            std::vector<CMatrix> next;
            next.reserve(ops.size() * stage_ops->size());
            for (const auto& k : *stage_ops) {
              for (const auto& prev : ops) next.push_back(k * prev);
            }
            ops = std::move(next);
          }
          return ops;
        }
      },
      form_);
}

QuantumChannel kraus_channel(std::vector<CMatrix> operators) {
  if (operators.empty()) throw Error(ErrorCode::kInvalidArgument, "empty Kraus list");
  const auto d = static_cast<std::size_t>(operators.front().rows());
  CMatrix completeness = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& k : operators) {
    require_square(k, d, "Kraus operator");
    completeness.noalias() += k.adjoint() * k;
  }
  if ((completeness - CMatrix::Identity(completeness.rows(), completeness.cols())).norm() >
      kKrausCompletenessTol) {
    throw Error(ErrorCode::kInvalidArgument, "Kraus operators do not satisfy sum K^dag K = I");
  }
  return QuantumChannel(KrausList{std::move(operators)});
}

QuantumChannel unitary_channel(CMatrix u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw Error(ErrorCode::kShape, "unitary must be square");
  }
  if (unitarity_defect(u) > kUnitaryTol) {
    throw Error(ErrorCode::kInvalidArgument, "operator is not unitary");
  }
  return QuantumChannel(UnitaryMap{std::move(u)});
}

QuantumChannel measurement_channel(std::size_t d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  return QuantumChannel(Measurement{d});
}

QuantumChannel depolarizing_channel(std::size_t d, double lambda, CMatrix v) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "depolarizing channel needs d >= 2");
  const double dd = static_cast<double>(d);
  const double lower = -1.0 / (dd * dd - 1.0);
  // Relative slack so a boundary value typed in decimal still qualifies.
  if (!(lambda >= lower * (1.0 + 1e-12) && lambda <= 1.0)) {
    throw Error(ErrorCode::kNotCompletelyPositive,
                "lambda = " + std::to_string(lambda) + " outside [-1/(d^2-1), 1]");
  }
  require_square(v, d, "depolarizing unitary");
  if (unitarity_defect(v) > kUnitaryTol) {
    throw Error(ErrorCode::kInvalidArgument, "depolarizing V is not unitary");
  }
  return QuantumChannel(Depolarizing{lambda, std::move(v), d});
}

QuantumChannel compose(std::vector<QuantumChannel> stages) {
  if (stages.empty()) throw Error(ErrorCode::kInvalidArgument, "empty composition");
  for (const auto& s : stages) {
    if (s.dim() != stages.front().dim()) {
      throw Error(ErrorCode::kShape, "composed channels must share a dimension");
    }
  }
  return QuantumChannel(Composed{std::move(stages)});
}

QuantumChannel shor_unitary_channel(const ShorInstance& inst) {
  return unitary_channel(shor_unitary(inst));
}

PhaseFunction zero_phase() {
  return [](std::int64_t) { return 0.0; };
}

PhaseFunction phase_pi_over_q(std::int64_t q) {
  return [q](std::int64_t x) { return M_PI * static_cast<double>(x) / static_cast<double>(q); };
}

PhaseFunction phase_pi_over_6q(std::int64_t q) {
  return [q](std::int64_t x) {
    return M_PI * static_cast<double>(x) / (6.0 * static_cast<double>(q));
  };
}

CMatrix phase_unitary(const ShorInstance& inst, const PhaseFunction& phase) {
  const auto d = static_cast<Eigen::Index>(inst.d());
  CMatrix w = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < inst.dim_a(); ++k) {
    const Complex z = std::polar(1.0, phase(static_cast<std::int64_t>(k)));
    for (std::size_t b = 0; b < inst.dim_b(); ++b) {
      const auto i = static_cast<Eigen::Index>(inst.ab_index(k, b));
      w(i, i) = z;
    }
  }
  return w;
}

QuantumChannel noisy_shor_channel(const ShorInstance& inst, double lambda,
                                  const PhaseFunction& phase) {
  const QuantumChannel noise = depolarizing_channel(inst.d(), lambda, phase_unitary(inst, phase));
  const QuantumChannel modexp = unitary_channel(modexp_permutation(inst).to_matrix());
  const CMatrix f_dag = inverse_qft(inst.q());
  const auto db = static_cast<Eigen::Index>(inst.dim_b());
  const QuantumChannel qft = unitary_channel(
      tensor_product(f_dag, CMatrix::Identity(db, db), std::max(inst.d(), kDefaultMaxDim)));
  return compose({noise, modexp, noise, qft});
}

std::vector<double> noisy_outcome_distribution(const ShorInstance& inst, double lambda,
                                               const PhaseFunction& phase) {
  const CVector psi1 = initial_pure_state(inst, register_amplitudes(Hadamard{}, inst));
  const CMatrix out = noisy_shor_channel(inst, lambda, phase).apply(projector(psi1));
  return outcome_distribution(out, inst);
}

// Coherence quantifiers -------------------------------------------------------

double skew_information(const CMatrix& rho, const CMatrix& k, const OperatorMonotoneFunction& f) {
  const EigenSystem es = state_spectrum(rho);
  require_square(k, static_cast<std::size_t>(rho.rows()), "observable");
  const Eigen::MatrixXd k_abs2 = (es.vectors.adjoint() * k * es.vectors).cwiseAbs2();
  double total = 0.0;
  const Eigen::Index d = rho.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double gap = es.values(i) - es.values(j);
      if (gap == 0.0) continue;
      total += morozova_chentsov(f, es.values(i), es.values(j)) * gap * gap * k_abs2(i, j);
    }
  }
  return 0.5 * f.f0() * total;
}

double channel_coherence_spectral(const CMatrix& rho, const QuantumChannel& phi,
                                  const OperatorMonotoneFunction& f) {
  const EigenSystem es = state_spectrum(rho);
  if (static_cast<std::size_t>(rho.rows()) != phi.dim()) {
    throw Error(ErrorCode::kShape, "state and channel dimensions differ");
  }
  const Eigen::MatrixXd w = transition_weights(es, phi);
  double total = 0.0;
  const Eigen::Index d = rho.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double gap = es.values(i) - es.values(j);
      if (std::abs(gap) <= kZeroEigenvalue) continue;
      total += morozova_chentsov(f, es.values(i), es.values(j)) * gap * gap * w(i, j);
    }
  }
  return 0.5 * f.f0() * total;
}

double channel_coherence(const CMatrix& rho, const QuantumChannel& phi,
                         const OperatorMonotoneFunction& f) {
  if (has_kraus_form(phi)) {
    const EigenSystem es = state_spectrum(rho);
    const bool pure = es.values(0) >= 1.0 - kZeroEigenvalue &&
                      (es.values.size() < 2 || es.values(1) == 0.0);
    if (pure) return pure_channel_coherence(es.vectors.col(0), phi);
  }
  return channel_coherence_spectral(rho, phi, f);
}

double pure_channel_coherence(const CVector& psi, const QuantumChannel& phi) {
  if (static_cast<std::size_t>(psi.size()) != phi.dim()) {
    throw Error(ErrorCode::kShape, "state and channel dimensions differ");
  }
  if (std::abs(psi.norm() - 1.0) > kHermitianTol) {
    throw Error(ErrorCode::kNotNormalized, "norm " + std::to_string(psi.norm()));
  }
  if (std::holds_alternative<Measurement>(phi.form())) {
    return 1.0 - psi.cwiseAbs2().cwiseAbs2().sum();
  }
  if (!has_kraus_form(phi)) throw Error(ErrorCode::kNoKrausForm, "depolarizing channel");
  const auto ops = phi.kraus_operators();
  double total = 0.0;
  for (const auto& k : *ops) {
    const CVector k_psi = k * psi;
    const double forward = k_psi.squaredNorm();
    const double backward = (k.adjoint() * psi).squaredNorm();
    total += 0.5 * (forward + backward) - std::norm(psi.dot(k_psi));
  }
  return total;
}

double wy_channel_coherence(const CMatrix& rho, const QuantumChannel& phi) {
  state_spectrum(rho);
  if (static_cast<std::size_t>(rho.rows()) != phi.dim()) {
    throw Error(ErrorCode::kShape, "state and channel dimensions differ");
  }
  const CMatrix root = psd_sqrt(rho);
  const auto d = rho.rows();
  const double unital_term = trace_product(rho, phi.apply(CMatrix::Identity(d, d))).real();
  const double overlap = trace_product(root, phi.apply(root)).real();
  return 0.5 * (1.0 + unital_term) - overlap;
}

}  // namespace shorlab
