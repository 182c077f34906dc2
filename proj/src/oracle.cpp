#include "shorlab/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace shorlab::oracle {

namespace {

std::int64_t modpow(std::int64_t base, std::int64_t e, std::int64_t n) {
  std::int64_t out = 1 % n;
  base %= n;
  while (e > 0) {
    if (e & 1) out = out * base % n;
    base = base * base % n;
    e >>= 1;
  }
  return out;
}

Complex phase(std::int64_t j, std::int64_t k, std::int64_t q) {
  const std::int64_t reduced = (j * k) % q;
  return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(reduced) /
                             static_cast<double>(q));
}

std::int64_t gcd_slow(std::int64_t a, std::int64_t b) {
  for (std::int64_t g = std::min(a, b); g > 1; --g) {
    if (a % g == 0 && b % g == 0) return g;
  }
  return a == 0 || b == 0 ? std::max(a, b) : 1;
}

}  // namespace

CVector brute_final_state(const ShorInstance& inst, const CVector& alpha) {
  const std::int64_t q = inst.q();
  const double norm = 1.0 / std::sqrt(static_cast<double>(q));
  CVector out = CVector::Zero(static_cast<Eigen::Index>(inst.d()));
  for (std::int64_t k = 0; k < q; ++k) {
    for (std::int64_t j = 0; j < q; ++j) {
      const std::int64_t v = modpow(inst.x(), j, inst.n());
      const auto b = *inst.b_index_of_value(v);
      out(static_cast<Eigen::Index>(inst.ab_index(static_cast<std::size_t>(k), b))) +=
          norm * alpha(j) * phase(j, k, q);
    }
  }
  return out;
}

std::vector<double> brute_outcome_distribution(const ShorInstance& inst, const CVector& alpha) {
  const std::int64_t q = inst.q();
  const double norm = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<double> dist(static_cast<std::size_t>(q), 0.0);
  for (std::int64_t k = 0; k < q; ++k) {
    for (std::int64_t v = 1; v < inst.n(); ++v) {
      Complex amp = 0.0;
      bool reached = false;
      for (std::int64_t j = 0; j < q; ++j) {
        if (modpow(inst.x(), j, inst.n()) != v) continue;
        reached = true;
        amp += norm * alpha(j) * phase(j, k, q);
      }
      if (reached) dist[static_cast<std::size_t>(k)] += std::norm(amp);
    }
  }
  return dist;
}

std::vector<double> brute_mixed_outcome_distribution(const ShorInstance& inst, const CMatrix& rho) {
  std::vector<double> dist(inst.dim_a(), 0.0);
  for (std::size_t k = 0; k < inst.dim_a(); ++k) {
    for (std::size_t b = 0; b < inst.dim_b(); ++b) {
      const auto i = static_cast<Eigen::Index>(inst.ab_index(k, b));
      dist[k] += rho(i, i).real();
    }
  }
  return dist;
}

double brute_wy_coherence(const CMatrix& rho, const std::vector<CMatrix>& kraus) {
  const CMatrix s = psd_sqrt(rho);
  double total = 0.0;
  for (const auto& k : kraus) {
    const CMatrix c = s * k - k * s;
    total += (c * c.adjoint()).trace().real();
  }
  return 0.5 * total;
}

std::vector<CMatrix> measurement_kraus(std::size_t d) {
  std::vector<CMatrix> ops;
  const auto n = static_cast<Eigen::Index>(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    CMatrix k = CMatrix::Zero(n, n);
    k(i, i) = 1.0;
    ops.push_back(std::move(k));
  }
  return ops;
}

double brute_measurement_coherence(const CVector& psi) {
  double sum = 0.0;
  for (const auto& z : psi) sum += std::norm(z) * std::norm(z);
  return 1.0 - sum;
}

double brute_overlap_defect(const CVector& a, const CVector& b) {
  Complex overlap = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) overlap += std::conj(a(i)) * b(i);
  return 1.0 - std::norm(overlap);
}

SuccessPair brute_success_probability(const ShorInstance& inst, const std::vector<double>& dist) {
  SuccessPair out;
  const std::int64_t q = inst.q(), r = inst.r();
  for (std::int64_t k = 1; k < q; ++k) {
    if (continued_fraction_order(k, q, inst.n()) == r) out.general += dist[static_cast<std::size_t>(k)];
  }
  if (q % r != 0) {
    out.exact = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  for (std::int64_t k = 0; k < q; ++k) {
    // k = s m with gcd(s, r) = 1  <=>  k r / Q is an integer coprime to r.
    if ((k * r) % q != 0) continue;
    if (gcd_slow(k * r / q, r) == 1) out.exact += dist[static_cast<std::size_t>(k)];
  }
  return out;
}

double brute_kernel_sq(std::int64_t q, double delta) {
  Complex sum = 0.0;
  for (std::int64_t j = 0; j < q; ++j) {
    sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) * delta);
  }
  return std::norm(sum);
}

CVector random_real_amplitudes(std::size_t q, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector a(static_cast<Eigen::Index>(q));
  for (auto& z : a) z = Complex(g(rng), 0.0);
  return a / a.norm();
}

CVector random_complex_amplitudes(std::size_t q, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector a(static_cast<Eigen::Index>(q));
  for (auto& z : a) {
    const double re = g(rng);
    z = Complex(re, g(rng));
  }
  return a / a.norm();
}

CMatrix random_density_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = g(rng);
      m(i, j) = Complex(re, g(rng));
    }
  }
  CMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

}  // namespace shorlab::oracle
