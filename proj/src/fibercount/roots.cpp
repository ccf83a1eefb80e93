#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>

#include "keller/error.hpp"
#include "keller/fibercount/fiber.hpp"

namespace keller::fiber {

namespace {

constexpr int kIterationCap = 1000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct HornerResult {
  std::complex<double> value;
  std::complex<double> derivative;
  double errorBound;
};

HornerResult horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> p = c.back();
  std::complex<double> dp = 0.0;
  double bound = std::abs(c.back());
  const double az = std::abs(z);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
    bound = bound * az + std::abs(c[k]);
  }
  return {p, dp, 8.0 * kEps * bound};
}

std::optional<std::vector<std::complex<double>>> aberth(const std::vector<std::complex<double>>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  // Initial circle from the largest |c_k / c_n|^(1/(n-k)).
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0 / (n - k)));
  }
  if (radius == 0.0) radius = 1.0;
  const std::complex<double> centre = -c[n - 1] / (static_cast<double>(n) * c[n]);
  std::vector<std::complex<double>> z(n);
  for (int k = 0; k < n; ++k) {
    z[k] = centre + std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.7);
  }
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < kIterationCap; ++iter) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const HornerResult h = horner(c, z[i]);
      if (std::abs(h.value) <= h.errorBound) {
        done[i] = true;
        continue;
      }
      std::complex<double> sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const std::complex<double> denom = h.derivative - h.value * sum;
      std::complex<double> step = denom == 0.0 ? std::complex<double>(1e-8 * (1.0 + std::abs(z[i]))) : h.value / denom;
      z[i] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(z[i])) {
        done[i] = true;
      } else {
        all = false;
      }
    }
    if (all && std::all_of(done.begin(), done.end(), [](bool b) { return b; })) return z;
  }
  return std::nullopt;
}

std::vector<std::complex<double>> companionRoots(const std::vector<std::complex<double>>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) m(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) m(k, n - 1) = -c[k] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "companion eigenvalues failed");
  std::vector<std::complex<double>> roots(n);
  for (int k = 0; k < n; ++k) roots[k] = solver.eigenvalues()[k];
  return roots;
}

std::vector<std::complex<double>> rawRoots(const UnivariatePolynomial& u) {
  std::vector<std::complex<double>> c = u.coefficients();
  std::vector<std::complex<double>> roots;
  std::size_t zeros = 0;
  while (zeros + 1 < c.size() && c[zeros] == 0.0) ++zeros;
  roots.assign(zeros, 0.0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (n > 1) {
    if (auto z = aberth(c)) {
      roots.insert(roots.end(), z->begin(), z->end());
    } else if (n <= 4) {
      auto z2 = companionRoots(c);
      roots.insert(roots.end(), z2.begin(), z2.end());
    } else {
      throw Error(ErrorCode::NonConvergence, "Aberth iteration hit the cap of 1000 sweeps at degree " + std::to_string(n));
    }
  }
  return roots;
}

}  // namespace

UnivariatePolynomial::UnivariatePolynomial(std::vector<std::complex<double>> coefficients)
    : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

UnivariatePolynomial UnivariatePolynomial::fromExact(const GaussianUnivariate& p) {
  std::vector<std::complex<double>> c;
  for (const auto& q : p.coefficients()) c.push_back(q.toComplex());
  return UnivariatePolynomial(std::move(c));
}

std::complex<double> UnivariatePolynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UnivariatePolynomial UnivariatePolynomial::trimmed(double relative) const {
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  std::vector<std::complex<double>> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= relative * scale) c.pop_back();
  return UnivariatePolynomial(std::move(c));
}

std::vector<RootCluster> univariateRootClusters(const UnivariatePolynomial& u, double tol) {
  if (u.isZero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "root tolerance must be positive");
  const std::vector<std::complex<double>> roots = rawRoots(u);
  // Single-linkage clustering through union-find.
  std::vector<std::size_t> parent(roots.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) <= tol) parent[find(j)] = find(i);
    }
  }
  std::vector<RootCluster> clusters;
  std::vector<std::size_t> owner(roots.size(), roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const std::size_t r = find(i);
    if (owner[r] == roots.size()) {
      owner[r] = clusters.size();
      clusters.push_back({roots[i], 1});
    } else {
      auto& cl = clusters[owner[r]];
      cl.value += roots[i];
      ++cl.multiplicity;
    }
  }
  for (auto& cl : clusters) cl.value /= static_cast<double>(cl.multiplicity);
  return clusters;
}

std::vector<std::complex<double>> univariateRoots(const UnivariatePolynomial& u, double tol) {
  std::vector<std::complex<double>> out;
  for (const auto& cl : univariateRootClusters(u, tol)) out.push_back(cl.value);
  return out;
}

}  // namespace keller::fiber
