/**
 * This code is part of privstate.
 *
 * (C) Copyright privstate contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#include "privstate/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace privstate {

namespace {

// Row-major strides: the first factor is the most significant digit.
std::vector<long> factor_strides(const std::vector<long> &dims) {
  std::vector<long> strides(dims.size());
  long acc = 1;
  for (std::size_t f = dims.size(); f-- > 0;) {
    strides[f] = acc;
    acc *= dims[f];
  }
  return strides;
}

double clamped(double lambda) {
  return (lambda < kSpectralCutoff) ? 0.0 : lambda;
}

double entropy_bits(const RealVector &eigs) {
  double h = 0.0;
  for (long i = 0; i < eigs.size(); ++i) {
    const double lam = clamped(eigs(i));
    if (lam > 0.0) h -= lam * std::log2(lam);
  }
  return h;
}

} // namespace

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long ar = 0; ar < a.rows(); ++ar)
    for (long ac = 0; ac < a.cols(); ++ac)
      out.block(ar * b.rows(), ac * b.cols(), b.rows(), b.cols()) = a(ar, ac) * b;
  return out;
}

DenseState permute_factors(const DenseState &s, const std::vector<std::size_t> &perm) {
  const FactorLayout out_layout = s.layout.permuted(perm); // validates bijection
  const long n = s.dim();
  const auto in_strides = factor_strides(s.layout.dims);
  const auto &out_dims = out_layout.dims;

  // in_index[v]: the input basis index corresponding to output basis index v.
  std::vector<long> in_index(n);
  for (long v = 0; v < n; ++v) {
    long rest = v;
    long idx = 0;
    for (std::size_t slot = out_dims.size(); slot-- > 0;) {
      const long digit = rest % out_dims[slot];
      rest /= out_dims[slot];
      idx += digit * in_strides[perm[slot]];
    }
    in_index[v] = idx;
  }

  ComplexMatrix out(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) out(r, c) = s.mat(in_index[r], in_index[c]);
  return DenseState(std::move(out), out_layout, Validation::structure);
}

DenseState partial_trace(const DenseState &s, const std::vector<std::size_t> &discard) {
  if (discard.empty()) throw ValidationError("partial_trace needs at least one factor to discard");
  if (discard.size() >= s.layout.factor_count())
    throw ValidationError("partial_trace cannot discard every factor");
  const FactorLayout out_layout = s.layout.without(discard); // validates indices

  std::vector<bool> dropped(s.layout.factor_count(), false);
  for (std::size_t f : discard) dropped[f] = true;

  const auto in_strides = factor_strides(s.layout.dims);

  // Enumerate the kept and traced sub-index offsets separately.
  std::vector<long> kept_dims, kept_strides, traced_dims, traced_strides;
  for (std::size_t f = 0; f < s.layout.factor_count(); ++f) {
    if (dropped[f]) {
      traced_dims.push_back(s.layout.dims[f]);
      traced_strides.push_back(in_strides[f]);
    } else {
      kept_dims.push_back(s.layout.dims[f]);
      kept_strides.push_back(in_strides[f]);
    }
  }

  auto offsets = [](const std::vector<long> &dims, const std::vector<long> &strides) {
    long count = 1;
    for (long d : dims) count *= d;
    std::vector<long> off(count);
    for (long v = 0; v < count; ++v) {
      long rest = v;
      long idx = 0;
      for (std::size_t f = dims.size(); f-- > 0;) {
        idx += (rest % dims[f]) * strides[f];
        rest /= dims[f];
      }
      off[v] = idx;
    }
    return off;
  };
  const std::vector<long> kept_off = offsets(kept_dims, kept_strides);
  const std::vector<long> traced_off = offsets(traced_dims, traced_strides);

  const long m = static_cast<long>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (long r = 0; r < m; ++r)
    for (long c = 0; c < m; ++c) {
      Complex acc{0.0, 0.0};
      for (long t : traced_off) acc += s.mat(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = acc;
    }
  return DenseState(std::move(out), out_layout, Validation::structure);
}

ComplexMatrix partial_transpose(const DenseState &s, const std::set<Party> &parties) {
  if (parties.empty()) throw ValidationError("partial_transpose needs at least one party");
  for (Party p : parties) {
    if (std::find(s.layout.parties.begin(), s.layout.parties.end(), p) ==
        s.layout.parties.end())
      throw ValidationError("partial_transpose: party " + party_name(p) +
                            " not present in layout");
  }

  const long n = s.dim();
  const auto strides = factor_strides(s.layout.dims);

  // Split every basis index into the stride-weighted contribution of the
  // transposed factors (T) and of the rest (K); transposing swaps the T
  // parts of the row and column indices.
  std::vector<long> part_k(n), part_t(n);
  for (long v = 0; v < n; ++v) {
    long rest = v;
    long tk = 0, tt = 0;
    for (std::size_t f = s.layout.factor_count(); f-- > 0;) {
      const long digit = rest % s.layout.dims[f];
      rest /= s.layout.dims[f];
      if (parties.count(s.layout.parties[f]))
        tt += digit * strides[f];
      else
        tk += digit * strides[f];
    }
    part_k[v] = tk;
    part_t[v] = tt;
  }

  ComplexMatrix out(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c)
      out(r, c) = s.mat(part_k[r] + part_t[c], part_k[c] + part_t[r]);
  return out;
}

EigResult hermitian_eig(const ComplexMatrix &m) {
  if (!is_hermitian(m, 1e-9))
    throw ValidationError("hermitian_eig requires a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");
  // Eigen returns ascending order; flip to descending.
  const long n = m.rows();
  EigResult res;
  res.values = RealVector(n);
  res.vectors = ComplexMatrix(n, n);
  for (long i = 0; i < n; ++i) {
    res.values(i) = es.eigenvalues()(n - 1 - i);
    res.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return res;
}

double trace_norm(const ComplexMatrix &m) {
  if (m.rows() != m.cols()) {
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
  }
  if (is_hermitian(m)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  RealVector lam = es.eigenvalues();
  for (long i = 0; i < lam.size(); ++i) lam(i) = std::sqrt(std::max(0.0, lam(i)));
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DenseState &r, const DenseState &s) {
  if (r.dim() != s.dim())
    throw ValidationError("fidelity requires states of equal dimension");
  const double f = trace_norm(psd_sqrt(r.mat) * psd_sqrt(s.mat));
  return std::clamp(f, 0.0, 1.0);
}

double von_neumann_entropy(const DenseState &r) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r.mat, Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues());
}

double relative_entropy(const DenseState &r, const DenseState &s) {
  if (r.dim() != s.dim())
    throw ValidationError("relative_entropy requires states of equal dimension");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(r.mat);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s.mat);
  const long n = r.dim();

  // Support test: mass of r outside the support of s.
  double outside = 0.0;
  for (long j = 0; j < n; ++j) {
    if (clamped(es.eigenvalues()(j)) == 0.0) {
      const ComplexVector u = es.eigenvectors().col(j);
      outside += (u.adjoint() * r.mat * u)(0, 0).real();
    }
  }
  if (outside > kSpectralCutoff) return std::numeric_limits<double>::infinity();

  double val = 0.0;
  for (long k = 0; k < n; ++k) {
    const double lam = clamped(er.eigenvalues()(k));
    if (lam == 0.0) continue;
    val += lam * std::log2(lam);
    const ComplexVector v = er.eigenvectors().col(k);
    for (long j = 0; j < n; ++j) {
      const double mu = clamped(es.eigenvalues()(j));
      if (mu == 0.0) continue;
      const double w = std::norm((es.eigenvectors().col(j).adjoint() * v)(0, 0));
      val -= lam * w * std::log2(mu);
    }
  }
  return std::max(0.0, val);
}

PolarResult polar_decompose(const ComplexMatrix &x) {
  if (x.rows() != x.cols()) throw ValidationError("polar_decompose requires a square matrix");
  const long n = x.rows();
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix &w = svd.matrixU();
  const ComplexMatrix &v = svd.matrixV();
  const RealVector sig = svd.singularValues();

  PolarResult res;
  res.positive = v * sig.asDiagonal() * v.adjoint();

  long rank = 0;
  while (rank < n && sig(rank) > kSpectralCutoff) ++rank;
  if (rank == n) {
    res.unitary = w * v.adjoint();
    return res;
  }
  // Rank-deficient: prefer the identity on the kernel when the left and
  // right null spaces coincide, so that PSD inputs map to the identity.
  const ComplexMatrix wr = w.leftCols(rank);
  const ComplexMatrix vr = v.leftCols(rank);
  const ComplexMatrix pv = ComplexMatrix::Identity(n, n) - vr * vr.adjoint();
  const ComplexMatrix pw = ComplexMatrix::Identity(n, n) - wr * wr.adjoint();
  if ((pv - pw).cwiseAbs().maxCoeff() <= 1e-8)
    res.unitary = wr * vr.adjoint() + pv;
  else
    res.unitary = w * v.adjoint();
  return res;
}

DenseState purify(const DenseState &r) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r.mat);
  const long n = r.dim();
  std::vector<long> kept;
  for (long i = 0; i < n; ++i)
    if (clamped(es.eigenvalues()(i)) > 0.0) kept.push_back(i);
  const long rank = std::max<long>(1, static_cast<long>(kept.size()));

  ComplexVector psi = ComplexVector::Zero(n * rank);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double amp = std::sqrt(es.eigenvalues()(kept[k]));
    for (long a = 0; a < n; ++a)
      psi(a * rank + static_cast<long>(k)) += amp * es.eigenvectors()(a, kept[k]);
  }

  FactorLayout out_layout = concat(r.layout, FactorLayout({rank}, {Party::E}));
  ComplexMatrix proj = psi * psi.adjoint();
  return DenseState(std::move(proj), std::move(out_layout), Validation::structure);
}

} // namespace privstate
