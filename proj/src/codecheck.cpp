#include "zeclab/codecheck.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "zeclab/errors.hpp"

namespace zeclab {

namespace {

// Max |G - I| entry for the Gram matrix of a stacked vector list.
double gram_residual(const std::vector<const Vector*>& vs) {
  double worst = 0.0;
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i; j < vs.size(); ++j) {
      const Complex g = vs[i]->dot(*vs[j]);
      const double dev = std::abs(g - (i == j ? Complex(1.0) : Complex(0.0)));
      worst = std::max(worst, dev);
    }
  return worst;
}

void check_pn(int n, int p) {
  if (n < 1) throw ValidationError("code construction needs n >= 1");
  if (p < 2) throw ValidationError("code construction needs p >= 2");
}

Eigen::Index checked_dim(int n, int p, Eigen::Index cap) {
  const long long bits = static_cast<long long>(n) * p;
  if (bits >= 62) throw ResourceError("code dimension 2^(p*n) overflows");
  const long long dim = 1LL << bits;
  if (dim > cap)
    throw ResourceError("code dimension " + std::to_string(dim) +
                        " exceeds cap " + std::to_string(cap));
  return static_cast<Eigen::Index>(dim);
}

// Two-entry vector: amplitude 1/sqrt(2) at index a, i/sqrt(2) at index b.
struct SparsePair {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

Complex sparse_inner(const SparsePair& u, const SparsePair& v) {
  static const Complex amp_a(1.0 / std::sqrt(2.0), 0.0);
  static const Complex amp_b(0.0, 1.0 / std::sqrt(2.0));
  Complex acc(0.0, 0.0);
  if (u.a == v.a) acc += std::conj(amp_a) * amp_a;
  if (u.a == v.b) acc += std::conj(amp_a) * amp_b;
  if (u.b == v.a) acc += std::conj(amp_b) * amp_a;
  if (u.b == v.b) acc += std::conj(amp_b) * amp_b;
  return acc;
}

// Index of the repeated-digit ket with every base-D digit equal to `digit`,
// with the digit of factor t complemented to D-1-digit when bit n-1-t of
// member is set (factor 0 is the most significant digit).
std::uint64_t member_index(std::uint64_t digit, std::uint64_t member, int n,
                           std::uint64_t d) {
  std::uint64_t idx = 0;
  for (int t = 0; t < n; ++t) {
    const bool flip = (member >> (n - 1 - t)) & 1ULL;
    idx = idx * d + (flip ? d - 1 - digit : digit);
  }
  return idx;
}

std::vector<SparsePair> sparse_family(int n, int p) {
  check_pn(n, p);
  if (static_cast<long long>(n) * p >= 62)
    throw ResourceError("code dimension 2^(p*n) overflows");
  const std::uint64_t d = 1ULL << p;
  const std::uint64_t k_count = d / 2;
  const std::uint64_t members = 1ULL << n;
  std::vector<SparsePair> out;
  out.reserve(members * k_count);
  for (std::uint64_t m = 0; m < members; ++m)
    for (std::uint64_t k = 1; k <= k_count; ++k)
      out.push_back(SparsePair{member_index(2 * k - 2, m, n, d),
                               member_index(2 * k - 1, m, n, d)});
  return out;
}

}  // namespace

CodeCandidate CodeCandidate::make(Eigen::Index dim_ambient,
                                  std::vector<Vector> vectors, double atol) {
  if (dim_ambient < 1) throw DimensionError("ambient dimension must be positive");
  if (vectors.empty()) throw ValidationError("code needs at least one vector");
  std::vector<const Vector*> ptrs;
  for (const Vector& v : vectors) {
    if (v.size() != dim_ambient)
      throw DimensionError("code vector length does not match ambient dimension");
    ptrs.push_back(&v);
  }
  const double dev = gram_residual(ptrs);
  if (dev > atol)
    throw ValidationError("code vectors are not orthonormal (Gram deviation " +
                          std::to_string(dev) + ")");
  return CodeCandidate{dim_ambient, std::move(vectors)};
}

KLReport verify_code(const SubspaceBasis& s, const CodeCandidate& c, double tol) {
  if (s.dim_ambient != c.dim_ambient)
    throw DimensionError("subspace and code live in different dimensions");
  std::vector<const Vector*> ptrs;
  for (const Vector& v : c.vectors) {
    if (v.size() != c.dim_ambient)
      throw DimensionError("code vector length does not match ambient dimension");
    ptrs.push_back(&v);
  }
  if (gram_residual(ptrs) > 1e-8)
    throw ValidationError("code vectors are not orthonormal");

  const size_t k_count = c.vectors.size();
  KLReport rep;
  rep.tol = tol;
  for (const Matrix& a : s.basis) {
    const double nrm = op_norm(a);
    if (nrm == 0.0) continue;
    std::vector<Complex> diag(k_count);
    for (size_t l = 0; l < k_count; ++l) {
      const Vector w = a * c.vectors[l] / nrm;
      for (size_t k = 0; k < k_count; ++k) {
        const Complex val = c.vectors[k].dot(w);
        if (k == l)
          diag[k] = val;
        else
          rep.max_offdiag = std::max(rep.max_offdiag, std::abs(val));
      }
    }
    for (size_t k = 0; k < k_count; ++k)
      for (size_t l = k + 1; l < k_count; ++l)
        rep.max_diag_spread =
            std::max(rep.max_diag_spread, std::abs(diag[k] - diag[l]));
  }
  rep.pass = rep.max_offdiag <= tol && rep.max_diag_spread <= tol;
  return rep;
}

CodeCandidate build_code_vectors(int n, int p, Eigen::Index cap) {
  check_pn(n, p);
  const Eigen::Index dim = checked_dim(n, p, cap);
  const std::uint64_t d = 1ULL << p;
  // R = 1 + D + ... + D^{n-1}: multiplying it by a digit gives the ket with
  // that digit repeated in every factor.
  std::uint64_t r = 0;
  for (int t = 0; t < n; ++t) r = r * d + 1;
  const Complex amp_a(1.0 / std::sqrt(2.0), 0.0);
  const Complex amp_b(0.0, 1.0 / std::sqrt(2.0));
  std::vector<Vector> vectors;
  for (std::uint64_t k = 1; k <= d / 2; ++k) {
    Vector v = Vector::Zero(dim);
    v(static_cast<Eigen::Index>((2 * k - 2) * r)) = amp_a;
    v(static_cast<Eigen::Index>((2 * k - 1) * r)) = amp_b;
    vectors.push_back(std::move(v));
  }
  return CodeCandidate::make(dim, std::move(vectors));
}

CodeFamily build_code_family(int n, int p, Eigen::Index cap) {
  CodeCandidate base = build_code_vectors(n, p, cap);
  const Eigen::Index d = Eigen::Index(1) << p;
  const Matrix eye = Matrix::Identity(d, d);
  const Matrix w = skew_diag_W(d);

  CodeFamily fam;
  fam.base = base;
  const std::uint64_t members = 1ULL << n;
  for (std::uint64_t x = 0; x < members; ++x) {
    Matrix u = Matrix::Identity(1, 1);
    for (int t = 0; t < n; ++t) {
      const bool flip = (x >> (n - 1 - t)) & 1ULL;
      u = kron(u, flip ? w : eye);
    }
    std::vector<Vector> vecs;
    for (const Vector& v : base.vectors) vecs.push_back(u * v);
    fam.members.push_back(CodeCandidate::make(base.dim_ambient, std::move(vecs)));
    fam.unitaries.push_back(std::move(u));
  }

  std::vector<const Vector*> all;
  for (const CodeCandidate& m : fam.members)
    for (const Vector& v : m.vectors) all.push_back(&v);
  if (gram_residual(all) > 1e-10)
    throw InternalError("family members are not mutually orthogonal");
  return fam;
}

FamilyReport verify_family_against_graph(const std::vector<SubspaceBasis>& s_factors,
                                         const CodeFamily& f, double tol) {
  if (s_factors.empty()) throw ValidationError("need at least one factor subspace");
  if (f.members.empty()) throw ValidationError("family has no members");
  Eigen::Index dim = 1;
  for (const SubspaceBasis& s : s_factors) {
    if (s.basis.empty()) throw ValidationError("factor subspace is empty");
    dim *= s.dim_ambient;
  }
  if (dim != f.base.dim_ambient)
    throw DimensionError("factor dimensions do not multiply to the code dimension");

  const size_t n = s_factors.size();
  std::vector<std::vector<double>> norms(n);
  for (size_t t = 0; t < n; ++t)
    for (const Matrix& a : s_factors[t].basis) norms[t].push_back(op_norm(a));

  const size_t member_count = f.members.size();
  const size_t k_count = f.base.vectors.size();
  std::vector<double> offdiag(member_count, 0.0), spread(member_count, 0.0);

  // Odometer over one basis element per factor; operator norm of a tensor
  // product is the product of the factor norms.
  std::vector<size_t> idx(n, 0);
  std::vector<const Matrix*> factors(n);
  while (true) {
    double nrm = 1.0;
    for (size_t t = 0; t < n; ++t) {
      factors[t] = &s_factors[t].basis[idx[t]];
      nrm *= norms[t][idx[t]];
    }
    if (nrm > 0.0) {
      for (size_t m = 0; m < member_count; ++m) {
        const CodeCandidate& cand = f.members[m];
        std::vector<Complex> diag(k_count);
        for (size_t l = 0; l < k_count; ++l) {
          const Vector w = apply_kron_factors(factors, cand.vectors[l]) / nrm;
          for (size_t k = 0; k < k_count; ++k) {
            const Complex val = cand.vectors[k].dot(w);
            if (k == l)
              diag[k] = val;
            else
              offdiag[m] = std::max(offdiag[m], std::abs(val));
          }
        }
        for (size_t k = 0; k < k_count; ++k)
          for (size_t l = k + 1; l < k_count; ++l)
            spread[m] = std::max(spread[m], std::abs(diag[k] - diag[l]));
      }
    }
    size_t t = n;
    while (t > 0) {
      --t;
      if (++idx[t] < s_factors[t].basis.size()) break;
      idx[t] = 0;
      if (t == 0) goto done;
    }
  }
done:

  FamilyReport rep;
  rep.tol = tol;
  rep.pass = true;
  for (size_t m = 0; m < member_count; ++m) {
    KLReport kr;
    kr.max_offdiag = offdiag[m];
    kr.max_diag_spread = spread[m];
    kr.tol = tol;
    kr.pass = offdiag[m] <= tol && spread[m] <= tol;
    rep.max_offdiag = std::max(rep.max_offdiag, offdiag[m]);
    rep.max_diag_spread = std::max(rep.max_diag_spread, spread[m]);
    rep.pass = rep.pass && kr.pass;
    rep.per_member.push_back(kr);
  }
  std::vector<const Vector*> all;
  for (const CodeCandidate& m : f.members)
    for (const Vector& v : m.vectors) all.push_back(&v);
  rep.family_gram_residual = gram_residual(all);
  return rep;
}

BlockScalarReport verify_block_scalar(const SubspaceBasis& s, const CodeFamily& f,
                                      double tol) {
  if (f.members.empty()) throw ValidationError("family has no members");
  if (s.dim_ambient != f.base.dim_ambient)
    throw DimensionError("subspace and family live in different dimensions");

  const size_t member_count = f.members.size();
  const Eigen::Index k_count = static_cast<Eigen::Index>(f.base.vectors.size());
  BlockScalarReport rep;
  rep.tol = tol;
  for (const Matrix& a : s.basis) {
    const double nrm = op_norm(a);
    Complex lambda0(0.0, 0.0);
    for (size_t m = 0; m < member_count; ++m) {
      const CodeCandidate& cand = f.members[m];
      // ||P A P - lambda P|| equals the norm of the compressed k x k matrix
      // C - lambda I because the code vectors are orthonormal.
      Matrix c(k_count, k_count);
      for (Eigen::Index l = 0; l < k_count; ++l) {
        const Vector w = a * cand.vectors[static_cast<size_t>(l)];
        for (Eigen::Index k = 0; k < k_count; ++k)
          c(k, l) = cand.vectors[static_cast<size_t>(k)].dot(w);
      }
      if (nrm > 0.0) c /= nrm;
      const Complex lambda = c.trace() / static_cast<double>(k_count);
      const double residual =
          op_norm(c - lambda * Matrix::Identity(k_count, k_count));
      if (m == 0) {
        lambda0 = lambda;
        rep.lambda.push_back(lambda * nrm);
      }
      const double dev = std::abs(lambda - lambda0);
      rep.max_residual = std::max(rep.max_residual, residual);
      rep.max_lambda_spread = std::max(rep.max_lambda_spread, dev);
      if ((residual > tol || dev > tol) && rep.offending_member < 0)
        rep.offending_member = static_cast<Eigen::Index>(m);
    }
  }
  rep.pass = rep.max_residual <= tol && rep.max_lambda_spread <= tol;
  return rep;
}

double family_gram_residual(int n, int p) {
  const std::vector<SparsePair> vecs = sparse_family(n, p);
  double worst = 0.0;
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = i; j < vecs.size(); ++j) {
      const Complex g = sparse_inner(vecs[i], vecs[j]);
      worst = std::max(worst, std::abs(g - (i == j ? Complex(1.0) : Complex(0.0))));
    }
  return worst;
}

}  // namespace zeclab
