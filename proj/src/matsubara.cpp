#include "s1fc/matsubara.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace s1fc {

std::size_t max_dimension() {
  if (const char* env = std::getenv("S1FC_MAX_DIM")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 6561;
}

namespace {

constexpr std::size_t kExactCharpolyDim = 81;

Mpfr ten_pow(int e) { return boost::multiprecision::pow(Mpfr(10), e); }

std::vector<Mpfr> to_mpfr_vec(const std::vector<Rational>& v) {
  std::vector<Mpfr> out;
  for (const auto& x : v) out.push_back(to_mpfr(x));
  return out;
}

std::vector<Mpfr> matvec(const Matrix<Mpfr>& a, const std::vector<Mpfr>& v) {
  std::vector<Mpfr> out(a.rows(), Mpfr(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) out[i] += a(i, j) * v[j];
  return out;
}

Mpfr max_abs(const std::vector<Mpfr>& v) {
  Mpfr m = 0;
  for (const auto& x : v) m = std::max(m, Mpfr(abs(x)));
  return m;
}

std::vector<Rational> single_kernel_vector(const QMatrix& a) {
  auto ker = nullspace(a);
  if (ker.size() != 1) throw DegenerateDominantEigenvalue("dominant eigenspace has dimension " + std::to_string(ker.size()));
  return ker[0];
}

// Power iteration with a residual stopping rule.
std::pair<Mpfr, std::vector<Mpfr>> power_iteration(const Matrix<Mpfr>& a, unsigned digits) {
  const std::size_t n = a.rows();
  std::vector<Mpfr> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Mpfr(1) + Mpfr(static_cast<long>(i % 7)) / 10;
  const Mpfr tol = ten_pow(-static_cast<int>(digits) - 5);
  Mpfr theta = 0;
  for (int it = 0; it < 200000; ++it) {
    std::vector<Mpfr> w = matvec(a, v);
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (abs(v[i]) > abs(v[k])) k = i;
    theta = w[k] / v[k];
    Mpfr res = 0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, Mpfr(abs(w[i] - theta * v[i])));
    Mpfr scale = max_abs(w);
    if (scale == 0) throw ZeroEigenvalue("transfer matrix annihilates the start vector");
    for (auto& x : w) x /= scale;
    v = std::move(w);
    if (res <= tol * abs(theta) * max_abs(v) * scale) return {theta, v};
  }
  throw DegenerateDominantEigenvalue("power iteration did not converge (no spectral gap)");
}

}  // namespace

Mpfr SpectralState::residual() const {
  Matrix<Mpfr> t = to_mpfr_matrix(transfer(0, md));
  Mpfr r = 0;
  auto side = [&](const Matrix<Mpfr>& m, const std::vector<Mpfr>& v) {
    std::vector<Mpfr> w = matvec(m, v);
    Mpfr e = 0;
    for (std::size_t i = 0; i < v.size(); ++i) e = std::max(e, Mpfr(abs(w[i] - eigenvalue * v[i])));
    return e / max_abs(v);
  };
  r = std::max(side(t, right), side(t.transpose(), left));
  return r;
}

SpectralState dominant_state(const MatsubaraData& md, unsigned digits) {
  const std::size_t dim = md.dimension();
  if (dim > max_dimension())
    throw DimensionTooLarge("Matsubara dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(max_dimension()));
  PrecisionScope scope(digits + 30);
  SpectralState st;
  st.md = md;
  st.digits = digits;
  const QMatrix t0 = transfer(0, md);
  Rational c;
  if (t0.is_scalar(&c)) {
    st.method = "scalar";
    st.eigenvalue_exact = c;
    st.right_exact.assign(dim, Rational(0));
    st.right_exact[0] = 1;
    st.left_exact = st.right_exact;
  } else if (dim <= kExactCharpolyDim) {
    auto factors = squarefree_factorization(charpoly(t0));
    struct Root {
      std::complex<long double> z;
      int mult;
      std::size_t factor;
    };
    std::vector<Root> roots;
    for (std::size_t f = 0; f < factors.size(); ++f)
      for (auto z : approximate_roots(factors[f].first)) roots.push_back({z, factors[f].second, f});
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return std::abs(a.z) > std::abs(b.z); });
    const Root& top = roots.at(0);
    const long double mod = std::abs(top.z);
    if (roots.size() > 1 && std::abs(roots[1].z) >= mod * (1 - 1e-12L))
      throw DegenerateDominantEigenvalue("two eigenvalues share the maximal modulus");
    if (std::abs(top.z.imag()) > 1e-12L * mod)
      throw DegenerateDominantEigenvalue("dominant eigenvalue is not real");
    if (top.mult > 1)
      throw DegenerateDominantEigenvalue("dominant eigenvalue has multiplicity " + std::to_string(top.mult));
    const UPoly& f = factors[top.factor].first;
    Mpfr x = refine_real_root(f, Mpfr(static_cast<double>(top.z.real())));
    const Mpfr eps = ten_pow(-static_cast<int>(digits) - 5) * std::max(Mpfr(1), Mpfr(abs(x)));
    Rational lo = decimal_to_rational(Mpfr(x - eps).str(digits + 25, std::ios_base::scientific));
    Rational hi = decimal_to_rational(Mpfr(x + eps).str(digits + 25, std::ios_base::scientific));
    Rational flo = upoly_eval(f, lo), fhi = upoly_eval(f, hi);
    if (auto q = rational_root_near(f, x, digits + 10)) {
      st.method = "exact";
      st.eigenvalue_exact = *q;
      QMatrix shifted = t0 - QMatrix::identity(dim) * *q;
      st.right_exact = single_kernel_vector(shifted);
      st.left_exact = single_kernel_vector(shifted.transpose());
    } else {
      if ((flo < 0) == (fhi < 0) || flo == 0 || fhi == 0)
        throw std::runtime_error("could not certify the dominant root by a sign change");
      st.method = "algebraic";
      st.eigenvalue = x;
      Matrix<Mpfr> shifted = to_mpfr_matrix(t0);
      for (std::size_t i = 0; i < dim; ++i) shifted(i, i) -= x;
      st.right = nullspace_mpfr(shifted);
      st.left = nullspace_mpfr(shifted.transpose());
    }
  } else {
    st.method = "power-iteration";
    Matrix<Mpfr> t = to_mpfr_matrix(t0);
    auto [theta, v] = power_iteration(t, digits);
    auto [theta_l, w] = power_iteration(t.transpose(), digits);
    st.eigenvalue = theta;
    st.right = std::move(v);
    st.left = std::move(w);
  }
  if (st.exact()) {
    st.eigenvalue = to_mpfr(*st.eigenvalue_exact);
    st.right = to_mpfr_vec(st.right_exact);
    st.left = to_mpfr_vec(st.left_exact);
  }
  if (st.residual() > ten_pow(-static_cast<int>(digits)) * std::max(Mpfr(1), Mpfr(abs(st.eigenvalue))))
    throw std::runtime_error("eigenpair residual exceeds the requested precision");
  return st;
}

QMatrix global_generator(int n, const QMatrix& x) {
  const std::size_t d = x.rows();
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= d;
  QMatrix g(total, total);
  for (int j = 0; j < n; ++j) {
    QMatrix t = QMatrix::identity(1);
    for (int k = 0; k < n; ++k) t = kron(t, k == j ? x : QMatrix::identity(d));
    g += t;
  }
  return g;
}

bool LocalOperator::sl2_invariant() const {
  Sl2Rep r = sl2_rep(2);
  for (const QMatrix* x : {&r.h, &r.e, &r.f})
    if (!commutator(m, global_generator(n, *x)).is_zero()) return false;
  return true;
}

LocalOperator LocalOperator::identity(int n) {
  std::size_t d = 1;
  for (int k = 0; k < n; ++k) d *= 3;
  return {n, QMatrix::identity(d)};
}

LocalOperator build_ss_operator(int n) {
  if (n < 2) throw ConfigError("ss operator needs n >= 2");
  Sl2Rep r = sl2_rep(2);
  QMatrix mid = QMatrix::identity(1);
  for (int k = 0; k < n - 2; ++k) mid = kron(mid, QMatrix::identity(3));
  QMatrix m = kron(kron(r.h, mid), r.h) * Rational(1, 2) + kron(kron(r.e, mid), r.f) + kron(kron(r.f, mid), r.e);
  return {n, m};
}

LocalOperator LocalOperator::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon != std::string::npos && spec[0] != '[') {
    std::string kind = spec.substr(0, colon);
    int n = std::stoi(spec.substr(colon + 1));
    if (n < 1) throw ConfigError("operator length must be positive");
    if (kind == "id") return identity(n);
    if (kind == "ss") return build_ss_operator(n);
    throw ConfigError("unknown builtin operator: " + kind);
  }
  nlohmann::json j;
  if (!spec.empty() && spec[0] == '[') {
    j = nlohmann::json::parse(spec);
  } else {
    std::ifstream in(spec);
    if (!in) throw ConfigError("cannot open operator file: " + spec);
    j = nlohmann::json::parse(in);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j) {
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    rows.push_back(std::move(r));
  }
  QMatrix m = parse_qmatrix(rows);
  int n = 0;
  std::size_t d = 1;
  while (d < m.rows()) {
    d *= 3;
    ++n;
  }
  if (d != m.rows() || m.rows() != m.cols() || n == 0) throw ConfigError("operator must be 3^n x 3^n");
  return {n, m};
}

namespace {

struct Fused {
  std::vector<AuxOperator> mono;
  std::vector<QMatrix> transfer;
};

Fused fused_data(const std::vector<Rational>& lambdas, const MatsubaraData& md) {
  Fused f;
  for (const auto& l : lambdas) {
    f.mono.push_back(fused_monodromy(l, md));
    f.transfer.push_back(f.mono.back().trace());
  }
  return f;
}

Expectation contract(const QMatrix& x, const std::vector<QMatrix>& transfers, const SpectralState& st,
                     unsigned digits) {
  Expectation out;
  if (st.exact()) {
    auto bra = [&](const QMatrix& m) {
      Rational s(0);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (m(i, j) != 0) s += st.left_exact[i] * m(i, j) * st.right_exact[j];
      return s;
    };
    Rational norm(0);
    for (std::size_t i = 0; i < st.right_exact.size(); ++i) norm += st.left_exact[i] * st.right_exact[i];
    Rational denom = norm;
    for (const auto& t : transfers) {
      Rational ev = bra(t) / norm;
      if (ev == 0) throw ZeroEigenvalue("fused transfer eigenvalue vanishes");
      denom *= ev;
    }
    out.exact = bra(x) / denom;
    out.value = make_bigfloat(*out.exact, digits);
    return out;
  }
  PrecisionScope scope(digits + 30);
  auto bra = [&](const QMatrix& m) {
    Mpfr s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) s += st.left[i] * to_mpfr(m(i, j)) * st.right[j];
    return s;
  };
  Mpfr norm = 0;
  for (std::size_t i = 0; i < st.right.size(); ++i) norm += st.left[i] * st.right[i];
  Mpfr denom = norm;
  const Mpfr tiny = ten_pow(-static_cast<int>(digits));
  for (const auto& t : transfers) {
    Mpfr ev = bra(t) / norm;
    if (abs(ev) <= tiny) throw ZeroEigenvalue("fused transfer eigenvalue vanishes");
    denom *= ev;
  }
  out.value = BigFloat{bra(x) / denom, digits};
  return out;
}

void check_operator(const LocalOperator& o, const std::vector<Rational>& lambdas) {
  if (static_cast<int>(lambdas.size()) != o.n) throw DimensionMismatch("need one λ per operator site");
}

}  // namespace

Expectation direct_expectation(const LocalOperator& o, const std::vector<Rational>& lambdas,
                               const SpectralState& st, unsigned digits) {
  check_operator(o, lambdas);
  Fused f = fused_data(lambdas, st.md);
  const std::size_t d = st.md.dimension(), total = o.m.rows();
  const int n = o.n;
  QMatrix x(d, d);
  std::vector<int> ii(n), jj(n);
  for (std::size_t row = 0; row < total; ++row)
    for (std::size_t col = 0; col < total; ++col) {
      const Rational& w = o.m(col, row);  // O_{JI} with I = row, J = col
      if (w == 0) continue;
      std::size_t a = row, b = col;
      for (int k = n - 1; k >= 0; --k) {
        ii[k] = static_cast<int>(a % 3);
        jj[k] = static_cast<int>(b % 3);
        a /= 3;
        b /= 3;
      }
      QMatrix p = f.mono[0](ii[0], jj[0]);
      for (int k = 1; k < n; ++k) p = p * f.mono[k](ii[k], jj[k]);
      x += p * w;
    }
  return contract(x, f.transfer, st, digits);
}

Expectation direct_expectation_bruteforce(const LocalOperator& o, const std::vector<Rational>& lambdas,
                                          const SpectralState& st, unsigned digits) {
  check_operator(o, lambdas);
  Fused f = fused_data(lambdas, st.md);
  const std::size_t d = st.md.dimension(), a = o.m.rows();
  std::vector<int> aux(o.n, 3);
  QMatrix m = QMatrix::identity(a * d);
  for (int k = 0; k < o.n; ++k) m = multiply_serial(m, embed_aux(f.mono[k], k, aux));
  m = multiply_serial(m, kron(o.m, QMatrix::identity(d)));
  QMatrix y(d, d);
  for (std::size_t i = 0; i < a; ++i) y += m.block(i * d, i * d, d, d);
  return contract(y, f.transfer, st, digits);
}

}  // namespace s1fc
