#include "s1fc/lattice.hpp"

namespace s1fc {

QMatrix parse_qmatrix(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_rational(rows[i][j]);
  }
  return m;
}

QMatrix r_s1(const Rational& z) {
  QMatrix m(9, 9);
  const Rational a = (z + 1) * (z + 2), b = z * (z + 1), c = 2 * (z + 1);
  m(0, 0) = a;
  m(8, 8) = a;
  m(1, 1) = b;
  m(1, 3) = c;
  m(2, 2) = (z - 1) * z;
  m(2, 4) = 4 * z;
  m(2, 6) = 2;
  m(3, 1) = c;
  m(3, 3) = b;
  m(4, 2) = z;
  m(4, 4) = z + z * z + 2;
  m(4, 6) = z;
  m(5, 5) = b;
  m(5, 7) = c;
  m(6, 2) = 2;
  m(6, 4) = 4 * z;
  m(6, 6) = (z - 1) * z;
  m(7, 5) = c;
  m(7, 7) = b;
  return m;
}

QMatrix permutation(std::size_t d) {
  QMatrix p(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i * d + j, j * d + i) = 1;
  return p;
}

QMatrix embed_two_site(const QMatrix& a, int i, int j, const std::vector<int>& dims) {
  const int n = static_cast<int>(dims.size());
  const int di = dims[i], dj = dims[j];
  if (a.rows() != static_cast<std::size_t>(di * dj)) throw DimensionMismatch("two-site operator size");
  std::vector<std::size_t> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];
  const std::size_t total = stride[0] * dims[0];
  QMatrix m(total, total);
  for (std::size_t row = 0; row < total; ++row) {
    const int ti = static_cast<int>(row / stride[i] % di), tj = static_cast<int>(row / stride[j] % dj);
    const std::size_t base = row - ti * stride[i] - tj * stride[j];
    for (int x = 0; x < di; ++x)
      for (int y = 0; y < dj; ++y) {
        const Rational& v = a(ti * dj + tj, x * dj + y);
        if (v != 0) m(row, base + x * stride[i] + y * stride[j]) += v;
      }
  }
  return m;
}

bool check_yang_baxter(const QMatrix& r12, const QMatrix& r13, const QMatrix& r23,
                       const std::vector<int>& dims) {
  if (dims.size() != 3) throw DimensionMismatch("Yang-Baxter needs three spaces");
  QMatrix a = embed_two_site(r12, 0, 1, dims), b = embed_two_site(r13, 0, 2, dims),
          c = embed_two_site(r23, 1, 2, dims);
  return a * b * c == c * b * a;
}

bool check_yang_baxter_s1(const Rational& zeta, const Rational& eta) {
  return check_yang_baxter(r_s1(zeta), r_s1(zeta + eta), r_s1(eta), {3, 3, 3});
}

bool check_mixed_rll(const Rational& u, const Rational& v) {
  return check_yang_baxter(r_s1(u - v), lax(2, 1, u), lax(2, 1, v), {3, 3, 2});
}

Sl2Rep sl2_rep(int s2) {
  if (s2 < 1) throw ConfigError("spin must be at least 1/2");
  const std::size_t d = s2 + 1;
  Sl2Rep r{QMatrix(d, d), QMatrix(d, d), QMatrix(d, d)};
  for (int k = 0; k <= s2; ++k) {
    r.h(k, k) = s2 - 2 * k;
    if (k < s2) r.f(k + 1, k) = k + 1;
    if (k > 0) r.e(k - 1, k) = s2 - k + 1;
  }
  return r;
}

QMatrix lax(int aux_spin2, int quantum_spin2, const Rational& u) {
  Sl2Rep a = sl2_rep(aux_spin2), q = sl2_rep(quantum_spin2);
  QMatrix l = kron(a.h, q.h) * Rational(1, 2) + kron(a.e, q.f) + kron(a.f, q.e);
  l += QMatrix::identity(l.rows()) * (u + Rational(1, 2));
  return l;
}

std::size_t MatsubaraData::dimension() const {
  std::size_t d = 1;
  for (int s : spin2) d *= static_cast<std::size_t>(s + 1);
  return d;
}

MatsubaraData MatsubaraData::from_json(const nlohmann::json& j) {
  MatsubaraData md;
  const int L = j.at("L").get<int>();
  const auto& spins = j.at("spins");
  const auto& tau = j.at("tau");
  if (L < 1) throw ConfigError("Matsubara length must be >= 1");
  if (static_cast<int>(spins.size()) != L || static_cast<int>(tau.size()) != L)
    throw ConfigError("spins and tau must have L entries");
  for (int k = 0; k < L; ++k) {
    Rational s = parse_rational(spins[k].is_string() ? spins[k].get<std::string>() : spins[k].dump());
    Rational s2 = 2 * s;
    if (den(s2) != 1 || s2 < 1) throw ConfigError("spin must be a positive half-integer");
    md.spin2.push_back(static_cast<int>(num(s2)));
    md.tau.push_back(parse_rational(tau[k].is_string() ? tau[k].get<std::string>() : tau[k].dump()));
  }
  return md;
}

nlohmann::json MatsubaraData::to_json() const {
  nlohmann::json j;
  j["L"] = length();
  j["spins"] = nlohmann::json::array();
  j["tau"] = nlohmann::json::array();
  for (int k = 0; k < length(); ++k) {
    j["spins"].push_back(to_string(Rational(spin2[k], 2)));
    j["tau"].push_back(to_string(tau[k]));
  }
  return j;
}

QMatrix AuxOperator::trace() const {
  QMatrix t(quantum_dim(), quantum_dim());
  for (int a = 0; a < aux_dim; ++a) t += (*this)(a, a);
  return t;
}

QMatrix AuxOperator::full() const {
  const std::size_t d = quantum_dim();
  QMatrix m(aux_dim * d, aux_dim * d);
  for (int a = 0; a < aux_dim; ++a)
    for (int b = 0; b < aux_dim; ++b) m.set_block(a * d, b * d, (*this)(a, b));
  return m;
}

AuxOperator monodromy(const Rational& lambda, const MatsubaraData& md) {
  AuxOperator m{2, {}};
  for (int k = 0; k < 4; ++k) m.blocks.push_back(QMatrix::identity(1) * Rational(k % 3 == 0 ? 1 : 0));
  for (int k = 0; k < md.length(); ++k) {
    const std::size_t q = md.spin2[k] + 1;
    QMatrix l = lax(1, md.spin2[k], lambda - md.tau[k]);
    AuxOperator next{2, {}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        QMatrix acc(m.quantum_dim() * q, m.quantum_dim() * q);
        for (int c = 0; c < 2; ++c) acc += kron(m(a, c), l.block(c * q, b * q, q, q));
        next.blocks.push_back(std::move(acc));
      }
    m = std::move(next);
  }
  return m;
}

QMatrix transfer(const Rational& lambda, const MatsubaraData& md) { return monodromy(lambda, md).trace(); }

QMatrix fusion_v() {
  QMatrix v(4, 3);
  v(0, 0) = 1;
  v(1, 1) = 1;
  v(2, 1) = 1;
  v(3, 2) = 1;
  return v;
}

QMatrix fusion_w() {
  QMatrix w(3, 4);
  w(0, 0) = 1;
  w(1, 1) = Rational(1, 2);
  w(1, 2) = Rational(1, 2);
  w(2, 3) = 1;
  return w;
}

QMatrix fusion_projector(int n) {
  QMatrix p1 = fusion_v() * fusion_w(), p = QMatrix::identity(1);
  for (int j = 0; j < n; ++j) p = kron(p, p1);
  return p;
}

namespace {

// A_{(a1 a2),(b1 b2)} = X_{a1 b1} Y_{a2 b2} (quantum product).
AuxOperator aux_tensor(const AuxOperator& x, const AuxOperator& y) {
  const int n = x.aux_dim * y.aux_dim;
  AuxOperator a{n, std::vector<QMatrix>(n * n)};
  for (int a1 = 0; a1 < x.aux_dim; ++a1)
    for (int a2 = 0; a2 < y.aux_dim; ++a2)
      for (int b1 = 0; b1 < x.aux_dim; ++b1)
        for (int b2 = 0; b2 < y.aux_dim; ++b2)
          a(a1 * y.aux_dim + a2, b1 * y.aux_dim + b2) = x(a1, b1) * y(a2, b2);
  return a;
}

// L (x) Id_q with L acting on the aux space only.
AuxOperator sandwich(const QMatrix& w, const AuxOperator& a, const QMatrix& v) {
  const int n = static_cast<int>(w.rows()), m = static_cast<int>(v.cols());
  const std::size_t d = a.quantum_dim();
  AuxOperator out{n, {}};
  if (n != m) throw DimensionMismatch("sandwich must be square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      QMatrix acc(d, d);
      for (int c = 0; c < a.aux_dim; ++c)
        for (int e = 0; e < a.aux_dim; ++e) {
          Rational s = w(i, c) * v(e, j);
          if (s != 0) acc += a(c, e) * s;
        }
      out.blocks.push_back(std::move(acc));
    }
  return out;
}

}  // namespace

QMatrix embed_aux(const AuxOperator& t, int pos, const std::vector<int>& aux_dims) {
  std::size_t before = 1, after = 1;
  for (int k = 0; k < pos; ++k) before *= aux_dims[k];
  for (std::size_t k = pos + 1; k < aux_dims.size(); ++k) after *= aux_dims[k];
  const std::size_t n = before * t.aux_dim * after * t.quantum_dim();
  QMatrix m(n, n);
  for (int a = 0; a < t.aux_dim; ++a)
    for (int b = 0; b < t.aux_dim; ++b) {
      if (t(a, b).is_zero()) continue;
      QMatrix e(t.aux_dim, t.aux_dim);
      e(a, b) = 1;
      m += kron(kron(kron(QMatrix::identity(before), e), QMatrix::identity(after)), t(a, b));
    }
  return m;
}

AuxOperator fused_monodromy(const Rational& lambda, const MatsubaraData& md) {
  AuxOperator a = aux_tensor(monodromy(lambda - Rational(1, 2), md), monodromy(lambda + Rational(1, 2), md));
  return sandwich(fusion_w(), a, fusion_v());
}

QMatrix fused_transfer(const Rational& lambda, const MatsubaraData& md) {
  return fused_monodromy(lambda, md).trace();
}

bool check_fusion(const std::vector<Rational>& lambdas, const MatsubaraData& md) {
  const int n = static_cast<int>(lambdas.size());
  const std::size_t d = md.dimension();
  std::vector<int> aux2(2 * n, 2), aux3(n, 3);
  std::size_t pow3 = 1;
  for (int j = 0; j < n; ++j) pow3 *= 3;
  QMatrix a = QMatrix::identity((std::size_t(1) << (2 * n)) * d), fused = QMatrix::identity(pow3 * d);
  for (int j = 0; j < n; ++j) {
    a = a * embed_aux(monodromy(lambdas[j] - Rational(1, 2), md), 2 * j, aux2);
    a = a * embed_aux(monodromy(lambdas[j] + Rational(1, 2), md), 2 * j + 1, aux2);
    fused = fused * embed_aux(fused_monodromy(lambdas[j], md), j, aux3);
  }
  QMatrix p = kron(fusion_projector(n), QMatrix::identity(d));
  QMatrix v = QMatrix::identity(1), w = QMatrix::identity(1);
  for (int j = 0; j < n; ++j) {
    v = kron(v, fusion_v());
    w = kron(w, fusion_w());
  }
  v = kron(v, QMatrix::identity(d));
  w = kron(w, QMatrix::identity(d));
  QMatrix ap = a * p;
  return ap == p * ap && ap == v * fused * w;
}

namespace {

Rational central_value(const QMatrix& m) {
  Rational c;
  if (!m.is_scalar(&c)) throw CalibrationFailure("T(λ-1/2)T(λ+1/2) - 𝐓(λ) is not central");
  return c;
}

}  // namespace

Rational quantum_determinant(const Rational& lambda, const MatsubaraData& md) {
  QMatrix tt = transfer(lambda - Rational(1, 2), md) * transfer(lambda + Rational(1, 2), md);
  return central_value(tt - fused_transfer(lambda, md));
}

bool check_eigen_relation(const MatsubaraData& md, const std::vector<Rational>& lambdas) {
  for (const Rational& l : lambdas) {
    Rational delta = quantum_determinant(l, md);
    Rational product(1);
    for (int k = 0; k < md.length(); ++k)
      product *= quantum_determinant(l, MatsubaraData{{md.spin2[k]}, {md.tau[k]}});
    if (delta != product) return false;
  }
  return true;
}

bool check_commute(const MatsubaraData& md, const Rational& lambda, const Rational& mu) {
  QMatrix t1 = transfer(lambda, md), t2 = transfer(mu, md);
  QMatrix f1 = fused_transfer(lambda, md), f2 = fused_transfer(mu, md);
  return commutator(t1, t2).is_zero() && commutator(f1, t2).is_zero() && commutator(f1, f2).is_zero();
}

}  // namespace s1fc
