#include "jdisc/polynomial.hpp"

#include <algorithm>
#include <numeric>

namespace jdisc {

Polynomial::Polynomial(int n, std::vector<Monomial> terms) : n_(n) {
  for (auto& m : terms) add(m);
}

void Polynomial::add(const Monomial& m) {
  if (static_cast<int>(m.z_powers.size()) != n_ || static_cast<int>(m.zbar_powers.size()) != n_)
    throw InvalidArgument("monomial exponent vectors must have length n");
  for (int j = 0; j < n_; ++j)
    if (m.z_powers[j] < 0 || m.zbar_powers[j] < 0) throw InvalidArgument("negative exponent in monomial");
  if (m.coefficient == cd(0.0)) return;
  for (auto& t : terms_)
    if (t.z_powers == m.z_powers && t.zbar_powers == m.zbar_powers) {
      t.coefficient += m.coefficient;
      return;
    }
  terms_.push_back(m);
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_)
    d = std::max(d, std::accumulate(t.z_powers.begin(), t.z_powers.end(), 0) +
                        std::accumulate(t.zbar_powers.begin(), t.zbar_powers.end(), 0));
  return d;
}

cd Polynomial::operator()(const CVector& z) const {
  cd sum = 0.0;
  for (const auto& t : terms_) {
    cd v = t.coefficient;
    for (int l = 0; l < n_; ++l) {
      for (int p = 0; p < t.z_powers[l]; ++p) v *= z(l);
      const cd zb = std::conj(z(l));
      for (int p = 0; p < t.zbar_powers[l]; ++p) v *= zb;
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::d_z(int l) const {
  Polynomial out(n_);
  for (const auto& t : terms_)
    if (t.z_powers[l] > 0) {
      Monomial m = t;
      m.coefficient *= static_cast<double>(m.z_powers[l]);
      --m.z_powers[l];
      out.add(m);
    }
  return out;
}

Polynomial Polynomial::d_zbar(int l) const {
  Polynomial out(n_);
  for (const auto& t : terms_)
    if (t.zbar_powers[l] > 0) {
      Monomial m = t;
      m.coefficient *= static_cast<double>(m.zbar_powers[l]);
      --m.zbar_powers[l];
      out.add(m);
    }
  return out;
}

}  // namespace jdisc
