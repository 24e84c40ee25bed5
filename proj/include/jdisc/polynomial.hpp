#pragma once

#include <vector>

#include "jdisc/types.hpp"

namespace jdisc {

/// coefficient * prod_l z_l^{z_powers[l]} conj(z_l)^{zbar_powers[l]}
struct Monomial {
  cd coefficient;
  std::vector<int> z_powers;
  std::vector<int> zbar_powers;
};

/// Complex polynomial in (z, conj z) on C^n.
class Polynomial {
 public:
  explicit Polynomial(int n = 0) : n_(n) {}
  Polynomial(int n, std::vector<Monomial> terms);

  int dimension() const { return n_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;

  cd operator()(const CVector& z) const;
  Polynomial d_z(int l) const;
  Polynomial d_zbar(int l) const;

  void add(const Monomial& m);

 private:
  int n_;
  std::vector<Monomial> terms_;
};

}  // namespace jdisc
