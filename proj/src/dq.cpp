#include "dqra/dq.hpp"

#include <string>

#include "dqra/error.hpp"

namespace dqra {

namespace {

std::string pair_text(const Poset& p, int x, int y) {
  return "(" + p.label(x) + "," + p.label(y) + ")";
}

void validate_hypotheses(const Poset& base, const FinRel& E, const Endomap& alpha,
                         const Endomap& beta) {
  const int n = base.size();
  if (E.size() != n || alpha.size() != n || beta.size() != n) {
    throw Error(Error::Kind::Dimension, "base, E, alpha, beta must share one carrier size");
  }

  // alpha: bijective and order-preserving both ways.
  if (!alpha.is_bijection()) {
    throw BuildError(BuildFault::NotOrderAutomorphism, "alpha is not a bijection");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (base.leq(x, y) != base.leq(alpha(x), alpha(y))) {
        throw BuildError(BuildFault::NotOrderAutomorphism,
                         "alpha does not preserve the order at " + pair_text(base, x, y));
      }
    }
  }

  // beta: order-reversing both ways ...
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (base.leq(x, y) != base.leq(beta(y), beta(x))) {
        throw BuildError(BuildFault::BetaNotDualAutomorphism,
                         "beta does not reverse the order at " + pair_text(base, x, y));
      }
    }
  }
  // ... compatible with alpha: beta = alpha . beta . alpha, pointwise
  // beta(x) = alpha(beta(alpha(x))) ...
  for (int x = 0; x < n; ++x) {
    if (beta(x) != alpha(beta(alpha(x)))) {
      throw BuildError(BuildFault::AbaConditionFailed,
                       "beta and alpha.beta.alpha differ at " + base.label(x));
    }
  }
  // ... and self-inverse (which forces bijectivity).
  if (!(map_compose(beta, beta) == Endomap::identity(n))) {
    int w = 0;
    while (w + 1 < n && beta(beta(w)) == w) ++w;
    throw BuildError(BuildFault::BetaNotSelfInverse,
                     "beta.beta is not the identity at " + base.label(w));
  }

  // Graphs of both maps must lie inside E.
  for (int x = 0; x < n; ++x) {
    if (!E.at(x, alpha(x))) {
      throw BuildError(BuildFault::GammaNotInsideE,
                       "graph of alpha leaves E at " + pair_text(base, x, alpha(x)));
    }
    if (!E.at(x, beta(x))) {
      throw BuildError(BuildFault::GammaNotInsideE,
                       "graph of beta leaves E at " + pair_text(base, x, beta(x)));
    }
  }

}

}  // namespace

ConcreteDqRA ConcreteDqRA::build(const Poset& base, const FinRel& E, const Endomap& alpha,
                                 const Endomap& beta, std::size_t cap) {
  validate_hypotheses(base, E, alpha, beta);
  TwistedOrder order = twisted_order(base, E);  // validates E as well
  ConcreteDqRA a;
  try {
    a.lattice_ = enumerate_upsets(order, cap);
  } catch (const CapacityError& e) {
    throw BuildError(BuildFault::CarrierCapExceeded, e.what());
  }
  a.finish(base, E, alpha, beta);
  return a;
}

ConcreteDqRA ConcreteDqRA::build(const Poset& base, const FinRel& E, const Endomap& alpha,
                                 const Endomap& beta, const UpSetLattice& carrier) {
  validate_hypotheses(base, E, alpha, beta);
  if (!(carrier.order().base() == base) || !(carrier.order().E() == E)) {
    throw Error(Error::Kind::Validation, "adopted carrier was enumerated for a different system");
  }
  ConcreteDqRA a;
  a.lattice_ = carrier;
  a.finish(base, E, alpha, beta);
  return a;
}

void ConcreteDqRA::finish(const Poset& base, const FinRel& E, const Endomap& alpha,
                          const Endomap& beta) {
  const int n = base.size();
  base_ = base;
  E_ = E;
  alpha_ = alpha;
  beta_ = beta;
  alpha_inv_ = alpha.inverse();
  one_ = base.leq();
  // zero = alpha . (complement of order)^converse; the hypotheses force the
  // two composition orders to agree, which we assert rather than trust.
  const FinRel co = converse(complement_in(base.leq(), FinRel::full(n)));
  const FinRel z_left = graph_compose(alpha_, co);
  const FinRel z_right = graph_compose(co, alpha_);
  if (!(z_left == z_right)) {
    throw Error(Error::Kind::Build, "internal: the two zero formulas disagree");
  }
  zero_ = z_left & E;
  periodicity_ = map_order(alpha);
}

FinRel ConcreteDqRA::complement(const FinRel& r) const { return complement_in(r, E_); }

void ConcreteDqRA::require_carrier(const FinRel& r, const char* op) const {
  if (!lattice_.index_of(r)) {
    throw Error(Error::Kind::NonCarrier,
                std::string(op) + ": argument is not a carrier element (not an up-set)");
  }
}

FinRel ConcreteDqRA::fuse(const FinRel& r, const FinRel& s) const {
  require_carrier(r, "fuse");
  require_carrier(s, "fuse");
  return compose(r, s);
}

// r \ s = complement( r^converse . complement(s) ), complements relative to E.
FinRel ConcreteDqRA::residual_left(const FinRel& r, const FinRel& s) const {
  require_carrier(r, "residual_left");
  require_carrier(s, "residual_left");
  return complement(compose(converse(r), complement(s)) & E_);
}

// r / s = complement( complement(r) . s^converse ).
FinRel ConcreteDqRA::residual_right(const FinRel& r, const FinRel& s) const {
  require_carrier(r, "residual_right");
  require_carrier(s, "residual_right");
  return complement(compose(complement(r), converse(s)) & E_);
}

// ~r = complement(r)^converse . alpha, kept inside E by the hypotheses.
FinRel ConcreteDqRA::tilde(const FinRel& r) const {
  require_carrier(r, "tilde");
  return graph_compose(converse(complement(r)), alpha_);
}

// -r = alpha . complement(r)^converse.
FinRel ConcreteDqRA::minus(const FinRel& r) const {
  require_carrier(r, "minus");
  return graph_compose(alpha_, converse(complement(r)));
}

// r' = alpha . beta . complement(r) . beta.
FinRel ConcreteDqRA::prime(const FinRel& r) const {
  require_carrier(r, "prime");
  FinRel t = graph_compose(beta_, complement(r));
  t = graph_compose(alpha_, t);
  return graph_compose(t, beta_);
}

FinRel ConcreteDqRA::plus(const FinRel& r, const FinRel& s) const {
  return tilde(fuse(minus(s), minus(r)));
}

// Closed forms for iterated involutions: with c = complement(r),
//   tilde^n r = alpha^(-(n-1)/2) . c^converse . alpha^((n+1)/2)   (n odd)
//   tilde^n r = alpha^(-n/2) . r . alpha^(n/2)                    (n even)
// and minus^n mirrors them with the alpha powers swapped.
FinRel ConcreteDqRA::tilde_n(const FinRel& r, int n) const {
  if (n < 0) throw Error(Error::Kind::Domain, "involution power must be >= 0");
  if (n % 2 == 0) {
    const Endomap left = map_power(alpha_inv_, n / 2);
    const Endomap right = map_power(alpha_, n / 2);
    return graph_compose(graph_compose(left, r), right);
  }
  const Endomap left = map_power(alpha_inv_, (n - 1) / 2);
  const Endomap right = map_power(alpha_, (n + 1) / 2);
  return graph_compose(graph_compose(left, converse(complement(r))), right);
}

FinRel ConcreteDqRA::minus_n(const FinRel& r, int n) const {
  if (n < 0) throw Error(Error::Kind::Domain, "involution power must be >= 0");
  if (n % 2 == 0) {
    const Endomap left = map_power(alpha_, n / 2);
    const Endomap right = map_power(alpha_inv_, n / 2);
    return graph_compose(graph_compose(left, r), right);
  }
  const Endomap left = map_power(alpha_, (n + 1) / 2);
  const Endomap right = map_power(alpha_inv_, (n - 1) / 2);
  return graph_compose(graph_compose(left, converse(complement(r))), right);
}

int ConcreteDqRA::periodicity() const { return periodicity_; }

AbstractDqRA ConcreteDqRA::to_abstract(const std::string& name) const {
  const UpSetLattice& lat = lattice_;
  const int m = lat.size();
  AbstractDqRA out;
  out.size = m;
  out.name = name;
  out.leq = lat.inclusion_order();
  out.mult.assign(m, std::vector<int>(m, -1));
  out.tilde.resize(m);
  out.minus.resize(m);
  out.prime.resize(m);
  out.labels.resize(m);

  auto idx = [&](const FinRel& r, const char* op) {
    auto i = lat.index_of(r);
    if (!i) {
      throw Error(Error::Kind::NonCarrier, std::string("internal: ") + op + " left the carrier");
    }
    return *i;
  };

  for (int i = 0; i < m; ++i) {
    const FinRel& ri = lat.at(i);
    out.labels[i] = format_relation(ri, base_.labels());
    out.tilde[i] = idx(tilde(ri), "tilde");
    out.minus[i] = idx(minus(ri), "minus");
    out.prime[i] = idx(prime(ri), "prime");
    for (int j = 0; j < m; ++j) {
      out.mult[i][j] = idx(fuse(ri, lat.at(j)), "fuse");
    }
  }
  out.one = idx(one_, "one");
  out.zero = idx(zero_, "zero");
  return out;
}

}  // namespace dqra
