#include "fmnet/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmnet {
namespace {

constexpr int kMaxOrder = 128;

using cplx = std::complex<double>;

// Pascal triangle up to row 2 * kMaxOrder, as doubles.
const std::vector<std::vector<double>>& binomials() {
  static const auto table = [] {
    std::vector<std::vector<double>> t(2 * kMaxOrder + 1);
    for (std::size_t n = 0; n < t.size(); ++n) {
      t[n].assign(n + 1, 1.0);
      for (std::size_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

inline double binom(int n, int k) {
  return binomials()[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

void require_kind(const Expansion& e, ExpansionKind kind, const char* what) {
  if (e.kind() != kind) throw std::logic_error(what);
}

}  // namespace

Expansion::Expansion(ExpansionKind kind, const Box& box, int order) : kind_(kind), box_(box) {
  if (order < 1 || order > kMaxOrder) throw std::invalid_argument("expansion order out of range");
  scaled_.assign(static_cast<std::size_t>(order) + 1, cplx{});
}

std::complex<double> Expansion::coefficient(int k) const {
  const auto& c = scaled_.at(static_cast<std::size_t>(k));
  const double rho_k = std::pow(box_.half_width, k);
  return kind_ == ExpansionKind::multipole ? c * rho_k : c / rho_k;
}

bool Expansion::is_zero() const noexcept {
  return std::all_of(scaled_.begin(), scaled_.end(), [](cplx c) { return c == cplx{}; });
}

void Expansion::add_source(Vec2 position, double strength) {
  const int p = order();
  const double rho = box_.half_width;
  if (kind_ == ExpansionKind::multipole) {
    const cplx w = (to_complex(position) - to_complex(box_.center)) / rho;
    scaled_[0] += strength;
    cplx wk = 1.0;
    for (int k = 1; k <= p; ++k) {
      wk *= w;
      scaled_[static_cast<std::size_t>(k)] -= strength * wk / static_cast<double>(k);
    }
  } else {
    const cplx d = to_complex(position) - to_complex(box_.center);
    scaled_[0] += strength * std::log(-d);
    const cplx x = rho / d;
    cplx xl = 1.0;
    for (int l = 1; l <= p; ++l) {
      xl *= x;
      scaled_[static_cast<std::size_t>(l)] -= strength * xl / static_cast<double>(l);
    }
  }
}

ComplexField Expansion::evaluate_complex(Vec2 z) const {
  const int p = order();
  const double rho = box_.half_width;
  const cplx w = to_complex(z) - to_complex(box_.center);
  ComplexField out;
  if (kind_ == ExpansionKind::multipole) {
    const cplx x = rho / w;
    cplx s{}, t{};
    for (int k = p; k >= 1; --k) {
      const cplx a = scaled_[static_cast<std::size_t>(k)];
      s = (s + a) * x;
      t = (t + static_cast<double>(k) * a) * x;
    }
    out.value = scaled_[0] * std::log(w) + s;
    out.derivative = (scaled_[0] - t) / w;
  } else {
    const cplx v = w / rho;
    cplx f = scaled_[static_cast<std::size_t>(p)];
    cplx df = static_cast<double>(p) * scaled_[static_cast<std::size_t>(p)];
    for (int l = p - 1; l >= 0; --l) {
      f = f * v + scaled_[static_cast<std::size_t>(l)];
      if (l >= 1) df = df * v + static_cast<double>(l) * scaled_[static_cast<std::size_t>(l)];
    }
    out.value = f;
    out.derivative = df / rho;
  }
  return out;
}

Expansion& Expansion::operator+=(const Expansion& other) {
  if (other.kind_ != kind_ || other.scaled_.size() != scaled_.size() ||
      other.box_.center != box_.center || other.box_.half_width != box_.half_width) {
    throw std::logic_error("cannot add expansions about different boxes");
  }
  for (std::size_t i = 0; i < scaled_.size(); ++i) scaled_[i] += other.scaled_[i];
  return *this;
}

int order_for_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 0.1) {
    throw std::invalid_argument("epsilon must lie in (0, 0.1]");
  }
  const int p = static_cast<int>(std::ceil(std::log2(1.0 / epsilon)));
  return std::clamp(p, 3, kMaxOrder);
}

Expansion p2m(std::span<const PointCharge> charges, const Box& box, int order) {
  Expansion e(ExpansionKind::multipole, box, order);
  for (const auto& c : charges) e.add_source(c.position, c.strength);
  return e;
}

void m2m_accumulate(const Expansion& child, Expansion& parent) {
  require_kind(child, ExpansionKind::multipole, "m2m expects a multipole source");
  require_kind(parent, ExpansionKind::multipole, "m2m expects a multipole target");
  const int p = std::min(child.order(), parent.order());
  const auto a = child.scaled();
  auto b = parent.scaled();
  const double rho_parent = parent.box().half_width;
  const cplx u = (to_complex(child.center()) - to_complex(parent.center())) / rho_parent;
  const double s = child.box().half_width / rho_parent;

  std::vector<cplx> upow(static_cast<std::size_t>(p) + 1);
  std::vector<cplx> as(static_cast<std::size_t>(p) + 1);  // A_k s^k
  upow[0] = 1.0;
  double sk = 1.0;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) upow[static_cast<std::size_t>(k)] = upow[static_cast<std::size_t>(k) - 1] * u;
    as[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] * sk;
    sk *= s;
  }
  b[0] += a[0];
  for (int l = 1; l <= p; ++l) {
    cplx acc = -a[0] * upow[static_cast<std::size_t>(l)] / static_cast<double>(l);
    for (int k = 1; k <= l; ++k) {
      acc += as[static_cast<std::size_t>(k)] * upow[static_cast<std::size_t>(l - k)] * binom(l - 1, k - 1);
    }
    b[static_cast<std::size_t>(l)] += acc;
  }
}

void m2l_accumulate(const Expansion& source, Expansion& target) {
  require_kind(source, ExpansionKind::multipole, "m2l expects a multipole source");
  require_kind(target, ExpansionKind::local, "m2l expects a local target");
  if (!well_separated(source.box(), target.box())) {
    throw std::logic_error("m2l between boxes that are not well-separated");
  }
  const int ps = source.order();
  const int pt = target.order();
  const auto a = source.scaled();
  auto b = target.scaled();
  const cplx z0 = to_complex(source.center()) - to_complex(target.center());
  const cplx xs = -source.box().half_width / z0;
  const cplx xt = target.box().half_width / z0;

  std::vector<cplx> t(static_cast<std::size_t>(ps) + 1);
  cplx xk = 1.0;
  cplx sum_t{};
  for (int k = 1; k <= ps; ++k) {
    xk *= xs;
    t[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] * xk;
    sum_t += t[static_cast<std::size_t>(k)];
  }
  b[0] += a[0] * std::log(-z0) + sum_t;
  cplx xl = 1.0;
  for (int l = 1; l <= pt; ++l) {
    xl *= xt;
    cplx acc = -a[0] / static_cast<double>(l);
    for (int k = 1; k <= ps; ++k) {
      acc += t[static_cast<std::size_t>(k)] * binom(l + k - 1, k - 1);
    }
    b[static_cast<std::size_t>(l)] += xl * acc;
  }
}

void l2l_accumulate(const Expansion& parent, Expansion& child) {
  require_kind(parent, ExpansionKind::local, "l2l expects a local source");
  require_kind(child, ExpansionKind::local, "l2l expects a local target");
  const int p = std::min(parent.order(), child.order());
  std::vector<cplx> c(parent.scaled().begin(), parent.scaled().begin() + p + 1);
  const double rho = parent.box().half_width;
  const cplx delta = (to_complex(child.center()) - to_complex(parent.center())) / rho;
  for (int j = 0; j < p; ++j) {
    for (int k = p - 1; k >= j; --k) {
      c[static_cast<std::size_t>(k)] += delta * c[static_cast<std::size_t>(k) + 1];
    }
  }
  const double ratio = child.box().half_width / rho;
  double rl = 1.0;
  auto b = child.scaled();
  for (int l = 0; l <= p; ++l) {
    b[static_cast<std::size_t>(l)] += c[static_cast<std::size_t>(l)] * rl;
    rl *= ratio;
  }
}

Expansion m2m(const Expansion& child, const Box& parent_box) {
  Expansion out(ExpansionKind::multipole, parent_box, child.order());
  m2m_accumulate(child, out);
  return out;
}

Expansion m2l(const Expansion& source, const Box& target_box) {
  Expansion out(ExpansionKind::local, target_box, source.order());
  m2l_accumulate(source, out);
  return out;
}

Expansion l2l(const Expansion& parent, const Box& child_box) {
  Expansion out(ExpansionKind::local, child_box, parent.order());
  l2l_accumulate(parent, out);
  return out;
}

}  // namespace fmnet
