#include "josim/grid.hpp"

#include <cmath>
#include <numbers>

namespace josim {

RadialGrid::RadialGrid(double r_max, std::size_t n_points) : r_max_(r_max) {
  if (!(r_max > 0)) throw std::invalid_argument("grid: r_max must be > 0");
  if (n_points < 3 || n_points % 2 == 0) {
    throw std::invalid_argument("grid: n_points must be odd and >= 3");
  }
  spacing_ = r_max / static_cast<double>(n_points - 1);
  nodes_.resize(n_points);
  weights_.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    nodes_[i] = spacing_ * static_cast<double>(i);
    double simpson;
    if (i == 0 || i + 1 == n_points) {
      simpson = 1.0;
    } else {
      simpson = (i % 2 == 1) ? 4.0 : 2.0;
    }
    weights_[i] = simpson * spacing_ / 3.0 * 4.0 * std::numbers::pi *
                  nodes_[i] * nodes_[i];
  }
}

void check_same_grid(const RadialField& a, const RadialField& b) {
  if (!a.grid || !b.grid || !a.grid->same_as(*b.grid)) {
    throw std::invalid_argument("fields live on different grids");
  }
}

void check_same_grid(const RadialGrid& a, const RadialGrid& b) {
  if (!a.same_as(b)) {
    throw std::invalid_argument("fields live on different grids");
  }
}

Complex integrate_radial(const RadialField& f) {
  Complex sum(0.0);
  const auto& w = f.grid->weights();
  for (std::size_t i = 0; i < f.values.size(); ++i) sum += w[i] * f.values[i];
  return sum;
}

double integrate_radial_real(const RadialGrid& grid,
                             std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument("sample count does not match grid");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    sum += grid.weight(i) * samples[i];
  }
  return sum;
}

Complex inner_product(const RadialField& bra, const RadialField& ket) {
  check_same_grid(bra, ket);
  Complex sum(0.0);
  const auto& w = bra.grid->weights();
  for (std::size_t i = 0; i < bra.values.size(); ++i) {
    sum += w[i] * std::conj(bra.values[i]) * ket.values[i];
  }
  return sum;
}

double field_norm(const RadialField& psi, double n_total) {
  double sum = 0.0;
  const auto& w = psi.grid->weights();
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    sum += w[i] * std::norm(psi.values[i]);
  }
  return n_total * sum;
}

}  // namespace josim
