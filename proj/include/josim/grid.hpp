#pragma once

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace josim {

using Complex = std::complex<double>;

// Uniform radial grid on [0, r_max] with composite-Simpson quadrature
// weights for integrals of the form  integral f(r) 4*pi*r^2 dr.
// n_points must be odd (>= 3). The r = 0 node carries zero weight through
// the 4*pi*r^2 factor.
class RadialGrid {
 public:
  RadialGrid(double r_max, std::size_t n_points);

  double r_max() const { return r_max_; }
  std::size_t size() const { return nodes_.size(); }
  double spacing() const { return spacing_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  bool same_as(const RadialGrid& other) const {
    return this == &other ||
           (r_max_ == other.r_max_ && nodes_.size() == other.nodes_.size());
  }

 private:
  double r_max_;
  double spacing_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Complex-valued function sampled on a radial grid.
struct RadialField {
  GridPtr grid;
  std::vector<Complex> values;

  RadialField() = default;
  explicit RadialField(GridPtr g)
      : grid(std::move(g)), values(grid->size(), Complex(0.0)) {}

  std::size_t size() const { return values.size(); }
};

void check_same_grid(const RadialField& a, const RadialField& b);
void check_same_grid(const RadialGrid& a, const RadialGrid& b);

// Sum of weights * f(node); the 3D volume integral of a spherically
// symmetric integrand.
Complex integrate_radial(const RadialField& f);
double integrate_radial_real(const RadialGrid& grid,
                             std::span<const double> samples);

// integral of bra^* ket d^3r
Complex inner_product(const RadialField& bra, const RadialField& ket);

// Atom number carried by psi: integral N |psi|^2 d^3r.
double field_norm(const RadialField& psi, double n_total);

}  // namespace josim
