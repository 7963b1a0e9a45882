#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pullin {

enum class DomainKind { Interval, Mask, Ball };

// Surface area of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2).
double unit_sphere_area(int dim);
// Volume of the d-ball of given radius: unit_sphere_area(d) * R^d / d.
double ball_volume(int dim, double radius);

class DomainSpec;
using DomainPtr = std::shared_ptr<const DomainSpec>;

// Discretized open domain. Three kinds:
//  - Interval(L, n): nodes x_i = (i+1)h on (0, L), h = L/(n+1), zero at 0 and L.
//  - Mask(dim, shape, bitmap, h): cell-centered lattice, cells where bitmap != 0,
//    homogeneous Dirichlet on the mask boundary faces (half-cell distance).
//  - Ball(d, R, n): radial nodes r_j = j*h, h = R/n, j = 0..n-1, zero at r = R.
class DomainSpec {
public:
  static DomainPtr interval(double length, int n);
  static DomainPtr mask(int dim, std::array<int, 3> shape,
                        std::vector<std::uint8_t> bitmap, double spacing);
  static DomainPtr ball(int dim, double radius, int n_radial);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double spacing() const { return spacing_; }
  // Number of unknowns (interior nodes or active cells).
  std::size_t size() const { return volumes_.size(); }
  // Lebesgue measure of the continuum domain the discretization represents.
  double measure() const { return measure_; }
  // Masks can be disconnected; Interval and Ball are always connected.
  bool connected() const { return connected_; }

  double length() const;  // Interval only
  double radius() const;  // Ball only
  const std::vector<double>& radii() const;  // Ball only, node radii

  std::array<int, 3> shape() const;  // Mask only, lattice extents
  // Mask only: active cell index at lattice position, -1 if absent/outside.
  std::int64_t cell_at(int ix, int iy, int iz) const;
  // Mask only: lattice coordinates of an active cell.
  std::array<int, 3> lattice_coords(std::size_t cell) const;
  // Face neighbors of a cell in -x,+x,-y,+y,-z,+z order; -1 marks a Dirichlet
  // boundary face. Interval uses the first two slots; Ball is not supported.
  const std::array<std::int64_t, 6>& neighbors(std::size_t cell) const;

  // Coordinates of the unknown: (x), (x,y), (x,y,z), or (r,0,0) for Ball.
  std::array<double, 3> position(std::size_t cell) const;
  // Quadrature weight of the unknown (h^dim, or the radial shell volume).
  double cell_volume(std::size_t cell) const { return volumes_[cell]; }
  const std::vector<double>& cell_volumes() const { return volumes_; }

private:
  DomainSpec() = default;

  DomainKind kind_ = DomainKind::Interval;
  int dim_ = 1;
  double spacing_ = 0;
  double measure_ = 0;
  bool connected_ = true;
  double extent_ = 0;  // interval length or ball radius
  std::vector<double> volumes_;
  std::vector<double> radii_;
  std::array<int, 3> shape_ = {0, 0, 0};
  std::vector<std::int64_t> lattice_to_cell_;
  std::vector<std::array<int, 3>> cell_coords_;
  std::vector<std::array<std::int64_t, 6>> neighbors_;
};

// Values attached to the unknowns of a domain.
class GridFunction {
public:
  // Empty placeholder state for result structs; not usable until assigned.
  GridFunction() = default;
  GridFunction(DomainPtr domain, std::vector<double> values);

  static GridFunction constant(DomainPtr domain, double value);
  static GridFunction from_function(
      DomainPtr domain,
      const std::function<double(std::array<double, 3>)>& fn);

  const DomainSpec& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  double min() const;
  double max() const;
  double sup_norm() const;
  // Sum of value * cell_volume.
  double integral() const;

private:
  DomainPtr domain_;
  std::vector<double> values_;
};

// Mask of the lattice cells whose centers satisfy the predicate.
DomainPtr mask_from_predicate(
    int dim, std::array<int, 3> shape, double spacing,
    const std::function<bool(std::array<double, 3>)>& inside);

// The ball of the same measure as the domain, centered at the origin.
// n_radial = 0 picks round(measure-equivalent radius / spacing) nodes.
DomainPtr symmetrize_domain(const DomainSpec& domain, int n_radial = 0);
int default_radial_nodes(const DomainSpec& domain);

// Mask bitmap file: header "dim nx [ny [nz]] spacing", then rows of 0/1
// characters, row y=0 first, one block per z-slice.
DomainPtr load_mask(const std::string& path);
void save_mask(const DomainSpec& domain, const std::string& path);

// CSV with header "index,x[,y[,z]],value" (Ball uses "index,r,value").
GridFunction load_grid_function(DomainPtr domain, const std::string& path);
void save_grid_function(const GridFunction& u, const std::string& path);

}  // namespace pullin
