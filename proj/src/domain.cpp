#include "pullin/domain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "pullin/errors.hpp"

namespace pullin {

double unit_sphere_area(int dim) {
  if (dim < 1) throw ConfigError("unit_sphere_area: dim must be >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double ball_volume(int dim, double radius) {
  return unit_sphere_area(dim) * std::pow(radius, dim) / dim;
}

DomainPtr DomainSpec::interval(double length, int n) {
  if (!(length > 0)) throw ConfigError("interval: length must be positive");
  if (n < 1) throw ConfigError("interval: need at least one interior node");
  auto d = std::shared_ptr<DomainSpec>(new DomainSpec());
  d->kind_ = DomainKind::Interval;
  d->dim_ = 1;
  d->extent_ = length;
  d->spacing_ = length / (n + 1);
  d->measure_ = length;
  d->volumes_.assign(n, d->spacing_);
  d->neighbors_.resize(n, {-1, -1, -1, -1, -1, -1});
  for (int i = 0; i < n; ++i) {
    d->neighbors_[i][0] = (i > 0) ? i - 1 : -1;
    d->neighbors_[i][1] = (i + 1 < n) ? i + 1 : -1;
  }
  return d;
}

DomainPtr DomainSpec::mask(int dim, std::array<int, 3> shape,
                           std::vector<std::uint8_t> bitmap, double spacing) {
  if (dim < 1 || dim > 3) throw ConfigError("mask: dim must be 1, 2 or 3");
  if (!(spacing > 0)) throw ConfigError("mask: spacing must be positive");
  for (int k = dim; k < 3; ++k) shape[k] = 1;
  for (int k = 0; k < dim; ++k)
    if (shape[k] < 1) throw ConfigError("mask: shape entries must be >= 1");
  const std::size_t lattice =
      std::size_t(shape[0]) * std::size_t(shape[1]) * std::size_t(shape[2]);
  if (bitmap.size() != lattice)
    throw ConfigError("mask: bitmap size does not match shape");

  auto d = std::shared_ptr<DomainSpec>(new DomainSpec());
  d->kind_ = DomainKind::Mask;
  d->dim_ = dim;
  d->spacing_ = spacing;
  d->shape_ = shape;
  d->lattice_to_cell_.assign(lattice, -1);
  for (std::size_t i = 0; i < lattice; ++i) {
    if (!bitmap[i]) continue;
    d->lattice_to_cell_[i] = std::int64_t(d->cell_coords_.size());
    const int ix = int(i % shape[0]);
    const int iy = int((i / shape[0]) % shape[1]);
    const int iz = int(i / (std::size_t(shape[0]) * shape[1]));
    d->cell_coords_.push_back({ix, iy, iz});
  }
  if (d->cell_coords_.empty()) throw ConfigError("mask: no active cells");

  const double cellvol = std::pow(spacing, dim);
  const std::size_t n = d->cell_coords_.size();
  d->volumes_.assign(n, cellvol);
  d->measure_ = double(n) * cellvol;

  d->neighbors_.resize(n);
  const int step[6][3] = {{-1, 0, 0}, {1, 0, 0},  {0, -1, 0},
                          {0, 1, 0},  {0, 0, -1}, {0, 0, 1}};
  for (std::size_t c = 0; c < n; ++c) {
    const auto& p = d->cell_coords_[c];
    for (int s = 0; s < 6; ++s) {
      if (s / 2 >= dim) {
        d->neighbors_[c][s] = -1;
        continue;
      }
      d->neighbors_[c][s] =
          d->cell_at(p[0] + step[s][0], p[1] + step[s][1], p[2] + step[s][2]);
    }
  }

  // Flood fill over face adjacency to detect disconnected masks.
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (int s = 0; s < 6; ++s) {
      const std::int64_t nb = d->neighbors_[c][s];
      if (nb >= 0 && !seen[nb]) {
        seen[nb] = 1;
        ++reached;
        queue.push_back(std::size_t(nb));
      }
    }
  }
  d->connected_ = (reached == n);
  return d;
}

DomainPtr DomainSpec::ball(int dim, double radius, int n_radial) {
  if (dim < 1) throw ConfigError("ball: dim must be >= 1");
  if (!(radius > 0)) throw ConfigError("ball: radius must be positive");
  if (n_radial < 2) throw ConfigError("ball: need at least two radial nodes");
  auto d = std::shared_ptr<DomainSpec>(new DomainSpec());
  d->kind_ = DomainKind::Ball;
  d->dim_ = dim;
  d->extent_ = radius;
  const double h = radius / n_radial;
  d->spacing_ = h;
  d->measure_ = ball_volume(dim, radius);
  const double sigma = unit_sphere_area(dim);
  d->radii_.resize(n_radial);
  d->volumes_.resize(n_radial);
  for (int j = 0; j < n_radial; ++j) {
    d->radii_[j] = j * h;
    const double inner = (j == 0) ? 0.0 : (j - 0.5) * h;
    const double outer = (j + 0.5) * h;
    d->volumes_[j] =
        sigma * (std::pow(outer, dim) - std::pow(inner, dim)) / dim;
  }
  return d;
}

double DomainSpec::length() const {
  if (kind_ != DomainKind::Interval)
    throw ConfigError("length() requires an Interval domain");
  return extent_;
}

double DomainSpec::radius() const {
  if (kind_ != DomainKind::Ball)
    throw ConfigError("radius() requires a Ball domain");
  return extent_;
}

const std::vector<double>& DomainSpec::radii() const {
  if (kind_ != DomainKind::Ball)
    throw ConfigError("radii() requires a Ball domain");
  return radii_;
}

std::array<int, 3> DomainSpec::shape() const {
  if (kind_ != DomainKind::Mask)
    throw ConfigError("shape() requires a Mask domain");
  return shape_;
}

std::int64_t DomainSpec::cell_at(int ix, int iy, int iz) const {
  if (kind_ != DomainKind::Mask)
    throw ConfigError("cell_at() requires a Mask domain");
  if (ix < 0 || ix >= shape_[0] || iy < 0 || iy >= shape_[1] || iz < 0 ||
      iz >= shape_[2])
    return -1;
  const std::size_t i =
      (std::size_t(iz) * shape_[1] + iy) * shape_[0] + ix;
  return lattice_to_cell_[i];
}

std::array<int, 3> DomainSpec::lattice_coords(std::size_t cell) const {
  if (kind_ != DomainKind::Mask)
    throw ConfigError("lattice_coords() requires a Mask domain");
  return cell_coords_[cell];
}

const std::array<std::int64_t, 6>& DomainSpec::neighbors(
    std::size_t cell) const {
  if (kind_ == DomainKind::Ball)
    throw ConfigError("neighbors() is not defined for Ball domains");
  return neighbors_[cell];
}

std::array<double, 3> DomainSpec::position(std::size_t cell) const {
  switch (kind_) {
    case DomainKind::Interval:
      return {(double(cell) + 1.0) * spacing_, 0, 0};
    case DomainKind::Ball:
      return {radii_[cell], 0, 0};
    case DomainKind::Mask: {
      const auto& p = cell_coords_[cell];
      return {(p[0] + 0.5) * spacing_, (p[1] + 0.5) * spacing_,
              (p[2] + 0.5) * spacing_};
    }
  }
  return {0, 0, 0};
}

GridFunction::GridFunction(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (!domain_) throw ConfigError("GridFunction: null domain");
  if (values_.size() != domain_->size())
    throw ConfigError("GridFunction: value count does not match domain size");
}

GridFunction GridFunction::constant(DomainPtr domain, double value) {
  if (!domain) throw ConfigError("GridFunction: null domain");
  return GridFunction(domain, std::vector<double>(domain->size(), value));
}

GridFunction GridFunction::from_function(
    DomainPtr domain,
    const std::function<double(std::array<double, 3>)>& fn) {
  if (!domain) throw ConfigError("GridFunction: null domain");
  std::vector<double> v(domain->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(domain->position(i));
  return GridFunction(domain, std::move(v));
}

double GridFunction::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double GridFunction::sup_norm() const {
  double m = 0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::integral() const {
  double s = 0;
  const auto& vol = domain_->cell_volumes();
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * vol[i];
  return s;
}

DomainPtr mask_from_predicate(
    int dim, std::array<int, 3> shape, double spacing,
    const std::function<bool(std::array<double, 3>)>& inside) {
  if (dim < 1 || dim > 3) throw ConfigError("mask: dim must be 1, 2 or 3");
  for (int k = dim; k < 3; ++k) shape[k] = 1;
  std::vector<std::uint8_t> bitmap;
  bitmap.reserve(std::size_t(shape[0]) * shape[1] * shape[2]);
  for (int iz = 0; iz < shape[2]; ++iz)
    for (int iy = 0; iy < shape[1]; ++iy)
      for (int ix = 0; ix < shape[0]; ++ix)
        bitmap.push_back(inside({(ix + 0.5) * spacing, (iy + 0.5) * spacing,
                                 (iz + 0.5) * spacing})
                             ? 1
                             : 0);
  return DomainSpec::mask(dim, shape, std::move(bitmap), spacing);
}

int default_radial_nodes(const DomainSpec& domain) {
  if (domain.kind() == DomainKind::Ball) return int(domain.size());
  const double radius =
      std::pow(domain.dim() * domain.measure() / unit_sphere_area(domain.dim()),
               1.0 / domain.dim());
  return std::max(8, int(std::lround(radius / domain.spacing())) + 1);
}

DomainPtr symmetrize_domain(const DomainSpec& domain, int n_radial) {
  if (n_radial <= 0) n_radial = default_radial_nodes(domain);
  if (domain.kind() == DomainKind::Ball && n_radial == int(domain.size()))
    return DomainSpec::ball(domain.dim(), domain.radius(), n_radial);
  const double radius =
      std::pow(domain.dim() * domain.measure() / unit_sphere_area(domain.dim()),
               1.0 / domain.dim());
  return DomainSpec::ball(domain.dim(), radius, n_radial);
}

DomainPtr load_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mask file: " + path);
  std::string header;
  while (std::getline(in, header)) {
    const auto pos = header.find('#');
    if (pos != std::string::npos) header.erase(pos);
    if (header.find_first_not_of(" \t\r") != std::string::npos) break;
    header.clear();
  }
  std::istringstream hs(header);
  int dim = 0;
  if (!(hs >> dim)) throw ConfigError("mask file: missing dimension in header");
  if (dim < 1 || dim > 3) throw ConfigError("mask file: dim must be 1, 2 or 3");
  std::array<int, 3> shape = {1, 1, 1};
  for (int k = 0; k < dim; ++k)
    if (!(hs >> shape[k]) || shape[k] < 1)
      throw ConfigError("mask file: bad shape in header");
  double spacing = 0;
  if (!(hs >> spacing) || !(spacing > 0))
    throw ConfigError("mask file: bad spacing in header");
  std::string trailing;
  if (hs >> trailing) throw ConfigError("mask file: trailing header fields");

  std::vector<std::uint8_t> bitmap(
      std::size_t(shape[0]) * shape[1] * shape[2], 0);
  std::size_t rows_needed = std::size_t(shape[1]) * shape[2];
  std::size_t row = 0;
  std::string line;
  while (row < rows_needed && std::getline(in, line)) {
    const auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::string digits;
    for (char c : line) {
      if (c == '0' || c == '1') digits.push_back(c);
      else if (!std::isspace(static_cast<unsigned char>(c)))
        throw ConfigError("mask file: unexpected character in bitmap row");
    }
    if (digits.empty()) continue;
    if (digits.size() != std::size_t(shape[0]))
      throw ConfigError("mask file: row has wrong number of entries");
    for (int ix = 0; ix < shape[0]; ++ix)
      bitmap[row * shape[0] + ix] = (digits[ix] == '1');
    ++row;
  }
  if (row < rows_needed) throw ConfigError("mask file: not enough bitmap rows");
  return DomainSpec::mask(dim, shape, std::move(bitmap), spacing);
}

void save_mask(const DomainSpec& domain, const std::string& path) {
  if (domain.kind() != DomainKind::Mask)
    throw ConfigError("save_mask requires a Mask domain");
  std::ofstream out(path);
  if (!out) throw ReportError("cannot write mask file: " + path);
  const auto shape = domain.shape();
  out << domain.dim();
  for (int k = 0; k < domain.dim(); ++k) out << ' ' << shape[k];
  out.precision(17);
  out << ' ' << domain.spacing() << '\n';
  for (int iz = 0; iz < shape[2]; ++iz) {
    for (int iy = 0; iy < shape[1]; ++iy) {
      for (int ix = 0; ix < shape[0]; ++ix)
        out << (domain.cell_at(ix, iy, iz) >= 0 ? '1' : '0');
      out << '\n';
    }
    if (iz + 1 < shape[2]) out << '\n';
  }
  if (!out) throw ReportError("failed writing mask file: " + path);
}

void save_grid_function(const GridFunction& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ReportError("cannot write grid function file: " + path);
  const auto& dom = u.domain();
  out << "index";
  if (dom.kind() == DomainKind::Ball) {
    out << ",r";
  } else {
    const char* names[3] = {"x", "y", "z"};
    for (int k = 0; k < dom.dim(); ++k) out << ',' << names[k];
  }
  out << ",value\n";
  out.precision(17);
  const int ncoord = (dom.kind() == DomainKind::Ball) ? 1 : dom.dim();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto p = dom.position(i);
    out << i;
    for (int k = 0; k < ncoord; ++k) out << ',' << p[k];
    out << ',' << u[i] << '\n';
  }
  if (!out) throw ReportError("failed writing grid function file: " + path);
}

GridFunction load_grid_function(DomainPtr domain, const std::string& path) {
  if (!domain) throw ConfigError("load_grid_function: null domain");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid function file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("grid function file: missing header");
  std::vector<double> values(domain->size(),
                             std::numeric_limits<double>::quiet_NaN());
  std::size_t filled = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::size_t index = 0;
    if (!(ls >> index)) throw ConfigError("grid function file: bad row");
    if (index >= values.size())
      throw ConfigError("grid function file: index out of range");
    double field = 0, value = 0;
    bool got = false;
    while (ls >> field) {
      value = field;
      got = true;
    }
    if (!got) throw ConfigError("grid function file: row without value");
    if (!std::isnan(values[index]))
      throw ConfigError("grid function file: duplicate index");
    values[index] = value;
    ++filled;
  }
  if (filled != values.size())
    throw ConfigError("grid function file: missing rows for this domain");
  return GridFunction(std::move(domain), std::move(values));
}

}  // namespace pullin
