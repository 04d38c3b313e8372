#include "dmorse/offsets.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>

namespace dmorse {

SimplicialComplex::SimplicialComplex(std::size_t vertex_count, std::size_t max_dim)
    : vertex_count_(vertex_count), simplices_(max_dim + 1) {}

std::size_t SimplicialComplex::size() const {
  std::size_t total = 0;
  for (const auto& s : simplices_) total += s.size();
  return total;
}

void SimplicialComplex::add(Simplex s) {
  std::sort(s.begin(), s.end());
  if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("SimplicialComplex: simplex needs distinct vertices");
  if (s.back() >= vertex_count_) throw std::invalid_argument("SimplicialComplex: vertex out of range");
  if (s.size() > simplices_.size()) throw std::invalid_argument("SimplicialComplex: simplex above max_dim");
  auto& list = simplices_[s.size() - 1];
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) list.insert(it, std::move(s));
}

bool SimplicialComplex::contains(const Simplex& s) const {
  if (s.empty() || s.size() > simplices_.size()) return false;
  const auto& list = simplices_[s.size() - 1];
  return std::binary_search(list.begin(), list.end(), s);
}

bool SimplicialComplex::is_face_closed() const {
  for (std::size_t k = 1; k < simplices_.size(); ++k)
    for (const auto& s : simplices_[k])
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        if (!contains(face)) return false;
      }
  return true;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  for (const auto& list : simplices_)
    for (const auto& s : list)
      if (!other.contains(s)) return false;
  return true;
}

std::vector<std::vector<std::size_t>> boundary_columns(const SimplicialComplex& complex, std::size_t k) {
  const auto& cells = complex.simplices(k);
  std::vector<std::vector<std::size_t>> cols(cells.size());
  if (k == 0) return cols;
  const auto& faces = complex.simplices(k - 1);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& s = cells[c];
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) face.push_back(s[i]);
      auto it = std::lower_bound(faces.begin(), faces.end(), face);
      if (it == faces.end() || *it != face) throw std::invalid_argument("boundary_columns: complex is not face-closed");
      cols[c].push_back(static_cast<std::size_t>(it - faces.begin()));
    }
    std::sort(cols[c].begin(), cols[c].end());
  }
  return cols;
}

namespace {

// Rank over Z/2 by standard column reduction on the lowest nonzero row.
std::size_t z2_rank(std::vector<std::vector<std::size_t>> cols) {
  std::map<std::size_t, std::size_t> pivot_owner;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto& col = cols[c];
    while (!col.empty()) {
      auto it = pivot_owner.find(col.back());
      if (it == pivot_owner.end()) break;
      const auto& other = cols[it->second];
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(sum));
      col = std::move(sum);
    }
    if (!col.empty()) {
      pivot_owner.emplace(col.back(), c);
      ++rank;
    }
  }
  return rank;
}

}  // namespace

std::vector<std::size_t> betti(const SimplicialComplex& complex) {
  const std::size_t top = complex.max_dim();
  std::vector<std::size_t> rank(top + 2, 0);  // rank[k] = rank of boundary_k
  for (std::size_t k = 1; k <= top; ++k) rank[k] = z2_rank(boundary_columns(complex, k));
  std::vector<std::size_t> out(top + 1);
  for (std::size_t k = 0; k <= top; ++k) out[k] = complex.simplices(k).size() - rank[k] - rank[k + 1];
  return out;
}

namespace {

template <class T>
bool facets_present(const SimplicialComplex& complex, const Simplex& s) {
  Simplex face;
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    face.clear();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != drop) face.push_back(s[i]);
    if (!complex.contains(face)) return false;
  }
  return true;
}

template <class T>
T miniball_squared_radius(const PointCloud<T>& cloud, const Simplex& s) {
  std::vector<Point<T>> pts;
  pts.reserve(s.size());
  for (auto v : s) pts.push_back(cloud[v]);
  return min_enclosing_ball(pts, cloud.tolerance()).squared_radius;
}

}  // namespace

template <class T>
SimplicialComplex cech_complex(const PointCloud<T>& cloud, const T& squared_t, std::size_t max_dim) {
  if (sign_of(squared_t, cloud.tolerance()) < 0) throw std::invalid_argument("cech_complex: negative squared radius");
  SimplicialComplex complex(cloud.size(), max_dim);
  for (std::uint32_t v = 0; v < cloud.size(); ++v) complex.add({v});
  for (std::size_t k = 1; k <= max_dim; ++k) {
    const auto lower = complex.simplices(k - 1);
    for (const auto& s : lower) {
      for (std::uint32_t v = s.back() + 1; v < cloud.size(); ++v) {
        Simplex cand = s;
        cand.push_back(v);
        if (!facets_present<T>(complex, cand)) continue;
        if (compare(miniball_squared_radius(cloud, cand), squared_t, cloud.tolerance()) <= 0) complex.add(cand);
      }
    }
    if (complex.simplices(k).empty()) break;
  }
  return complex;
}

template <class T>
CechFiltration<T>::CechFiltration(const PointCloud<T>& cloud, std::size_t max_dim)
    : vertex_count_(cloud.size()), max_dim_(max_dim), tol_(cloud.tolerance()) {
  std::vector<Simplex> layer;
  for (std::uint32_t v = 0; v < cloud.size(); ++v) {
    layer.push_back({v});
    entries_.emplace_back(Simplex{v}, T(0));
  }
  for (std::size_t k = 1; k <= max_dim; ++k) {
    std::vector<Simplex> next;
    for (const auto& s : layer)
      for (std::uint32_t v = s.back() + 1; v < cloud.size(); ++v) {
        Simplex cand = s;
        cand.push_back(v);
        entries_.emplace_back(cand, miniball_squared_radius(cloud, cand));
        next.push_back(std::move(cand));
      }
    layer = std::move(next);
  }
}

template <class T>
SimplicialComplex CechFiltration<T>::complex_at(const T& squared_t) const {
  SimplicialComplex complex(vertex_count_, max_dim_);
  for (const auto& [s, value] : entries_)
    if (compare(value, squared_t, tol_) <= 0) complex.add(s);
  return complex;
}

namespace {

template <class T>
std::vector<T> distinct_sorted(std::vector<T> values, const Tolerance& tol) {
  std::sort(values.begin(), values.end());
  std::vector<T> out;
  for (auto& v : values)
    if (out.empty() || compare(out.back(), v, tol) != 0) out.push_back(std::move(v));
  return out;
}

template <class T>
bool contains_value(const std::vector<T>& sorted, const T& v, const Tolerance& tol) {
  for (const auto& x : sorted)
    if (compare(x, v, tol) == 0) return true;
  return false;
}

template <class T>
T midpoint(const T& a, const T& b) {
  return (a + b) / T(2);
}

template <class T>
T beyond(const T& v) {
  return T(2) * v + T(1);
}

template <class T>
void check_records(const PointCloud<T>& cloud, const std::vector<CriticalPointRecord<T>>& records) {
  std::vector<bool> seen(cloud.size(), false);
  for (const auto& r : records) {
    if (r.location.size() != cloud.ambient())
      throw std::invalid_argument("verify_morse_consistency: record dimension does not match the cloud");
    for (auto i : r.projection.indices)
      if (i >= cloud.size()) throw std::invalid_argument("verify_morse_consistency: projection index out of range");
    if (compare(projection_set(cloud, r.location).squared_value, r.squared_value, cloud.tolerance()) != 0)
      throw std::invalid_argument("verify_morse_consistency: record value does not match the cloud");
    if (r.classification.kind == PointKind::CriticalIndexZero) {
      auto idx = cloud.index_of(r.location);
      if (!idx) throw std::invalid_argument("verify_morse_consistency: index-0 record off the cloud");
      seen[*idx] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("verify_morse_consistency: records miss a cloud point");
}

}  // namespace

template <class T>
OffsetVerificationReport<T> verify_morse_consistency(const PointCloud<T>& cloud,
                                                     const std::vector<CriticalPointRecord<T>>& records,
                                                     Execution execution) {
  check_records(cloud, records);
  const auto& tol = cloud.tolerance();
  const std::size_t n = cloud.ambient();

  std::vector<T> topo, regular;
  for (const auto& r : records) {
    if (r.classification.is_topological_critical())
      topo.push_back(r.squared_value);
    else if (r.classification.kind == PointKind::RegularCertificate)
      regular.push_back(r.squared_value);
  }
  OffsetVerificationReport<T> report;
  report.critical_values = distinct_sorted(std::move(topo), tol);
  const auto& values = report.critical_values;
  std::vector<T> regular_only;
  for (auto& v : distinct_sorted(std::move(regular), tol))
    if (!contains_value(values, v, tol)) regular_only.push_back(std::move(v));

  std::vector<T> all_values = values;
  all_values.insert(all_values.end(), regular_only.begin(), regular_only.end());
  all_values = distinct_sorted(std::move(all_values), tol);

  // Sample radii: one per interval, then three around each regular-only value.
  std::vector<T> samples;
  for (std::size_t i = 0; i < values.size(); ++i) {
    OffsetInterval<T> iv;
    iv.lower = values[i];
    if (i + 1 < values.size()) {
      iv.upper = values[i + 1];
      iv.sample = midpoint(values[i], values[i + 1]);
    } else {
      iv.sample = beyond(values[i]);
    }
    samples.push_back(iv.sample);
    report.intervals.push_back(std::move(iv));
  }
  for (const auto& r : regular_only) {
    IsotopyCheck<T> check;
    check.squared_value = r;
    auto pos = std::find_if(all_values.begin(), all_values.end(), [&](const T& v) { return compare(v, r, tol) == 0; });
    const T& below = *(pos - 1);  // value 0 is always present and smaller
    const T above = pos + 1 != all_values.end() ? *(pos + 1) : beyond(r);
    check.samples = {midpoint(below, r), r, midpoint(r, above)};
    samples.insert(samples.end(), check.samples.begin(), check.samples.end());
    report.isotopy_checks.push_back(std::move(check));
  }

  // Betti numbers beta_0..beta_n need the (n+1)-skeleton.
  const CechFiltration<T> filtration(cloud, n + 1);
  std::vector<std::vector<std::size_t>> sample_betti(samples.size());
  auto compute = [&](std::size_t s) {
    auto b = betti(filtration.complex_at(samples[s]));
    b.resize(n + 1, 0);
    sample_betti[s] = std::move(b);
  };
  if (execution == Execution::Serial) {
    for (std::size_t s = 0; s < samples.size(); ++s) compute(s);
  } else {
    std::exception_ptr error;
    const auto count = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < count; ++s) {
      try {
        compute(static_cast<std::size_t>(s));
      } catch (...) {
#pragma omp critical(dmorse_verify_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }

  std::size_t cursor = 0;
  for (auto& iv : report.intervals) iv.betti = sample_betti[cursor++];
  for (auto& check : report.isotopy_checks) {
    const std::size_t containing = static_cast<std::size_t>(
        std::upper_bound(values.begin(), values.end(), check.squared_value) - values.begin() - 1);
    check.pass = true;
    for (int k = 0; k < 3; ++k) {
      check.betti.push_back(sample_betti[cursor++]);
      if (check.betti.back() != report.intervals[containing].betti) check.pass = false;
    }
    report.r1_isotopy = report.r1_isotopy && check.pass;
  }

  // Crossings, starting from the empty offset below value 0.
  std::vector<std::size_t> before(n + 1, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    Crossing<T> c;
    c.squared_value = values[i];
    for (const auto& r : records)
      if (r.classification.is_topological_critical() && compare(r.squared_value, values[i], tol) == 0)
        c.indices.push_back(r.classification.index);
    const auto& after = report.intervals[i].betti;
    c.delta_betti.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      c.delta_betti[k] = static_cast<long>(after[k]) - static_cast<long>(before[k]);
      c.delta_euler += (k % 2 == 0 ? 1 : -1) * c.delta_betti[k];
    }
    for (auto m : c.indices) c.expected_euler += m % 2 == 0 ? 1 : -1;
    c.handle_bookkeeping = c.delta_euler == c.expected_euler;
    if (c.indices.size() == 1) {
      const std::size_t m = c.indices.front();
      std::vector<long> up(n + 1, 0), down(n + 1, 0);
      if (m <= n) up[m] = 1;
      if (m >= 1 && m - 1 <= n) down[m - 1] = -1;
      c.single_handle = (m <= n && c.delta_betti == up) || (m >= 1 && c.delta_betti == down);
      report.r3_single_handle = report.r3_single_handle && *c.single_handle;
    }
    report.r2_handle_bookkeeping = report.r2_handle_bookkeeping && c.handle_bookkeeping;
    before = after;
    report.crossings.push_back(std::move(c));
  }

  std::vector<std::size_t> point(n + 1, 0);
  point[0] = 1;
  report.r4_terminal_contractible = !report.intervals.empty() && report.intervals.back().betti == point;
  return report;
}

template SimplicialComplex cech_complex(const PointCloud<Rational>&, const Rational&, std::size_t);
template SimplicialComplex cech_complex(const PointCloud<double>&, const double&, std::size_t);
template class CechFiltration<Rational>;
template class CechFiltration<double>;
template OffsetVerificationReport<Rational> verify_morse_consistency(const PointCloud<Rational>&,
                                                                     const std::vector<CriticalPointRecord<Rational>>&,
                                                                     Execution);
template OffsetVerificationReport<double> verify_morse_consistency(const PointCloud<double>&,
                                                                   const std::vector<CriticalPointRecord<double>>&,
                                                                   Execution);

}  // namespace dmorse
