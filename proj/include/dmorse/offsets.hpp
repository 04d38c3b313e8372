#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dmorse/morse.hpp"

namespace dmorse {

using Simplex = std::vector<std::uint32_t>;  // sorted vertex indices

/// Face-closed simplicial complex; simplices[k] holds the k-simplices in
/// lexicographic order.
class SimplicialComplex {
 public:
  SimplicialComplex(std::size_t vertex_count, std::size_t max_dim);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t max_dim() const { return simplices_.size() - 1; }
  const std::vector<Simplex>& simplices(std::size_t dim) const { return simplices_.at(dim); }
  std::size_t size() const;

  /// Inserts a simplex (sorting its vertices); duplicates are ignored.
  void add(Simplex s);
  bool contains(const Simplex& s) const;
  bool is_face_closed() const;
  bool is_subcomplex_of(const SimplicialComplex& other) const;

 private:
  std::size_t vertex_count_;
  std::vector<std::vector<Simplex>> simplices_;
};

/// Columns of the Z/2 boundary matrix from k-simplices to (k-1)-simplices;
/// each column lists the row positions of its faces, sorted.
std::vector<std::vector<std::size_t>> boundary_columns(const SimplicialComplex& complex, std::size_t k);

/// Z/2 Betti numbers beta_0..beta_{max_dim}. Only the entries below
/// max_dim are homology of anything larger than this skeleton.
std::vector<std::size_t> betti(const SimplicialComplex& complex);

/// Nerve of the closed balls of squared radius squared_t around the cloud,
/// up to max_dim: a simplex enters iff its smallest enclosing ball has
/// squared radius <= squared_t.
template <class T>
SimplicialComplex cech_complex(const PointCloud<T>& cloud, const T& squared_t, std::size_t max_dim);

/// Every simplex up to max_dim with its filtration value (miniball squared
/// radius); complex_at(t) matches cech_complex(cloud, t, max_dim).
template <class T>
class CechFiltration {
 public:
  CechFiltration(const PointCloud<T>& cloud, std::size_t max_dim);
  SimplicialComplex complex_at(const T& squared_t) const;

 private:
  std::size_t vertex_count_;
  std::size_t max_dim_;
  Tolerance tol_;
  std::vector<std::pair<Simplex, T>> entries_;
};

template <class T>
struct OffsetInterval {
  T lower{0};
  std::optional<T> upper;  // nullopt: unbounded
  T sample{0};
  std::vector<std::size_t> betti;
};

template <class T>
struct Crossing {
  T squared_value{0};
  std::vector<std::size_t> indices;  // Morse indices of topological critical records here
  std::vector<long> delta_betti;
  long delta_euler = 0;
  long expected_euler = 0;
  bool handle_bookkeeping = false;        // R2
  std::optional<bool> single_handle;      // R3, only for a single record
};

template <class T>
struct IsotopyCheck {
  T squared_value{0};
  std::vector<T> samples;  // below, at, above
  std::vector<std::vector<std::size_t>> betti;
  bool pass = false;  // R1
};

template <class T>
struct OffsetVerificationReport {
  std::vector<T> critical_values;  // distinct topological critical squared values
  std::vector<OffsetInterval<T>> intervals;
  std::vector<Crossing<T>> crossings;
  std::vector<IsotopyCheck<T>> isotopy_checks;
  bool r1_isotopy = true;
  bool r2_handle_bookkeeping = true;
  bool r3_single_handle = true;
  bool r4_terminal_contractible = true;

  bool all_pass() const { return r1_isotopy && r2_handle_bookkeeping && r3_single_handle && r4_terminal_contractible; }
};

/// Checks Betti numbers of the offsets against the classified records.
/// Throws std::invalid_argument when the records do not belong to the cloud.
template <class T>
OffsetVerificationReport<T> verify_morse_consistency(const PointCloud<T>& cloud,
                                                     const std::vector<CriticalPointRecord<T>>& records,
                                                     Execution execution = Execution::Parallel);

}  // namespace dmorse
