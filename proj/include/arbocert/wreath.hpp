#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arbocert/poly.hpp"

namespace arbo {

// Permutation of {0..m-1}, stored as the image array.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint16_t> images);
  static Perm identity(std::size_t m);

  std::size_t degree() const { return img_.size(); }
  std::uint16_t operator()(std::size_t i) const { return img_[i]; }
  const std::vector<std::uint16_t>& images() const { return img_; }

  // (a * b)(i) = a(b(i)): apply b first.
  Perm operator*(const Perm& b) const;
  Perm inverse() const;
  bool operator==(const Perm& o) const = default;
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  // Cycle lengths as a partition of the degree, sorted descending.
  std::vector<int> cycle_type() const;

 private:
  std::vector<std::uint16_t> img_;
};

// A permutation group by generators; `elements` is filled by enumerate().
struct PermGroup {
  std::size_t degree = 0;
  std::vector<Perm> generators;
  std::optional<std::vector<Perm>> elements;  // sorted when present
  unsigned long order() const {
    return elements ? static_cast<unsigned long>(elements->size()) : 0;
  }
};

// The n-fold iterated wreath product of the symmetric group on d letters,
// acting on the d^n leaves of the complete d-ary tree of depth n. The root
// copy permutes the d top blocks; one full copy on the leftmost subtree
// generates the rest by conjugation.
PermGroup wreath_generators(int d, int n, std::size_t degree_cap = 729);

// Candidate image for the index-2 tower of x^3+7x^2-7 at depth 2: root copy
// restricted to its 3-cycle subgroup, both lower-level copies full. Order
// 648, index 2 in the full (3,2) wreath product.
PermGroup index2_candidate_group();

// Breadth-first closure of the generators. Fills group.elements (sorted)
// and returns the order; capacity_error beyond order_cap.
unsigned long enumerate(PermGroup& group, std::size_t order_cap = 100000);

// Cycle-type statistics over a group (exact: total = order) or over
// Frobenius samples (empirical: total = usable primes, skips counted).
struct CycleTypeDistribution {
  std::size_t m = 0;  // points / degree
  std::map<std::vector<int>, unsigned long> counts;
  unsigned long total = 0;
  unsigned long skips = 0;
  BigRat frequency(const std::vector<int>& type) const;
};

CycleTypeDistribution exact_cycle_distribution(const PermGroup& group);

// Cycle type of Frobenius at each prime <= bound where f stays squarefree
// mod p (and p does not divide lc f); other primes are counted as skips.
CycleTypeDistribution frobenius_distribution(const IntPoly& f,
                                             unsigned long bound,
                                             int jobs = 1);

// (1/2) sum over partitions |freq_a - freq_b|, computed exactly and then
// rounded once to double. Distributions must live on the same point count.
double total_variation(const CycleTypeDistribution& a,
                       const CycleTypeDistribution& b);

// "3+3+2+1"
std::string partition_string(const std::vector<int>& type);

}  // namespace arbo
