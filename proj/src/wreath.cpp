#include "arbocert/wreath.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "arbocert/fp.hpp"
#include "arbocert/numeric.hpp"

namespace arbo {

Perm::Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (std::uint16_t v : img_) {
    if (v >= img_.size() || seen[v])
      throw std::invalid_argument("image array is not a bijection");
    seen[v] = true;
  }
}

Perm Perm::identity(std::size_t m) {
  std::vector<std::uint16_t> img(m);
  for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<std::uint16_t>(i);
  return Perm(std::move(img));
}

Perm Perm::operator*(const Perm& b) const {
  if (degree() != b.degree())
    throw std::invalid_argument("degree mismatch in composition");
  std::vector<std::uint16_t> img(degree());
  for (std::size_t i = 0; i < degree(); ++i) img[i] = img_[b.img_[i]];
  return Perm(std::move(img));
}

Perm Perm::inverse() const {
  std::vector<std::uint16_t> img(degree());
  for (std::size_t i = 0; i < degree(); ++i)
    img[img_[i]] = static_cast<std::uint16_t>(i);
  return Perm(std::move(img));
}

std::vector<int> Perm::cycle_type() const {
  std::vector<bool> seen(degree(), false);
  std::vector<int> type;
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

namespace {

// S_d generators on m points, permuting d blocks of size `block` and fixing
// positions inside each block. block = 1 gives plain S_d.
std::vector<Perm> block_symmetric_generators(int d, std::size_t block) {
  std::size_t m = static_cast<std::size_t>(d) * block;
  auto block_perm = [&](const std::vector<int>& sigma) {
    std::vector<std::uint16_t> img(m);
    for (int b = 0; b < d; ++b)
      for (std::size_t r = 0; r < block; ++r)
        img[static_cast<std::size_t>(b) * block + r] =
            static_cast<std::uint16_t>(
                static_cast<std::size_t>(sigma[static_cast<std::size_t>(b)]) *
                    block +
                r);
    return Perm(std::move(img));
  };
  std::vector<int> swap01(d), cyc(d);
  for (int i = 0; i < d; ++i) swap01[static_cast<std::size_t>(i)] = i;
  std::swap(swap01[0], swap01[1]);
  for (int i = 0; i < d; ++i)
    cyc[static_cast<std::size_t>(i)] = (i + 1) % d;
  std::vector<Perm> gens{block_perm(swap01)};
  if (d > 2) gens.push_back(block_perm(cyc));
  return gens;
}

// Extend a permutation of the leftmost subtree's leaves to all m leaves.
Perm embed_in_first_block(const Perm& g, std::size_t m) {
  std::vector<std::uint16_t> img(m);
  for (std::size_t i = 0; i < m; ++i)
    img[i] = i < g.degree() ? g(i) : static_cast<std::uint16_t>(i);
  return Perm(std::move(img));
}

}  // namespace

PermGroup wreath_generators(int d, int n, std::size_t degree_cap) {
  if (d < 2 || n < 1) throw std::invalid_argument("need d >= 2, n >= 1");
  std::size_t leaves = 1;
  for (int i = 0; i < n; ++i) {
    leaves *= static_cast<std::size_t>(d);
    if (leaves > degree_cap)
      throw capacity_error("wreath degree exceeds cap", i + 1);
  }
  PermGroup g;
  g.degree = leaves;
  if (n == 1) {
    g.generators = block_symmetric_generators(d, 1);
    return g;
  }
  PermGroup sub = wreath_generators(d, n - 1, degree_cap);
  g.generators = block_symmetric_generators(d, sub.degree);
  for (const Perm& s : sub.generators)
    g.generators.push_back(embed_in_first_block(s, leaves));
  return g;
}

PermGroup index2_candidate_group() {
  PermGroup g;
  g.degree = 9;
  // Root copy: only the 3-cycle on the three blocks.
  std::vector<std::uint16_t> rot(9);
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t r = 0; r < 3; ++r)
      rot[b * 3 + r] = static_cast<std::uint16_t>(((b + 1) % 3) * 3 + r);
  g.generators.emplace_back(std::move(rot));
  // Leftmost lower copy: full symmetric group on its three leaves.
  for (const Perm& s : block_symmetric_generators(3, 1))
    g.generators.push_back(embed_in_first_block(s, 9));
  return g;
}

unsigned long enumerate(PermGroup& group, std::size_t order_cap) {
  if (group.generators.empty()) {
    group.elements = std::vector<Perm>{Perm::identity(group.degree)};
    return 1;
  }
  std::set<Perm> seen;
  std::deque<Perm> frontier;
  Perm id = Perm::identity(group.degree);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Perm cur = std::move(frontier.front());
    frontier.pop_front();
    for (const Perm& gen : group.generators) {
      Perm next = gen * cur;
      if (seen.insert(next).second) {
        if (seen.size() > order_cap)
          throw capacity_error("group order exceeds enumeration cap", 0);
        frontier.push_back(std::move(next));
      }
    }
  }
  group.elements = std::vector<Perm>(seen.begin(), seen.end());
  return static_cast<unsigned long>(group.elements->size());
}

BigRat CycleTypeDistribution::frequency(const std::vector<int>& type) const {
  auto it = counts.find(type);
  if (it == counts.end() || total == 0) return BigRat(0);
  return make_rat(BigInt(it->second), BigInt(total));
}

CycleTypeDistribution exact_cycle_distribution(const PermGroup& group) {
  if (!group.elements)
    throw std::invalid_argument("group must be enumerated first");
  CycleTypeDistribution dist;
  dist.m = group.degree;
  for (const Perm& g : *group.elements) ++dist.counts[g.cycle_type()];
  dist.total = static_cast<unsigned long>(group.elements->size());
  return dist;
}

CycleTypeDistribution frobenius_distribution(const IntPoly& f,
                                             unsigned long bound, int jobs) {
  if (f.degree() < 1) throw std::invalid_argument("need deg f >= 1");
  CycleTypeDistribution dist;
  dist.m = static_cast<std::size_t>(f.degree());

  std::vector<unsigned long> primes = primes_up_to(bound);
  const std::size_t block = 512;
  std::size_t blocks = (primes.size() + block - 1) / block;
  struct Partial {
    std::map<std::vector<int>, unsigned long> counts;
    unsigned long used = 0, skips = 0;
  };
  std::vector<Partial> parts(blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t bi = next.fetch_add(1); bi < blocks;
         bi = next.fetch_add(1)) {
      std::size_t lo = bi * block, hi = std::min(primes.size(), lo + block);
      for (std::size_t i = lo; i < hi; ++i) {
        std::optional<std::vector<int>> type =
            frobenius_cycle_type(f, primes[i]);
        if (type) {
          ++parts[bi].counts[*type];
          ++parts[bi].used;
        } else {
          ++parts[bi].skips;
        }
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const Partial& p : parts) {
    for (const auto& [type, c] : p.counts) dist.counts[type] += c;
    dist.total += p.used;
    dist.skips += p.skips;
  }
  return dist;
}

double total_variation(const CycleTypeDistribution& a,
                       const CycleTypeDistribution& b) {
  if (a.m != b.m)
    throw std::invalid_argument("distributions live on different point counts");
  if (a.total == 0 || b.total == 0)
    throw std::invalid_argument("empty distribution");
  std::set<std::vector<int>> types;
  for (const auto& [t, c] : a.counts) types.insert(t);
  for (const auto& [t, c] : b.counts) types.insert(t);
  BigRat sum(0);
  for (const std::vector<int>& t : types) {
    BigRat diff = a.frequency(t) - b.frequency(t);
    sum += abs(diff);
  }
  sum /= 2;
  return sum.get_d();
}

std::string partition_string(const std::vector<int>& type) {
  std::ostringstream os;
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (i) os << "+";
    os << type[i];
  }
  return os.str();
}

}  // namespace arbo
