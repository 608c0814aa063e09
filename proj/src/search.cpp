#include "sphdec/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace sphdec {

namespace {

// Zig-zag orders are per-axis projections, so building one costs just
// the q level deviations (booked as adds; the sort itself only compares).
std::vector<double> counted_zigzag(const std::vector<double>& levels, double center,
                                   OpCounts& n) {
  n.real_adds += levels.size();
  return axis_zigzag(levels, center);
}

Complex back_substitute_center(const SearchProblem& p, int li, const ComplexVector& partial,
                               OpCounts& n) {
  const int t = p.dimension();
  Complex acc = p.rho[li];
  for (int j = li + 1; j < t; ++j)
    acc = counted_csub(acc, counted_cmul(p.r_mat(li, j), partial[j], n), n);
  return counted_cdiv(acc, p.r_mat(li, li), n);
}

}  // namespace

SearchProblem build_problem(const QrFactorization& fact, const ComplexVector& x, double c,
                            const Constellation& constellation, OpCounts& counts) {
  const int r = fact.q.rows();
  const int t = fact.r_mat.cols();
  if (static_cast<int>(x.size()) != r)
    throw DimensionError("build_problem: received vector length != receive antennas");
  if (!is_finite(x)) throw DimensionError("build_problem: non-finite received vector");
  if (!(c > 0.0)) throw DimensionError("build_problem: squared radius must be positive");

  SearchProblem p;
  p.constellation = &constellation;

  p.rho.resize(r);
  for (int i = 0; i < r; ++i) {
    Complex acc = counted_cmul(conj(fact.q(0, i)), x[0], counts);
    for (int k = 1; k < r; ++k)
      acc = counted_cadd(acc, counted_cmul(conj(fact.q(k, i)), x[k], counts), counts);
    p.rho[i] = acc;
  }

  if (r > t) {
    double tail = counted_abs2(p.rho[t], counts);
    for (int i = t + 1; i < r; ++i)
      tail = counted_radd(tail, counted_abs2(p.rho[i], counts), counts);
    p.tail_sq = tail;
    p.c_prime = counted_rsub(c, tail, counts);
  } else {
    p.tail_sq = 0.0;
    p.c_prime = c;
  }

  p.r_mat = ComplexMatrix(t, t);
  p.rii_sq.resize(t);
  for (int i = 0; i < t; ++i) {
    for (int j = i; j < t; ++j) p.r_mat(i, j) = fact.r_mat(i, j);
    const Complex d = fact.r_mat(i, i);
    if (!(d.re > 0.0) || d.im != 0.0)
      throw DimensionError("build_problem: diagonal must be real positive");
    p.rii_sq[i] = counted_rmul(d.re, d.re, counts);
  }
  return p;
}

IntervalTest interval_test(const SearchProblem& p, int li, const ComplexVector& partial,
                           double d_i, double c_prime, OpCounts& counts) {
  const Complex center = back_substitute_center(p, li, partial, counts);
  const double budget =
      counted_rdiv(counted_rsub(c_prime, d_i, counts), p.rii_sq[li], counts);
  counts.real_adds += 2 * p.constellation->axis_levels.size();  // zig-zag deviations
  return IntervalTest{center, budget,
                      enumerate_candidates(*p.constellation, center, budget)};
}

namespace {

struct DfsLevel {
  Complex center;
  double d_entry = 0.0;
  double budget = 0.0;
  std::uint64_t budget_gen = 0;
  std::vector<double> re_order, im_order;
  std::size_t re_idx = 0, im_idx = 0;
  double re_dev_sq = 0.0;
  bool re_cached = false;
};

}  // namespace

bool depth_first_pass(const SearchProblem& p, double c_prime, bool shrink,
                      ComplexVector& best, double& best_dist, OpCounts& counts,
                      std::vector<double>* leaf_trace) {
  const int t = p.dimension();
  const std::vector<double>& levels = p.constellation->axis_levels;

  std::vector<DfsLevel> stack(t);
  ComplexVector partial(t);
  std::uint64_t gen = 1;  // bumped on every radius shrink
  bool found = false;
  best_dist = std::numeric_limits<double>::infinity();

  auto enter_level = [&](int li, double d_entry) {
    DfsLevel& lvl = stack[li];
    lvl.center = back_substitute_center(p, li, partial, counts);
    lvl.d_entry = d_entry;
    lvl.budget_gen = 0;  // forces a budget computation on first touch
    lvl.re_order = counted_zigzag(levels, lvl.center.re, counts);
    lvl.im_order = counted_zigzag(levels, lvl.center.im, counts);
    lvl.re_idx = 0;
    lvl.im_idx = 0;
    lvl.re_cached = false;
  };

  int li = t - 1;
  enter_level(li, 0.0);

  while (li < t) {
    DfsLevel& lvl = stack[li];
    if (lvl.budget_gen != gen) {
      lvl.budget =
          counted_rdiv(counted_rsub(c_prime, lvl.d_entry, counts), p.rii_sq[li], counts);
      lvl.budget_gen = gen;
    }

    if (lvl.re_idx >= lvl.re_order.size()) {
      ++li;  // level exhausted
      continue;
    }
    if (!lvl.re_cached) {
      const double re_dev = counted_rsub(lvl.re_order[lvl.re_idx], lvl.center.re, counts);
      lvl.re_dev_sq = counted_rmul(re_dev, re_dev, counts);
      lvl.re_cached = true;
    }
    if (lvl.re_dev_sq >= lvl.budget) {
      ++li;  // real deviations only grow from here
      continue;
    }
    if (lvl.im_idx >= lvl.im_order.size()) {
      ++lvl.re_idx;
      lvl.im_idx = 0;
      lvl.re_cached = false;
      continue;
    }
    const double im_dev = counted_rsub(lvl.im_order[lvl.im_idx], lvl.center.im, counts);
    const double dev_sq =
        counted_radd(lvl.re_dev_sq, counted_rmul(im_dev, im_dev, counts), counts);
    if (dev_sq >= lvl.budget) {
      ++lvl.re_idx;  // imaginary deviations only grow within this real level
      lvl.im_idx = 0;
      lvl.re_cached = false;
      continue;
    }

    // Candidate admitted by the sphere condition.
    partial[li] = Complex{lvl.re_order[lvl.re_idx], lvl.im_order[lvl.im_idx]};
    ++lvl.im_idx;
    ++counts.nodes_visited;
    const double d_child =
        counted_radd(lvl.d_entry, counted_rmul(p.rii_sq[li], dev_sq, counts), counts);

    if (li == 0) {
      if (d_child < (shrink ? c_prime : best_dist)) {
        best = partial;
        best_dist = d_child;
        found = true;
        ++counts.leaves_found;
        if (leaf_trace) leaf_trace->push_back(d_child);
        if (shrink) {
          c_prime = d_child;
          ++gen;
        }
      }
      continue;
    }
    --li;
    enter_level(li, d_child);
  }
  return found;
}

SearchResult depth_first_decode(const SearchProblem& p, const DfsOptions& opt) {
  SearchResult result;
  double c_prime = p.c_prime;
  while (true) {
    if (depth_first_pass(p, c_prime, true, result.symbols, result.dist_sq, result.counts,
                         opt.leaf_trace))
      break;
    ++result.radius_retries;
    if (opt.increment_squared_radius) {
      c_prime = counted_radd(c_prime, opt.retry_increment, result.counts);
    } else {
      const double radius = std::sqrt(std::max(c_prime + p.tail_sq, 0.0));
      const double grown = radius + opt.retry_increment;
      c_prime = counted_rsub(counted_rmul(grown, grown, result.counts), p.tail_sq,
                             result.counts);
    }
  }
  result.dist_sq += p.tail_sq;
  return result;
}

namespace {

// Lazy best-first expansion state. An Expansion owns the ordered axis
// candidates of one sibling group; nodes reference it by index.
struct Expansion {
  int parent_node = -1;
  double parent_dist = 0.0;
  int sym = 0;       // symbol index decided by these children
  bool real_axis = true;
  double center_coord = 0.0;
  Complex s_center;  // cached S for this symbol
  std::vector<double> order;
};

struct DNode {
  double dist = 0.0;
  int level = 0;  // 1..2t
  int expansion = -1;
  int rank = 0;  // position in the expansion's zig-zag order
};

struct QueueEntry {
  double dist;
  int level;
  std::uint64_t seq;
  int node;
};

// Min-dist; ties prefer deeper levels, then insertion order.
struct QueueCmp {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.dist != b.dist) return a.dist > b.dist;
    if (a.level != b.level) return a.level < b.level;
    return a.seq > b.seq;
  }
};

}  // namespace

SearchResult dijkstra_decode(const SearchProblem& p, const DijkstraOptions& opt) {
  const int t = p.dimension();
  const std::vector<double>& levels = p.constellation->axis_levels;
  const int q = static_cast<int>(levels.size());
  const bool real_first = opt.axis == AxisSplit::RealFirst;

  SearchResult result;
  OpCounts& n = result.counts;

  std::vector<Expansion> expansions;
  std::vector<DNode> nodes;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueCmp> queue;
  std::uint64_t seq = 0;

  auto child_dist = [&](const Expansion& e, int rank) {
    const double dev = counted_rsub(e.order[rank], e.center_coord, n);
    return counted_radd(e.parent_dist,
                        counted_rmul(p.rii_sq[e.sym], counted_rmul(dev, dev, n), n), n);
  };

  auto push_node = [&](int expansion_idx, int rank) {
    const Expansion& e = expansions[expansion_idx];
    const int parent_level = e.parent_node < 0 ? 0 : nodes[e.parent_node].level;
    DNode node;
    node.dist = child_dist(e, rank);
    node.level = parent_level + 1;
    node.expansion = expansion_idx;
    node.rank = rank;
    nodes.push_back(node);
    queue.push(QueueEntry{node.dist, node.level, seq++, static_cast<int>(nodes.size() - 1)});
    if (queue.size() > n.queue_peak) n.queue_peak = queue.size();
  };

  // Reads the decided symbols along a node's ancestor chain. Axis levels
  // pair up per symbol, so entries sym..t-1 come out fully assigned once
  // the node sits on an even level.
  auto collect_partial = [&](int node_idx, ComplexVector& partial) {
    for (int idx = node_idx; idx >= 0;) {
      const DNode& node = nodes[idx];
      const Expansion& e = expansions[node.expansion];
      const double coord = e.order[node.rank];
      if (e.real_axis)
        partial[e.sym].re = coord;
      else
        partial[e.sym].im = coord;
      idx = e.parent_node;
    }
  };

  ComplexVector partial(t);

  auto expand_first_child = [&](int parent_idx) {
    const DNode& parent = nodes[parent_idx];
    const Expansion& parent_exp = expansions[parent.expansion];
    Expansion e;
    e.parent_node = parent_idx;
    e.parent_dist = parent.dist;
    if (parent.level % 2 == 1) {
      // Second axis of the same symbol; S is already cached.
      e.sym = parent_exp.sym;
      e.real_axis = !parent_exp.real_axis;
      e.s_center = parent_exp.s_center;
    } else {
      e.sym = parent_exp.sym - 1;
      e.real_axis = real_first;
      collect_partial(parent_idx, partial);
      e.s_center = back_substitute_center(p, e.sym, partial, n);
    }
    e.center_coord = e.real_axis ? e.s_center.re : e.s_center.im;
    e.order = counted_zigzag(levels, e.center_coord, n);
    expansions.push_back(std::move(e));
    push_node(static_cast<int>(expansions.size() - 1), 0);
  };

  // Root expansion: first axis of the last symbol.
  {
    Expansion e;
    e.sym = t - 1;
    e.real_axis = real_first;
    e.s_center = back_substitute_center(p, e.sym, partial, n);
    e.center_coord = e.real_axis ? e.s_center.re : e.s_center.im;
    e.order = counted_zigzag(levels, e.center_coord, n);
    expansions.push_back(std::move(e));
    push_node(0, 0);
  }

  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    ++n.nodes_visited;
    if (opt.pop_trace) opt.pop_trace->push_back(top.dist);

    if (top.level == 2 * t) {
      result.symbols.assign(t, Complex{});
      collect_partial(top.node, result.symbols);
      result.dist_sq = top.dist + p.tail_sq;
      n.leaves_found = 1;
      return result;
    }

    expand_first_child(top.node);
    const DNode& popped = nodes[top.node];
    if (popped.rank + 1 < q) push_node(popped.expansion, popped.rank + 1);
  }
  throw DimensionError("dijkstra_decode: exhausted queue without a leaf");
}

DecodeOutcome decode(const ComplexMatrix& m, const ComplexVector& x, Ordering ordering,
                     Engine engine, const Constellation& constellation,
                     double initial_radius_sq) {
  DecodeOutcome out;
  const QrFactorization fact = factorize(m, ordering, out.preprocess);
  const SearchProblem problem =
      build_problem(fact, x, initial_radius_sq, constellation, out.search);

  SearchResult result = engine == Engine::DepthFirst ? depth_first_decode(problem)
                                                     : dijkstra_decode(problem);
  out.search = merge(out.search, result.counts);
  out.symbols = apply_inverse_permutation(result.symbols, fact.perm);
  out.dist_sq = result.dist_sq;
  out.radius_retries = result.radius_retries;
  return out;
}

BruteForceResult brute_force_ml(const ComplexMatrix& m, const ComplexVector& x,
                                const Constellation& constellation) {
  const int r = m.rows();
  const int t = m.cols();
  if (static_cast<int>(x.size()) != r)
    throw DimensionError("brute_force_ml: received vector length != receive antennas");
  const double total = std::pow(static_cast<double>(constellation.size()), t);
  if (total > 1e7) throw TooLarge("brute_force_ml: constellation power set too large");

  // Partial channel outputs per level keep the scan at O(|S|^t * r).
  std::vector<ComplexVector> partial(t + 1, ComplexVector(r));
  ComplexVector current(t);
  BruteForceResult best;
  best.dist_sq = std::numeric_limits<double>::infinity();

  // Iterative odometer over symbols in lexicographic (re, im) order;
  // strict improvement keeps the lexicographically smallest tie.
  std::vector<std::size_t> idx(t, 0);
  int level = 0;
  while (level >= 0) {
    if (idx[level] >= constellation.points.size()) {
      idx[level] = 0;
      --level;
      if (level >= 0) ++idx[level];
      continue;
    }
    const Complex s = constellation.points[idx[level]];
    current[level] = s;
    for (int i = 0; i < r; ++i) partial[level + 1][i] = partial[level][i] + m(i, level) * s;
    if (level == t - 1) {
      double d = 0.0;
      for (int i = 0; i < r; ++i)
        d += abs2({x[i].re - partial[t][i].re, x[i].im - partial[t][i].im});
      if (d < best.dist_sq) {
        best.dist_sq = d;
        best.symbols = current;
      }
      ++idx[level];
    } else {
      ++level;
    }
  }
  return best;
}

double lattice_distance_sq(const ComplexMatrix& m, const ComplexVector& x,
                           const ComplexVector& a) {
  const ComplexVector y = matvec(m, a);
  double d = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    d += abs2({x[i].re - y[i].re, x[i].im - y[i].im});
  return d;
}

}  // namespace sphdec
