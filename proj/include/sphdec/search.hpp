#pragma once

#include <vector>

#include "sphdec/constellation.hpp"
#include "sphdec/matrix.hpp"
#include "sphdec/op_counts.hpp"
#include "sphdec/qr.hpp"

namespace sphdec {

// Triangularized decoding instance. The constellation is borrowed and
// must outlive the problem. A problem is read-only during search, so
// distinct decodes of the same problem may run concurrently.
struct SearchProblem {
  ComplexMatrix r_mat;         // t x t upper triangular, real positive diagonal
  ComplexVector rho;           // Q^H x, length r
  double c_prime = 0.0;        // C - sum_{i>t} |rho_i|^2
  double tail_sq = 0.0;        // sum_{i>t} |rho_i|^2
  std::vector<double> rii_sq;  // r_ii^2 per level
  const Constellation* constellation = nullptr;

  int dimension() const { return r_mat.cols(); }
};

struct SearchResult {
  ComplexVector symbols;  // ML point in permuted order
  double dist_sq = 0.0;   // ||x - M a||^2 of the returned point
  OpCounts counts;
  int radius_retries = 0;
};

// rho = Q^H x and the radius correction, all through the cost model;
// these belong to the searching part since they are redone per received
// point. Requires c > 0.
SearchProblem build_problem(const QrFactorization& fact, const ComplexVector& x, double c,
                            const Constellation& constellation, OpCounts& counts);

// Back-substitution center and admission circle for one decision level.
// `li` is the 0-based level (symbol index); `partial` holds decided
// symbols at entries li+1..t-1. Books one complex division and t-1-li
// complex multiplications for the center plus the budget arithmetic.
struct IntervalTest {
  Complex center;      // S_i
  double budget;       // (c_prime - d_i) / r_ii^2
  CandidateStream stream;
};
IntervalTest interval_test(const SearchProblem& p, int li, const ComplexVector& partial,
                           double d_i, double c_prime, OpCounts& counts);

struct DfsOptions {
  double retry_increment = 1.0;
  bool increment_squared_radius = true;       // false: grow the unsquared radius instead
  std::vector<double>* leaf_trace = nullptr;  // distances of full points, in discovery order
};

// Depth-first sphere search with radius shrinking. The admission budget
// always reflects the current radius, so subtrees that the latest full
// point has ruled out are pruned immediately. When the sphere turns out
// empty the squared radius grows by the retry increment and the search
// restarts; counters accumulate across retries.
SearchResult depth_first_decode(const SearchProblem& p, const DfsOptions& opt = {});

// One search pass at a fixed squared radius, no retry. With `shrink`
// disabled the radius stays at `c_prime` for the whole pass, so the
// visited-node count equals the number of partial assignments inside
// the sphere. Returns true when at least one full point was found.
bool depth_first_pass(const SearchProblem& p, double c_prime, bool shrink,
                      ComplexVector& best, double& best_dist, OpCounts& counts,
                      std::vector<double>* leaf_trace = nullptr);

enum class AxisSplit { RealFirst, ImagFirst };

struct DijkstraOptions {
  AxisSplit axis = AxisSplit::RealFirst;
  std::vector<double>* pop_trace = nullptr;  // popped distances, in pop order
};

// Best-first search over the 2t-level tree that decides one axis of one
// symbol per level. Each pop lazily inserts the popped node's leftmost
// child and its right sibling; the first bottom-level pop is the exact
// ML point. Needs no initial radius. counts.queue_peak records the
// largest queue size reached.
SearchResult dijkstra_decode(const SearchProblem& p, const DijkstraOptions& opt = {});

enum class Engine { DepthFirst, Dijkstra };

struct DecodeOutcome {
  ComplexVector symbols;  // ML point in original antenna order
  double dist_sq = 0.0;
  OpCounts preprocess;
  OpCounts search;
  int radius_retries = 0;
};

// Full pipeline: ordering strategy, problem setup, engine, inverse
// permutation. `initial_radius_sq` is ignored by the Dijkstra engine.
DecodeOutcome decode(const ComplexMatrix& m, const ComplexVector& x, Ordering ordering,
                     Engine engine, const Constellation& constellation,
                     double initial_radius_sq);

// Exhaustive argmin of ||x - M a||^2 over the constellation power set;
// ties resolve to the lexicographically smallest symbol vector by
// (Re, Im) per component. Guarded by |S|^t <= 1e7.
struct BruteForceResult {
  ComplexVector symbols;
  double dist_sq = 0.0;
};
BruteForceResult brute_force_ml(const ComplexMatrix& m, const ComplexVector& x,
                                const Constellation& constellation);

// ||x - M a||^2 evaluated directly, uncounted.
double lattice_distance_sq(const ComplexMatrix& m, const ComplexVector& x,
                           const ComplexVector& a);

}  // namespace sphdec
