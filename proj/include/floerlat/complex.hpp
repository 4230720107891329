#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "floerlat/f2linalg.hpp"
#include "floerlat/region.hpp"

namespace floerlat {

struct ComplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDifferential : ComplexError {
  using ComplexError::ComplexError;
};
struct FiltrationViolation : ComplexError {
  using ComplexError::ComplexError;
};
struct WrongHomologyRank : ComplexError {
  using ComplexError::ComplexError;
};

struct Generator {
  std::string id;
  long long M = 0;  // homological grading
  long long A = 0;  // filtration grading
};

using Edge = std::pair<int, int>;  // (from, to) generator indices

// Sort an edge list and cancel pairs that occur an even number of times.
std::vector<Edge> normalize_edges(std::vector<Edge> edges);

long long binomial(long long n, long long k);

// Finitely generated bifiltered chain complex over F[U, U^-1], F = GF(2).
// The variable U has (M, A, j)-degree (-2, -1, -1).  An edge x -> y records
// the differential term U^k y of dx, with k = (M(y) - M(x) + 1) / 2 forced
// by the gradings; being filtered requires k >= 0 and A(y) - k <= A(x).
//
// In homological degree d the F-basis consists of U^((M(g)-d)/2) g over the
// generators g with M(g) = d (mod 2); such an element sits at j-level
// (d - M(g))/2 and A-level A(g) + (d - M(g))/2.  In these bases the matrix
// of the differential depends only on the parity of d, so homological
// computations happen once per parity class.
class ModelComplex {
 public:
  ModelComplex(std::string name, std::vector<Generator> gens,
               std::vector<Edge> edges, int n_components);

  const std::string& name() const { return name_; }
  const std::vector<Generator>& gens() const { return gens_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int n_components() const { return n_components_; }
  int size() const { return static_cast<int>(gens_.size()); }

  // U-power of the differential term the edge stands for.
  long long edge_power(const Edge& e) const;

  static int parity_of(long long d) {
    return static_cast<int>(((d % 2) + 2) % 2);
  }

  // Structural checks: integral nonnegative U-powers, the filtration
  // inequality, d^2 = 0, total homology rank 2^(n-1), and level dimensions
  // dim F^{j<=t}H_d / F^{j<=t-1}H_d = binom(n-1, 2t-d) for d in {0, -1}.
  void validate() const;

  const std::vector<int>& parity_gens(int p) const { return pgens_[p]; }
  int parity_pos(int gen) const { return pos_[gen]; }
  // Differential from parity class p to parity class 1-p.
  const f2::Matrix& boundary(int p) const { return B_[p]; }
  const f2::Subspace& kernel(int p) const;
  const f2::Subspace& image_into(int p) const;
  long long homology_dim(int p) const;

  struct BasisElement {
    int gen;      // generator index
    long long j;  // j-level in this degree
    long long A;  // A-level in this degree
  };
  // Basis of homological degree d, ordered like parity_gens(parity_of(d)).
  std::vector<BasisElement> basis(long long d) const;

  // dim of the image of H(F^S C)_d in H_d.
  long long level_homology_dim(long long d, const SouthWestRegion& S) const;

  ModelComplex with_name(std::string name) const;
  ModelComplex with_components(int n) const;

 private:
  std::string name_;
  std::vector<Generator> gens_;
  std::vector<Edge> edges_;
  int n_components_;
  std::vector<int> pgens_[2];
  std::vector<int> pos_;
  f2::Matrix B_[2];
  struct HomologyCache {
    std::optional<f2::KernelImage> ki[2];
  };
  mutable std::shared_ptr<HomologyCache> cache_;
  const f2::KernelImage& ki(int p) const;
};

// Span of the given coordinate axes inside an n-dimensional GF(2) space.
f2::Subspace coordinate_subspace(size_t n, const std::vector<int>& coords);

// ---- closed-form constructions ----

// 2^(n-1) generators in gradings (M, A) = (-k, 0), binom(n-1, k) of each;
// zero differential.
ModelComplex unlink_complex(int n);

// Thin complex of an n-component quasi-alternating link of signature sigma:
// a direct sum of binom(n-1, k) staircase summands of parameter
// s = (n-1-sigma)/2 - k, each with M shifted down by k.
ModelComplex staircase_thin(int n, long long sigma);

// Single staircase from a strictly decreasing symmetric exponent sequence
// e_0 > e_1 > ... > e_{2r}: white generators carry A = e_{2i}, black ones
// A = e_{2i+1}; M(w_0) = 0 and each black maps to its two neighbours.
ModelComplex lspace_staircase(const std::string& name,
                              const std::vector<long long>& exponents);

// Four-generator acyclic summand centred at (M, A) = (i, a).  The component
// count only matters when the square is summed with another complex.
ModelComplex acyclic_square(long long i, long long a, int n_components = 1);

// ---- operations ----

ModelComplex mirror(const ModelComplex& c);
ModelComplex shift(const ModelComplex& c, long long a);  // M += a
ModelComplex tensor(const ModelComplex& a, const ModelComplex& b);
ModelComplex direct_sum(const ModelComplex& a, const ModelComplex& b);
ModelComplex disjoint_union(const ModelComplex& a, const ModelComplex& b);

// Gaussian cancellation of edges with U-power 0 and equal A-gradings, in a
// deterministic order, until none remain.  The result is a bifiltered
// minimal model of the input.
ModelComplex reduce(const ModelComplex& c);

// ---- comparison ----

struct Window {
  long long t_lo = 0, t_hi = 0, s_lo = 0, s_hi = 0;
  bool operator==(const Window&) const = default;
};
Window natural_window(const ModelComplex& c);
Window join(const Window& a, const Window& b);

// Dimensions of the image of H(F^{V_{t,s}} C)_d in H_d for d in {0, -1}
// over an integer rectangle of (t, s).  The window must cover the basis
// positions of degrees 0 and -1.
struct Fingerprint {
  Window window;
  std::vector<long long> dims0, dims1;  // row-major over (t, s)
  bool operator==(const Fingerprint&) const = default;
};
Fingerprint fingerprint(const ModelComplex& c, const Window& w);

enum class LocalEquiv { Yes, No, Exceeded };

// Decides local equivalence by exhausting the space of bifiltered
// grading-preserving chain maps in both directions and testing whether any
// induces an isomorphism on homology in both parity classes.  Returns
// Exceeded when a solution space is larger than 2^budget.
LocalEquiv exhaustive_local_equiv(const ModelComplex& a,
                                  const ModelComplex& b, int budget);

// ---- singly graded flavour ----

struct PrimeGenerator {
  std::string id;
  long long delta = 0;
};

// Finitely generated filtered complex over F[U, U^-1] where U drops the
// grading delta by 1.  An edge x -> y records the term U^k' y of dx with
// k' = delta(y) - delta(x) + 1 >= 0.  Every generator contributes the basis
// element U^(delta(g) - d) g to every degree d, so the differential has the
// same (full) matrix in every degree.
class PrimeComplex {
 public:
  PrimeComplex(std::string name, std::vector<PrimeGenerator> gens,
               std::vector<Edge> edges, int n_components);

  const std::string& name() const { return name_; }
  const std::vector<PrimeGenerator>& gens() const { return gens_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int n_components() const { return n_components_; }
  int size() const { return static_cast<int>(gens_.size()); }

  long long edge_power(const Edge& e) const;

  void validate() const;  // k' >= 0 and d^2 = 0

  const f2::Matrix& boundary() const { return B_; }
  long long homology_rank() const;  // dim ker - dim im, equal in each degree

  // dim of the image of H(F^{j<=t} C)_d in H_d; the level consists of the
  // generators with delta(g) >= d - t.
  long long level_dim(long long d, long long t) const;

 private:
  std::string name_;
  std::vector<PrimeGenerator> gens_;
  std::vector<Edge> edges_;
  int n_components_;
  f2::Matrix B_;
  mutable std::optional<f2::KernelImage> ki_;
  const f2::KernelImage& ki() const;
};

// Collapse of the two filtrations into one: delta(g) = M(g) - A(g), with
// edge powers k' = 2k + A(x) - A(y).
PrimeComplex prime_of_model(const ModelComplex& c);

}  // namespace floerlat
