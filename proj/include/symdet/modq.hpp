#pragma once

#include <cstdint>
#include <vector>

#include "symdet/poly.hpp"

namespace symdet::modq {

bool is_prime(std::uint64_t q);
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t inv(std::uint64_t a, std::uint64_t q);
// Square roots mod an odd prime (Tonelli-Shanks); empty when a is not a
// residue, one root for 0, otherwise both roots.
std::vector<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t q);

// A polynomial with coefficients reduced mod q, in evaluation-friendly form.
struct FqPoly {
    std::vector<std::pair<Monomial, std::uint64_t>> terms;
    std::size_t nvars = 0;
    std::uint64_t eval(const std::vector<std::uint64_t>& point, std::uint64_t q) const;
};

// Throws BadPrime when q is not an odd prime > 3 or divides a denominator.
FqPoly reduce_mod(const Poly& p, std::uint64_t q);

// Independent second evaluation path: exact bignum arithmetic on the
// original rational coefficients, reduced at the end.
std::uint64_t eval_exact_mod(const Poly& p, const std::vector<std::uint64_t>& point,
                             std::uint64_t q);

// Rank and kernel of a scalar matrix over F_q.
std::size_t fq_rank(std::vector<std::vector<std::uint64_t>> m, std::uint64_t q);
std::vector<std::vector<std::uint64_t>> fq_kernel(std::vector<std::vector<std::uint64_t>> m,
                                                  std::uint64_t q);

// All roots in F_q of a univariate polynomial (coefficients low to high,
// degree small), sorted ascending. Deterministic for a fixed seed.
std::vector<std::uint64_t> fq_univariate_roots(std::vector<std::uint64_t> coeffs, std::uint64_t q,
                                               std::uint64_t seed);

// Random-fiber smoothness scan of the affine cone cut out by `equations`.
//
// Each fiber fixes every coordinate except the two distinguished z's at
// seeded random values (equations free of the z's are first repaired by
// solving them for one of their variables), then finds all points of the
// resulting bivariate system by a z1 sweep. At every on-variety point the
// Jacobian rank is computed; rank drops away from the origin and away from
// the fixed locus of the weight-parity action (all odd-weight coordinates
// zero) are re-verified with the exact evaluator and reported.
struct ScanReport {
    std::uint64_t q = 0;
    std::uint64_t seed = 0;
    long samples_requested = 0;
    long on_variety = 0;
    long fibers_tried = 0;
    struct Drop {
        std::vector<std::uint64_t> point;
        int rank;
        int expected_rank;
    };
    std::vector<Drop> drops;
    long fixed_locus_hits = 0;
    bool all_drops_reverified = true;
};

ScanReport quasismooth_scan(const std::vector<Poly>& equations, const RingPtr& ring,
                            std::uint64_t q, long n_samples, std::uint64_t seed);

// Projective F_q points of a plane system (used for the branch-point lift
// example); chart enumeration, so intended for small q.
std::vector<std::vector<std::uint64_t>> plane_projective_points(const std::vector<Poly>& eqs,
                                                                std::uint64_t q);

}  // namespace symdet::modq
