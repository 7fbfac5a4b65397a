#pragma once

#include "tetra/factorization.hpp"
#include "tetra/numerics.hpp"
#include "tetra/triples.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace tetra {

enum class InstanceKind { Contraction, CommutingPair, Unitary, Projection, TriangularTriple, DSSGroundTruth,
                          StrictGenerators };

/// How commuting pairs are produced.
enum class PairMode {
  Polynomial,  // two polynomials of one random matrix
  DirectSum,   // block-diagonal sum of two Polynomial pairs
  Normal,      // simultaneously unitarily diagonalizable
  Dilatable,   // Normal block ⊕ (tN, uI) block with N nilpotent, |u| = 1
};

const char* to_string(InstanceKind k);
const char* to_string(PairMode m);
InstanceKind parse_instance_kind(const std::string& s);
PairMode parse_pair_mode(const std::string& s);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::Contraction;
  Index dim = 2;
  std::uint64_t seed = 0;
  Index rank = 0;         // Projection
  double margin = 0.05;   // Contraction, CommutingPair, TriangularTriple
  Index k = 2;            // DSSGroundTruth: number of coefficient blocks
  PairMode mode = PairMode::Polynomial;
  bool staircase = false; // DSSGroundTruth second mode
};

/// Named matrices plus, for DSSGroundTruth, the certificate.
struct Instance {
  InstanceKind kind = InstanceKind::Contraction;
  std::map<std::string, Matrix> matrices;
  std::optional<DSSCertificate> certificate;
};

/// Throws InvalidArgument for invalid dimensions or ranks.
Instance generate(const InstanceSpec& spec);

Matrix random_contraction(Index n, double margin, std::uint64_t seed);
Matrix random_unitary(Index n, std::uint64_t seed);
Matrix random_projection(Index n, Index rank, std::uint64_t seed);
std::pair<Matrix, Matrix> random_commuting_pair(Index n, std::uint64_t seed, PairMode mode = PairMode::Polynomial,
                                                double margin = 0.05);

/// (P, Q, PQ) for a commuting contraction pair.
CommutingTriple random_triangular_triple(Index n, std::uint64_t seed, PairMode mode = PairMode::Polynomial,
                                         double margin = 0.05);

/// Commuting A1, A2 with equal self-commutators and sup ‖A1* + zA2‖ < 1.
std::pair<Matrix, Matrix> random_strict_generators(Index d, std::uint64_t seed);

struct DSSInstance {
  Matrix T1;
  Matrix T2;
  DSSCertificate certificate;
};

/// Compressions of the Toeplitz operators of (P + zP^⊥)U* and U(P^⊥ + zP) to
/// the first k coefficient blocks. With `staircase`, P and U split along a
/// random decomposition E = E1 ⊕ E2 and the last kept block is cut down to E1.
DSSInstance dss_ground_truth(Index d, Index k, std::uint64_t seed, bool staircase = false);

}  // namespace tetra
