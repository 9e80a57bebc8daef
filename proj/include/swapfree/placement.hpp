#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swapfree/approx.hpp"
#include "swapfree/graph.hpp"
#include "swapfree/ingest.hpp"
#include "swapfree/permutation.hpp"
#include "swapfree/rng.hpp"
#include "swapfree/spectral.hpp"

namespace swapfree {

enum class HeuristicKind {
  perron_disconnected,
  perron_connected,
  laplacian_connected,
  completely_random_disconnected,
  partially_random_disconnected,
  completely_random_connected,
  partially_random_connected,
};

/// All seven kinds in declaration order.
const std::vector<HeuristicKind>& all_heuristics();

/// CLI names: perron-disc, perron-conn, laplacian-conn, crand-disc,
/// prand-disc, crand-conn, prand-conn.
std::string_view to_string(HeuristicKind kind);
std::optional<HeuristicKind> parse_heuristic(std::string_view name);
bool is_random(HeuristicKind kind);

struct HeuristicOptions {
  std::size_t samples = 10;  // random kinds: best of this many relabelings
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  ApproxOptions sdp;
};

/// Ranking of the problem indices used on the data side: the Perron order of
/// the similarity matrix over the genuine assets, followed by the padded
/// indices in increasing order.
Permutation asset_order(const ProblemMatrix& problem);

/// P[pi(r)] = sigma(r) for every rank r, i.e. sigma o pi^-1.
Permutation match_orders(const Permutation& pi, const Permutation& sigma);

Permutation perron_disconnected(const ProblemMatrix& problem, const HardwareGraph& g);

/// Grows a connected set of physical vertices: the rank-0 vertex of order_g
/// receives sigma(0), then each next index of sigma goes to the best ranked
/// unused neighbour of the set.
Permutation connected_heuristic(const Permutation& order_g, const Permutation& sigma,
                                const HardwareGraph& g);
Permutation connected_heuristic(const SpectralOrder& order_g, const SpectralOrder& order_c,
                                const HardwareGraph& g);

Permutation perron_connected(const ProblemMatrix& problem, const HardwareGraph& g);

/// Largest-Laplacian-eigenvector order of G against the top-eigenvector
/// order of Chat.
Permutation laplacian_connected(const ProblemMatrix& problem, const HardwareGraph& g);

/// Relabeling grown from a uniformly random start vertex, adding a uniformly
/// random vertex of N(S) \ S at each step.
Permutation random_connected(const Permutation& sigma, const HardwareGraph& g, SplitMix64& rng);

/// True when every prefix of physical vertices, in the order their logical
/// indices appear in `sigma`, induces a connected subgraph.
bool prefixes_connected(const Permutation& p, const Permutation& sigma, const HardwareGraph& g);

/// The relabelings a random kind evaluates, in sampling order.
std::vector<Permutation> random_candidates(HeuristicKind kind, const ProblemMatrix& problem,
                                           const HardwareGraph& g, std::size_t samples,
                                           std::uint64_t seed);

struct Placement {
  Permutation permutation;
  SdpCertificate certificate;
};

/// Solves the fixed-relabeling SDP for each random candidate and keeps the
/// smallest (lambda, permutation).
Placement random_placements(HeuristicKind kind, const ProblemMatrix& problem,
                            const HardwareGraph& g, const HeuristicOptions& options = {});

/// Relabeling plus certificate for any kind.
Placement run_heuristic(HeuristicKind kind, const ProblemMatrix& problem, const HardwareGraph& g,
                        const HeuristicOptions& options = {});

}  // namespace swapfree
