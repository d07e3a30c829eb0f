#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "specdist/core.hpp"
#include "specdist/match.hpp"

namespace specdist {

/// y -> lambda_j(f(a + (b - a)(k y - j + 1))) on [(j - 1)/k, j/k), with the
/// last branch also covering y = 1. Declared bounds are the extreme branch
/// values over 2049 equispaced points per branch.
ScalarSymbol concat_branches(const MatrixSymbol& ms);

struct Restriction {
    Eigen::MatrixXcd matrix;
    /// Selected 1-based indices i with i/(n+1) in E.
    std::vector<std::size_t> indices;

    /// d_n^E.
    std::size_t count() const noexcept { return indices.size(); }
};

/// Principal submatrix R_E(A) on the indices i with i/(n+1) in E. An empty
/// selection yields a 0 x 0 matrix.
Restriction restriction(const Eigen::MatrixXcd& a, const IntervalUnion& e);
/// Number of i in 1..n with i/(n+1) in E.
std::size_t restriction_count(std::size_t n, const IntervalUnion& e);

/// Assignment of every element of a multiset to one of k parts. Elements are
/// identified by their position in `values`.
class Partition {
public:
    Partition(std::vector<double> values, std::vector<std::size_t> assignment, std::size_t parts);

    std::size_t parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
    std::size_t part_of(std::size_t element) const { return assignment_.at(element); }

    /// Elements of part j in index order.
    std::vector<std::size_t> members(std::size_t j) const;
    /// Values of part j in index order.
    std::vector<double> part(std::size_t j) const;
    std::vector<std::size_t> cardinalities() const;

private:
    std::vector<double> values_;
    std::vector<std::size_t> assignment_;
    std::size_t parts_;
};

/// edges[u][v] = |A_u intersect B_v|, the number of elements in part u of A
/// and part v of B. A directed edge (u, v) is present iff edges[u][v] > 0.
struct DisplacementGraph {
    std::vector<std::vector<std::size_t>> edges;

    std::size_t nodes() const noexcept { return edges.size(); }
    bool has_edge(std::size_t u, std::size_t v) const { return edges.at(u).at(v) > 0; }
};

/// Both partitions must cover the same elements with the same part count.
DisplacementGraph displacement_graph(const Partition& a, const Partition& b);

/// Shortest directed path from j to i (both 0-based), as a node list
/// starting at j and ending at i. Requires |A_m| = |B_m| for every m; when
/// that holds and (i, j) is an edge, a path exists. Throws LemmaViolation
/// if the search fails.
std::vector<std::size_t> graph_path(const Partition& a, const Partition& b, std::size_t i, std::size_t j);

/// Rank-matching split: sample the concatenated branch function at
/// y_i = i/d (d = |lambdas|) and hand position i the eigenvalue of the same
/// rank as the sample there. Positions L_1 + ... + L_{j-1} + 1 .. L_1 + ... + L_j
/// form part j, so the cardinalities are exactly `cards`.
Partition initial_split(const RealMultiset& lambdas, const MatrixSymbol& ms, const std::vector<std::size_t>& cards);

struct RefineStats {
    std::size_t initial_bad = 0;
    std::size_t iterations = 0;
};

/// Successive displacements until every part lies in its target range.
/// Each step takes the smallest bad element x (ties by index) in part j,
/// finds the reference part p of x, walks a path p -> ... -> j in the
/// displacement graph of (current, reference) moving one element along each
/// edge (bad ones preferred, then smallest value, then index) and moves x to
/// p. Throws std::invalid_argument if the reference is not inside the target
/// ranges or the cardinalities differ.
Partition refine_split(const Partition& init, const std::vector<IntervalUnion>& target_ranges,
                       const Partition& reference, RefineStats* stats = nullptr);

struct SplitMatch {
    Partition partition;
    /// Per branch: samples lambda_j(f(theta)) over grids[j] against part j.
    std::vector<MatchResult> branches;
};

/// initial_split, refine_split, then a sorted match per branch. The
/// cardinalities are taken from the reference; grids[j] must hold exactly
/// that many points.
SplitMatch split_and_match(const RealMultiset& lambdas, const MatrixSymbol& ms, const Partition& reference,
                           const std::vector<IntervalUnion>& target_ranges,
                           const std::vector<std::vector<double>>& grids);

}  // namespace specdist
