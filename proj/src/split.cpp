#include "specdist/split.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "specdist/errors.hpp"

namespace specdist {

ScalarSymbol concat_branches(const MatrixSymbol& ms) {
    const std::size_t k = ms.size();
    const double a = ms.a();
    const double b = ms.b();
    const auto eval = [ms, k, a, b](double y) {
        const double ky = static_cast<double>(k) * y;
        auto j = static_cast<std::size_t>(std::max(0.0, std::floor(ky)));
        j = std::min(j, k - 1);
        const double x = a + (b - a) * (ky - static_cast<double>(j));
        return ms.branch(j, std::clamp(x, a, b));
    };

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    constexpr std::size_t samples = 2049;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const auto br = ms.branches(x);
        lo = std::min(lo, br.front());
        hi = std::max(hi, br.back());
    }

    std::vector<double> cuts;
    for (std::size_t j = 1; j < k; ++j) cuts.push_back(static_cast<double>(j) / static_cast<double>(k));
    return ScalarSymbol::univariate(0.0, 1.0, eval, lo, hi, std::move(cuts));
}

std::size_t restriction_count(std::size_t n, const IntervalUnion& e) {
    std::size_t c = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (e.contains(static_cast<double>(i) / static_cast<double>(n + 1))) ++c;
    }
    return c;
}

Restriction restriction(const Eigen::MatrixXcd& a, const IntervalUnion& e) {
    if (a.rows() != a.cols()) throw std::invalid_argument("restriction: matrix must be square");
    const auto n = static_cast<std::size_t>(a.rows());
    Restriction r;
    for (std::size_t i = 1; i <= n; ++i) {
        if (e.contains(static_cast<double>(i) / static_cast<double>(n + 1))) r.indices.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(r.indices.size());
    r.matrix.resize(m, m);
    for (Eigen::Index p = 0; p < m; ++p) {
        for (Eigen::Index q = 0; q < m; ++q) {
            r.matrix(p, q) = a(static_cast<Eigen::Index>(r.indices[static_cast<std::size_t>(p)] - 1),
                               static_cast<Eigen::Index>(r.indices[static_cast<std::size_t>(q)] - 1));
        }
    }
    return r;
}

Partition::Partition(std::vector<double> values, std::vector<std::size_t> assignment, std::size_t parts)
    : values_(std::move(values)), assignment_(std::move(assignment)), parts_(parts) {
    if (parts_ == 0) throw std::invalid_argument("Partition: need at least one part");
    if (values_.size() != assignment_.size()) throw std::invalid_argument("Partition: one part index per element");
    for (std::size_t j : assignment_) {
        if (j >= parts_) throw std::invalid_argument("Partition: part index out of range");
    }
}

std::vector<std::size_t> Partition::members(std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < size(); ++x) {
        if (assignment_[x] == j) out.push_back(x);
    }
    return out;
}

std::vector<double> Partition::part(std::size_t j) const {
    std::vector<double> out;
    for (std::size_t x = 0; x < size(); ++x) {
        if (assignment_[x] == j) out.push_back(values_[x]);
    }
    return out;
}

std::vector<std::size_t> Partition::cardinalities() const {
    std::vector<std::size_t> c(parts_, 0);
    for (std::size_t j : assignment_) ++c[j];
    return c;
}

namespace {

void require_compatible(const Partition& a, const Partition& b, const char* who) {
    if (a.parts() != b.parts() || a.size() != b.size()) {
        throw std::invalid_argument(std::string(who) + ": partitions differ in size or part count");
    }
    if (a.values() != b.values()) throw std::invalid_argument(std::string(who) + ": partitions of different elements");
}

}  // namespace

DisplacementGraph displacement_graph(const Partition& a, const Partition& b) {
    require_compatible(a, b, "displacement_graph");
    DisplacementGraph g{std::vector<std::vector<std::size_t>>(a.parts(), std::vector<std::size_t>(a.parts(), 0))};
    for (std::size_t x = 0; x < a.size(); ++x) ++g.edges[a.part_of(x)][b.part_of(x)];
    return g;
}

std::vector<std::size_t> graph_path(const Partition& a, const Partition& b, std::size_t i, std::size_t j) {
    require_compatible(a, b, "graph_path");
    if (i >= a.parts() || j >= a.parts()) throw std::invalid_argument("graph_path: node out of range");
    if (a.cardinalities() != b.cardinalities()) throw std::invalid_argument("graph_path: cardinalities differ");
    if (i == j) return {i};

    const DisplacementGraph g = displacement_graph(a, b);
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> prev(g.nodes(), none);
    std::deque<std::size_t> queue{j};
    prev[j] = j;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        if (u == i) break;
        for (std::size_t v = 0; v < g.nodes(); ++v) {
            if (prev[v] == none && g.has_edge(u, v)) {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if (prev[i] == none) {
        throw LemmaViolation("graph_path: no directed path from " + std::to_string(j) + " to " + std::to_string(i));
    }
    std::vector<std::size_t> path{i};
    while (path.back() != j) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

Partition initial_split(const RealMultiset& lambdas, const MatrixSymbol& ms, const std::vector<std::size_t>& cards) {
    const std::size_t d = lambdas.size();
    if (cards.size() != ms.size()) throw std::invalid_argument("initial_split: one cardinality per branch");
    if (std::accumulate(cards.begin(), cards.end(), std::size_t{0}) != d) {
        throw std::invalid_argument("initial_split: cardinalities must add up to the multiset size");
    }

    const ScalarSymbol tilde = concat_branches(ms);
    std::vector<double> samples(d);
    for (std::size_t i = 0; i < d; ++i) samples[i] = tilde(static_cast<double>(i + 1) / static_cast<double>(d));

    const auto match = sorted_match(samples, lambdas.values());
    // Position sigma[r] holds the r-th smallest sample; give it the r-th
    // smallest eigenvalue tau[r].
    std::vector<std::size_t> position_of(d);
    for (std::size_t r = 0; r < d; ++r) position_of[match.tau[r]] = match.sigma[r];

    std::vector<std::size_t> part_of_position(d);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < cards.size(); ++j) {
        for (std::size_t c = 0; c < cards[j]; ++c) part_of_position[pos++] = j;
    }

    std::vector<std::size_t> assignment(d);
    for (std::size_t x = 0; x < d; ++x) assignment[x] = part_of_position[position_of[x]];
    Partition out(lambdas.values(), std::move(assignment), ms.size());
    if (out.cardinalities() != cards) throw InternalError("initial_split: cardinalities were not met");
    return out;
}

Partition refine_split(const Partition& init, const std::vector<IntervalUnion>& target_ranges,
                       const Partition& reference, RefineStats* stats) {
    require_compatible(init, reference, "refine_split");
    const std::size_t k = init.parts();
    if (target_ranges.size() != k) throw std::invalid_argument("refine_split: one target range per part");
    if (init.cardinalities() != reference.cardinalities()) {
        throw std::invalid_argument("refine_split: reference cardinalities differ from the initial partition");
    }
    const auto& values = init.values();
    for (std::size_t x = 0; x < values.size(); ++x) {
        if (!target_ranges[reference.part_of(x)].contains(values[x])) {
            throw std::invalid_argument("refine_split: reference element " + std::to_string(x) +
                                        " lies outside its target range");
        }
    }

    std::vector<std::size_t> current = init.assignment();
    const auto is_bad = [&](std::size_t x) { return !target_ranges[current[x]].contains(values[x]); };
    const auto smaller = [&](std::size_t x, std::size_t y) {
        return values[x] < values[y] || (values[x] == values[y] && x < y);
    };

    std::size_t initial_bad = 0;
    for (std::size_t x = 0; x < values.size(); ++x) initial_bad += is_bad(x) ? 1 : 0;

    std::size_t iterations = 0;
    while (true) {
        std::size_t x = values.size();
        for (std::size_t y = 0; y < values.size(); ++y) {
            if (is_bad(y) && (x == values.size() || smaller(y, x))) x = y;
        }
        if (x == values.size()) break;
        if (iterations == initial_bad) throw InternalError("refine_split: displacement count exceeded the bad count");

        const std::size_t j = current[x];
        const std::size_t p = reference.part_of(x);
        const Partition now(values, current, k);
        const auto path = graph_path(now, reference, j, p);

        std::vector<std::pair<std::size_t, std::size_t>> moves{{x, p}};
        for (std::size_t s = 0; s + 1 < path.size(); ++s) {
            const std::size_t u = path[s];
            const std::size_t v = path[s + 1];
            std::size_t pick = values.size();
            bool pick_bad = false;
            for (std::size_t y = 0; y < values.size(); ++y) {
                if (current[y] != u || reference.part_of(y) != v) continue;
                const bool bad = is_bad(y);
                if (pick == values.size() || (bad && !pick_bad) || (bad == pick_bad && smaller(y, pick))) {
                    pick = y;
                    pick_bad = bad;
                }
            }
            if (pick == values.size()) throw InternalError("refine_split: path edge without an element");
            moves.emplace_back(pick, v);
        }
        for (const auto& [y, to] : moves) current[y] = to;
        ++iterations;
    }

    if (stats) *stats = {initial_bad, iterations};
    Partition out(values, std::move(current), k);
    if (out.cardinalities() != init.cardinalities()) throw InternalError("refine_split: cardinalities changed");
    return out;
}

SplitMatch split_and_match(const RealMultiset& lambdas, const MatrixSymbol& ms, const Partition& reference,
                           const std::vector<IntervalUnion>& target_ranges,
                           const std::vector<std::vector<double>>& grids) {
    const std::size_t k = ms.size();
    if (grids.size() != k) throw std::invalid_argument("split_and_match: one grid per branch");
    const auto cards = reference.cardinalities();
    const Partition init = initial_split(lambdas, ms, cards);
    Partition refined = refine_split(init, target_ranges, reference);

    std::vector<MatchResult> results;
    results.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (grids[j].size() != cards[j]) {
            throw std::invalid_argument("split_and_match: grid " + std::to_string(j) + " has " +
                                        std::to_string(grids[j].size()) + " points but part has " +
                                        std::to_string(cards[j]));
        }
        std::vector<double> samples;
        samples.reserve(grids[j].size());
        for (double t : grids[j]) samples.push_back(ms.branch(j, t));
        results.push_back(sorted_match(samples, refined.part(j)));
    }
    return {std::move(refined), std::move(results)};
}

}  // namespace specdist
