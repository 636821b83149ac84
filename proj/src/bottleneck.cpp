#include "filt/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace filt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double linf_distance(const DiagramPoint& p, const DiagramPoint& q) {
  const bool pi = std::isinf(p.death), qi = std::isinf(q.death);
  if (pi != qi) return kInf;
  const double dd = (pi && qi) ? 0.0 : std::fabs(p.death - q.death);
  return std::max(std::fabs(p.birth - q.birth), dd);
}

double half_persistence(const DiagramPoint& p) {
  return std::isinf(p.death) ? kInf : (p.death - p.birth) / 2.0;
}

// Augmenting-path bipartite matching with deterministic scan order.
struct Bipartite {
  int n_left = 0, n_right = 0;
  std::vector<std::vector<int>> adjacency;

  bool augment(int u, std::vector<int>& match_left, std::vector<int>& match_right,
               std::vector<char>& visited) const {
    for (int v : adjacency[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] < 0 || augment(match_right[v], match_left, match_right, visited)) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    return false;
  }

  // Returns match_left (size n_left, -1 where unmatched).
  std::vector<int> max_matching() const {
    std::vector<int> match_left(n_left, -1), match_right(n_right, -1);
    for (int u = 0; u < n_left; ++u) {
      std::vector<char> visited(n_right, 0);
      augment(u, match_left, match_right, visited);
    }
    return match_left;
  }
};

struct FinitePart {
  double value = 0;
  std::vector<std::pair<int, int>> pairs;  // original diagram indices
};

// Threshold feasibility: left = P points + one ghost per Q point, right =
// Q points + one ghost per P point. P_i may take its own ghost at cost
// half_persistence(P_i); ghosts pair with ghosts freely. A perfect
// matching exists iff lambda is feasible.
FinitePart finite_bottleneck(const std::vector<DiagramPoint>& p, const std::vector<int>& p_idx,
                             const std::vector<DiagramPoint>& q, const std::vector<int>& q_idx) {
  const int np = static_cast<int>(p.size()), nq = static_cast<int>(q.size());
  FinitePart out;
  if (np == 0 && nq == 0) return out;

  std::vector<double> candidates;
  candidates.reserve(static_cast<std::size_t>(np) * nq + np + nq);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nq; ++j) candidates.push_back(linf_distance(p[i], q[j]));
  for (int i = 0; i < np; ++i) candidates.push_back(half_persistence(p[i]));
  for (int j = 0; j < nq; ++j) candidates.push_back(half_persistence(q[j]));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const int total = np + nq;
  auto build = [&](double lambda) {
    Bipartite graph;
    graph.n_left = graph.n_right = total;
    graph.adjacency.assign(total, {});
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < nq; ++j)
        if (linf_distance(p[i], q[j]) <= lambda) graph.adjacency[i].push_back(j);
      if (half_persistence(p[i]) <= lambda) graph.adjacency[i].push_back(nq + i);
    }
    for (int j = 0; j < nq; ++j) {
      if (half_persistence(q[j]) <= lambda) graph.adjacency[np + j].push_back(j);
      for (int i = 0; i < np; ++i) graph.adjacency[np + j].push_back(nq + i);
    }
    return graph;
  };
  auto feasible = [&](double lambda, std::vector<int>* match_out) {
    const auto match = build(lambda).max_matching();
    const bool perfect =
        std::none_of(match.begin(), match.end(), [](int v) { return v < 0; });
    if (perfect && match_out) *match_out = match;
    return perfect;
  };

  int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(candidates[mid], nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  std::vector<int> match;
  feasible(candidates[lo], &match);
  out.value = candidates[lo];
  for (int i = 0; i < np; ++i)
    if (match[i] < nq) out.pairs.emplace_back(p_idx[i], q_idx[match[i]]);
  return out;
}

}  // namespace

double matching_cost(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                     const PartialMatching& matching) {
  const int n1 = static_cast<int>(d1.points.size()), n2 = static_cast<int>(d2.points.size());
  std::vector<char> used1(n1, 0), used2(n2, 0);
  for (const auto& [i, j] : matching.pairs) {
    if (i < 0 || i >= n1 || j < 0 || j >= n2)
      raise(errc::invalid_matching, "matched index out of range");
    if (used1[i] || used2[j]) raise(errc::invalid_matching, "point matched twice");
    used1[i] = used2[j] = 1;
  }
  double cost = 0;
  for (const auto& [i, j] : matching.pairs)
    cost = std::max(cost, linf_distance(d1.points[i], d2.points[j]));
  for (int i = 0; i < n1; ++i)
    if (!used1[i]) cost = std::max(cost, half_persistence(d1.points[i]));
  for (int j = 0; j < n2; ++j)
    if (!used2[j]) cost = std::max(cost, half_persistence(d2.points[j]));
  return cost;
}

BottleneckResult bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  std::vector<DiagramPoint> fin1, fin2;
  std::vector<int> fin1_idx, fin2_idx;
  std::vector<std::pair<double, int>> ess1, ess2;  // (birth, original index)
  for (int i = 0; i < static_cast<int>(d1.points.size()); ++i) {
    if (std::isinf(d1.points[i].death))
      ess1.emplace_back(d1.points[i].birth, i);
    else
      fin1.push_back(d1.points[i]), fin1_idx.push_back(i);
  }
  for (int j = 0; j < static_cast<int>(d2.points.size()); ++j) {
    if (std::isinf(d2.points[j].death))
      ess2.emplace_back(d2.points[j].birth, j);
    else
      fin2.push_back(d2.points[j]), fin2_idx.push_back(j);
  }

  BottleneckResult result;
  double essential_value = 0;
  if (ess1.size() != ess2.size()) {
    // no matching can pay for the surplus essential points
    essential_value = kInf;
  } else {
    // sorted pairing minimizes the max |birth - birth| on the line
    std::sort(ess1.begin(), ess1.end());
    std::sort(ess2.begin(), ess2.end());
    for (std::size_t k = 0; k < ess1.size(); ++k) {
      essential_value = std::max(essential_value, std::fabs(ess1[k].first - ess2[k].first));
      result.certificate.pairs.emplace_back(ess1[k].second, ess2[k].second);
    }
  }

  const FinitePart finite = finite_bottleneck(fin1, fin1_idx, fin2, fin2_idx);
  result.certificate.pairs.insert(result.certificate.pairs.end(), finite.pairs.begin(),
                                  finite.pairs.end());
  result.value = std::max(essential_value, finite.value);
  return result;
}

double bottleneck_bruteforce(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  const int n1 = static_cast<int>(d1.points.size()), n2 = static_cast<int>(d2.points.size());
  if (n1 + n2 > 12) raise(errc::too_large, "brute force limited to 12 points total");
  std::vector<char> used2(n2, 0);
  std::vector<std::pair<int, int>> pairs;
  double best = kInf;
  auto descend = [&](auto&& self, int i) -> void {
    if (i == n1) {
      PartialMatching m;
      m.pairs = pairs;
      best = std::min(best, matching_cost(d1, d2, m));
      return;
    }
    self(self, i + 1);  // leave point i unmatched
    for (int j = 0; j < n2; ++j) {
      if (used2[j]) continue;
      used2[j] = 1;
      pairs.emplace_back(i, j);
      self(self, i + 1);
      pairs.pop_back();
      used2[j] = 0;
    }
  };
  descend(descend, 0);
  return best;
}

}  // namespace filt
