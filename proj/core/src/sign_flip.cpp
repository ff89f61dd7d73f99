#include <algorithm>
#include <deque>
#include <string>

#include "isocone/errors.hpp"
#include "isocone/isotonicity.hpp"

namespace isocone {
namespace {

GeneratorMatrix squareGenerators(const ConeSpec& K) {
  if (const auto* s = K.get<Simplicial>()) return s->generators;
  const auto rays = extremeRays(K);
  if (!rays || rays->cols() != rays->rows()) {
    throw Unsupported(std::string("expected a simplicial cone, got ") + std::string(kindName(K.kind())));
  }
  return GeneratorMatrix(*rays);
}

// Path from `node` up to the BFS root, node first.
std::vector<int> pathToRoot(const std::vector<int>& parent, int node) {
  std::vector<int> path{node};
  while (parent[static_cast<std::size_t>(node)] >= 0) {
    node = parent[static_cast<std::size_t>(node)];
    path.push_back(node);
  }
  return path;
}

}  // namespace

bool checkSubdual(const GeneratorMatrix& e, double tol) { return gram(e).matrix().minCoeff() >= -tol; }

bool checkSubdual(const ConeSpec& K, double tol) { return checkSubdual(squareGenerators(K), tol); }

SignFlipResult signFlipSearch(const GramMatrix& g, double tol) {
  const int m = g.dim();
  std::vector<int> color(static_cast<std::size_t>(m), -1);
  std::vector<int> parent(static_cast<std::size_t>(m), -1);

  for (int root = 0; root < m; ++root) {
    if (color[static_cast<std::size_t>(root)] >= 0) continue;
    color[static_cast<std::size_t>(root)] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        const double gij = g(i, j);
        if (std::abs(gij) <= tol) continue;
        const int expected = color[static_cast<std::size_t>(i)] ^ (gij < 0.0 ? 1 : 0);
        int& cj = color[static_cast<std::size_t>(j)];
        if (cj < 0) {
          cj = expected;
          parent[static_cast<std::size_t>(j)] = i;
          queue.push_back(j);
        } else if (cj != expected) {
          // Tree paths from i and j meet at their lowest common ancestor.
          const std::vector<int> pi = pathToRoot(parent, i);
          const std::vector<int> pj = pathToRoot(parent, j);
          std::size_t a = pi.size();
          std::size_t b = pj.size();
          while (a > 0 && b > 0 && pi[a - 1] == pj[b - 1]) {
            --a;
            --b;
          }
          // pi[a] == pj[b] is the common ancestor.
          Obstruction obs;
          for (std::size_t k = a + 1; k-- > 0;) obs.cycle.push_back(pi[k]);  // lca ... i
          for (std::size_t k = 0; k < b; ++k) obs.cycle.push_back(pj[k]);     // j ... below lca
          return obs;
        }
      }
    }
  }

  std::vector<int> signs(static_cast<std::size_t>(m));
  SubdualWitness w{SignVector::ones(m), {}};
  for (int i = 0; i < m; ++i) {
    signs[static_cast<std::size_t>(i)] = color[static_cast<std::size_t>(i)] == 0 ? 1 : -1;
    if (color[static_cast<std::size_t>(i)] == 0) w.indexSet.push_back(i);
  }
  w.epsilon = SignVector(std::move(signs));
  return w;
}

SignFlipResult signFlipSearch(const ConeSpec& K, double tol) {
  return signFlipSearch(gram(squareGenerators(K)), tol);
}

std::optional<std::array<int, 3>> tripleObstruction(const GramMatrix& g, double tol) {
  const int m = g.dim();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (g(i, j) >= -tol) continue;
      for (int k = j + 1; k < m; ++k) {
        if (g(i, k) < -tol && g(j, k) < -tol) return std::array<int, 3>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

std::optional<std::array<int, 3>> tripleObstruction(const ConeSpec& K, double tol) {
  return tripleObstruction(gram(squareGenerators(K)), tol);
}

}  // namespace isocone
