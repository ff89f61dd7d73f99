#include <vector>

#include "isocone/projection.hpp"

namespace isocone {

Vector pava(const Vector& y) {
  requireFinite(y, "pava input");
  struct Block {
    double sum;
    Eigen::Index count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    blocks.push_back({y(i), 1});
    // Nonincreasing target: merge while an earlier block sits below a later one.
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  Vector out(y.size());
  Eigen::Index pos = 0;
  for (const Block& b : blocks) {
    out.segment(pos, b.count).setConstant(b.mean());
    pos += b.count;
  }
  return out;
}

Vector projectMonotoneNonneg(const Vector& y) { return pava(y).cwiseMax(0.0); }

}  // namespace isocone
