#include "permint/restriction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace permint {

RestrictionPattern::RestrictionPattern(std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  std::set<int> ins;
  std::set<int> outs;
  for (const auto& [i, j] : pairs_) {
    if (i < 1 || j < 1) throw PatternError("pattern: one-based entries required");
    if (!ins.insert(i).second) {
      throw PatternError("pattern: input " + std::to_string(i) + " repeated");
    }
    if (!outs.insert(j).second) {
      throw PatternError("pattern: output " + std::to_string(j) + " repeated");
    }
  }
}

RestrictionPattern RestrictionPattern::from_tuples(const std::vector<int>& inputs,
                                                   const std::vector<int>& outputs) {
  if (inputs.size() != outputs.size()) {
    throw PatternError("pattern: input/output tuples differ in length");
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) pairs.emplace_back(inputs[k], outputs[k]);
  return RestrictionPattern(std::move(pairs));
}

bool RestrictionPattern::fixes_input(int i) const {
  return std::any_of(pairs_.begin(), pairs_.end(), [i](const auto& p) { return p.first == i; });
}

bool RestrictionPattern::fixes_output(int j) const {
  return std::any_of(pairs_.begin(), pairs_.end(), [j](const auto& p) { return p.second == j; });
}

std::optional<int> RestrictionPattern::image_of(int i) const {
  for (const auto& [in, out] : pairs_) {
    if (in == i) return out;
  }
  return std::nullopt;
}

std::vector<int> RestrictionPattern::inputs() const {
  std::vector<int> v;
  v.reserve(pairs_.size());
  for (const auto& p : pairs_) v.push_back(p.first);
  return v;
}

std::vector<int> RestrictionPattern::outputs() const {
  std::vector<int> v;
  v.reserve(pairs_.size());
  for (const auto& p : pairs_) v.push_back(p.second);
  return v;
}

bool RestrictionPattern::matches(const Permutation& sigma) const {
  for (const auto& [i, j] : pairs_) {
    if (i > sigma.n()) throw PatternError("pattern: input exceeds n");
    if (sigma(i) != j) return false;
  }
  return true;
}

RestrictionPattern RestrictionPattern::concat(const RestrictionPattern& other) const {
  std::map<int, int> by_input;
  for (const auto& [i, j] : pairs_) by_input[i] = j;
  for (const auto& [i, j] : other.pairs_) {
    auto it = by_input.find(i);
    if (it != by_input.end() && it->second != j) {
      throw PatternError("pattern concat: input " + std::to_string(i) +
                         " assigned two different outputs");
    }
    by_input[i] = j;
  }
  std::vector<std::pair<int, int>> merged(by_input.begin(), by_input.end());
  return RestrictionPattern(std::move(merged));  // output clashes rechecked here
}

std::strong_ordering RestrictionPattern::operator<=>(const RestrictionPattern& other) const {
  if (auto c = pairs_.size() <=> other.pairs_.size(); c != 0) return c;
  if (auto c = inputs() <=> other.inputs(); c != 0) return c;
  return outputs() <=> other.outputs();
}

std::string RestrictionPattern::to_string() const {
  if (pairs_.empty()) return "-";
  std::string s;
  for (const auto& [i, j] : pairs_) {
    if (!s.empty()) s += ',';
    s += std::to_string(i) + "->" + std::to_string(j);
  }
  return s;
}

Permutation compress_to_subspace(const SubSpace& space, const Permutation& sigma) {
  if (sigma.n() != space.n) throw DimensionError("compress: n mismatch");
  if (!space.fixed.matches(sigma)) throw PatternError("compress: permutation outside subspace");
  std::vector<int> out_relabel(static_cast<std::size_t>(space.n) + 1, 0);
  int next = 1;
  for (int j = 1; j <= space.n; ++j) {
    if (!space.fixed.fixes_output(j)) out_relabel[static_cast<std::size_t>(j)] = next++;
  }
  std::vector<int> img;
  img.reserve(static_cast<std::size_t>(space.free_count()));
  for (int i = 1; i <= space.n; ++i) {
    if (!space.fixed.fixes_input(i)) img.push_back(out_relabel[static_cast<std::size_t>(sigma(i))]);
  }
  return Permutation(std::move(img));
}

Permutation expand_from_subspace(const SubSpace& space, const Permutation& reduced) {
  if (reduced.n() != space.free_count()) throw DimensionError("expand: reduced size mismatch");
  std::vector<int> free_outputs;
  for (int j = 1; j <= space.n; ++j) {
    if (!space.fixed.fixes_output(j)) free_outputs.push_back(j);
  }
  std::vector<int> img(static_cast<std::size_t>(space.n), 0);
  int pos = 0;
  for (int i = 1; i <= space.n; ++i) {
    if (auto j = space.fixed.image_of(i)) {
      img[static_cast<std::size_t>(i) - 1] = *j;
    } else {
      img[static_cast<std::size_t>(i) - 1] =
          free_outputs[static_cast<std::size_t>(reduced(pos + 1) - 1)];
      ++pos;
    }
  }
  return Permutation(std::move(img));
}

}  // namespace permint
