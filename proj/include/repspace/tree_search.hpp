#ifndef REPSPACE_TREE_SEARCH_HPP
#define REPSPACE_TREE_SEARCH_HPP

// Koenig-style exhaustive search over a finitely branching tree of partial
// names. A node's partial name is a finite word whose continuation is
// unavailable; a verdict computed on it is therefore valid for every branch
// through the node.
//
// Rounds run at fuel 2^r. In round r every pending node is observed at that
// fuel; confirmed nodes are dropped, and an unconfirmed node that asked for a
// bit past its word is replaced by its children, provided their depth is at
// most r + 1 and the frontier stays within the cap. The search confirms when
// the frontier becomes empty.

#include "realnames.hpp"

namespace repspace {

struct TreeNode {
  Bits word;
  std::size_t depth = 0;  // roots have depth 1
  std::int64_t k = 0;     // grid numerator for interval trees
};

struct CanonicalTree {
  std::string label;
  std::function<std::vector<TreeNode>()> roots;
  std::function<std::vector<TreeNode>(const TreeNode&)> children;
};

/// Full binary tree; the depth-d nodes are the 2^d words of length d.
inline CanonicalTree cantor_tree() {
  return {"cantor",
          [] { return std::vector<TreeNode>{{Bits{false}, 1, 0}, {Bits{true}, 1, 0}}; },
          [](const TreeNode& n) {
            std::vector<TreeNode> out;
            for (bool b : {false, true}) {
              TreeNode c{n.word, n.depth + 1, 0};
              c.word.push_back(b);
              out.push_back(std::move(c));
            }
            return out;
          }};
}

/// Real names of points of [0,1] by nested dyadic intervals. The depth-d node
/// k is I = [k 2^-(d-1), (k+1) 2^-(d-1)] and its word holds the midpoints of
/// the d intervals containing it, so block m is within 2^-(m+1) of every
/// point of I. The children are the two halves.
inline CanonicalTree unit_interval_tree() {
  auto node = [](const Bits& prefix, std::size_t depth, std::int64_t k) {
    TreeNode n{prefix, depth, k};
    mpq_class c(2 * k + 1);
    mpq_div_2exp(c.get_mpq_t(), c.get_mpq_t(), static_cast<unsigned long>(depth));
    auto bits = gamma_bits(rational_code(c) + 1);
    n.word.insert(n.word.end(), bits.begin(), bits.end());
    return n;
  };
  return {"unit interval",
          [node] { return std::vector<TreeNode>{node(Bits{}, 1, 0)}; },
          [node](const TreeNode& n) {
            std::vector<TreeNode> out;
            if (n.depth >= 62) return out;
            for (std::int64_t j = 0; j <= 1; ++j) out.push_back(node(n.word, n.depth + 1, 2 * n.k + j));
            return out;
          }};
}

struct SearchResult {
  bool confirmed = false;
  std::size_t depth = 0;  // deepest node that had to be confirmed
  Fuel fuel = 0;          // fuel of the confirming round
  std::size_t nodes = 0;  // nodes evaluated
};

inline constexpr std::size_t kDefaultFrontierCap = 1u << 12;

/// Incremental search; `verdict` maps a partial point name to a Sierpinski
/// name. Rounds are deterministic, so results depend only on the fuel reached.
class TreeSearch {
 public:
  using Verdict = std::function<Name(const Name&)>;

  TreeSearch(CanonicalTree tree, Verdict verdict, std::size_t frontier_cap = kDefaultFrontierCap)
      : tree_(std::move(tree)), verdict_(std::move(verdict)), cap_(frontier_cap) {
    for (auto& n : tree_.roots()) pending_.push_back(make_pending(std::move(n)));
  }

  /// Runs every round whose fuel 2^r is at most `fuel`.
  const SearchResult& advance(Fuel fuel) {
    std::lock_guard lock(mutex_);
    while (!result_.confirmed && next_round_ < 63 && (Fuel{1} << next_round_) <= fuel) run_round(next_round_++);
    return result_;
  }

  const SearchResult& result() const { return result_; }

 private:
  struct Pending {
    TreeNode node;
    Name point;
    Name verdict;
  };

  Pending make_pending(TreeNode n) {
    ++result_.nodes;
    Name point = partial_word(n.word);
    Name v = verdict_(point);
    return {std::move(n), std::move(point), std::move(v)};
  }

  void run_round(unsigned r) {
    const Fuel f = Fuel{1} << r;
    std::vector<Pending> work = std::move(pending_);
    std::vector<Pending> keep;
    pending_.clear();
    while (!work.empty()) {
      Pending p = std::move(work.back());
      work.pop_back();
      if (p.verdict.observe(f, f)) {
        confirmed_depth_ = std::max(confirmed_depth_, p.node.depth);
        continue;
      }
      const auto* pw = p.point.as<PartialWordName>();
      bool expand = pw && pw->touched_beyond() && p.node.depth + 1 <= r + 1 &&
                    work.size() + keep.size() + 3 <= cap_;
      if (expand) {
        auto kids = tree_.children(p.node);
        if (kids.empty()) {
          keep.push_back(std::move(p));
          continue;
        }
        for (auto& k : kids) work.push_back(make_pending(std::move(k)));
      } else {
        keep.push_back(std::move(p));
      }
    }
    pending_ = std::move(keep);
    if (pending_.empty()) {
      result_.confirmed = true;
      result_.depth = confirmed_depth_;
      result_.fuel = f;
    }
  }

  CanonicalTree tree_;
  Verdict verdict_;
  std::size_t cap_;
  std::mutex mutex_;
  std::vector<Pending> pending_;
  unsigned next_round_ = 0;
  std::size_t confirmed_depth_ = 0;
  SearchResult result_;
};

}  // namespace repspace

#endif  // REPSPACE_TREE_SEARCH_HPP
