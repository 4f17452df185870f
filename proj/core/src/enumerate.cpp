#include "crnv/enumerate.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace crnv {

namespace {

struct MemoEntry {
  Signature sig;
};

void check_memo_cap(std::size_t size, const EnumerationCaps& caps) {
  if (size > caps.max_memo)
    throw CapExceeded("max_memo", "enumeration exceeded the memo cap of " +
                                      std::to_string(caps.max_memo) + " signatures");
}

EnumerationResult enumerate_sequential(const Crn& crn, std::uint32_t w,
                                       const EnumerationCaps& caps) {
  EnumerationResult out;
  std::unordered_set<Signature, SignatureHash> memo;

  struct Frame {
    Signature sig;
    std::uint32_t next = 0;
    std::uint32_t depth = 0;
  };
  std::vector<Frame> stack;
  std::vector<std::uint32_t> path;

  auto visit = [&](Signature sig, std::uint32_t depth) {
    check_memo_cap(memo.size() + 1, caps);
    out.signatures.push_back(sig);
    out.witnesses.push_back(sig.undecomposable()
                                ? std::optional<Pathway>(Pathway{
                                      {path.begin(), path.begin() + depth}})
                                : std::nullopt);
    memo.insert(std::move(sig));
  };

  Signature root = empty_signature();
  visit(root, 0);
  stack.push_back(Frame{std::move(root), 0, 0});

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next >= crn.size()) {
      stack.pop_back();
      continue;
    }
    std::uint32_t r = f.next++;
    auto ext = extend_signature(crn, f.sig, crn.reactions()[r]);
    if (!ext || ext->width > w) continue;
    if (memo.contains(*ext)) continue;
    path.resize(f.depth);
    path.push_back(r);
    std::uint32_t depth = f.depth + 1;
    // A nonempty pathway ending in a formal state decomposes against any
    // continuation: the continuation's unmet needs are covered by that formal
    // state, so it is semiformal on its own. No prime lies beyond this
    // signature and it need not be grown (it is still recorded).
    bool grow = !crn.is_formal_state(ext->final);
    visit(*ext, depth);
    if (grow) stack.push_back(Frame{std::move(*ext), 0, depth});
  }
  return out;
}

EnumerationResult enumerate_parallel(const Crn& crn, std::uint32_t w, const EnumerationCaps& caps,
                                     unsigned jobs) {
  EnumerationResult out;
  std::unordered_set<Signature, SignatureHash> memo;
  std::mutex mu;
  std::condition_variable cv;
  struct Node {
    Signature sig;
    Pathway path;
  };
  std::deque<Node> queue;
  unsigned busy = 0;
  std::exception_ptr failure;

  {
    Signature root = empty_signature();
    memo.insert(root);
    out.signatures.push_back(root);
    out.witnesses.emplace_back(Pathway{});
    queue.push_back(Node{std::move(root), Pathway{}});
  }

  auto worker = [&]() {
    std::unique_lock lock(mu);
    while (true) {
      cv.wait(lock, [&] { return failure || !queue.empty() || busy == 0; });
      if (failure || (queue.empty() && busy == 0)) return;
      if (queue.empty()) continue;
      Node node = std::move(queue.front());
      queue.pop_front();
      ++busy;
      lock.unlock();

      std::vector<Node> fresh;
      try {
        for (std::uint32_t r = 0; r < crn.size(); ++r) {
          auto ext = extend_signature(crn, node.sig, crn.reactions()[r]);
          if (!ext || ext->width > w) continue;
          Pathway p = node.path;
          p.steps.push_back(r);
          fresh.push_back(Node{std::move(*ext), std::move(p)});
        }
      } catch (...) {
        lock.lock();
        if (!failure) failure = std::current_exception();
        --busy;
        cv.notify_all();
        continue;
      }

      lock.lock();
      try {
        for (auto& n : fresh) {
          if (memo.contains(n.sig)) continue;
          check_memo_cap(memo.size() + 1, caps);
          memo.insert(n.sig);
          out.signatures.push_back(n.sig);
          out.witnesses.push_back(n.sig.undecomposable() ? std::optional<Pathway>(n.path)
                                                         : std::nullopt);
          // Formal-final pathways are recorded but not grown; see the
          // sequential enumeration for why nothing prime lies beyond them.
          if (!crn.is_formal_state(n.sig.final)) queue.push_back(std::move(n));
        }
      } catch (...) {
        if (!failure) failure = std::current_exception();
      }
      --busy;
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

EnumerationResult enumerate_signatures(const Crn& crn, std::uint32_t w,
                                       const EnumerationCaps& caps, unsigned jobs) {
  if (jobs > 1) return enumerate_parallel(crn, w, caps, jobs);
  return enumerate_sequential(crn, w, caps);
}

std::vector<Reaction> BasisResult::nontrivial_basis() const {
  std::vector<Reaction> out;
  for (const auto& r : formal_basis)
    if (!r.trivial()) out.push_back(r);
  return out;
}

std::vector<Reaction> BasisResult::trivial_basis() const {
  std::vector<Reaction> out;
  for (const auto& r : formal_basis)
    if (r.trivial()) out.push_back(r);
  return out;
}

const Pathway* BasisResult::witness_for(const Reaction& r) const {
  for (std::size_t i = 0; i < formal_basis.size(); ++i)
    if (formal_basis[i] == r) return &basis_witnesses[i];
  return nullptr;
}

namespace {

void extract_basis(const Crn& crn, BasisResult& res) {
  std::vector<std::pair<Reaction, Pathway>> basis;
  std::unordered_set<Reaction, ReactionHash> seen;
  const auto& sigs = res.enumeration.signatures;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    const Signature& sig = sigs[i];
    if (!is_prime_formal(crn, sig)) continue;
    Reaction net{sig.initial, sig.final};
    if (!seen.insert(net).second) continue;
    basis.emplace_back(std::move(net), *res.enumeration.witnesses[i]);
  }
  std::sort(basis.begin(), basis.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  res.formal_basis.clear();
  res.basis_witnesses.clear();
  for (auto& [r, p] : basis) {
    res.formal_basis.push_back(std::move(r));
    res.basis_witnesses.push_back(std::move(p));
  }
}

std::uint32_t max_undecomposable_width(const EnumerationResult& enumr) {
  std::uint32_t w = 0;
  for (const auto& sig : enumr.signatures)
    if (sig.undecomposable()) w = std::max(w, sig.width);
  return w;
}

}  // namespace

BasisResult find_basis(const Crn& crn, const EnumerationCaps& caps, unsigned jobs,
                       const std::vector<Reaction>* reference) {
  BasisResult res;
  if (crn.empty()) {
    // No reactions: the only semiformal pathway is empty, the basis is empty.
    res.complete = true;
    res.enumeration.signatures.push_back(empty_signature());
    res.enumeration.witnesses.emplace_back(Pathway{});
    return res;
  }

  std::unordered_set<Reaction, ReactionHash> ref;
  if (reference)
    for (const auto& r : *reference)
      if (!r.trivial()) ref.insert(r);

  const std::uint32_t b = branching_factor(crn);
  std::uint32_t w_max = 0;
  for (std::uint32_t iter = 0; iter < caps.max_iterations; ++iter) {
    EnumerationResult enumr;
    try {
      enumr = enumerate_signatures(crn, w_max, caps, jobs);
    } catch (const CapExceeded& e) {
      res.complete = false;
      res.reason = std::string(e.what()) + " (at width bound " + std::to_string(w_max) + ")";
      res.w_max = w_max;
      extract_basis(crn, res);  // whatever the last completed round established
      return res;
    }
    std::uint32_t w = max_undecomposable_width(enumr);
    res.enumeration = std::move(enumr);
    res.w_max = w_max;
    res.w = w;
    if ((w + 1) * b <= w_max) {
      res.complete = true;
      break;
    }
    if (reference) {
      // The loop has to widen again. A prime found now stays in the basis, so
      // any net reaction outside the reference is already definite evidence of
      // divergence; give up on completing the basis only when the next, wider
      // round threatens the memo cap (each widening step multiplies the
      // signature count severalfold). Small rounds keep going so cheap CRNs
      // still finish with a complete basis.
      extract_basis(crn, res);
      res.foreign.clear();
      for (const auto& r : res.formal_basis)
        if (!r.trivial() && !ref.contains(r)) res.foreign.push_back(r);
      if (!res.foreign.empty() && res.enumeration.signatures.size() > caps.max_memo / 64) {
        res.reason = "stopped early: found " + std::to_string(res.foreign.size()) +
                     " basis reaction(s) outside the reference basis at width bound " +
                     std::to_string(w_max);
        return res;
      }
    }
    std::uint32_t next = (w + 1) * b;
    if (next > caps.max_width_bound) {
      res.reason = "next width bound " + std::to_string(next) + " exceeds max_width_bound " +
                   std::to_string(caps.max_width_bound) +
                   "; undecomposable pathways may have unbounded width";
      extract_basis(crn, res);
      return res;
    }
    w_max = next;
  }
  if (!res.complete) {
    res.reason = "widening loop did not converge within max_iterations = " +
                 std::to_string(caps.max_iterations);
    extract_basis(crn, res);
    return res;
  }
  res.foreign.clear();  // a complete basis speaks for itself
  extract_basis(crn, res);
  return res;
}

std::vector<Reaction> naive_basis_oracle(const Crn& crn, std::size_t max_len,
                                         std::uint32_t max_width) {
  std::vector<Reaction> out;
  std::unordered_set<Reaction, ReactionHash> seen;
  Pathway p;
  auto rec = [&](auto&& self) -> void {
    if (!p.empty()) {
      auto cls = classify(crn, p);
      if (cls.formal && decomposed_final_states(crn, p, std::max<std::size_t>(max_len, p.size())).empty()) {
        Reaction net = net_reaction(crn, p);
        if (seen.insert(net).second) out.push_back(std::move(net));
      }
    }
    if (p.size() >= max_len) return;
    for (std::uint32_t r = 0; r < crn.size(); ++r) {
      p.steps.push_back(r);
      if (is_semiformal(crn, p) && width(crn, p) <= max_width) self(self);
      p.steps.pop_back();
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace crnv
