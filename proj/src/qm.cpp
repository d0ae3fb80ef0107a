#include <algorithm>
#include <bit>
#include <set>

#include "causanet/causal.hpp"

namespace causanet {

std::size_t Implicant::literal_count(std::size_t num_vars) const {
  return num_vars - std::popcount(dont_care);
}

namespace {

// Rendering with synthetic names A.., used as the deterministic tie-break key
// so results do not depend on caller-supplied names.
std::string render_key(const Implicant& imp, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t bit = 1u << (n - 1 - i);
    if (imp.dont_care & bit) continue;
    if (!out.empty()) out += '&';
    if (!(imp.value & bit)) out += '!';
    out += static_cast<char>('A' + i);
  }
  if (out.empty()) out = "1";
  return out;
}

std::vector<Implicant> prime_implicants(std::size_t n,
                                        const std::vector<std::uint32_t>& on) {
  // Level = popcount of value bits; merge adjacent levels with equal
  // dont_care masks and a one-bit value difference.
  std::set<std::pair<std::uint32_t, std::uint32_t>> current;
  for (std::uint32_t m : on) current.insert({m, 0});

  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> next;
    std::set<std::pair<std::uint32_t, std::uint32_t>> merged;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> items(
        current.begin(), current.end());
    for (std::size_t a = 0; a < items.size(); ++a) {
      for (std::size_t b = a + 1; b < items.size(); ++b) {
        if (items[a].second != items[b].second) continue;
        std::uint32_t diff = items[a].first ^ items[b].first;
        if (std::popcount(diff) != 1) continue;
        next.insert({items[a].first & ~diff, items[a].second | diff});
        merged.insert(items[a]);
        merged.insert(items[b]);
      }
    }
    for (const auto& item : items) {
      if (!merged.contains(item)) {
        primes.push_back({item.first, item.second});
      }
    }
    current = std::move(next);
  }
  return primes;
}

struct CoverKey {
  std::size_t literals;
  std::vector<std::string> rendered;

  bool operator<(const CoverKey& other) const {
    if (literals != other.literals) return literals < other.literals;
    return rendered < other.rendered;
  }
};

CoverKey cover_key(const std::vector<Implicant>& cover, std::size_t n) {
  CoverKey key{0, {}};
  for (const auto& imp : cover) {
    key.literals += imp.literal_count(n);
    key.rendered.push_back(render_key(imp, n));
  }
  std::sort(key.rendered.begin(), key.rendered.end());
  return key;
}

// Exhaustive minimum cover over the leftover minterms: try subset sizes in
// ascending order, keep the best key among covers of the winning size.
std::vector<Implicant> cover_residue(
    const std::vector<Implicant>& primes,
    const std::vector<std::uint32_t>& minterms, std::size_t n) {
  if (minterms.empty()) return {};
  std::vector<std::vector<bool>> covers(primes.size());
  for (std::size_t p = 0; p < primes.size(); ++p) {
    covers[p].resize(minterms.size());
    for (std::size_t m = 0; m < minterms.size(); ++m) {
      covers[p][m] = primes[p].covers(minterms[m]);
    }
  }

  std::vector<std::size_t> chosen;
  std::vector<Implicant> best;
  CoverKey best_key{};
  bool found = false;

  auto covered_all = [&]() {
    for (std::size_t m = 0; m < minterms.size(); ++m) {
      bool hit = false;
      for (std::size_t p : chosen) {
        if (covers[p][m]) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };

  std::size_t size = 1;
  for (; size <= primes.size() && !found; ++size) {
    // Enumerate all subsets of `size` primes.
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      chosen = idx;
      if (covered_all()) {
        std::vector<Implicant> cover;
        for (std::size_t p : idx) cover.push_back(primes[p]);
        CoverKey key = cover_key(cover, n);
        if (!found || key < best_key) {
          best = cover;
          best_key = key;
        }
        found = true;
      }
      // next combination
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == primes.size() - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (!found) throw Error("qm_minimize: primes fail to cover the on-set");
  return best;
}

}  // namespace

std::vector<Implicant> qm_minimize(std::size_t num_vars,
                                   std::vector<std::uint32_t> on_set) {
  if (num_vars == 0) throw Error("qm_minimize: empty variable set");
  if (num_vars > 16) throw Error("qm_minimize: more than 16 variables");
  const std::uint32_t limit = 1u << num_vars;
  std::sort(on_set.begin(), on_set.end());
  on_set.erase(std::unique(on_set.begin(), on_set.end()), on_set.end());
  for (std::uint32_t m : on_set) {
    if (m >= limit) {
      throw Error("qm_minimize: minterm " + std::to_string(m) +
                  " exceeds 2^n");
    }
  }
  if (on_set.empty()) return {};

  std::vector<Implicant> primes = prime_implicants(num_vars, on_set);

  // Essential primes: sole cover of some minterm.
  std::vector<Implicant> result;
  std::vector<bool> essential(primes.size(), false);
  for (std::uint32_t m : on_set) {
    std::size_t count = 0;
    std::size_t which = 0;
    for (std::size_t p = 0; p < primes.size(); ++p) {
      if (primes[p].covers(m)) {
        ++count;
        which = p;
      }
    }
    if (count == 1) essential[which] = true;
  }
  for (std::size_t p = 0; p < primes.size(); ++p) {
    if (essential[p]) result.push_back(primes[p]);
  }

  std::vector<std::uint32_t> residue;
  for (std::uint32_t m : on_set) {
    bool hit = false;
    for (const auto& imp : result) {
      if (imp.covers(m)) {
        hit = true;
        break;
      }
    }
    if (!hit) residue.push_back(m);
  }
  std::vector<Implicant> rest;
  for (std::size_t p = 0; p < primes.size(); ++p) {
    if (!essential[p]) rest.push_back(primes[p]);
  }
  for (const auto& imp : cover_residue(rest, residue, num_vars)) {
    result.push_back(imp);
  }

  std::sort(result.begin(), result.end(),
            [&](const Implicant& a, const Implicant& b) {
              return render_key(a, num_vars) < render_key(b, num_vars);
            });
  return result;
}

std::string implicant_to_string(const Implicant& imp,
                                std::span<const std::string> names) {
  std::string out;
  const std::size_t n = names.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t bit = 1u << (n - 1 - i);
    if (imp.dont_care & bit) continue;
    if (!out.empty()) out += '&';
    if (!(imp.value & bit)) out += '!';
    out += names[i];
  }
  if (out.empty()) out = "1";
  return out;
}

std::string implicants_to_string(std::span<const Implicant> imps,
                                 std::span<const std::string> names) {
  if (imps.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < imps.size(); ++i) {
    if (i) out += " | ";
    out += implicant_to_string(imps[i], names);
  }
  return out;
}

}  // namespace causanet
