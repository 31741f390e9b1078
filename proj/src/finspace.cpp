#include "valcone/finspace.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>

namespace valcone {

std::vector<int> mask_points(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

FinPoset::FinPoset(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& leq_pairs)
    : names_(std::move(elements)) {
  const std::size_t n = names_.size();
  if (n == 0) throw domain_error("space must have at least one point");
  if (n > 60) throw domain_error("space too large (limit 60 points)");
  std::unordered_map<std::string, int> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (!idx.emplace(names_[i], static_cast<int>(i)).second)
      throw domain_error("duplicate point '" + names_[i] + "'");
  }
  up_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) up_[i] |= Mask(1) << i;
  for (const auto& [a, b] : leq_pairs) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw domain_error("unknown point '" + a + "' in leq");
    if (ib == idx.end()) throw domain_error("unknown point '" + b + "' in leq");
    up_[ia->second] |= Mask(1) << ib->second;
  }
  // transitive closure
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      Mask acc = up_[a];
      for (int b : mask_points(up_[a])) acc |= up_[b];
      if (acc != up_[a]) { up_[a] = acc; changed = true; }
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (leq(static_cast<int>(a), static_cast<int>(b)) &&
          leq(static_cast<int>(b), static_cast<int>(a)))
        throw domain_error("relation not antisymmetric: " + names_[a] + " and " + names_[b]);
  down_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (leq(static_cast<int>(b), static_cast<int>(a))) down_[a] |= Mask(1) << b;
}

int FinPoset::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw domain_error("unknown point '" + name + "'");
}

bool FinPoset::is_upset(Mask m) const {
  for (int a : mask_points(m))
    if ((up_[a] & ~m) != 0) return false;
  return true;
}

bool FinPoset::is_downset(Mask m) const {
  for (int a : mask_points(m))
    if ((down_[a] & ~m) != 0) return false;
  return true;
}

Mask FinPoset::saturate(Mask m) const {
  Mask out = 0;
  for (int a : mask_points(m)) out |= up_[a];
  return out;
}

Mask FinPoset::down_closure(Mask m) const {
  Mask out = 0;
  for (int a : mask_points(m)) out |= down_[a];
  return out;
}

int FinPoset::least() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (up_[a] == full_mask()) return static_cast<int>(a);
  return -1;
}

std::vector<int> FinPoset::minimal_elements(Mask m) const {
  std::vector<int> out;
  for (int a : mask_points(m))
    if ((down_[a] & m) == (Mask(1) << a)) out.push_back(a);
  return out;
}

std::vector<Mask> FinPoset::all_upsets() const {
  if (size() > 20) throw domain_error("upset enumeration limited to 20 points");
  std::vector<Mask> out;
  const Mask full = full_mask();
  for (Mask m = 0; ; ++m) {
    if (is_upset(m)) out.push_back(m);
    if (m == full) break;
  }
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::shared_ptr<FinPoset> FinPoset::without_least() const {
  int bot = least();
  if (bot < 0) throw domain_error("space has no least element");
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < size(); ++i)
    if (static_cast<int>(i) != bot) elems.push_back(names_[i]);
  if (elems.empty()) throw domain_error("space minus its least element is empty");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (a != b && static_cast<int>(a) != bot && static_cast<int>(b) != bot &&
          leq(static_cast<int>(a), static_cast<int>(b)))
        pairs.emplace_back(names_[a], names_[b]);
  return std::make_shared<FinPoset>(std::move(elems), pairs);
}

bool FinPoset::same_space(const FinPoset& o) const {
  return this == &o || (names_ == o.names_ && up_ == o.up_);
}

OpenSet::OpenSet(SpacePtr s, Mask m) : space(std::move(s)), members(m) {
  if (!space) throw domain_error("open set without a space");
  if ((members & ~space->full_mask()) != 0) throw domain_error("open set mentions unknown points");
  if (!space->is_upset(members)) throw domain_error("set is not upward-closed");
}

OpenSet saturate(const SpacePtr& space, const std::vector<std::string>& points) {
  Mask m = 0;
  for (const auto& p : points) m |= Mask(1) << space->index(p);
  return OpenSet(space, space->saturate(m));
}

std::vector<Mask> generate_lattice(const FinPoset& space, const std::vector<Mask>& opens) {
  for (Mask m : opens)
    if (!space.is_upset(m)) throw domain_error("lattice generator is not an open");
  std::set<Mask> fam(opens.begin(), opens.end());
  fam.insert(0);
  fam.insert(space.full_mask());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(fam.begin(), fam.end());
    for (std::size_t i = 0; i < cur.size() && !grew; ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (fam.insert(cur[i] | cur[j]).second) grew = true;
        if (fam.insert(cur[i] & cur[j]).second) grew = true;
        if (grew) break;
      }
  }
  std::vector<Mask> out(fam.begin(), fam.end());
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::vector<Crescent> crescent_partition(const FinPoset& space, const std::vector<Mask>& opens) {
  for (Mask m : opens)
    if (!space.is_upset(m)) throw domain_error("crescent generator is not an open");
  const std::size_t n = opens.size();
  if (n > 20) throw domain_error("crescent partition limited to 20 generators");
  std::vector<Crescent> out(std::size_t(1) << n);
  for (Mask lbl = 0; lbl < out.size(); ++lbl) out[lbl].label = lbl;
  for (std::size_t x = 0; x < space.size(); ++x) {
    Mask sig = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask_has(opens[i], static_cast<int>(x))) sig |= Mask(1) << i;
    out[sig].members |= Mask(1) << x;
  }
  return out;
}

}  // namespace valcone
