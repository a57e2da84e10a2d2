#include "lvt/store.hpp"

#include <map>

namespace lvt {

namespace {

std::string describe(const Key& key) {
  return std::string(key.sort == Sort::Var ? "variable " : "co-variable ") + key.name;
}

}  // namespace

DuplicateKey::DuplicateKey(const Key& key) : StoreError("duplicate store key: " + describe(key)) {}

KeyNotFound::KeyNotFound(const Key& key) : StoreError("key not found in store: " + describe(key)) {}

IncompatibleStores::IncompatibleStores(const Key& key)
    : StoreError("stores disagree on " + describe(key)) {}

OpenStore::OpenStore() : StoreError("store union requires closed stores") {}

Store SplitView::reassemble() const {
  Store out = prefix;
  out.bindings.push_back(binding);
  out.bindings.insert(out.bindings.end(), suffix.bindings.begin(), suffix.bindings.end());
  return out;
}

std::set<Key> domain(const Store& s) {
  std::set<Key> out;
  for (const auto& b : s.bindings) out.insert(key_of(b));
  return out;
}

void check_unique_keys(const Store& s) {
  std::set<Key> seen;
  for (const auto& b : s.bindings) {
    if (!seen.insert(key_of(b)).second) throw DuplicateKey(key_of(b));
  }
}

// Keys are unique, so the direction does not matter; the machine mostly
// looks up recent bindings.
std::size_t find_key(const Store& s, const Key& key) {
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s.bindings[i].key == key.name && s.bindings[i].sort() == key.sort) return i;
  }
  return static_cast<std::size_t>(-1);
}

bool independent(const Store& a, const Store& b) {
  const auto db = domain(b);
  for (const auto& x : a.bindings)
    if (db.contains(key_of(x))) return false;
  return true;
}

bool compatible(const Store& a, const Store& b) {
  std::map<Key, const Binding*> index;
  for (const auto& x : b.bindings) index.emplace(key_of(x), &x);
  for (const auto& x : a.bindings) {
    const auto it = index.find(key_of(x));
    if (it != index.end() && !alpha_equal_values(x, *it->second)) return false;
  }
  return true;
}

bool extends(const Store& smaller, const Store& larger) {
  const auto dl = domain(larger);
  for (const auto& x : smaller.bindings)
    if (!dl.contains(key_of(x))) return false;
  return compatible(smaller, larger);
}

Store store_union(const Store& a, const Store& b) {
  if (!free_vars(a).empty() || !free_vars(b).empty()) throw OpenStore();
  if (a.empty()) return b;
  if (b.empty()) return a;

  std::map<Key, std::size_t> pos_in_b;
  for (std::size_t i = 0; i < b.size(); ++i) pos_in_b.emplace(key_of(b.bindings[i]), i);
  const auto dom_a = domain(a);

  Store out;
  FreeNames placed;
  std::size_t next_b = 0;  // first binding of b not yet considered

  // Private bindings of b, in b's order, up to (excluding) index `limit`.
  // Stops at the first one whose free names are not placed yet.
  auto flush_b = [&](std::size_t limit) {
    while (next_b < limit) {
      const Binding& cand = b.bindings[next_b];
      if (dom_a.contains(key_of(cand))) {
        ++next_b;  // shared; placed when met in a
        continue;
      }
      FreeNames fv = cand.term() ? free_vars(*cand.term()) : free_vars(*cand.context());
      bool ready = true;
      for (const auto& x : fv.vars) ready = ready && placed.vars.contains(x);
      for (const auto& x : fv.covars) ready = ready && placed.covars.contains(x);
      if (!ready) return;
      out.bindings.push_back(cand);
      placed.insert(cand.sort(), cand.key);
      ++next_b;
    }
  };

  for (const auto& x : a.bindings) {
    const auto it = pos_in_b.find(key_of(x));
    if (it != pos_in_b.end()) {
      if (!alpha_equal_values(x, b.bindings[it->second])) throw IncompatibleStores(key_of(x));
      flush_b(it->second);
    }
    out.bindings.push_back(x);
    placed.insert(x.sort(), x.key);
  }
  // Everything a binding of b may depend on is placed by now, except earlier
  // private bindings of b, which the in-order walk places first.
  while (next_b < b.size()) {
    const Binding& cand = b.bindings[next_b++];
    if (dom_a.contains(key_of(cand))) continue;
    out.bindings.push_back(cand);
  }
  return out;
}

SplitView split_at(const Store& s, const Key& key) {
  const std::size_t i = find_key(s, key);
  if (i == static_cast<std::size_t>(-1)) throw KeyNotFound(key);
  SplitView view{Store{}, s.bindings[i], Store{}};
  view.prefix.bindings.assign(s.bindings.begin(), s.bindings.begin() + static_cast<std::ptrdiff_t>(i));
  view.suffix.bindings.assign(s.bindings.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.bindings.end());
  return view;
}

Store append(const Store& s, Binding b) {
  if (find_key(s, key_of(b)) != static_cast<std::size_t>(-1)) throw DuplicateKey(key_of(b));
  Store out = s;
  out.bindings.push_back(std::move(b));
  return out;
}

Store concat(const Store& a, const Store& b) {
  Store out = a;
  for (const auto& x : b.bindings) {
    if (find_key(out, key_of(x)) != static_cast<std::size_t>(-1)) throw DuplicateKey(key_of(x));
    out.bindings.push_back(x);
  }
  return out;
}

}  // namespace lvt
