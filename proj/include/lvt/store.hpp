#pragma once

// Store algebra: domains, independence, compatibility, extension, the
// compatible union and positional splitting. Stores are persistent values;
// every operation returns a new store.

#include <compare>
#include <set>
#include <stdexcept>
#include <variant>

#include "lvt/syntax.hpp"

namespace lvt {

struct Key {
  Sort sort;
  Name name;
  auto operator<=>(const Key&) const = default;
};

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateKey : public StoreError {
 public:
  explicit DuplicateKey(const Key& key);
};

class KeyNotFound : public StoreError {
 public:
  explicit KeyNotFound(const Key& key);
};

class IncompatibleStores : public StoreError {
 public:
  explicit IncompatibleStores(const Key& key);
};

class OpenStore : public StoreError {
 public:
  OpenStore();
};

/// τ0 [key:=value] τ1.
struct SplitView {
  Store prefix;
  Binding binding;
  Store suffix;

  Store reassemble() const;
};

std::set<Key> domain(const Store& s);

/// Throws DuplicateKey if a key occurs twice.
void check_unique_keys(const Store& s);

/// τ # τ′: disjoint domains.
bool independent(const Store& a, const Store& b);
/// τ ⋄ τ′: every shared key maps to α-equivalent values.
bool compatible(const Store& a, const Store& b);
/// τ ⊲ τ′: dom(τ) ⊆ dom(τ′) and τ ⋄ τ′.
bool extends(const Store& smaller, const Store& larger);

/// Compatible union of two closed stores. Shared keys are matched in the
/// order they occur in `a`; bindings private to `b` preceding a shared key
/// are placed right before it (τ0 τ′0 [x:=t] (τ1 ∪ τ′1)), and the rest of
/// `b` follows the last shared key. If `b` orders shared keys differently
/// from `a`, private bindings of `b` wait until their dependencies are
/// placed, so the result stays closed and keeps the order of `a`.
Store store_union(const Store& a, const Store& b);

/// Throws KeyNotFound.
SplitView split_at(const Store& s, const Key& key);

/// Throws DuplicateKey.
Store append(const Store& s, Binding b);
Store concat(const Store& a, const Store& b);

/// Index of `key` in the store, or npos.
std::size_t find_key(const Store& s, const Key& key);

inline Key key_of(const Binding& b) { return Key{b.sort(), b.key}; }

}  // namespace lvt
