// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_ACCESSORS_HPP
#define MDVIEW_ACCESSORS_HPP

#include <atomic>
#include <bit>
#include <climits>
#include <cstdint>
#include <memory>
#include <type_traits>

#include "mdview/extents.hpp"

#if defined(__GNUC__) || defined(__clang__)
#define MDVIEW_RESTRICT __restrict__
#else
#define MDVIEW_RESTRICT
#endif

namespace mdv {

/// Plain element access: the handle is a raw pointer, the reference a plain
/// lvalue reference.
template <class T>
struct default_accessor {
  using element_type = T;
  using pointer = T*;
  using reference = T&;
  using offset_policy = default_accessor;

  constexpr default_accessor() noexcept = default;

  // Accessors whose offset_policy is default_accessor convert into it.
  template <class OtherAccessor>
    requires std::is_same_v<typename OtherAccessor::element_type, T> &&
             std::is_same_v<typename OtherAccessor::offset_policy, default_accessor>
  constexpr default_accessor(const OtherAccessor&) noexcept {}

  constexpr reference access(pointer p, index_type i) const noexcept { return p[i]; }
  constexpr pointer offset(pointer p, index_type i) const noexcept { return p + i; }
};

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wignored-qualifiers"
#endif

/// Semantically identical to default_accessor, but the handle carries the
/// caller's promise that no other pointer aliases the range for the view's
/// lifetime. The promise is a caller contract; violating it is undefined.
template <class T>
struct no_alias_accessor {
  using element_type = T;
  using pointer = T* MDVIEW_RESTRICT;
  using reference = T&;
  using offset_policy = no_alias_accessor;

  constexpr reference access(pointer p, index_type i) const noexcept { return p[i]; }
  constexpr pointer offset(pointer p, index_type i) const noexcept { return p + i; }
};

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic pop
#endif

/// Element access through std::atomic_ref: concurrent mutation of the same
/// element is race-free. Restricted to types with native lock-free support.
template <class T>
struct atomic_accessor {
  static_assert(std::atomic_ref<T>::is_always_lock_free,
                "atomic_accessor requires a natively lock-free element type");

  using element_type = T;
  using pointer = T*;
  using reference = std::atomic_ref<T>;
  using offset_policy = atomic_accessor;

  reference access(pointer p, index_type i) const noexcept {
    return std::atomic_ref<T>(p[i]);
  }
  constexpr pointer offset(pointer p, index_type i) const noexcept { return p + i; }
};

template <class Word>
struct bit_packed_pointer {
  Word* word = nullptr;
  unsigned bit = 0;  // invariant: bit < bits-per-word

  friend constexpr bool operator==(const bit_packed_pointer&,
                                   const bit_packed_pointer&) = default;
};

/// Proxy reference to a single bit within a word array.
template <class Word>
class bit_packed_reference {
 public:
  constexpr bit_packed_reference(Word* word, unsigned bit)
      : word_(word), mask_(Word(Word(1) << bit)) {}

  constexpr operator bool() const noexcept { return (*word_ & mask_) != 0; }

  constexpr bit_packed_reference& operator=(bool value) noexcept {
    if (value) {
      *word_ |= mask_;
    } else {
      *word_ &= Word(~mask_);
    }
    return *this;
  }

  constexpr bit_packed_reference& operator=(const bit_packed_reference& other) noexcept {
    return *this = static_cast<bool>(other);
  }

 private:
  Word* word_;
  Word mask_;
};

/// Boolean elements packed one-per-bit into a word array. Element i lives at
/// word i / word_bits, bit i % word_bits.
template <class Word = std::uint8_t>
struct bit_packed_bool_accessor {
  static_assert(std::is_unsigned_v<Word>, "bit packing requires an unsigned word type");

  static constexpr unsigned word_bits = CHAR_BIT * sizeof(Word);

  using element_type = bool;
  using pointer = bit_packed_pointer<Word>;
  using reference = bit_packed_reference<Word>;
  using offset_policy = bit_packed_bool_accessor;

  constexpr reference access(pointer p, index_type i) const noexcept {
    const index_type abs = static_cast<index_type>(p.bit) + i;
    return reference(p.word + abs / word_bits, static_cast<unsigned>(abs % word_bits));
  }

  constexpr pointer offset(pointer p, index_type i) const noexcept {
    const index_type abs = static_cast<index_type>(p.bit) + i;
    return pointer{p.word + abs / word_bits, static_cast<unsigned>(abs % word_bits)};
  }
};

/// Promises the range start is aligned to `Alignment` bytes. Offsetting the
/// handle by a runtime amount voids the promise, so offset_policy is
/// default_accessor.
template <class T, std::size_t Alignment>
struct overaligned_accessor {
  static_assert(std::has_single_bit(Alignment), "alignment must be a power of two");
  static_assert(Alignment >= alignof(T));

  using element_type = T;
  using pointer = T*;
  using reference = T&;
  using offset_policy = default_accessor<T>;

  constexpr reference access(pointer p, index_type i) const noexcept {
    return std::assume_aligned<Alignment>(p)[i];
  }
  constexpr pointer offset(pointer p, index_type i) const noexcept { return p + i; }
};

struct space_a_tag {};
struct space_b_tag {};

/// Pointer bound to a named memory space; pointers from different spaces are
/// distinct types and never mix.
template <class T, class Space>
struct tagged_pointer {
  using space = Space;
  T* ptr = nullptr;

  friend constexpr bool operator==(const tagged_pointer&, const tagged_pointer&) = default;
};

/// Strong-typed handle accessor simulating disjoint memory spaces: a view
/// built with a SpaceA accessor only accepts SpaceA handles, enforced at the
/// type level.
template <class T, class Space>
struct space_tagged_accessor {
  using element_type = T;
  using space = Space;
  using pointer = tagged_pointer<T, Space>;
  using reference = T&;
  using offset_policy = space_tagged_accessor;

  constexpr reference access(pointer p, index_type i) const noexcept { return p.ptr[i]; }
  constexpr pointer offset(pointer p, index_type i) const noexcept {
    return pointer{p.ptr + i};
  }
};

}  // namespace mdv

#endif  // MDVIEW_ACCESSORS_HPP
