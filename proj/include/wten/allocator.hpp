#pragma once

#include <cstddef>
#include <new>

namespace wten {

namespace detail {
/// Hints the kernel to back [p, p + bytes) with transparent huge pages (Linux; no-op elsewhere).
void advise_huge_pages(void* p, std::size_t bytes) noexcept;
}  // namespace detail

/// Allocator for tensor storage. Blocks of kLargeBytes or more are 2 MiB
/// aligned and advised for huge pages, which cuts first-touch page faults
/// and TLB misses on strided mode-3 sweeps.
template <class T>
struct LargePageAllocator {
  using value_type = T;
  static constexpr std::size_t kLargeBytes = std::size_t{4} << 20;
  static constexpr std::size_t kHugePage = std::size_t{2} << 20;

  LargePageAllocator() noexcept = default;
  template <class U>
  LargePageAllocator(const LargePageAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    const std::size_t bytes = n * sizeof(T);
    if (bytes < kLargeBytes) return static_cast<T*>(::operator new(bytes, std::align_val_t{alignof(T)}));
    void* p = ::operator new(bytes, std::align_val_t{kHugePage});
    detail::advise_huge_pages(p, bytes);
    return static_cast<T*>(p);
  }

  void deallocate(T* p, std::size_t n) noexcept {
    const std::size_t bytes = n * sizeof(T);
    ::operator delete(p, bytes < kLargeBytes ? std::align_val_t{alignof(T)} : std::align_val_t{kHugePage});
  }

  template <class U>
  bool operator==(const LargePageAllocator<U>&) const noexcept {
    return true;
  }
};

}  // namespace wten
