#pragma once

#include <memory>
#include <utility>

namespace deltablock {

/// Heap-allocated value with deep-copy semantics. Breaks the recursion in
/// tree-shaped value types (AOC expressions) without giving up copyability
/// or structural equality.
template <typename T>
class box {
public:
    box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}

    box(const box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    box& operator=(const box& other) {
        if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
        return *this;
    }

    box(box&&) noexcept = default;
    box& operator=(box&&) noexcept = default;

    T& operator*() { return *ptr_; }
    const T& operator*() const { return *ptr_; }
    T* operator->() { return ptr_.get(); }
    const T* operator->() const { return ptr_.get(); }

    friend bool operator==(const box& a, const box& b) { return *a == *b; }

private:
    std::unique_ptr<T> ptr_;
};

} // namespace deltablock
