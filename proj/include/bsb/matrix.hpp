#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bsb {

// Dense row-major n x n matrix.
template <typename T>
class square_matrix {
 public:
  using value_type = T;

  square_matrix() = default;
  explicit square_matrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  std::span<const T> values() const noexcept { return data_; }

  friend bool operator==(const square_matrix&, const square_matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

} // namespace bsb
