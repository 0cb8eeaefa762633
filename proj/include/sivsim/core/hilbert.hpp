#pragma once

#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "sivsim/core/errors.hpp"

namespace sivsim {

// Composite Hilbert space as an ordered list of subsystem dimensions.
// Subsystem 0 is the slowest-varying tensor index: the basis state
// |i0, i1, ...> has flat index ((i0*d1 + i1)*d2 + i2)*...
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw PhysicsError("HilbertSpace: no subsystems");
    for (int d : dims_) {
      if (d < 1) throw PhysicsError("HilbertSpace: subsystem dimension must be >= 1");
    }
  }
  HilbertSpace(std::initializer_list<int> dims) : HilbertSpace(std::vector<int>(dims)) {}

  int total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<int>());
  }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_.at(static_cast<size_t>(k)); }
  const std::vector<int>& dims() const { return dims_; }

  // Flat basis index of |i0, i1, ...>.
  int flat_index(const std::vector<int>& multi) const {
    if (static_cast<int>(multi.size()) != subsystem_count())
      throw PhysicsError("HilbertSpace: multi-index rank mismatch");
    int idx = 0;
    for (size_t k = 0; k < dims_.size(); ++k) {
      if (multi[k] < 0 || multi[k] >= dims_[k])
        throw PhysicsError("HilbertSpace: multi-index out of range");
      idx = idx * dims_[k] + multi[k];
    }
    return idx;
  }

  bool operator==(const HilbertSpace& o) const { return dims_ == o.dims_; }
  bool operator!=(const HilbertSpace& o) const { return !(*this == o); }

  // Space whose dimension list is this one followed by the other.
  HilbertSpace joined(const HilbertSpace& o) const {
    std::vector<int> d = dims_;
    d.insert(d.end(), o.dims_.begin(), o.dims_.end());
    return HilbertSpace(std::move(d));
  }

 private:
  std::vector<int> dims_;
};

}  // namespace sivsim
