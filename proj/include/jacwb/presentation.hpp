#pragma once

#include <string>
#include <vector>

#include "jacwb/ideal.hpp"

namespace jacwb {

/// R = S/I for S = k[X_1..X_m], with the chosen relation generators kept in
/// order (the Jacobian matrix depends on them) and dim R, d = m - dim R cached.
class Presentation {
 public:
  explicit Presentation(Ideal relations) : relations_(std::move(relations)) {
    auto dim = krull_dimension(relations_);
    if (!dim) throw PreconditionFailed("relations generate the unit ideal (empty spectrum)");
    dim_ = *dim;
  }

  Presentation(const RingPtr& ring, std::vector<Polynomial> relations)
      : Presentation(Ideal(ring, std::move(relations))) {}

  const RingPtr& ring() const { return relations_.ring(); }
  const Ideal& relations() const { return relations_; }
  const std::vector<Polynomial>& generators() const { return relations_.generators(); }
  std::size_t arity() const { return ring()->arity(); }
  int dim() const { return dim_; }
  /// m - dim R.
  int codim() const { return static_cast<int>(arity()) - dim_; }

  std::string to_string() const { return ring()->describe() + "; relations " + relations_.to_string(); }

 private:
  Ideal relations_;
  int dim_ = 0;
};

}  // namespace jacwb
