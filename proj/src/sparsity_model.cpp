#include "rowcover/sparsity_model.hpp"

#include <cmath>
#include <sstream>

namespace rowcover {

SparsityModel::SparsityModel(std::uint64_t n, double theta) : n_(n), theta_(theta) {
  if (n == 0) throw DomainError("sparsity model requires n >= 1");
  if (!(theta > 0.0 && theta <= 1.0)) {
    std::ostringstream msg;
    msg << "sparsity model requires theta in (0, 1], got " << theta;
    throw DomainError(msg.str());
  }
}

std::string to_string(const SparsityModel& model) {
  std::ostringstream out;
  out << "SparsityModel(n=" << model.n() << ", theta=" << model.theta() << ")";
  return out.str();
}

}  // namespace rowcover
