#include <stdexcept>

#include "lab/maximal.hpp"

namespace lab {

SetAverager::SetAverager(const GroupModel& model, std::span<const double> values) {
  if (static_cast<int>(values.size()) != model.size())
    throw std::invalid_argument("SetAverager: value count does not match the group size");
  std::vector<double> vmu(values.size());
  for (int x = 0; x < model.size(); ++x)
    vmu[static_cast<size_t>(x)] = values[static_cast<size_t>(x)] * model.mass(static_cast<ElementId>(x));

  const int count = model.index_count();
  sums_.resize(static_cast<size_t>(count));
  masses_.resize(static_cast<size_t>(count));
  for (int i = model.index_min(); i <= model.index_max(); ++i) {
    sums_[static_cast<size_t>(i)] = translate_sums(model, i, std::span<const double>(vmu));
    masses_[static_cast<size_t>(i)] = translate_sums(model, i, std::span<const double>(model.masses()));
  }
}

}  // namespace lab
