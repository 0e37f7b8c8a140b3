#include "memfuzzy/matrix.hpp"

#include <algorithm>
#include <limits>

namespace memfuzzy {

double Matrix::max() const noexcept {
    if (data_.empty()) return std::numeric_limits<double>::quiet_NaN();
    return *std::max_element(data_.begin(), data_.end());
}

}  // namespace memfuzzy
