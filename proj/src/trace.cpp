#include "admm/trace.hpp"

#include "admm/types.hpp"

namespace admm {

void IterationTrace::push(const IterationRecord& rec) {
  const int expected = records.empty() ? rec.k : records.back().k + 1;
  if (rec.k != expected || (records.empty() && rec.k < 1)) {
    throw ConfigError("trace: records must advance k by one with no gaps");
  }
  records.push_back(rec);
}

}  // namespace admm
