#include "subsum/budget.hpp"

#include <string>

namespace subsum {

void Budget::fail(const char* kind, uint64_t need, uint64_t cap) {
    throw budget_error(std::string(kind) + " budget exceeded: need " +
                       std::to_string(need) + " ops, cap " + std::to_string(cap));
}

}  // namespace subsum
