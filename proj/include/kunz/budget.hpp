#pragma once

#include <cstdint>
#include <string>

#include "kunz/errors.hpp"

namespace kunz {

// Counts work units (reduction steps, enumeration candidates) against a hard
// limit.  Exceeding the limit throws; partial results are discarded by the
// caller, never returned as if complete.
class Budget {
public:
    static constexpr std::uint64_t kDefaultLimit = 1'000'000;

    explicit Budget(std::uint64_t limit = kDefaultLimit) : limit_(limit) {}

    void charge(std::uint64_t n = 1, const char* what = "reduction steps") {
        used_ += n;
        if (used_ > limit_)
            throw BudgetExceeded(std::string(what) + " (limit " + std::to_string(limit_) + ")");
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

} // namespace kunz
