#pragma once

#include <atomic>
#include <cstdint>
#include <string>

#include "cayley/error.hpp"

namespace cayley {

/// Work meter shared by every enumeration-backed operation. One unit is one
/// tuple (or lattice point) examined. Operations estimate their cost up
/// front and fail fast with budget_exceeded instead of running unbounded.
/// Safe to charge from worker threads.
class WorkBudget {
public:
    static constexpr std::uint64_t kDefaultLimit = 500'000'000; // 5e8 items

    explicit WorkBudget(std::uint64_t limit = kDefaultLimit) : limit_(limit) {}

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t used() const noexcept { return used_.load(std::memory_order_relaxed); }

    /// Reserve `items` units; throws budget_exceeded if that would overrun.
    void charge(std::uint64_t items, const char* op) {
        std::uint64_t prev = used_.fetch_add(items, std::memory_order_relaxed);
        if (prev + items < prev || prev + items > limit_) {
            fail(errc::budget_exceeded,
                 std::string(op) + ": enumeration of " + std::to_string(items) +
                     " items exceeds work budget " + std::to_string(limit_));
        }
    }

    /// Guard for costs estimated in floating point (products of ranges that
    /// may not even fit in 64 bits).
    void charge_estimate(double items, const char* op) {
        if (!(items >= 0.0) || items >= 1.8e19) {
            fail(errc::budget_exceeded, std::string(op) + ": estimated cost out of range");
        }
        charge(static_cast<std::uint64_t>(items), op);
    }

    std::uint64_t remaining() const noexcept {
        std::uint64_t u = used();
        return u >= limit_ ? 0 : limit_ - u;
    }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

} // namespace cayley
