#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>

namespace sctkit {

// Cooperative stop condition shared by the engines: a wall-clock deadline, a
// cap on the work counter, and an external cancel flag. Engines poll it and
// report an aborted result instead of a verdict when it trips.
class Budget {
public:
    Budget() = default;

    static Budget unlimited() { return Budget(); }
    static Budget millis(long ms) {
        Budget b;
        b.set_timeout(std::chrono::milliseconds(ms));
        return b;
    }

    void set_timeout(std::chrono::milliseconds ms) {
        deadline_ = std::chrono::steady_clock::now() + ms;
        has_deadline_ = true;
    }
    void set_max_work(std::size_t n) { max_work_ = n; }
    void set_cancel(const std::atomic<bool>* flag) { cancel_ = flag; }

    bool expired(std::size_t work) const {
        if (max_work_ && work > max_work_) return true;
        if (cancel_ && cancel_->load(std::memory_order_relaxed)) return true;
        if (has_deadline_ && (++polls_ & 255u) == 0 && std::chrono::steady_clock::now() > deadline_) {
            tripped_ = true;
        }
        return tripped_;
    }

private:
    std::chrono::steady_clock::time_point deadline_{};
    bool has_deadline_ = false;
    std::size_t max_work_ = 0;
    const std::atomic<bool>* cancel_ = nullptr;
    mutable std::size_t polls_ = 0;
    mutable bool tripped_ = false;
};

}  // namespace sctkit
