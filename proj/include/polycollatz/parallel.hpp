#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace polycollatz::parallel {

/// Evaluates `work(i)` for every i in [0, count) not rejected by `skip`, on
/// `workers` threads pulling indices from a shared counter. Results land in
/// their index slot, so any reduction done afterwards in index order is
/// independent of scheduling. `on_done` runs under a lock (single writer).
/// If `budget` is set, at most that many items are started; unstarted slots
/// stay empty.
template <class Result>
std::vector<std::optional<Result>> run_indexed(std::size_t count, unsigned workers,
                                               const std::function<Result(std::size_t)>& work,
                                               const std::function<bool(std::size_t)>& skip = {},
                                               const std::function<void(std::size_t, const Result&)>& on_done = {},
                                               std::optional<std::size_t> budget = std::nullopt) {
    std::vector<std::optional<Result>> slots(count);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> started{0};
    std::mutex done_mutex;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto body = [&] {
        try {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                if (skip && skip(i)) continue;
                if (budget && started.fetch_add(1) >= *budget) return;
                Result r = work(i);
                std::lock_guard lock(done_mutex);
                if (on_done) on_done(i, r);
                slots[i] = std::move(r);
            }
        } catch (...) {
            std::lock_guard lock(done_mutex);
            if (!failure) failure = std::current_exception();
            failed = true;
        }
    };

    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return slots;
}

}  // namespace polycollatz::parallel
