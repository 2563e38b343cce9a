#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bcsample {

inline unsigned default_workers() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs body(task) for every task in [0, tasks) on up to `workers` threads.
// Tasks are claimed dynamically; callers that need a deterministic result write
// into per-task slots and combine them in task order afterwards.
template <class Body>
void parallel_for_tasks(std::size_t tasks, unsigned workers, Body&& body) {
	workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), tasks));
	if (workers <= 1) {
		for (std::size_t t = 0; t < tasks; ++t) body(t);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mutex;
	{
		std::vector<std::jthread> pool;
		pool.reserve(workers);
		for (unsigned w = 0; w < workers; ++w) {
			pool.emplace_back([&] {
				for (std::size_t t = next++; t < tasks; t = next++) {
					try {
						body(t);
					} catch (...) {
						std::lock_guard lock(failure_mutex);
						if (!failure) failure = std::current_exception();
						next = tasks;
					}
				}
			});
		}
	}
	if (failure) std::rethrow_exception(failure);
}

} // namespace bcsample
