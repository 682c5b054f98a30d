#ifndef PANELFUSION_SRC_WORKER_POOL_H_
#define PANELFUSION_SRC_WORKER_POOL_H_

#include <atomic>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace panelfusion {

// Runs task(i) for every i in `order`, handing items to up to `workers`
// threads in the given order. If tasks throw, the exception of the smallest
// index is rethrown after all threads finish.
inline void ParallelFor(std::span<const size_t> order, int workers,
                        const std::function<void(size_t)>& task) {
  std::vector<std::exception_ptr> errors(order.size());
  std::atomic<size_t> next{0};
  auto run = [&] {
    for (size_t slot; (slot = next.fetch_add(1)) < order.size();) {
      try {
        task(order[slot]);
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    }
  };
  const size_t threads =
      std::min<size_t>(workers > 1 ? workers : 1, order.size());
  if (threads <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  }
  size_t first = order.size();
  std::exception_ptr error;
  for (size_t slot = 0; slot < order.size(); ++slot) {
    if (errors[slot] && order[slot] < first) {
      first = order[slot];
      error = errors[slot];
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace panelfusion

#endif  // PANELFUSION_SRC_WORKER_POOL_H_
