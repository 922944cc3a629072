#pragma once
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sglab {

inline int resolve_workers(int workers) {
  if (workers < 0) workers = 0;
  if (workers == 0) {
    unsigned hc = std::thread::hardware_concurrency();
    workers = hc ? (int)hc : 1;
  }
  return workers;
}

// Run fn(task_id) for task_id in [0, n). Tasks are pulled from a shared
// counter; results land in task order, so any later reduction is independent
// of the worker count and of scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(int n_tasks, int workers, Fn fn) {
  std::vector<T> out((size_t)n_tasks);
  workers = resolve_workers(workers);
  if (workers <= 1 || n_tasks <= 1) {
    for (int i = 0; i < n_tasks; i++) out[(size_t)i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&]() {
    for (;;) {
      int id = next.fetch_add(1);
      if (id >= n_tasks) break;
      try {
        out[(size_t)id] = fn(id);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  int nt = std::min(workers, n_tasks);
  pool.reserve((size_t)nt);
  for (int i = 0; i < nt; i++) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

template <class Fn>
void parallel_for_tasks(int n_tasks, int workers, Fn fn) {
  parallel_map<int>(n_tasks, workers, [&](int id) {
    fn(id);
    return 0;
  });
}

}  // namespace sglab
