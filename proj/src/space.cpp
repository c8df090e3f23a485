#include "dagsched/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dagsched {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

VirtualSpace::VirtualSpace(int machine_count, ResourceVector capacity)
    : machine_count_(machine_count),
      capacity_(std::move(capacity)),
      limit_(capacity_),
      profiles_(static_cast<std::size_t>(std::max(machine_count, 0))) {
  if (machine_count < 1)
    throw std::invalid_argument("VirtualSpace: machine_count must be >= 1");
}

void VirtualSpace::set_ceiling(const ResourceVector& ceiling) {
  if (ceiling.dims() != capacity_.dims())
    throw std::invalid_argument("ceiling dimensionality mismatch");
  limit_ = capacity_;
  for (std::size_t i = 0; i < limit_.dims(); ++i) limit_[i] *= ceiling[i];
}

bool VirtualSpace::fits_on(const Profile& p, const ResourceVector& demand,
                           double begin, double end) const {
  auto ok = [&](const ResourceVector& usage) {
    for (std::size_t d = 0; d < demand.dims(); ++d)
      if (usage[d] + demand[d] > limit_[d] + kCapacityTol) return false;
    return true;
  };
  if (p.time.empty()) return ok(ResourceVector(demand.dims(), 0.0));
  // Segment containing begin (index -1 means the zero-usage region before
  // the first breakpoint). Overlaps narrower than the tolerance are treated
  // as empty so that begin/end arithmetic off by one ulp stays consistent.
  int i = static_cast<int>(std::upper_bound(p.time.begin(), p.time.end(), begin) -
                           p.time.begin()) - 1;
  for (; ; ++i) {
    double seg_begin = i < 0 ? -kInf : p.time[i];
    if (seg_begin >= end - kCapacityTol) break;
    double seg_end =
        i + 1 < static_cast<int>(p.time.size()) ? p.time[i + 1] : kInf;
    if (i >= 0 && seg_end > begin + kCapacityTol) {
      if (!ok(p.usage[i])) return false;
    }
    if (seg_end >= end - kCapacityTol) break;
  }
  return true;
}

double VirtualSpace::earliest_on(const Profile& p, const ResourceVector& demand,
                                 double duration, double not_before) const {
  auto violates = [&](const ResourceVector& usage) {
    for (std::size_t d = 0; d < demand.dims(); ++d)
      if (usage[d] + demand[d] > limit_[d] + kCapacityTol) return true;
    return false;
  };
  double t = not_before;
  while (true) {
    double end = t + duration;
    bool moved = false;
    if (!p.time.empty()) {
      int i = static_cast<int>(std::upper_bound(p.time.begin(), p.time.end(), t) -
                               p.time.begin()) - 1;
      for (; i < static_cast<int>(p.time.size()); ++i) {
        if (i < 0) continue;
        if (p.time[i] >= end - kCapacityTol) break;
        double this_end =
            i + 1 < static_cast<int>(p.time.size()) ? p.time[i + 1] : kInf;
        if (this_end <= t + kCapacityTol) continue;
        if (violates(p.usage[i])) {
          double seg_end =
              i + 1 < static_cast<int>(p.time.size()) ? p.time[i + 1] : kInf;
          t = seg_end;
          moved = true;
          break;
        }
      }
    }
    if (!moved) return t;
  }
}

double VirtualSpace::latest_on(const Profile& p, const ResourceVector& demand,
                               double duration, double not_after) const {
  auto violates = [&](const ResourceVector& usage) {
    for (std::size_t d = 0; d < demand.dims(); ++d)
      if (usage[d] + demand[d] > limit_[d] + kCapacityTol) return true;
    return false;
  };
  double t_end = not_after;
  while (true) {
    double begin = t_end - duration;
    bool moved = false;
    if (!p.time.empty()) {
      // Last segment starting strictly before t_end, walking backwards.
      int i = static_cast<int>(std::lower_bound(p.time.begin(), p.time.end(),
                                                t_end) - p.time.begin()) - 1;
      for (; i >= 0; --i) {
        double seg_end =
            i + 1 < static_cast<int>(p.time.size()) ? p.time[i + 1] : kInf;
        if (seg_end <= begin + kCapacityTol) break;
        if (p.time[i] >= t_end - kCapacityTol) continue;
        if (violates(p.usage[i])) {
          t_end = p.time[i];
          moved = true;
          break;
        }
      }
    }
    if (!moved) return begin;
  }
}

PlacementRecord VirtualSpace::earliest_fit(const TaskSpec& task,
                                           double not_before) const {
  if (!task.demand.fits_within(limit_))
    throw std::runtime_error("task " + std::to_string(task.id) +
                             " can never fit (demand exceeds capacity limit)");
  PlacementRecord best;
  for (int m = 0; m < machine_count_; ++m) {
    double b = earliest_on(profiles_[m], task.demand, task.duration, not_before);
    if (best.machine < 0 || b < best.begin - kCapacityTol) {
      best.task = task.id;
      best.machine = m;
      best.begin = b;
      best.end = b + task.duration;
      best.demand = task.demand;
    }
  }
  return best;
}

PlacementRecord VirtualSpace::latest_fit(const TaskSpec& task,
                                         double not_after) const {
  if (!task.demand.fits_within(limit_))
    throw std::runtime_error("task " + std::to_string(task.id) +
                             " can never fit (demand exceeds capacity limit)");
  PlacementRecord best;
  for (int m = 0; m < machine_count_; ++m) {
    double b = latest_on(profiles_[m], task.demand, task.duration, not_after);
    if (best.machine < 0 || b > best.begin + kCapacityTol) {
      best.task = task.id;
      best.machine = m;
      best.begin = b;
      best.end = b + task.duration;
      best.demand = task.demand;
    }
  }
  return best;
}

void VirtualSpace::add_usage(Profile& p, double begin, double end,
                             const ResourceVector& demand) {
  auto ensure_breakpoint = [&](double t) {
    auto it = std::lower_bound(p.time.begin(), p.time.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - p.time.begin());
    if (it != p.time.end() && *it == t) return;
    ResourceVector level =
        idx > 0 ? p.usage[idx - 1] : ResourceVector(demand.dims(), 0.0);
    p.time.insert(it, t);
    p.usage.insert(p.usage.begin() + static_cast<long>(idx), level);
  };
  ensure_breakpoint(begin);
  ensure_breakpoint(end);
  for (std::size_t i = 0; i < p.time.size(); ++i)
    if (p.time[i] >= begin && p.time[i] < end) p.usage[i] += demand;
}

void VirtualSpace::commit(const PlacementRecord& record) {
  if (record.machine < 0 || record.machine >= machine_count_)
    throw std::invalid_argument("commit: bad machine index");
  if (placements_.count(record.task))
    throw std::runtime_error("commit: task " + std::to_string(record.task) +
                             " is already placed");
  Profile& p = profiles_[static_cast<std::size_t>(record.machine)];
  if (!fits_on(p, record.demand, record.begin, record.end))
    throw std::runtime_error("commit: stale placement record for task " +
                             std::to_string(record.task));
  add_usage(p, record.begin, record.end, record.demand);
  placements_[record.task] = record;
}

double VirtualSpace::min_begin() const {
  double v = kInf;
  for (const auto& [id, r] : placements_) v = std::min(v, r.begin);
  return placements_.empty() ? 0.0 : v;
}

double VirtualSpace::max_end() const {
  double v = -kInf;
  for (const auto& [id, r] : placements_) v = std::max(v, r.end);
  return placements_.empty() ? 0.0 : v;
}

double VirtualSpace::schedule_length() const {
  if (placements_.empty()) return 0.0;
  return max_end() - min_begin();
}

void VirtualSpace::shift(double offset) {
  for (auto& [id, r] : placements_) {
    r.begin += offset;
    r.end += offset;
  }
  for (Profile& p : profiles_)
    for (double& t : p.time) t += offset;
}

void VirtualSpace::shift_to_zero() {
  if (placements_.empty()) return;
  shift(-min_begin());
}

ResourceVector VirtualSpace::usage_at(int machine, double time) const {
  const Profile& p = profiles_.at(static_cast<std::size_t>(machine));
  ResourceVector zero(capacity_.dims(), 0.0);
  if (p.time.empty()) return zero;
  int i = static_cast<int>(std::upper_bound(p.time.begin(), p.time.end(), time) -
                           p.time.begin()) - 1;
  if (i < 0) return zero;
  return p.usage[static_cast<std::size_t>(i)];
}

}  // namespace dagsched
