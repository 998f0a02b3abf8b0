#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace rfimlab {

// Highest-label push-relabel with gap relabeling and periodic global
// relabeling, real-valued capacities. Only the first phase is run: it already
// saturates a minimum cut, which is all the ground-state reduction needs.
class MaxFlow {
  public:
    explicit MaxFlow(int num_nodes) : n_(num_nodes), first_(num_nodes + 1, 0) {}

    void add_edge(int u, int v, double cap_uv, double cap_vu) {
        if (u == v) return;
        raw_.push_back({u, v, cap_uv});
        raw_.push_back({v, u, cap_vu});
        max_cap_ = std::max(max_cap_, std::max(cap_uv, cap_vu));
    }

    // max-flow value from s to t
    double solve(int s, int t) {
        build();
        s_ = s;
        t_ = t;
        eps_ = max_cap_ * 1e-12;
        height_.assign(n_, n_);
        excess_.assign(n_, 0.0);
        cur_ = first_;
        count_.assign(2 * n_ + 1, 0);
        global_relabel();
        height_[s] = n_;
        buckets_.assign(n_ + 1, {});
        highest_ = 0;
        for (int a = first_[s]; a < first_[s + 1]; ++a) {
            double c = cap_[a];
            if (c > eps_) {
                cap_[a] = 0.0;
                cap_[rev_[a]] += c;
                excess_[to_[a]] += c;
                activate(to_[a]);
            }
        }
        std::size_t work = 0;
        const std::size_t relabel_interval = static_cast<std::size_t>(6) * n_ + cap_.size();
        while (highest_ >= 0) {
            while (highest_ >= 0 && buckets_[highest_].empty()) --highest_;
            if (highest_ < 0) break;
            int v = buckets_[highest_].back();
            buckets_[highest_].pop_back();
            if (v == s || v == t || excess_[v] <= eps_ || height_[v] != highest_ ||
                height_[v] >= n_)
                continue;
            work += discharge(v);
            if (work > relabel_interval) {
                work = 0;
                global_relabel();
                rebucket();
            }
        }
        return excess_[t];
    }

    // maximal source side of a minimum cut: nodes with no residual path to t
    std::vector<char> max_source_side() const {
        std::vector<char> reaches_t(n_, 0);
        std::vector<int> queue{t_};
        reaches_t[t_] = 1;
        std::size_t qi = 0;
        while (qi < queue.size()) {
            int u = queue[qi++];
            for (int a = first_[u]; a < first_[u + 1]; ++a) {
                int v = to_[a];
                // residual arc v->u exists iff the reverse arc has capacity
                if (!reaches_t[v] && cap_[rev_[a]] > eps_) {
                    reaches_t[v] = 1;
                    queue.push_back(v);
                }
            }
        }
        std::vector<char> source_side(n_, 0);
        for (int v = 0; v < n_; ++v) source_side[v] = reaches_t[v] ? 0 : 1;
        return source_side;
    }

  private:
    struct RawArc {
        int u, v;
        double cap;
    };

    void build() {
        if (built_) return;
        built_ = true;
        std::vector<int> degree(n_, 0);
        for (const RawArc& a : raw_) ++degree[a.u];
        first_.assign(n_ + 1, 0);
        for (int v = 0; v < n_; ++v) first_[v + 1] = first_[v] + degree[v];
        to_.resize(raw_.size());
        cap_.resize(raw_.size());
        rev_.resize(raw_.size());
        std::vector<int> fill(first_.begin(), first_.end() - 1);
        std::vector<int> slot(raw_.size());
        for (std::size_t i = 0; i < raw_.size(); ++i) {
            int pos = fill[raw_[i].u]++;
            slot[i] = pos;
            to_[pos] = raw_[i].v;
            cap_[pos] = raw_[i].cap;
        }
        for (std::size_t i = 0; i < raw_.size(); i += 2) {
            rev_[slot[i]] = slot[i + 1];
            rev_[slot[i + 1]] = slot[i];
        }
        raw_.clear();
        raw_.shrink_to_fit();
    }

    void activate(int v) {
        if (v == s_ || v == t_ || height_[v] >= n_) return;
        buckets_[height_[v]].push_back(v);
        highest_ = std::max(highest_, height_[v]);
    }

    std::size_t discharge(int v) {
        std::size_t work = 0;
        while (excess_[v] > eps_) {
            if (cur_[v] == first_[v + 1]) {
                work += relabel(v);
                if (height_[v] >= n_) break;
                continue;
            }
            int a = cur_[v];
            int w = to_[a];
            if (cap_[a] > eps_ && height_[v] == height_[w] + 1) {
                double delta = std::min(excess_[v], cap_[a]);
                cap_[a] -= delta;
                cap_[rev_[a]] += delta;
                excess_[v] -= delta;
                bool was_inactive = excess_[w] <= eps_;
                excess_[w] += delta;
                if (was_inactive && excess_[w] > eps_) activate(w);
            } else {
                ++cur_[v];
            }
        }
        return work;
    }

    std::size_t relabel(int v) {
        int old = height_[v];
        --count_[old];
        int best = 2 * n_;
        for (int a = first_[v]; a < first_[v + 1]; ++a)
            if (cap_[a] > eps_) best = std::min(best, height_[to_[a]] + 1);
        height_[v] = std::min(best, n_);
        cur_[v] = first_[v];
        if (height_[v] < n_) ++count_[height_[v]];
        if (count_[old] == 0 && old < n_) gap(old);
        if (height_[v] < n_ && excess_[v] > eps_) {
            if (static_cast<int>(buckets_.size()) <= height_[v]) buckets_.resize(height_[v] + 1);
            buckets_[height_[v]].push_back(v);
            highest_ = std::max(highest_, height_[v]);
        }
        return static_cast<std::size_t>(first_[v + 1] - first_[v]) + 1;
    }

    void gap(int h) {
        for (int v = 0; v < n_; ++v) {
            if (v == s_ || v == t_) continue;
            if (height_[v] > h && height_[v] < n_) {
                --count_[height_[v]];
                height_[v] = n_;
            }
        }
    }

    void global_relabel() {
        std::fill(count_.begin(), count_.end(), 0);
        for (int v = 0; v < n_; ++v)
            if (v != s_ && v != t_) height_[v] = n_;
        height_[t_] = 0;
        std::vector<int> queue{t_};
        std::size_t qi = 0;
        while (qi < queue.size()) {
            int u = queue[qi++];
            for (int a = first_[u]; a < first_[u + 1]; ++a) {
                int v = to_[a];
                if (v == s_ || height_[v] != n_ || cap_[rev_[a]] <= eps_) continue;
                height_[v] = height_[u] + 1;
                queue.push_back(v);
            }
        }
        for (int v = 0; v < n_; ++v) {
            if (height_[v] <= 2 * n_) ++count_[height_[v]];
        }
        cur_ = first_;
    }

    void rebucket() {
        buckets_.assign(std::max<std::size_t>(buckets_.size(), n_ + 1), {});
        for (auto& b : buckets_) b.clear();
        highest_ = -1;
        for (int v = 0; v < n_; ++v)
            if (v != s_ && v != t_ && excess_[v] > eps_ && height_[v] < n_) {
                buckets_[height_[v]].push_back(v);
                highest_ = std::max(highest_, height_[v]);
            }
    }

    int n_;
    int s_ = 0, t_ = 0;
    bool built_ = false;
    double max_cap_ = 0.0;
    double eps_ = 0.0;
    std::vector<RawArc> raw_;
    std::vector<int> first_, to_, rev_, cur_;
    std::vector<double> cap_, excess_;
    std::vector<int> height_, count_;
    std::vector<std::vector<int>> buckets_;
    int highest_ = -1;
};

} // namespace rfimlab
