#include "s3vm/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "s3vm/error.hpp"
#include "s3vm/rng.hpp"

namespace s3vm {

std::vector<std::vector<std::size_t>> Partition::members() const {
    std::vector<std::vector<std::size_t>> out(k);
    for (std::size_t i = 0; i < assignments.size(); ++i) out[assignments[i]].push_back(i);
    return out;
}

namespace {

std::vector<std::size_t> nearest_centers(const Matrix& X, const Matrix& centers) {
    std::vector<std::size_t> assign(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centers.rows(); ++c) {
            const double d = squared_distance(X.row(i), centers.row(c));
            if (d < best) {
                best = d;
                assign[i] = c;
            }
        }
    }
    return assign;
}

Matrix centroids(const Matrix& X, const std::vector<std::size_t>& assign, std::size_t k) {
    Matrix C(k, X.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        ++counts[assign[i]];
        auto row = X.row(i);
        for (std::size_t j = 0; j < X.cols(); ++j) C(assign[i], j) += row[j];
    }
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < X.cols(); ++j) C(c, j) /= static_cast<double>(counts[c]);
    return C;
}

Matrix plus_plus_seeds(const Matrix& X, std::size_t k, Rng& rng) {
    const std::size_t n = X.rows();
    Matrix C(k, X.cols());
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::size_t pick = rng.below(n);
    for (std::size_t c = 0; c < k; ++c) {
        std::copy(X.row(pick).begin(), X.row(pick).end(), C.row(c).begin());
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(X.row(i), C.row(c)));
            total += d2[i];
        }
        if (c + 1 == k) break;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (d2[i] > 0.0 && r < acc) {
                    pick = i;
                    break;
                }
            }
            while (d2[pick] == 0.0) --pick;  // only reachable through rounding at the tail
        } else {
            pick = rng.below(n);
        }
    }
    return C;
}

// Gives each empty cluster the point farthest from its own centroid, taken
// from clusters that can spare one.
void repair_empty(const Matrix& X, std::vector<std::size_t>& assign, const Matrix& centers, std::size_t k) {
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t a : assign) ++counts[a];
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] > 0) continue;
        std::size_t far = X.rows();
        double best = -1.0;
        for (std::size_t i = 0; i < X.rows(); ++i) {
            if (counts[assign[i]] < 2) continue;
            const double d = squared_distance(X.row(i), centers.row(assign[i]));
            if (d > best) {
                best = d;
                far = i;
            }
        }
        --counts[assign[far]];
        assign[far] = c;
        counts[c] = 1;
    }
}

double sse(const Matrix& X, const std::vector<std::size_t>& assign, const Matrix& centers) {
    double s = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) s += squared_distance(X.row(i), centers.row(assign[i]));
    return s;
}

}  // namespace

KmeansResult kmeans_run(const Matrix& X, std::size_t k, std::uint64_t seed, std::size_t max_iterations) {
    const std::size_t n = X.rows();
    if (k < 1) throw InvalidArgument("kmeans: k must be at least 1");
    if (k > n) throw InvalidArgument("kmeans: k exceeds the number of instances");

    Rng rng(seed);
    Matrix centers = plus_plus_seeds(X, k, rng);
    KmeansResult result;
    std::vector<std::size_t> assign;
    for (std::size_t it = 0; it < max_iterations; ++it) {
        auto next = nearest_centers(X, centers);
        repair_empty(X, next, centers, k);
        const bool unchanged = next == assign;
        assign = std::move(next);
        centers = centroids(X, assign, k);
        result.sse_trace.push_back(sse(X, assign, centers));
        result.iterations = it + 1;
        if (unchanged) break;
    }
    result.partition = {std::move(assign), k};
    return result;
}

Partition kmeans(const Matrix& X, std::size_t k, std::uint64_t seed) { return kmeans_run(X, k, seed).partition; }

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
};

}  // namespace

Dendrogram single_linkage_from_distances(const Matrix& D) {
    const std::size_t n = D.rows();
    if (n < 2) throw InvalidArgument("single_linkage: need at least two instances");

    // Prim's MST on the complete graph.
    struct Edge {
        std::size_t a, b;
        double w;
    };
    std::vector<Edge> mst;
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> from(n, 0);
    std::size_t cur = 0;
    in_tree[0] = true;
    for (std::size_t added = 1; added < n; ++added) {
        std::size_t next = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (D(cur, v) < best[v]) {
                best[v] = D(cur, v);
                from[v] = cur;
            }
            if (next == n || best[v] < best[next]) next = v;
        }
        in_tree[next] = true;
        mst.push_back({from[next], next, best[next]});
        cur = next;
    }
    std::stable_sort(mst.begin(), mst.end(), [](const Edge& x, const Edge& y) { return x.w < y.w; });

    Dendrogram d;
    d.n = n;
    UnionFind uf(n);
    std::vector<std::size_t> node(n);  // cluster node id, indexed by union-find root
    std::iota(node.begin(), node.end(), 0);
    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};

    auto merge = [&](std::size_t ra, std::size_t rb, double h) {
        std::size_t left = node[ra], right = node[rb];
        if (left > right) std::swap(left, right);
        d.merges.push_back({left, right, h});
        if (members[ra].size() < members[rb].size()) std::swap(ra, rb);
        uf.parent[rb] = ra;
        members[ra].insert(members[ra].end(), members[rb].begin(), members[rb].end());
        members[rb].clear();
        node[ra] = n + d.merges.size() - 1;
    };

    for (std::size_t g = 0; g < mst.size();) {
        std::size_t end = g;
        while (end < mst.size() && mst[end].w == mst[g].w) ++end;
        const double h = mst[g].w;
        if (end - g == 1) {
            merge(uf.find(mst[g].a), uf.find(mst[g].b), h);
        } else {
            // Several merges share this height: replay them in the order the
            // greedy algorithm would, using every point pair at exactly h.
            std::vector<std::size_t> roots;
            for (std::size_t e = g; e < end; ++e) {
                roots.push_back(uf.find(mst[e].a));
                roots.push_back(uf.find(mst[e].b));
            }
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            std::vector<std::size_t> pts;
            for (std::size_t r : roots) pts.insert(pts.end(), members[r].begin(), members[r].end());
            std::vector<std::pair<std::size_t, std::size_t>> ties;
            for (std::size_t x = 0; x < pts.size(); ++x)
                for (std::size_t y = x + 1; y < pts.size(); ++y)
                    if (D(pts[x], pts[y]) == h) ties.emplace_back(pts[x], pts[y]);
            for (std::size_t step = g; step < end; ++step) {
                std::pair<std::size_t, std::size_t> pick{n, n};
                std::pair<std::size_t, std::size_t> key{SIZE_MAX, SIZE_MAX};
                for (auto [p, q] : ties) {
                    const std::size_t rp = uf.find(p), rq = uf.find(q);
                    if (rp == rq) continue;
                    std::pair<std::size_t, std::size_t> k2{std::min(node[rp], node[rq]), std::max(node[rp], node[rq])};
                    if (k2 < key) {
                        key = k2;
                        pick = {rp, rq};
                    }
                }
                merge(pick.first, pick.second, h);
            }
        }
        g = end;
    }
    return d;
}

Dendrogram single_linkage(const Matrix& X) {
    if (X.rows() < 2) throw InvalidArgument("single_linkage: need at least two instances");
    if (!X.all_finite()) throw InvalidArgument("single_linkage: non-finite feature value");
    return single_linkage_from_distances(distance_matrix(X));
}

namespace {

// Replays merges on leaves; returns the 0-based merge index joining i and j.
std::size_t joining_merge(const Dendrogram& d, std::size_t i, std::size_t j) {
    if (i >= d.n || j >= d.n) throw InvalidArgument("cophenetic query: leaf index out of range");
    if (i == j) throw InvalidArgument("cophenetic query: leaves must differ");
    // Node -> representative leaf, so merges can be applied to the union-find.
    std::vector<std::size_t> rep(d.n + d.merges.size());
    std::iota(rep.begin(), rep.begin() + static_cast<std::ptrdiff_t>(d.n), 0);
    UnionFind uf(d.n);
    for (std::size_t s = 0; s < d.merges.size(); ++s) {
        const std::size_t a = uf.find(rep[d.merges[s].left]);
        const std::size_t b = uf.find(rep[d.merges[s].right]);
        uf.parent[b] = a;
        rep[d.n + s] = a;
        if (uf.find(i) == uf.find(j)) return s;
    }
    throw InvalidArgument("cophenetic query: dendrogram is incomplete");
}

}  // namespace

std::size_t cophenetic_step(const Dendrogram& d, std::size_t i, std::size_t j) { return joining_merge(d, i, j) + 1; }

double cophenetic_height(const Dendrogram& d, std::size_t i, std::size_t j) {
    return d.merges[joining_merge(d, i, j)].height;
}

std::vector<LabelSteps> nearest_label_steps(const Dendrogram& d, const LabelVector& label_state) {
    const std::size_t n = d.n;
    if (label_state.size() != n) throw InvalidArgument("nearest_label_steps: label state length differs from n");
    const bool has_pos = std::find(label_state.begin(), label_state.end(), 1) != label_state.end();
    const bool has_neg = std::find(label_state.begin(), label_state.end(), -1) != label_state.end();
    if (!has_pos || !has_neg) throw InvalidArgument("nearest_label_steps: both labeled classes are required");

    constexpr std::size_t unset = 0;
    std::vector<std::size_t> p(n, unset), q(n, unset);
    std::vector<std::vector<std::size_t>> members(n + d.merges.size());
    std::vector<bool> pos(n + d.merges.size(), false), neg(n + d.merges.size(), false);
    for (std::size_t i = 0; i < n; ++i) {
        members[i] = {i};
        pos[i] = label_state[i] == 1;
        neg[i] = label_state[i] == -1;
    }
    for (std::size_t s = 0; s < d.merges.size(); ++s) {
        const std::size_t a = d.merges[s].left, b = d.merges[s].right, node = n + s;
        const std::size_t step = s + 1;
        if (pos[a] != pos[b])
            for (std::size_t i : members[pos[a] ? b : a]) p[i] = step;
        if (neg[a] != neg[b])
            for (std::size_t i : members[neg[a] ? b : a]) q[i] = step;
        pos[node] = pos[a] || pos[b];
        neg[node] = neg[a] || neg[b];
        auto& big = members[a].size() >= members[b].size() ? members[a] : members[b];
        auto& small = members[a].size() >= members[b].size() ? members[b] : members[a];
        big.insert(big.end(), small.begin(), small.end());
        members[node] = std::move(big);
        small.clear();
        small.shrink_to_fit();
    }

    std::vector<LabelSteps> out;
    for (std::size_t i = 0; i < n; ++i)
        if (label_state[i] == 0) out.push_back({i, p[i], q[i]});
    return out;
}

}  // namespace s3vm
