#include "ums/metric_space.hpp"

#include <sstream>
#include <unordered_set>

namespace ums {

namespace {

std::string build_what(const std::string& name, const std::vector<long long>& args,
                       const std::string& detail) {
    std::ostringstream os;
    os << name;
    for (long long a : args)
        os << ' ' << a;
    if (!detail.empty())
        os << ": " << detail;
    return os.str();
}

} // namespace

MetricError::MetricError(std::string name, std::vector<long long> args, std::string detail)
    : std::runtime_error(build_what(name, args, detail)),
      name_(std::move(name)),
      args_(std::move(args)),
      detail_(std::move(detail)) {}

std::string MetricError::report_line() const {
    std::ostringstream os;
    os << name_;
    for (long long a : args_)
        os << ' ' << a;
    return os.str();
}

std::vector<std::string> FiniteMetricSpace::default_labels(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(std::to_string(i));
    return out;
}

bool FiniteMetricSpace::has_default_labels() const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] != std::to_string(i))
            return false;
    return true;
}

std::vector<Rational> FiniteMetricSpace::row(int i) const {
    std::vector<Rational> out(n_);
    for (int j = 0; j < n_; ++j)
        out[j] = dist(i, j);
    return out;
}

Rational FiniteMetricSpace::diameter() const {
    Rational best;
    for (const Rational& v : tri_)
        if (best < v) best = v;
    return best;
}

FiniteMetricSpace FiniteMetricSpace::induced(const std::vector<int>& points) const {
    std::unordered_set<int> seen;
    for (int p : points) {
        if (p < 0 || p >= n_)
            throw std::invalid_argument("point index out of range: " + std::to_string(p));
        if (!seen.insert(p).second)
            throw std::invalid_argument("repeated point index: " + std::to_string(p));
    }
    FiniteMetricSpace out;
    out.n_ = static_cast<int>(points.size());
    out.tri_.resize(static_cast<std::size_t>(out.n_) * (out.n_ - 1) / 2);
    for (int i = 0; i < out.n_; ++i)
        for (int j = 0; j < i; ++j)
            out.tri_[pack(i, j)] = dist(points[i], points[j]);
    out.labels_.reserve(out.n_);
    for (int p : points)
        out.labels_.push_back(labels_[p]);
    return out;
}

FiniteMetricSpace FiniteMetricSpace::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("permutation size mismatch");
    return induced(perm);
}

FiniteMetricSpace FiniteMetricSpace::with_point(const std::vector<Rational>& dists,
                                                std::string label) const {
    if (static_cast<int>(dists.size()) != n_)
        throw std::invalid_argument("distance vector size mismatch");
    FiniteMetricSpace out = *this;
    out.n_ = n_ + 1;
    out.tri_.insert(out.tri_.end(), dists.begin(), dists.end());
    out.labels_.push_back(label.empty() ? std::to_string(n_) : std::move(label));
    return out;
}

FiniteMetricSpace validate_space(const std::vector<std::vector<Rational>>& rows,
                                 std::vector<std::string> labels) {
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(rows[i].size()) != n)
            throw MetricError("BadMatrix", {i});
    for (int i = 0; i < n; ++i)
        if (!rows[i][i].is_zero())
            throw MetricError("NonzeroDiagonal", {i});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rows[i][j] != rows[j][i])
                throw MetricError("AsymmetricMatrix", {i, j});
            if (rows[i][j].is_negative() || rows[i][j].is_zero())
                throw MetricError("NegativeOrZeroOffDiagonal", {i, j});
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (rows[i][j] + rows[j][k] < rows[i][k])
                    throw MetricError("TriangleViolation", {i, j, k});
            }
        }

    FiniteMetricSpace out;
    out.n_ = n;
    out.tri_.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            out.tri_[FiniteMetricSpace::pack(i, j)] = rows[i][j];
    if (labels.empty())
        out.labels_ = FiniteMetricSpace::default_labels(n);
    else if (static_cast<int>(labels.size()) == n)
        out.labels_ = std::move(labels);
    else
        throw MetricError("BadMatrix", {}, "label count differs from point count");
    return out;
}

void revalidate(const FiniteMetricSpace& s) {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(s.n());
    for (int i = 0; i < s.n(); ++i)
        rows.push_back(s.row(i));
    validate_space(rows, s.labels());
}

MetricSpaceBuilder::MetricSpaceBuilder(const FiniteMetricSpace& start)
    : n_(start.n_), tri_(start.tri_), labels_(start.labels_) {}

int MetricSpaceBuilder::add_point(std::vector<Rational> dists, std::string label) {
    if (static_cast<int>(dists.size()) != n_)
        throw std::invalid_argument("distance vector size mismatch");
    tri_.insert(tri_.end(), dists.begin(), dists.end());
    labels_.push_back(label.empty() ? std::to_string(n_) : std::move(label));
    return n_++;
}

FiniteMetricSpace MetricSpaceBuilder::freeze() && {
    FiniteMetricSpace out;
    out.n_ = n_;
    out.tri_ = std::move(tri_);
    out.labels_ = std::move(labels_);
    return out;
}

std::vector<int> ball(const FiniteMetricSpace& s, int center, const Rational& radius,
                      bool closed) {
    std::vector<int> out;
    for (int i = 0; i < s.n(); ++i) {
        const Rational& d = s.dist(center, i);
        if (closed ? !(radius < d) : d < radius)
            out.push_back(i);
    }
    return out;
}

std::vector<int> sphere(const FiniteMetricSpace& s, int center, const Rational& radius) {
    std::vector<int> out;
    for (int i = 0; i < s.n(); ++i)
        if (s.dist(center, i) == radius)
            out.push_back(i);
    return out;
}

std::vector<int> med_set(const FiniteMetricSpace& s, int a, int b) {
    std::vector<int> out;
    for (int i = 0; i < s.n(); ++i)
        if (s.dist(i, a) == s.dist(i, b))
            out.push_back(i);
    return out;
}

} // namespace ums
