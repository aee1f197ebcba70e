#pragma once

/*
 * Finite metric spaces over exact rationals.
 *
 * A FiniteMetricSpace is an immutable symmetric distance matrix (stored as
 * a packed strict lower triangle) plus one label per point. Construction
 * via validate_space checks symmetry, zero diagonal, strict positivity off
 * the diagonal and every triangle inequality, reporting the first violated
 * triple. MetricSpaceBuilder grows a space point by point without repeated
 * revalidation; it is used by constructions whose outputs are metric by
 * construction (extensions, amalgams, towers).
 */

#include "ums/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ums {

// Domain error with a stable machine-readable name, integer arguments
// (usually point indices) and an optional human detail line.
class MetricError : public std::runtime_error {
public:
    MetricError(std::string name, std::vector<long long> args = {}, std::string detail = "");

    const std::string& name() const { return name_; }
    const std::vector<long long>& args() const { return args_; }
    const std::string& detail() const { return detail_; }

    // First report line: the name followed by the integer arguments.
    std::string report_line() const;

private:
    std::string name_;
    std::vector<long long> args_;
    std::string detail_;
};

class MetricSpaceBuilder;

class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    int n() const { return n_; }

    const Rational& dist(int i, int j) const {
        static const Rational zero;
        return i == j ? zero : tri_[pack(i, j)];
    }

    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_default_labels() const;

    std::vector<Rational> row(int i) const;
    Rational diameter() const;

    // Subspace induced by the given points, in the given order.
    FiniteMetricSpace induced(const std::vector<int>& points) const;

    // Space whose point k is this space's point perm[k].
    FiniteMetricSpace permuted(const std::vector<int>& perm) const;

    // Copy with one extra point at the given distances (not revalidated
    // beyond basic shape; used by extension operations that guarantee the
    // triangle inequality).
    FiniteMetricSpace with_point(const std::vector<Rational>& dists, std::string label = "") const;

    friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
        return a.n_ == b.n_ && a.tri_ == b.tri_;
    }

private:
    friend class MetricSpaceBuilder;
    friend FiniteMetricSpace validate_space(const std::vector<std::vector<Rational>>&,
                                            std::vector<std::string>);

    static std::size_t pack(int i, int j) {
        if (i < j) std::swap(i, j);
        return static_cast<std::size_t>(i) * (i - 1) / 2 + j;
    }

    static std::vector<std::string> default_labels(int n);

    int n_ = 0;
    std::vector<Rational> tri_;
    std::vector<std::string> labels_;
};

// Checks the full matrix and returns the space. Errors, in checking order:
//   BadMatrix             not square / wrong row lengths
//   NonzeroDiagonal i
//   AsymmetricMatrix i j
//   NegativeOrZeroOffDiagonal i j
//   TriangleViolation i j k    (d(i,k) > d(i,j) + d(j,k))
FiniteMetricSpace validate_space(const std::vector<std::vector<Rational>>& rows,
                                 std::vector<std::string> labels = {});

// Revalidates an already-built space (same checks minus shape).
void revalidate(const FiniteMetricSpace& s);

class MetricSpaceBuilder {
public:
    MetricSpaceBuilder() = default;
    explicit MetricSpaceBuilder(const FiniteMetricSpace& start);

    int n() const { return n_; }
    const Rational& dist(int i, int j) const {
        static const Rational zero;
        return i == j ? zero : tri_[FiniteMetricSpace::pack(i, j)];
    }

    // Appends a point; dists must hold one value per existing point.
    int add_point(std::vector<Rational> dists, std::string label = "");

    FiniteMetricSpace freeze() &&;

private:
    int n_ = 0;
    std::vector<Rational> tri_;
    std::vector<std::string> labels_;
};

std::vector<int> ball(const FiniteMetricSpace& s, int center, const Rational& radius,
                      bool closed = true);
std::vector<int> sphere(const FiniteMetricSpace& s, int center, const Rational& radius);
std::vector<int> med_set(const FiniteMetricSpace& s, int a, int b);

// "ums v1" text format: header, "n <count>", optional "labels <tok>...",
// one "d <i> <j> <p>[/<q>]" line per unordered pair with i < j, "end".
// Output is canonical: pairs ascending, rationals in lowest terms, LF.
FiniteMetricSpace read_ums(std::istream& in);
FiniteMetricSpace read_ums_file(const std::string& path);
void write_ums(std::ostream& out, const FiniteMetricSpace& s);
void write_ums_file(const std::string& path, const FiniteMetricSpace& s);

} // namespace ums
