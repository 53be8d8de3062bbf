#pragma once

#include <string>
#include <vector>

#include "sclforge/core.hpp"

namespace sclforge {

// d^+ from an scl value: 0 on the diagonal, scl + 1/2 off it. The +1/2 turns
// the weak triangle inequality of scl into a genuine metric; infinity
// propagates off the scl-finite locus.
inline ExtRational d_plus(const ExtRational& scl_value, bool same_element) {
    if (same_element) return ExtRational(Rational(0));
    if (scl_value.infinite) return ExtRational::inf();
    return ExtRational(scl_value.value + make_rational(1, 2));
}

// Finite labeled metric sample; the triangle inequality is verified on
// construction and a violation is an error.
class MetricSample {
  public:
    MetricSample(std::vector<std::string> labels, std::vector<std::vector<ExtRational>> dist)
        : labels_(std::move(labels)), dist_(std::move(dist)) {
        const std::size_t n = labels_.size();
        if (dist_.size() != n) throw PreconditionError("metric sample needs a square matrix");
        for (const auto& row : dist_)
            if (row.size() != n) throw PreconditionError("metric sample needs a square matrix");
        for (std::size_t i = 0; i < n; ++i) {
            if (dist_[i][i] != ExtRational(Rational(0)))
                throw PreconditionError("metric sample needs zero diagonal");
            for (std::size_t j = 0; j < n; ++j) {
                if (dist_[i][j] != dist_[j][i])
                    throw PreconditionError("metric sample needs a symmetric matrix");
                if (!dist_[i][j].infinite && dist_[i][j].value < 0)
                    throw PreconditionError("metric sample needs nonnegative distances");
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (dist_[i][k] > dist_[i][j] + dist_[j][k])
                        throw PreconditionError("metric sample violates the triangle inequality");
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const ExtRational& dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw PreconditionError("unknown sample point: " + label);
    }

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<ExtRational>> dist_;
};

// Least R with A inside the R-neighborhood of B: max over a of min over b.
inline ExtRational directed_radius(const MetricSample& s, const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
    if (a.empty() || b.empty()) throw PreconditionError("directed radius needs nonempty sets");
    ExtRational worst(Rational(0));
    for (std::size_t i : a) {
        ExtRational best = ExtRational::inf();
        for (std::size_t j : b) best = min(best, s.dist(i, j));
        worst = max(worst, best);
    }
    return worst;
}

// (radius of A into B, radius of B into A); a finite pair certifies that the
// two sets are asymptotic within this sample.
inline std::pair<ExtRational, ExtRational> asymptotic_check(const MetricSample& s,
                                                            const std::vector<std::size_t>& a,
                                                            const std::vector<std::size_t>& b) {
    return {directed_radius(s, a, b), directed_radius(s, b, a)};
}

struct CoarseHomSample {
    std::string g1, g2;
    ExtRational defect;  // d(f(g1 g2), f(g1) f(g2))
};

// Maximum observed multiplicative defect over the sampled pairs; the
// within-sample estimate of the coarse-homomorphism constant.
inline ExtRational coarse_hom_defect(const std::vector<CoarseHomSample>& samples) {
    ExtRational worst(Rational(0));
    for (const auto& s : samples) worst = max(worst, s.defect);
    return worst;
}

}  // namespace sclforge
