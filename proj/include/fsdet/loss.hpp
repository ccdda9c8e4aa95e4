#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsdet/numeric.hpp"

namespace fsdet {

/// Image-level binary label vector m of length C+1. m[i] = 1 iff class i is
/// annotated somewhere in the image; the background entry m[C] is always 1
/// because every image contains background. Stored as doubles so it can be
/// multiplied straight into a logit vector.
using LabelMask = std::vector<double>;

inline bool is_valid_mask(const LabelMask& m) {
    if (m.size() < 2) return false;
    for (double v : m) {
        if (v != 0.0 && v != 1.0) return false;
    }
    return m.back() == 1.0;
}

/// Builds the image-level mask from the set of classes that carry at least
/// one annotation in the image. The background bit is always set.
inline LabelMask build_image_mask(const std::set<int>& labeled_classes,
                                  int num_fg_classes) {
    if (num_fg_classes < 1) {
        throw std::invalid_argument("build_image_mask: need at least one foreground class");
    }
    LabelMask m(static_cast<std::size_t>(num_fg_classes) + 1, 0.0);
    for (int c : labeled_classes) {
        if (c < 0 || c >= num_fg_classes) {
            throw std::invalid_argument("build_image_mask: class index " +
                                        std::to_string(c) + " out of range");
        }
        m[static_cast<std::size_t>(c)] = 1.0;
    }
    m.back() = 1.0;
    return m;
}

/// Positive-head loss: plain softmax cross-entropy against the assigned
/// foreground class. Foreground annotations are trusted, so no mask is
/// applied. The background class is never a valid positive target.
inline double positive_head_loss(const LogitVector& x, std::size_t target) {
    if (x.size() < 2) throw std::invalid_argument("positive_head_loss: too few classes");
    if (target + 1 >= x.size()) {
        throw std::invalid_argument(
            "positive_head_loss: target must be a foreground class");
    }
    return cross_entropy_from_logits(x, target);
}

/// Constrained logit: x̄_i = m_i * x_i. Masked-out entries become exactly 0,
/// not -inf, so each still contributes exp(0) = 1 to the softmax denominator.
inline LogitVector masked_logits(const LogitVector& x, const LabelMask& m) {
    if (x.size() != m.size()) {
        throw std::invalid_argument("masked_logits: logit/mask length mismatch");
    }
    LogitVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = m[i] * x[i];
    return out;
}

/// Negative-head loss: softmax cross-entropy of the mask-constrained logits
/// against the background class. A negative sample may be an unannotated
/// foreground object, so learning is restricted to the classes the image is
/// known to contain plus background; all other dimensions are left alone.
inline double negative_head_loss(const LogitVector& x, const LabelMask& m) {
    if (!is_valid_mask(m)) {
        throw std::invalid_argument("negative_head_loss: invalid label mask");
    }
    const LogitVector constrained = masked_logits(x, m);
    return cross_entropy_from_logits(constrained, constrained.size() - 1);
}

/// Gradient of positive_head_loss with respect to the logits:
/// softmax(x) - one_hot(target). Components sum to zero.
inline std::vector<double> positive_head_grad_logits(const LogitVector& x,
                                                     std::size_t target) {
    if (target + 1 >= x.size()) {
        throw std::out_of_range("positive_head_grad_logits: target must be foreground");
    }
    std::vector<double> g = stable_softmax(x);
    g[target] -= 1.0;
    return g;
}

/// Gradient of negative_head_loss with respect to the logits:
/// m ⊙ (softmax(m ⊙ x) - one_hot(background)). Masked-out components are
/// exactly 0.0; the rest sum to minus the probability mass the constrained
/// softmax assigns to masked-out classes.
inline std::vector<double> negative_head_grad_logits(const LogitVector& x,
                                                     const LabelMask& m) {
    if (!is_valid_mask(m)) {
        throw std::invalid_argument("negative_head_grad_logits: invalid label mask");
    }
    const ProbVector p = stable_softmax(masked_logits(x, m));
    std::vector<double> g(x.size());
    const std::size_t bg = x.size() - 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (m[i] == 0.0) {
            g[i] = 0.0;
        } else {
            g[i] = p[i] - (i == bg ? 1.0 : 0.0);
        }
    }
    return g;
}

/// The sampled ROI classification batch of one image. labels[i] in [0, C];
/// label == C marks a negative (background-assigned) sample. The mask applies
/// to the whole image.
struct RoiClassificationBatch {
    std::vector<LogitVector> logits;
    std::vector<int> labels;
    LabelMask mask;

    std::size_t size() const { return logits.size(); }
    int num_classes() const { return static_cast<int>(mask.size()) - 1; }
};

inline void validate_batch(const RoiClassificationBatch& batch) {
    if (batch.logits.empty()) {
        throw std::invalid_argument("roi batch: empty");
    }
    if (batch.logits.size() != batch.labels.size()) {
        throw std::invalid_argument("roi batch: logits/labels length mismatch");
    }
    if (!is_valid_mask(batch.mask)) {
        throw std::invalid_argument("roi batch: invalid label mask");
    }
    const int bg = batch.num_classes();
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (batch.logits[i].size() != batch.mask.size()) {
            throw std::invalid_argument("roi batch: logit length mismatch at sample " +
                                        std::to_string(i));
        }
        if (batch.labels[i] < 0 || batch.labels[i] > bg) {
            throw std::invalid_argument("roi batch: label out of range at sample " +
                                        std::to_string(i));
        }
    }
}

/// Per-image loss split into its two heads. total = (positive_sum +
/// negative_sum) / n where n is the full sample count of the image.
struct LossBreakdown {
    double positive_sum = 0.0;
    double negative_sum = 0.0;
    double total = 0.0;
    std::size_t n = 0;
};

/// Decoupled per-image classification loss: positives go through the plain
/// cross-entropy head, negatives through the mask-constrained head, and the
/// two sums are normalized together by the image's total sample count.
inline LossBreakdown dc_loss_image(const RoiClassificationBatch& batch) {
    validate_batch(batch);
    const int bg = batch.num_classes();
    LossBreakdown out;
    out.n = batch.size();
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (batch.labels[i] < bg) {
            out.positive_sum +=
                positive_head_loss(batch.logits[i],
                                   static_cast<std::size_t>(batch.labels[i]));
        } else {
            out.negative_sum += negative_head_loss(batch.logits[i], batch.mask);
        }
    }
    out.total = (out.positive_sum + out.negative_sum) / static_cast<double>(out.n);
    return out;
}

/// Baseline: mean softmax cross-entropy over all samples, mask ignored.
/// Accumulated per head in the same order as dc_loss_image so that the two
/// losses are bit-identical whenever the mask is all-ones.
inline double standard_ce_image(const RoiClassificationBatch& batch) {
    validate_batch(batch);
    const int bg = batch.num_classes();
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const double v = cross_entropy_from_logits(
            batch.logits[i], static_cast<std::size_t>(batch.labels[i]));
        if (batch.labels[i] < bg) {
            pos += v;
        } else {
            neg += v;
        }
    }
    return (pos + neg) / static_cast<double>(batch.size());
}

}  // namespace fsdet
