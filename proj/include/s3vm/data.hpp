#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "s3vm/numerics.hpp"
#include "s3vm/svm.hpp"

namespace s3vm {

// Instances plus per-instance label state. y_true holds +1/-1 where the
// ground truth is known and 0 where it is not (files with '?' labels).
struct Dataset {
    Matrix X;
    LabelVector y_true;
    std::vector<bool> labeled_mask;

    std::size_t m() const { return X.rows(); }
    std::size_t l() const;
    std::size_t u() const { return m() - l(); }

    std::vector<std::size_t> labeled_indices() const;
    std::vector<std::size_t> unlabeled_indices() const;
    LabelVector labeled_labels() const;

    // Per-instance +1/-1 for labeled instances, 0 for unlabeled ones.
    LabelVector label_state() const;

    // Throws unless shapes agree, labeled instances carry +1/-1 and both
    // classes appear among them.
    void validate() const;
};

enum class FileFormat { csv, sparse };

// CSV: label,feature,... with an optional header row. Sparse: "label i:v ..."
// with 1-based indices. Labels are +1, -1 or '?' (unlabeled).
Dataset load_dataset(const std::filesystem::path& path, FileFormat format);
Dataset parse_dataset(const std::string& text, FileFormat format);

// Writes the dataset; unlabeled instances are written with '?'.
void save_dataset(const Dataset& data, const std::filesystem::path& path, FileFormat format);
std::string format_dataset(const Dataset& data, FileFormat format);

struct SplitSpec {
    std::size_t n_labeled = 10;
    std::uint64_t seed = 0;
    std::size_t repeats = 30;
    // When set, exactly this many labeled instances are drawn from the
    // positive class and the rest from the negative class.
    std::optional<std::size_t> n_positive;
};

// Seeded labeled/unlabeled split. The labeled set is redrawn until both
// classes appear.
Dataset make_split(const Matrix& X, const LabelVector& y_true, const SplitSpec& spec, std::size_t repeat_index);

enum class MoonVariant { two, three };

// Interleaved half-circles of radius 1. Two moons: (cos t, sin t) labeled +1
// and (1 - cos t, 0.5 - sin t) labeled -1. Three moons add (cos t, 1.5 + sin t)
// labeled +1. Angles are evenly spaced over [0, pi]; noise is isotropic.
std::pair<Matrix, LabelVector> make_moons(MoonVariant variant, std::size_t n_per_moon, double noise_sigma,
                                          std::uint64_t seed);

}  // namespace s3vm
