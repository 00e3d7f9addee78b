#include "s3vm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "s3vm/error.hpp"
#include "s3vm/rng.hpp"

namespace s3vm {

std::size_t Dataset::l() const { return static_cast<std::size_t>(std::count(labeled_mask.begin(), labeled_mask.end(), true)); }

std::vector<std::size_t> Dataset::labeled_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labeled_mask.size(); ++i)
        if (labeled_mask[i]) out.push_back(i);
    return out;
}

std::vector<std::size_t> Dataset::unlabeled_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labeled_mask.size(); ++i)
        if (!labeled_mask[i]) out.push_back(i);
    return out;
}

LabelVector Dataset::labeled_labels() const {
    LabelVector out;
    for (std::size_t i : labeled_indices()) out.push_back(y_true[i]);
    return out;
}

LabelVector Dataset::label_state() const {
    LabelVector out(m(), 0);
    for (std::size_t i = 0; i < m(); ++i)
        if (labeled_mask[i]) out[i] = y_true[i];
    return out;
}

void Dataset::validate() const {
    if (y_true.size() != m() || labeled_mask.size() != m()) throw InvalidArgument("dataset: inconsistent sizes");
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < m(); ++i) {
        if (!labeled_mask[i]) continue;
        if (y_true[i] == 1) pos = true;
        else if (y_true[i] == -1) neg = true;
        else throw InvalidArgument("dataset: labeled instance without a +1/-1 label");
    }
    if (!pos || !neg) throw InvalidArgument("dataset: labeled set must contain both classes");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

// +1, -1 or 0 for '?'; nullopt when the token is not a label at all.
std::optional<int> parse_label(std::string_view s) {
    s = trim(s);
    if (s == "?") return 0;
    auto v = parse_double(s);
    if (!v) return std::nullopt;
    if (*v == 1.0) return 1;
    if (*v == -1.0) return -1;
    return std::nullopt;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

Dataset assemble(std::vector<std::vector<double>> rows, LabelVector labels, std::size_t dim) {
    Dataset d;
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (auto& r : rows) {
        r.resize(dim, 0.0);
        flat.insert(flat.end(), r.begin(), r.end());
    }
    d.X = Matrix(rows.size(), dim, std::move(flat));
    for (int v : labels) d.labeled_mask.push_back(v != 0);
    d.y_true = std::move(labels);
    return d;
}

std::string format_label(int y, bool labeled) {
    if (!labeled || y == 0) return "?";
    return y > 0 ? "+1" : "-1";
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

Dataset parse_dataset(const std::string& text, FileFormat format) {
    std::vector<std::vector<double>> rows;
    LabelVector labels;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    bool first_content = true;

    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;

        if (format == FileFormat::csv) {
            auto fields = split(line, ',');
            auto label = parse_label(fields[0]);
            if (!label) {
                if (first_content && !parse_double(fields[0])) {
                    first_content = false;
                    continue;  // header row
                }
                throw DataError("invalid label '" + std::string(trim(fields[0])) + "'", line_no);
            }
            first_content = false;
            std::vector<double> row;
            for (std::size_t c = 1; c < fields.size(); ++c) {
                auto v = parse_double(fields[c]);
                if (!v || !std::isfinite(*v)) throw DataError("malformed feature value", line_no);
                row.push_back(*v);
            }
            if (rows.empty()) dim = row.size();
            else if (row.size() != dim) throw DataError("inconsistent column count", line_no);
            rows.push_back(std::move(row));
            labels.push_back(*label);
        } else {
            if (line.front() == '#') continue;
            auto toks = tokens(line.substr(0, line.find('#')));
            auto label = parse_label(toks[0]);
            if (!label) throw DataError("invalid label '" + std::string(toks[0]) + "'", line_no);
            std::vector<double> row;
            std::size_t last = 0;
            for (std::size_t t = 1; t < toks.size(); ++t) {
                const auto colon = toks[t].find(':');
                if (colon == std::string_view::npos) throw DataError("expected index:value", line_no);
                std::size_t idx = 0;
                auto key = toks[t].substr(0, colon);
                auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
                if (ec != std::errc() || ptr != key.data() + key.size() || idx == 0)
                    throw DataError("feature index must be a positive integer", line_no);
                if (idx <= last) throw DataError("feature indices must be increasing", line_no);
                last = idx;
                auto v = parse_double(toks[t].substr(colon + 1));
                if (!v || !std::isfinite(*v)) throw DataError("malformed feature value", line_no);
                row.resize(idx, 0.0);
                row[idx - 1] = *v;
            }
            dim = std::max(dim, row.size());
            rows.push_back(std::move(row));
            labels.push_back(*label);
        }
    }
    if (rows.empty()) throw DataError("no instances in input");
    return assemble(std::move(rows), std::move(labels), dim);
}

Dataset load_dataset(const std::filesystem::path& path, FileFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_dataset(ss.str(), format);
}

std::string format_dataset(const Dataset& data, FileFormat format) {
    std::string out;
    for (std::size_t i = 0; i < data.m(); ++i) {
        out += format_label(data.y_true[i], data.labeled_mask[i]);
        auto row = data.X.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (format == FileFormat::csv) {
                out += ',';
                out += format_number(row[j]);
            } else if (row[j] != 0.0) {
                out += ' ' + std::to_string(j + 1) + ':' + format_number(row[j]);
            }
        }
        out += '\n';
    }
    return out;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path, FileFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << format_dataset(data, format);
    if (!out) throw DataError("write failed for " + path.string());
}

Dataset make_split(const Matrix& X, const LabelVector& y_true, const SplitSpec& spec, std::size_t repeat_index) {
    const std::size_t m = X.rows();
    if (y_true.size() != m) throw InvalidArgument("make_split: label count does not match instances");
    if (spec.n_labeled < 2) throw InvalidArgument("make_split: need at least two labeled instances");
    if (spec.n_labeled >= m) throw InvalidArgument("make_split: n_labeled must be smaller than the dataset");

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < m; ++i) {
        if (y_true[i] == 1) pos.push_back(i);
        else if (y_true[i] == -1) neg.push_back(i);
        else throw InvalidArgument("make_split: every instance needs a +1/-1 ground-truth label");
    }
    if (pos.empty() || neg.empty()) throw InvalidArgument("make_split: a class is absent from the ground truth");

    Rng rng(mix_seed(spec.seed, repeat_index));
    // First k entries of a partial Fisher-Yates shuffle.
    auto draw = [&rng](std::vector<std::size_t> pool, std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        pool.resize(k);
        return pool;
    };

    Dataset d;
    d.X = X;
    d.y_true = y_true;
    d.labeled_mask.assign(m, false);

    if (spec.n_positive) {
        const std::size_t np = *spec.n_positive;
        const std::size_t nn = spec.n_labeled - std::min(np, spec.n_labeled);
        if (np == 0 || nn == 0 || np > pos.size() || nn > neg.size())
            throw InvalidArgument("make_split: requested class counts are not achievable");
        for (std::size_t i : draw(pos, np)) d.labeled_mask[i] = true;
        for (std::size_t i : draw(neg, nn)) d.labeled_mask[i] = true;
        return d;
    }

    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const auto chosen = draw(all, spec.n_labeled);
        bool has_pos = false, has_neg = false;
        for (std::size_t i : chosen) (y_true[i] == 1 ? has_pos : has_neg) = true;
        if (has_pos && has_neg) {
            for (std::size_t i : chosen) d.labeled_mask[i] = true;
            return d;
        }
    }
    throw InvalidArgument("make_split: could not draw a labeled set containing both classes");
}

std::pair<Matrix, LabelVector> make_moons(MoonVariant variant, std::size_t n_per_moon, double noise_sigma,
                                          std::uint64_t seed) {
    if (n_per_moon < 1) throw InvalidArgument("make_moons: need at least one point per moon");
    if (!(noise_sigma >= 0.0)) throw InvalidArgument("make_moons: noise must be non-negative");
    const std::size_t moons = variant == MoonVariant::two ? 2 : 3;
    Matrix X(moons * n_per_moon, 2);
    LabelVector y;
    Rng rng(seed);
    std::size_t r = 0;
    for (std::size_t moon = 0; moon < moons; ++moon) {
        for (std::size_t k = 0; k < n_per_moon; ++k, ++r) {
            const double t = n_per_moon > 1 ? std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_per_moon - 1) : 0.0;
            double px, py;
            switch (moon) {
                case 0: px = std::cos(t); py = std::sin(t); break;
                case 1: px = 1.0 - std::cos(t); py = 0.5 - std::sin(t); break;
                default: px = std::cos(t); py = 1.5 + std::sin(t); break;
            }
            if (noise_sigma > 0.0) {
                px += noise_sigma * rng.normal();
                py += noise_sigma * rng.normal();
            }
            X(r, 0) = px;
            X(r, 1) = py;
            y.push_back(moon == 1 ? -1 : 1);
        }
    }
    return {std::move(X), std::move(y)};
}

}  // namespace s3vm
