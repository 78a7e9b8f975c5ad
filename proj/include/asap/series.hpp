#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asap {

/// Raised for any violated precondition on inputs (too short, constant,
/// non-finite, bad window, ...). Callers that need to distinguish can
/// catch std::invalid_argument.
class Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Epoch milliseconds.
using Timestamp = std::int64_t;

/// Ordered timestamped samples. Construction validates the invariants:
/// equal lengths, finite values, non-decreasing timestamps.
class Series {
public:
    Series() = default;

    Series(std::vector<Timestamp> timestamps, std::vector<double> values)
        : timestamps_(std::move(timestamps)), values_(std::move(values)) {
        if (timestamps_.size() != values_.size())
            throw Error("timestamps and values differ in length");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw Error("non-finite value at index " + std::to_string(i));
            if (i > 0 && timestamps_[i] < timestamps_[i - 1])
                throw Error("timestamps decrease at index " + std::to_string(i));
        }
    }

    /// Unit-spaced timestamps 0, 1, 2, ...
    static Series from_values(std::vector<double> values) {
        std::vector<Timestamp> ts(values.size());
        for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = static_cast<Timestamp>(i);
        return Series(std::move(ts), std::move(values));
    }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

    [[nodiscard]] const std::vector<Timestamp>& timestamps() const noexcept { return timestamps_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<Timestamp> timestamps_;
    std::vector<double> values_;
};

} // namespace asap
