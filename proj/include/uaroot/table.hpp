#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uaroot {

// One experiment result row. Fields that do not apply stay empty and are
// emitted as blanks (CSV) or nulls (JSON); the column order is fixed.
struct TrialRow {
    std::string experiment;
    std::string model;
    std::optional<std::int32_t> d;
    std::optional<std::int64_t> n;
    std::optional<std::int64_t> k;
    std::optional<double> x;
    std::optional<double> y;
    std::string statistic;
    std::optional<double> value;
    std::optional<double> stderr_value;
    std::optional<double> bound;
    std::optional<bool> pass;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
};

struct TrialTable {
    std::vector<TrialRow> rows;

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

    bool all_passed() const;
    void append(const TrialTable& other) {
        rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    }
};

}  // namespace uaroot
