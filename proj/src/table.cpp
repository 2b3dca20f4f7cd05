#include "uaroot/table.hpp"

#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

namespace uaroot {

namespace {

std::string format_double(double value) {
    std::ostringstream os;
    os.precision(12);
    os << value;
    return os.str();
}

template <class T>
void put(std::ostream& os, const std::optional<T>& field) {
    if (field) {
        if constexpr (std::is_same_v<T, double>)
            os << format_double(*field);
        else if constexpr (std::is_same_v<T, bool>)
            os << (*field ? "true" : "false");
        else
            os << *field;
    }
}

}  // namespace

void TrialTable::write_csv(std::ostream& os) const {
    os << "experiment,model,d,n,K,x,y,statistic,value,stderr,bound,pass,trials,seed\n";
    for (const auto& row : rows) {
        os << row.experiment << ',' << row.model << ',';
        put(os, row.d);
        os << ',';
        put(os, row.n);
        os << ',';
        put(os, row.k);
        os << ',';
        put(os, row.x);
        os << ',';
        put(os, row.y);
        os << ',' << row.statistic << ',';
        put(os, row.value);
        os << ',';
        put(os, row.stderr_value);
        os << ',';
        put(os, row.bound);
        os << ',';
        put(os, row.pass);
        os << ',';
        put(os, row.trials);
        os << ',';
        put(os, row.seed);
        os << '\n';
    }
}

void TrialTable::write_json(std::ostream& os) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j;
        j["experiment"] = row.experiment;
        j["model"] = row.model;
        j["d"] = row.d ? nlohmann::json(*row.d) : nlohmann::json(nullptr);
        j["n"] = row.n ? nlohmann::json(*row.n) : nlohmann::json(nullptr);
        j["K"] = row.k ? nlohmann::json(*row.k) : nlohmann::json(nullptr);
        j["x"] = row.x ? nlohmann::json(*row.x) : nlohmann::json(nullptr);
        j["y"] = row.y ? nlohmann::json(*row.y) : nlohmann::json(nullptr);
        j["statistic"] = row.statistic;
        j["value"] = row.value ? nlohmann::json(*row.value) : nlohmann::json(nullptr);
        j["stderr"] = row.stderr_value ? nlohmann::json(*row.stderr_value) : nlohmann::json(nullptr);
        j["bound"] = row.bound ? nlohmann::json(*row.bound) : nlohmann::json(nullptr);
        j["pass"] = row.pass ? nlohmann::json(*row.pass) : nlohmann::json(nullptr);
        j["trials"] = row.trials ? nlohmann::json(*row.trials) : nlohmann::json(nullptr);
        j["seed"] = row.seed ? nlohmann::json(*row.seed) : nlohmann::json(nullptr);
        out.push_back(std::move(j));
    }
    os << out.dump(2) << '\n';
}

bool TrialTable::all_passed() const {
    for (const auto& row : rows)
        if (row.pass && !*row.pass) return false;
    return true;
}

}  // namespace uaroot
