#include "ytest/dataset.hpp"

#include "ytest/errors.hpp"

namespace ytest {

void Dataset::add_column(std::string name, Eigen::VectorXd values) {
    if (name.empty()) throw ValidationError("column name must not be empty");
    if (index_.contains(name)) throw ValidationError("duplicate column name: " + name);
    if (!names_.empty() && values.size() != n_rows_) {
        throw ValidationError("column " + name + " has " + std::to_string(values.size()) +
                              " rows, expected " + std::to_string(n_rows_));
    }
    n_rows_ = values.size();
    index_.emplace(name, names_.size());
    names_.push_back(std::move(name));
    columns_.push_back(std::move(values));
}

bool Dataset::has(std::string_view name) const {
    return index_.contains(std::string(name));
}

const Eigen::VectorXd& Dataset::col(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) throw ValidationError("unknown column: " + std::string(name));
    return columns_[it->second];
}

Dataset Dataset::select(std::span<const std::string> columns) const {
    Dataset out;
    for (const auto& name : columns) out.add_column(name, col(name));
    return out;
}

}  // namespace ytest
