#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ytest {

/// Column-ordered table of equal-length numeric observations.
class Dataset {
public:
    Dataset() = default;

    /// Appends a column. Throws ValidationError on a duplicate name or a
    /// length mismatch with existing columns.
    void add_column(std::string name, Eigen::VectorXd values);

    [[nodiscard]] bool has(std::string_view name) const;
    /// Throws ValidationError naming the column when absent.
    [[nodiscard]] const Eigen::VectorXd& col(std::string_view name) const;

    [[nodiscard]] Eigen::Index n_rows() const { return n_rows_; }
    [[nodiscard]] Eigen::Index n_cols() const { return static_cast<Eigen::Index>(names_.size()); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

    /// New dataset containing only the named columns, in the given order.
    [[nodiscard]] Dataset select(std::span<const std::string> columns) const;

private:
    std::vector<std::string> names_;
    std::vector<Eigen::VectorXd> columns_;
    std::unordered_map<std::string, std::size_t> index_;
    Eigen::Index n_rows_ = 0;
};

}  // namespace ytest
