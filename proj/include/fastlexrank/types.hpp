#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace fastlexrank {

// Row-major throughout: embeddings are accessed row-wise and serialized row-major.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Malformed or degenerate input data. CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource budget would be exceeded. CLI maps this to exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kDefaultMatrixBudgetBytes = 2ull << 30;  // 2 GiB

}  // namespace fastlexrank
