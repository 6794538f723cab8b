#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace liesphere {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorKind { Usage, Domain, Validation, Degenerate, Analysis, IO };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace liesphere
