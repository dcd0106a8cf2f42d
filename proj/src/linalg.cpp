#include "cubic/linalg.hpp"

namespace cubic {

Eigen::Index int_rank(const IntMat& m) { return rank(to_rational(m)); }

IntMat int_kernel(const IntMat& m) {
    RatMat k = kernel(to_rational(m));
    IntMat out(k.rows(), k.cols());
    for (Eigen::Index j = 0; j < k.cols(); ++j) out.col(j) = primitive(RatVec(k.col(j)));
    return out;
}

IntMat row_space_key(const IntMat& rows) {
    RatMat r = rref(to_rational(rows));
    IntMat out(r.rows(), r.cols());
    for (Eigen::Index i = 0; i < r.rows(); ++i) out.row(i) = primitive(RatVec(r.row(i).transpose())).transpose();
    return out;
}

} // namespace cubic
