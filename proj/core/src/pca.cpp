#include <cmath>
#include <numeric>

#include "decentral/econometrics.hpp"
#include "decentral/error.hpp"

namespace decentral {

PrincipalComponent first_pc(std::span<const std::vector<double>> columns) {
    if (columns.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "principal components need at least two columns");
    }
    const std::size_t n = columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != n) throw Error(ErrorCode::InvalidArgument, "panel columns differ in length");
    }
    if (n < 2) throw Error(ErrorCode::InsufficientData, "principal components need at least two rows");

    const auto rows = static_cast<Eigen::Index>(n);
    const auto p = static_cast<Eigen::Index>(columns.size());
    Eigen::MatrixXd z(rows, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto& c = columns[static_cast<std::size_t>(j)];
        const Eigen::Map<const Eigen::VectorXd> col(c.data(), rows);
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(n - 1));
        if (!(sd > 0.0) || !std::isfinite(sd)) {
            throw Error(ErrorCode::DegenerateCovariance, "panel column " + std::to_string(j) + " has zero variance");
        }
        z.col(j) = (col.array() - mean) / sd;
    }
    const Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(n - 1);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
    if (eig.info() != Eigen::Success) {
        throw Error(ErrorCode::DegenerateCovariance, "eigen decomposition of the correlation matrix failed");
    }
    // Eigenvalues are ascending.
    Eigen::VectorXd v = eig.eigenvectors().col(p - 1);
    v.normalize();
    if (v.sum() < 0.0) v = -v;
    const Eigen::VectorXd scores = z * v;

    PrincipalComponent pc;
    pc.loadings.assign(v.data(), v.data() + p);
    pc.scores.assign(scores.data(), scores.data() + rows);
    pc.eigenvalue = eig.eigenvalues()(p - 1);
    pc.explained_variance_ratio = pc.eigenvalue / corr.trace();
    return pc;
}

}  // namespace decentral
