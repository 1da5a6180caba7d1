#include "bifree/gram.hpp"

#include <complex>
#include <stdexcept>

namespace bifree {

GramReport certify_gram(std::vector<Word> basis, Eigen::MatrixXcd gram,
                        double tol) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("certify_gram: matrix not square");
  if (static_cast<Eigen::Index>(basis.size()) != gram.rows())
    throw std::invalid_argument("certify_gram: basis/matrix size mismatch");

  GramReport report;
  report.basis = std::move(basis);
  report.matrix = std::move(gram);

  const Eigen::MatrixXcd& g = report.matrix;
  const Eigen::MatrixXcd herm = (g + g.adjoint()) / 2.0;
  const Eigen::MatrixXcd skew = (g - g.adjoint()) / 2.0;
  report.hermitian_defect = (g - g.adjoint()).cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success)
    throw Error("certify_gram: eigensolver failed");
  report.min_eig = es.eigenvalues()(0);

  report.psd = report.min_eig >= -tol && report.hermitian_defect <= tol;
  if (!report.psd) {
    if (report.min_eig < -tol) {
      report.witness = es.eigenvectors().col(0).normalized();
    } else {
      // Hermitian-defect failure: pick the direction with the largest
      // imaginary quadratic form, i.e. the top eigenvector of skew/i.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ks(
          skew / std::complex<double>(0.0, 1.0));
      const auto& ev = ks.eigenvalues();
      const Eigen::Index last = ev.size() - 1;
      const Eigen::Index pick =
          std::abs(ev(0)) > std::abs(ev(last)) ? 0 : last;
      report.witness = ks.eigenvectors().col(pick).normalized();
    }
  }
  return report;
}

Eigen::MatrixXcd hadamard(const Eigen::MatrixXcd& a,
                          const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hadamard: shape mismatch");
  return a.cwiseProduct(b);
}

}  // namespace bifree
