#include "hkq/quat.hpp"

namespace hkq {

QuatMatrix expm(const QuatMatrix& A) {
    if (A.rows != A.cols) throw Error("expm: square matrix required");
    const double nrm = A.frobeniusNorm();
    int squarings = 0;
    double scale = 1.0;
    while (nrm * scale > 0.25) {
        scale *= 0.5;
        ++squarings;
    }
    QuatMatrix B = scale * A;
    QuatMatrix result = QuatMatrix::identity(A.rows);
    QuatMatrix term = QuatMatrix::identity(A.rows);
    for (int k = 1; k <= 24; ++k) {
        term = (1.0 / k) * (term * B);
        result += term;
        if (term.frobeniusNorm() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

}  // namespace hkq
