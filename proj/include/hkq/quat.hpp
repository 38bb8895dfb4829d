#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace hkq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quaternion with scalar-first component order, Hamilton convention ij = k.
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    Quaternion() = default;
    Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    /// Unit along axis 0..3 = (1, i, j, k).
    static Quaternion unit(int axis) {
        switch (axis) {
            case 0: return {1, 0, 0, 0};
            case 1: return {0, 1, 0, 0};
            case 2: return {0, 0, 1, 0};
            case 3: return {0, 0, 0, 1};
        }
        throw Error("Quaternion::unit: axis out of range");
    }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    double squaredNorm() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(squaredNorm()); }
    double real() const { return w; }

    Quaternion& operator+=(const Quaternion& r) {
        w += r.w; x += r.x; y += r.y; z += r.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& r) {
        w -= r.w; x -= r.x; y -= r.y; z -= r.z;
        return *this;
    }
    Quaternion& operator*=(double c) {
        w *= c; x *= c; y *= c; z *= c;
        return *this;
    }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }
inline Quaternion operator*(double c, Quaternion q) { return q *= c; }
inline Quaternion operator*(Quaternion q, double c) { return q *= c; }

inline Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

/// Euclidean pairing Re(p conj(q)) of the component 4-vectors.
inline double qdot(const Quaternion& p, const Quaternion& q) {
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

/// The ambient complex structures on quaternionic coordinates.
///
/// I1,I2,I3 act entrywise by right multiplication with the conjugate units
/// -i,-j,-k. This orientation makes I1 I2 = I3 and I1 I2 I3 = -1 under
/// ordinary composition, and it is the one for which the sp(d) moment map
/// reads off with positive components in the generator basis. IC is left
/// multiplication by i, the complex structure used by Kahler-mode actions
/// (it commutes with every left matrix action with complex entries).
enum class Cx { I1, I2, I3, IC };

inline Quaternion applyCx(Cx s, const Quaternion& q) {
    switch (s) {
        case Cx::I1: return {q.x, -q.w, -q.z, q.y};
        case Cx::I2: return {q.y, q.z, -q.w, -q.x};
        case Cx::I3: return {q.z, -q.y, q.x, -q.w};
        case Cx::IC: return {-q.x, q.w, -q.z, q.y};
    }
    throw Error("applyCx: bad structure");
}

/// Quaternion unit paired with each structure in the moment-map formula.
inline Quaternion cxUnit(Cx s) {
    switch (s) {
        case Cx::I1: return Quaternion::unit(1);
        case Cx::I2: return Quaternion::unit(2);
        case Cx::I3: return Quaternion::unit(3);
        case Cx::IC: return Quaternion::unit(1);
    }
    throw Error("cxUnit: bad structure");
}

/// Point of H^d.
struct QuatVector {
    std::vector<Quaternion> e;

    QuatVector() = default;
    explicit QuatVector(std::size_t d) : e(d) {}

    std::size_t dim() const { return e.size(); }
    Quaternion& operator[](std::size_t i) { return e[i]; }
    const Quaternion& operator[](std::size_t i) const { return e[i]; }

    QuatVector& operator+=(const QuatVector& r) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += r.e[i];
        return *this;
    }
    QuatVector& operator-=(const QuatVector& r) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= r.e[i];
        return *this;
    }
    QuatVector& operator*=(double c) {
        for (auto& q : e) q *= c;
        return *this;
    }

    Eigen::VectorXd toReal() const {
        Eigen::VectorXd v(4 * e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            v[4 * i] = e[i].w;
            v[4 * i + 1] = e[i].x;
            v[4 * i + 2] = e[i].y;
            v[4 * i + 3] = e[i].z;
        }
        return v;
    }
    static QuatVector fromReal(const Eigen::VectorXd& v) {
        QuatVector q(static_cast<std::size_t>(v.size() / 4));
        for (std::size_t i = 0; i < q.e.size(); ++i)
            q.e[i] = {v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]};
        return q;
    }
};

inline QuatVector operator+(QuatVector a, const QuatVector& b) { return a += b; }
inline QuatVector operator-(QuatVector a, const QuatVector& b) { return a -= b; }
inline QuatVector operator*(double c, QuatVector v) { return v *= c; }

/// Flat inner product Re sum u_l conj(v_l); metric scaling is applied by the
/// action spec, not here.
inline double dot(const QuatVector& u, const QuatVector& v) {
    double s = 0;
    for (std::size_t i = 0; i < u.e.size(); ++i) s += qdot(u.e[i], v.e[i]);
    return s;
}

inline double norm(const QuatVector& v) { return std::sqrt(dot(v, v)); }

inline QuatVector applyCx(Cx s, const QuatVector& v) {
    QuatVector r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) r.e[i] = applyCx(s, v.e[i]);
    return r;
}

/// d x d quaternionic matrix, row major.
struct QuatMatrix {
    int rows = 0, cols = 0;
    std::vector<Quaternion> a;

    QuatMatrix() = default;
    QuatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    static QuatMatrix identity(int n) {
        QuatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = {1, 0, 0, 0};
        return m;
    }
    static QuatMatrix zero(int n) { return QuatMatrix(n, n); }

    Quaternion& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Quaternion& operator()(int r, int c) const {
        return a[static_cast<std::size_t>(r) * cols + c];
    }

    QuatMatrix& operator+=(const QuatMatrix& r) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += r.a[i];
        return *this;
    }
    QuatMatrix& operator-=(const QuatMatrix& r) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= r.a[i];
        return *this;
    }
    QuatMatrix& operator*=(double c) {
        for (auto& q : a) q *= c;
        return *this;
    }

    /// Transpose followed by quaternionic conjugation.
    QuatMatrix dagger() const {
        QuatMatrix m(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(c, r) = (*this)(r, c).conj();
        return m;
    }

    double frobeniusNorm() const {
        double s = 0;
        for (const auto& q : a) s += q.squaredNorm();
        return std::sqrt(s);
    }
};

inline QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
inline QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
inline QuatMatrix operator*(double c, QuatMatrix m) { return m *= c; }

inline QuatMatrix operator*(const QuatMatrix& A, const QuatMatrix& B) {
    if (A.cols != B.rows) throw Error("QuatMatrix product: dimension mismatch");
    QuatMatrix C(A.rows, B.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int k = 0; k < A.cols; ++k) {
            const Quaternion& ark = A(r, k);
            if (ark.squaredNorm() == 0.0) continue;
            for (int c = 0; c < B.cols; ++c) C(r, c) += ark * B(k, c);
        }
    return C;
}

inline QuatVector operator*(const QuatMatrix& A, const QuatVector& v) {
    if (static_cast<std::size_t>(A.cols) != v.dim())
        throw Error("QuatMatrix apply: dimension mismatch");
    QuatVector r(static_cast<std::size_t>(A.rows));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) r.e[i] += A(i, j) * v.e[j];
    return r;
}

/// Invariant pairing on quaternionic matrices, (1/2) Re tr(A^dagger B).
/// The factor 1/2 makes the moment map satisfy its defining derivative
/// identity exactly for the flat metric.
inline double spPair(const QuatMatrix& A, const QuatMatrix& B) {
    double s = 0;
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) s += qdot(A(r, c), B(r, c));
    return 0.5 * s;
}

/// Max entrywise defect of A^dagger = -A.
inline double spDefect(const QuatMatrix& A) {
    double m = 0;
    QuatMatrix s = A.dagger() + A;
    for (const auto& q : s.a) m = std::max(m, q.norm());
    return m;
}

inline bool isSp(const QuatMatrix& A, double tol = 1e-10) { return spDefect(A) <= tol; }

/// Matrix exponential by scaling and squaring with a Taylor kernel.
QuatMatrix expm(const QuatMatrix& A);

}  // namespace hkq
