#ifndef EIT3D_LINALG_HPP
#define EIT3D_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>

namespace eit3d {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return (&x)[i]; }
    double operator[](int i) const { return (&x)[i]; }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(Vec3 a, double s) { return s * a; }
inline Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }
inline Vec3 normalized(Vec3 a) { return a / norm(a); }

/// Row-major 3x3 matrix; rows() accessors are by value.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }
    static Mat3 from_rows(Vec3 r0, Vec3 r1, Vec3 r2) {
        Mat3 r;
        for (int j = 0; j < 3; ++j) {
            r(0, j) = r0[j];
            r(1, j) = r1[j];
            r(2, j) = r2[j];
        }
        return r;
    }
    Vec3 row(int i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }
    Vec3 col(int j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }
};

inline Vec3 operator*(const Mat3& m, Vec3 v) {
    return {dot(m.row(0), v), dot(m.row(1), v), dot(m.row(2), v)};
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
}

inline Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

inline double det(const Mat3& a) {
    return dot(a.row(0), cross(a.row(1), a.row(2)));
}

/// Rotation by angle about a unit axis (Rodrigues).
inline Mat3 axis_angle(Vec3 axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const Vec3 u = axis;
    Mat3 r;
    r(0, 0) = c + u.x * u.x * (1 - c);
    r(0, 1) = u.x * u.y * (1 - c) - u.z * s;
    r(0, 2) = u.x * u.z * (1 - c) + u.y * s;
    r(1, 0) = u.y * u.x * (1 - c) + u.z * s;
    r(1, 1) = c + u.y * u.y * (1 - c);
    r(1, 2) = u.y * u.z * (1 - c) - u.x * s;
    r(2, 0) = u.z * u.x * (1 - c) - u.y * s;
    r(2, 1) = u.z * u.y * (1 - c) + u.x * s;
    r(2, 2) = c + u.z * u.z * (1 - c);
    return r;
}

}  // namespace eit3d

#endif
