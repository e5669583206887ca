//! Small fixed-size vector helpers used by the geometry and kernels.

pub type Vec3 = [f64; 3];

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn distance(a: Vec3, b: Vec3) -> f64 {
    norm(sub(a, b))
}

#[inline]
pub fn normalize(a: Vec3) -> Vec3 {
    let n = norm(a);
    scale(a, 1.0 / n)
}

/// Polar angle of a unit-ish direction, in `[0, pi]`.
#[inline]
pub fn polar_angle(d: Vec3) -> f64 {
    (d[0] * d[0] + d[1] * d[1]).sqrt().atan2(d[2])
}

/// Azimuth of a direction, wrapped to `[0, 2*pi)`.
#[inline]
pub fn azimuth(d: Vec3) -> f64 {
    let phi = d[1].atan2(d[0]);
    if phi < 0.0 {
        phi + 2.0 * std::f64::consts::PI
    } else {
        phi
    }
}

/// Unit direction for spherical angles.
#[inline]
pub fn direction(theta: f64, phi: f64) -> Vec3 {
    let s = theta.sin();
    [s * phi.cos(), s * phi.sin(), theta.cos()]
}

/// Unit vector along increasing polar angle.
#[inline]
pub fn theta_hat(theta: f64, phi: f64) -> Vec3 {
    let c = theta.cos();
    [c * phi.cos(), c * phi.sin(), -theta.sin()]
}

/// Unit vector along increasing azimuth.
#[inline]
pub fn phi_hat(phi: f64) -> Vec3 {
    [-phi.sin(), phi.cos(), 0.0]
}

/// Two unit vectors orthogonal to `d` and to each other.
pub fn orthonormal_basis(d: Vec3) -> (Vec3, Vec3) {
    let pick = if d[0].abs() < 0.8 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = normalize(cross(d, pick));
    let e2 = cross(d, e1);
    (e1, e2)
}
