// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Angle and minimal-rotation size between two Bloch vectors.

use super::MetricError;
use crate::qcore::BlochVector;

/// Vectors shorter than this carry no direction.
pub const MIN_DIRECTION_NORM: f64 = 1e-12;

fn unit(v: &BlochVector) -> Result<BlochVector, MetricError> {
    let n = v.norm();
    if !(n > MIN_DIRECTION_NORM) {
        return Err(MetricError::UndefinedDirection);
    }
    Ok(v.scale(1.0 / n))
}

/// Angle between the two directions, in `[0, π]`.
///
/// Evaluated as `atan2(|â×b̂|, â·b̂)`, which equals the arccos of the clamped
/// dot product but stays accurate near 0 and π.
pub fn bloch_angle(a: &BlochVector, b: &BlochVector) -> Result<f64, MetricError> {
    let (ua, ub) = (unit(a)?, unit(b)?);
    Ok(angle_between_units(&ua, &ub))
}

fn angle_between_units(ua: &BlochVector, ub: &BlochVector) -> f64 {
    ua.cross(ub).norm().atan2(ua.dot(ub))
}

/// Frobenius norm of `R − I` for the smallest rotation taking `â` to `b̂`.
///
/// For antiparallel vectors the axis is the first canonical axis not
/// parallel to `â`, made orthogonal to it.
pub fn rotation_frobenius(a: &BlochVector, b: &BlochVector) -> Result<f64, MetricError> {
    let r = minimal_rotation(a, b)?;
    let mut sum = 0.0;
    for (i, row) in r.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let d = v - if i == j { 1.0 } else { 0.0 };
            sum += d * d;
        }
    }
    Ok(sum.sqrt())
}

/// Rodrigues matrix of the minimal rotation aligning `â` with `b̂`.
pub fn minimal_rotation(a: &BlochVector, b: &BlochVector) -> Result<[[f64; 3]; 3], MetricError> {
    let (ua, ub) = (unit(a)?, unit(b)?);
    let theta = angle_between_units(&ua, &ub);
    let cross = ua.cross(&ub);
    let cross_norm = cross.norm();
    let axis = if cross_norm > 1e-12 {
        cross.scale(1.0 / cross_norm)
    } else if theta < std::f64::consts::FRAC_PI_2 {
        return Ok(IDENTITY);
    } else {
        orthogonal_axis(&ua)
    };
    let (s, c) = theta.sin_cos();
    let k = [
        [0.0, -axis.z, axis.y],
        [axis.z, 0.0, -axis.x],
        [-axis.y, axis.x, 0.0],
    ];
    let mut r = IDENTITY;
    for i in 0..3 {
        for j in 0..3 {
            let k2: f64 = (0..3).map(|m| k[i][m] * k[m][j]).sum();
            r[i][j] += s * k[i][j] + (1.0 - c) * k2;
        }
    }
    Ok(r)
}

const IDENTITY: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

fn orthogonal_axis(ua: &BlochVector) -> BlochVector {
    let canonical = [
        BlochVector::new(1.0, 0.0, 0.0),
        BlochVector::new(0.0, 1.0, 0.0),
        BlochVector::new(0.0, 0.0, 1.0),
    ];
    let e = canonical
        .into_iter()
        .find(|e| ua.cross(e).norm() > 1e-6)
        .expect("a unit vector cannot be parallel to all three axes");
    let v = BlochVector::new(
        e.x - ua.dot(&e) * ua.x,
        e.y - ua.dot(&e) * ua.y,
        e.z - ua.dot(&e) * ua.z,
    );
    v.scale(1.0 / v.norm())
}
