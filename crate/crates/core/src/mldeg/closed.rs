//! Closed formulas for ML degrees and for the counts that enter them.

use super::MldegError;
use crate::partitions::binomial;

/// ML degree of a smooth quadric `F_{n,2}`: `2^{n+1} - 2`.
pub fn closed_form_quadric(n: usize) -> Result<u128, MldegError> {
    if n < 1 {
        return Err(MldegError::OutOfRange("n >= 1"));
    }
    if n + 1 >= 128 {
        return Err(MldegError::Overflow);
    }
    Ok((1u128 << (n + 1)) - 2)
}

/// `d^2 + d` minus `0, 3, 2, 5` for `d mod 6` in `{0, 2}`, `{3, 5}`, `{4}`, `{1}`.
fn mod_six_correction(d: u128) -> u128 {
    match d % 6 {
        0 | 2 => 0,
        3 | 5 => 3,
        4 => 2,
        _ => 5,
    }
}

/// ML degree of the Fermat curve `F_{2,d}`.
pub fn closed_form_plane_curve(d: usize) -> Result<u128, MldegError> {
    if d < 2 {
        return Err(MldegError::OutOfRange("d >= 2"));
    }
    let d = d as u128;
    Ok(d * d + d - mod_six_correction(d))
}

/// Number of points of `F_{2,d}` on the arrangement `x y z (x + y + z) = 0`:
/// `4d`, `4d - 3`, `4d - 2`, `4d - 5` for `d mod 6` in `{0, 2}`, `{3, 5}`, `{4}`, `{1}`.
pub fn boundary_count_plane(d: usize) -> Result<u128, MldegError> {
    if d < 2 {
        return Err(MldegError::OutOfRange("d >= 2"));
    }
    let d = d as u128;
    Ok(4 * d - mod_six_correction(d))
}

/// Degree of `I_(a1,a2)^d`: `d - 1` when `a1 = a2` and `d` is odd, else `d`.
pub fn length2_degree(a1: usize, a2: usize, d: usize) -> Result<u64, MldegError> {
    if a2 < 1 || a1 < a2 {
        return Err(MldegError::OutOfRange("a1 >= a2 >= 1"));
    }
    if d < 2 {
        return Err(MldegError::OutOfRange("d >= 2"));
    }
    let d = d as u64;
    Ok(if a1 == a2 && d % 2 == 1 { d - 1 } else { d })
}

/// Number of critical points of `F_{n,d}` with exactly two distinct
/// coordinate values: `d(2^n - 1) - binom(n+1, (n+1)/2) / 2` when `d` and
/// `n` are both odd, `d(2^n - 1)` otherwise.
pub fn length2_total(n: usize, d: usize) -> Result<u128, MldegError> {
    if n < 1 {
        return Err(MldegError::OutOfRange("n >= 1"));
    }
    if d < 2 {
        return Err(MldegError::OutOfRange("d >= 2"));
    }
    if n >= 127 {
        return Err(MldegError::Overflow);
    }
    let base = (d as u128)
        .checked_mul((1u128 << n) - 1)
        .ok_or(MldegError::Overflow)?;
    if n % 2 == 1 && d % 2 == 1 {
        let m = n as u128 + 1;
        let b = binomial(m, m / 2).ok_or(MldegError::Overflow)?;
        Ok(base - b / 2)
    } else {
        Ok(base)
    }
}
