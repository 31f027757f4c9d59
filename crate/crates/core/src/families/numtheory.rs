//! Modular arithmetic for the side parameters ν, ρ, j and l.

use crate::error::{Error, Result};
use crate::group::is_prime;

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::ParameterRange {
            family: "number theory".into(),
            condition: format!("p = {p} must be an odd prime"),
        })
    }
}

/// Euler's criterion, for `a` not divisible by `p`.
pub fn is_quadratic_residue(a: i64, p: u64) -> bool {
    let a = a.rem_euclid(p as i64) as u64;
    a != 0 && pow_mod(a, (p - 1) / 2, p) == 1
}

pub fn smallest_quadratic_nonresidue(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    Ok((2..p).find(|&a| !is_quadratic_residue(a as i64, p)).unwrap())
}

pub fn smallest_primitive_root(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let mut factors = Vec::new();
    let mut k = p - 1;
    let mut q = 2;
    while q * q <= k {
        if k.is_multiple_of(q) {
            factors.push(q);
            while k.is_multiple_of(q) {
                k /= q;
            }
        }
        q += 1;
    }
    if k > 1 {
        factors.push(k);
    }
    Ok((2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap())
}

fn inverse_of_four(p: u64) -> u64 {
    pow_mod(4, p - 2, p)
}

/// Least `j` with both `j` and `−4j` quadratic non-residues mod `p`.
pub fn solve_j_type15(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    (1..p)
        .find(|&j| !is_quadratic_residue(j as i64, p) && !is_quadratic_residue(-4 * j as i64, p))
        .ok_or(Error::NoAdmissibleJ { p })
}

fn check_r(p: u64, r: u32, family: &str) -> Result<()> {
    if r == 0 || r as u64 > (p - 1) / 2 {
        return Err(Error::ParameterRange {
            family: family.into(),
            condition: format!("1 ≤ r ≤ (p−1)/2 = {}", (p - 1) / 2),
        });
    }
    Ok(())
}

/// `j` in `[0, p)` with `4j ≡ 1 − ρ^{2r+1}`; `j = 1` when `p = 2`.
pub fn solve_j_type16(p: u64, r: u32) -> Result<u64> {
    if p == 2 {
        return Ok(1);
    }
    require_odd_prime(p)?;
    check_r(p, r, "A2 type 16")?;
    let rho = smallest_primitive_root(p)?;
    let rhs = (1 + p - pow_mod(rho, 2 * r as u64 + 1, p)) % p;
    Ok(rhs * inverse_of_four(p) % p)
}

/// `l` in `[0, p)` with `4l ≡ ρ^{2r+1} − 1`.
pub fn solve_l_type19(p: u64, r: u32) -> Result<u64> {
    require_odd_prime(p)?;
    check_r(p, r, "A2 type 19")?;
    let rho = smallest_primitive_root(p)?;
    let rhs = (pow_mod(rho, 2 * r as u64 + 1, p) + p - 1) % p;
    Ok(rhs * inverse_of_four(p) % p)
}
