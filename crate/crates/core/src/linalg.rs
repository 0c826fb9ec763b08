//! Dense linear algebra over the coefficient rings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

pub type Matrix = Vec<Vec<Elem>>;

pub fn identity(ring: &Ring, n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

pub fn mat_mul(ring: &Ring, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = vec![vec![ring.zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if ring.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                if !ring.is_zero(&b[l][j]) {
                    out[i][j] = ring.add(&out[i][j], &ring.mul(&a[i][l], &b[l][j]));
                }
            }
        }
    }
    out
}

/// Row vector times matrix.
pub fn vec_mat(ring: &Ring, v: &[Elem], a: &Matrix) -> Vec<Elem> {
    let m = a.first().map_or(0, |r| r.len());
    let mut out = vec![ring.zero(); m];
    for (i, vi) in v.iter().enumerate() {
        if ring.is_zero(vi) {
            continue;
        }
        for j in 0..m {
            out[j] = ring.add(&out[j], &ring.mul(vi, &a[i][j]));
        }
    }
    out
}

/// Gauss-Jordan inverse over a field.
fn field_inverse(ring: &Ring, a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut m: Vec<Vec<Elem>> = a
        .iter()
        .zip(identity(ring, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !ring.is_zero(&m[r][col]))
            .ok_or(Error::NotInvertible)?;
        m.swap(col, piv);
        let inv = ring.inv(&m[col][col])?;
        for x in m[col].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !ring.is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let t = ring.mul(&f, &m[col][c]);
                    m[r][c] = ring.sub(&m[r][c], &t);
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Inverse and determinant of an integer matrix over Q.
fn rational_inverse(a: &[Vec<BigInt>]) -> Option<(Vec<Vec<BigRational>>, BigRational)> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> =
                row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Some((m.into_iter().map(|row| row[n..].to_vec()).collect(), det))
}

/// Inverse over R; for Z and Z/nZ via the adjugate with a unit determinant.
pub fn inverse(ring: &Ring, a: &Matrix) -> Result<Matrix> {
    if a.iter().any(|row| row.len() != a.len()) {
        return Err(Error::Invalid("matrix is not square".into()));
    }
    if ring.is_field() {
        return field_inverse(ring, a);
    }
    let lifted: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|x| ring.to_bigint(x).expect("integer residue")).collect())
        .collect();
    let (inv, det) = rational_inverse(&lifted).ok_or(Error::NotInvertible)?;
    let det = det.to_integer();
    let det_elem = ring.from_bigint(&det);
    let det_inv = ring.inv(&det_elem).map_err(|_| Error::NotInvertible)?;
    let out = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let adj = (x * BigRational::from_integer(det.clone())).to_integer();
                    ring.mul(&ring.from_bigint(&adj), &det_inv)
                })
                .collect()
        })
        .collect();
    Ok(out)
}

/// Solves `M y = rhs` over a field; free variables are set to zero.
pub fn solve(ring: &Ring, m: &Matrix, rhs: &[Elem]) -> Option<Vec<Elem>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Elem>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| row.iter().cloned().chain(std::iter::once(r.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ring.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = ring.inv(&a[r][c]).ok()?;
        for x in a[r].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !ring.is_zero(&a[i][c]) {
                let f = a[i][c].clone();
                for j in c..=cols {
                    let t = ring.mul(&f, &a[r][j]);
                    a[i][j] = ring.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !ring.is_zero(&row[cols])) {
        return None;
    }
    let mut y = vec![ring.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = a[i][cols].clone();
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn inverse_over_z6_uses_unit_determinant() {
        let r = Ring::zmod(6).unwrap();
        // det = 1*1 - 2*3 = -5 = 1 mod 6
        let a = mat(&r, &[&[1, 2], &[3, 1]]);
        let inv = inverse(&r, &a).unwrap();
        assert_eq!(mat_mul(&r, &a, &inv), identity(&r, 2));
        let singular = mat(&r, &[&[2, 0], &[0, 1]]);
        assert_eq!(inverse(&r, &singular).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn inverse_over_integers() {
        let z = Ring::integers();
        let a = mat(&z, &[&[2, 1], &[1, 1]]);
        let inv = inverse(&z, &a).unwrap();
        assert_eq!(inv, mat(&z, &[&[1, -1], &[-1, 2]]));
        assert!(inverse(&z, &mat(&z, &[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn solve_basic_solution() {
        let f5 = Ring::fp(5).unwrap();
        // 1*y0 + 1*y1 = 1 ; 1*y0 + 2*y1 = 0 -> y1 = -1 = 4, y0 = 2
        let m = mat(&f5, &[&[1, 1], &[1, 2]]);
        let y = solve(&f5, &m, &[f5.one(), f5.zero()]).unwrap();
        assert_eq!(y, vec![f5.from_i64(2), f5.from_i64(4)]);
        let m = mat(&f5, &[&[1, 1], &[2, 2]]);
        assert!(solve(&f5, &m, &[f5.one(), f5.zero()]).is_none());
    }
}
