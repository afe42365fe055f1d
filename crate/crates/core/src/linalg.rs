//! Small exact linear algebra kernels.
//!
//! Rational routines work over `BigRational`; the integer routines use
//! fraction-free elimination in `i128` with row-gcd reduction, which keeps
//! entries small for the 0/±1/2 matrices that show up here.

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Reduces `rows` to reduced row echelon form in place, drops zero rows and
/// returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let (lo, hi) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in lo.iter_mut().zip(hi.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rational_rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Clears common factors and makes the leading nonzero entry positive when
/// `fix_sign` is set.
fn normalize_row(row: &mut [i128], fix_sign: bool) {
    let mut g: i128 = 0;
    for &x in row.iter() {
        g = g.gcd(&x);
    }
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
    if fix_sign {
        if let Some(&lead) = row.iter().find(|x| **x != 0) {
            if lead < 0 {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
}

/// Fraction-free row echelon form. Returns the reduced rows (each pivot
/// column is zero in every other row) and their pivot columns.
fn int_echelon(rows: &[Vec<i64>], ncols: usize) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        let pv = pivot_row[col];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = *x * pv - c * y;
            }
            normalize_row(row, false);
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn int_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    int_echelon(rows, ncols).1.len()
}

/// Integer basis of the right null space `{x : rows * x = 0}`.
pub fn int_nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let (m, pivots) = int_echelon(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        // x_free = L, x_pivot_i = -m[i][free] * L / m[i][pivot_i]
        let mut l: i128 = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            if m[i][free] != 0 {
                l = l.lcm(&m[i][pc].abs());
            }
        }
        let mut v = vec![0i128; ncols];
        v[free] = l;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][free] * l / m[i][pc];
        }
        normalize_row(&mut v, true);
        basis.push(v.into_iter().map(|x| x as i64).collect());
    }
    basis
}

/// Affine dimension of a finite point set (`None` for the empty set).
pub fn affine_dimension(points: &[&[i64]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<i64>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(int_rank(&diffs, first.len()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (positive multiple).
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}
