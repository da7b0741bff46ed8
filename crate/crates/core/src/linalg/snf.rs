use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith decomposition `U·A·V = D` together with `U⁻¹` and `V⁻¹`.
///
/// `diag` holds the `rank` nonzero invariant factors, positive, each dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub diag: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The full diagonal matrix `D` with the shape of the input.
    pub fn d_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

/// Returns `(U, D, V)` with `U·A·V = D`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(a);
    let d = s.d_matrix();
    (s.u, d, s.v)
}

/// Row operations act on `a`, `u` and (inverted) on `u_inv`; column operations on `a`, `v`, `v_inv`.
struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        self.u_inv.add_col_multiple(src, dst, &-q);
    }

    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
        self.v_inv.swap_rows(x, y);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a nonzero entry of least absolute value in the lower-right block from `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a.get(bi, bj).abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs() == BigInt::from(1) {
                        return best;
                    }
                }
            }
        }
        best
    }
}

/// Smith normal form by minimal-pivot elimination, with all transforms tracked.
pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = w.a.get(i, t) / w.a.get(t, t);
                w.row_add(i, t, &-q);
                if !w.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = w.a.get(t, j) / w.a.get(t, t);
                w.col_add(j, t, &-q);
                if !w.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder appeared in row or column t; move it to the pivot
                let (bi, bj) = smallest_in_cross(&w.a, t);
                w.row_swap(t, bi);
                w.col_swap(t, bj);
                continue;
            }
            let pivot = w.a.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_add(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.row_negate(t);
        }
        diag.push(w.a.get(t, t).clone());
        t += 1;
    }
    Smith { u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv, diag }
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = a.get(t, t).abs();
    let mut consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = a.get(i, j);
        if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
            best_abs = x.abs();
            *best = (i, j);
        }
    };
    for i in t + 1..a.rows() {
        consider(i, t, &mut best);
    }
    for j in t + 1..a.cols() {
        consider(t, j, &mut best);
    }
    best
}

/// Solves `A·y = b` over the integers, returning one solution if any exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith(a), b)
}

/// As [`solve`], reusing a precomputed decomposition of `A`.
pub fn solve_with(s: &Smith, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = s.u.mul_vec(b);
    let r = s.rank();
    if ub[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); s.v.rows()];
    for i in 0..r {
        let (q, rem) = ub[i].div_rem(&s.diag[i]);
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    Some(s.v.mul_vec(&z))
}

/// A basis of the integer kernel of `A`, as the columns of the returned matrix.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let idx: Vec<usize> = (s.rank()..a.cols()).collect();
    s.v.select_columns(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Smith {
        let s = smith(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d_matrix());
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        for w in s.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_and_zero() {
        let (u, d, v) = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
        assert_eq!(d, IntMatrix::identity(3));
        assert_eq!(v, IntMatrix::identity(3));
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d_matrix().is_zero());
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = check(&a);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn divisibility_fix_needed() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check(&a);
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, 3, 6]]);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let y = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&y), b);
        assert!(solve(&a, &[BigInt::from(0), BigInt::from(1)]).is_none());
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
    }
}
