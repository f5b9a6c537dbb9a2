//! Exact dense linear algebra: rank, solving and nullspaces.
//!
//! Rational matrices go through fraction-free Bareiss elimination on a
//! denominator-cleared integer copy, which keeps intermediate entries as
//! minors of the original matrix instead of exploding fractions. Matrices
//! over other exact fields use plain Gaussian elimination with field
//! inverses.

use crate::scalar::{Coeff, Rat};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Coeff> Mat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut s = F::zero();
            for k in 0..self.cols {
                s = s.add(&self[(i, k)].mul(&o[(k, j)]));
            }
            s
        })
    }

    pub fn add(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].add(&o[(i, j)]))
    }

    pub fn sub(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].sub(&o[(i, j)]))
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].mul(c))
    }

    pub fn neg(&self) -> Mat<F> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].neg())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut s = F::zero();
        for i in 0..self.rows {
            s = s.add(&self[(i, i)]);
        }
        s
    }

    /// Lie bracket `AB - BA`.
    pub fn commutator(&self, o: &Mat<F>) -> Mat<F> {
        self.mul(o).sub(&o.mul(self))
    }

    /// Rank by Gaussian elimination with field inverses.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            if p != rank {
                for j in 0..m.cols {
                    let a = m[(rank, j)].clone();
                    let b = m[(p, j)].clone();
                    m[(rank, j)] = b;
                    m[(p, j)] = a;
                }
            }
            let inv = m[(rank, col)].inv();
            for r in (rank + 1)..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].mul(&inv);
                for j in col..m.cols {
                    let sub = m[(rank, j)].mul(&factor);
                    m[(r, j)] = m[(r, j)].sub(&sub);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right nullspace, by reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m[(row, j)].clone();
                    let b = m[(p, j)].clone();
                    m[(row, j)] = b;
                    m[(p, j)] = a;
                }
            }
            let inv = m[(row, col)].inv();
            for j in 0..m.cols {
                m[(row, j)] = m[(row, j)].mul(&inv);
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in 0..m.cols {
                    let sub = m[(row, j)].mul(&factor);
                    m[(r, j)] = m[(r, j)].sub(&sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![F::zero(); m.cols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[(r, fc)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, if consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut m = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == m.rows {
                break;
            }
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m[(row, j)].clone();
                    let b2 = m[(p, j)].clone();
                    m[(row, j)] = b2;
                    m[(p, j)] = a;
                }
            }
            let inv = m[(row, col)].inv();
            for j in 0..m.cols {
                m[(row, j)] = m[(row, j)].mul(&inv);
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in 0..m.cols {
                    let sub = m[(row, j)].mul(&factor);
                    m[(r, j)] = m[(r, j)].sub(&sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        // Inconsistent iff a row is 0 = nonzero.
        for r in row..m.rows {
            if !m[(r, self.cols)].is_zero() {
                return None;
            }
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m[(r, self.cols)].clone();
        }
        Some(x)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of a rational matrix by fraction-free Bareiss elimination on a
/// denominator-cleared integer copy. Sparse rows are cleared row-by-row;
/// the Bareiss division is exact at every step.
pub fn exact_rank(m: &Mat<Rat>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // Clear denominators per row (row scaling preserves rank).
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut lcm = BigInt::one();
        for j in 0..m.cols {
            lcm = lcm.lcm(m[(i, j)].denom());
        }
        let row: Vec<BigInt> = (0..m.cols)
            .map(|j| {
                let r: &BigRational = &m[(i, j)];
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        a.push(row);
    }
    bareiss_rank(&mut a)
}

fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // Pick the nonzero pivot with the fewest bits to slow growth.
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].magnitude().bits());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        for r in (rank + 1)..rows {
            if a[r][col].is_zero() && a[rank][col].is_one() {
                // Still must rescale the row in general Bareiss, but with
                // pivot 1 and prev dividing everything the row is
                // unchanged only when prev is 1; fall through otherwise.
                if prev.is_one() {
                    continue;
                }
            }
            for j in (col + 1)..cols {
                let num = &a[rank][col] * &a[r][j] - &a[r][col] * &a[rank][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[r][j] = q;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        if prev.is_negative() {
            // Sign of the pivot chain does not affect rank; keep it
            // positive so div_rem signs stay predictable.
            for x in a[rank].iter_mut() {
                *x = -std::mem::take(x);
            }
            for row in a.iter_mut().skip(rank + 1) {
                for x in row.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            prev = -prev;
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio, Sqrt2};
    use proptest::prelude::*;

    fn qm(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_oracles() {
        assert_eq!(exact_rank(&qm(vec![vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(exact_rank(&qm(vec![vec![1, 0], vec![0, 1]])), 2);
        assert_eq!(
            exact_rank(&qm(vec![
                vec![1, 2, 3],
                vec![4, 5, 6],
                vec![7, 8, 9]
            ])),
            2
        );
        assert_eq!(exact_rank(&Mat::<Rat>::zero(3, 5)), 0);
        // fractions
        let m = Mat::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), ratio(2, 1)],
        ]);
        assert_eq!(exact_rank(&m), 2);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = qm(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for i in 0..m.rows {
                let mut s = rat(0);
                for j in 0..m.cols {
                    s = s + m[(i, j)].clone() * v[j].clone();
                }
                assert!(Coeff::is_zero(&s));
            }
        }
        let x = m.solve(&[rat(6), rat(15), rat(24)]).unwrap();
        for i in 0..3 {
            let mut s = rat(0);
            for j in 0..3 {
                s = s + m[(i, j)].clone() * x[j].clone();
            }
            assert_eq!(s, rat(6 + 9 * i as i64));
        }
        assert!(m.solve(&[rat(1), rat(0), rat(0)]).is_none());
    }

    #[test]
    fn generic_field_rank() {
        // Over Q(sqrt2): rows (1, s) and (s, 2) are dependent (s^2 = 2).
        let s = Sqrt2::root2();
        let m = Mat::from_rows(vec![
            vec![Sqrt2::one(), s.clone()],
            vec![s.clone(), Sqrt2::from_int(2)],
        ]);
        assert_eq!(m.rank(), 1);
        let m2 = Mat::from_rows(vec![
            vec![Sqrt2::one(), s.clone()],
            vec![s, Sqrt2::from_int(3)],
        ]);
        assert_eq!(m2.rank(), 2);
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(rows in prop::collection::vec(
            prop::collection::vec(-5i64..=5, 4), 1..=5)) {
            let m = qm(rows);
            prop_assert_eq!(exact_rank(&m), exact_rank(&m.transpose()));
            prop_assert_eq!(exact_rank(&m), m.rank());
        }

        #[test]
        fn nullity_matches_rank(rows in prop::collection::vec(
            prop::collection::vec(-4i64..=4, 5), 1..=4)) {
            let m = qm(rows);
            prop_assert_eq!(m.nullspace().len() + exact_rank(&m), m.cols);
        }
    }
}
