//! Dense integer matrices and the Smith normal form.
//!
//! Everything here works over `i64`. The matrices that occur in this crate
//! are tiny (rank at most a handful) with entries of absolute value a few
//! units, so there is no attempt at coefficient-growth control beyond
//! choosing the smallest pivot.

use std::fmt;

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from a list of rows. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.rows, v.len(), "shape mismatch");
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += a * self[(i, j)];
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "{rows:?}")
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular and `D`
/// diagonal, `d_0 | d_1 | ... | d_{r-1}`, all positive, followed by zeros.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<i64>,
    rows: usize,
    cols: usize,
}

impl Smith {
    pub fn new(a: &IntMatrix) -> Self {
        let (m, n) = (a.rows, a.cols);
        let mut d = a.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        let mut t = 0;
        while t < m.min(n) {
            // Smallest nonzero entry of the trailing block; ties go to the
            // lowest row, then the lowest column.
            let mut pivot = None;
            for i in t..m {
                for j in t..n {
                    let x = d[(i, j)].abs();
                    if x != 0 && pivot.map_or(true, |(_, _, best)| x < best) {
                        pivot = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    let q = d[(i, t)].div_euclid(d[(t, t)]);
                    if q != 0 {
                        d.add_row(i, t, -q);
                        u.add_row(i, t, -q);
                    }
                    if d[(i, t)] != 0 {
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    let q = d[(t, j)].div_euclid(d[(t, t)]);
                    if q != 0 {
                        d.add_col(j, t, -q);
                        v.add_col(j, t, -q);
                    }
                    if d[(t, j)] != 0 {
                        dirty = true;
                    }
                }
                if !dirty {
                    // Enforce divisibility of the rest of the block.
                    let p = d[(t, t)];
                    let bad = (t + 1..m)
                        .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| d[(i, j)] % p != 0);
                    match bad {
                        Some((i, _)) => {
                            d.add_row(t, i, 1);
                            u.add_row(t, i, 1);
                            continue;
                        }
                        None => break,
                    }
                }
                // Move the smallest remaining entry of row/column t to the pivot.
                let mut best = (t, t, d[(t, t)].abs());
                for i in t + 1..m {
                    let x = d[(i, t)].abs();
                    if x != 0 && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = d[(t, j)].abs();
                    if x != 0 && x < best.2 {
                        best = (t, j, x);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                }
                if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
            }
            if d[(t, t)] < 0 {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        let diagonal = (0..t).map(|i| d[(i, i)]).collect();
        Self { u, v, diagonal, rows: m, cols: n }
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn elementary_divisors(&self) -> &[i64] {
        &self.diagonal
    }

    /// Particular integer solution of `A x = b`: free coordinates are set to
    /// zero in the `V` basis. Returns `None` when no integer solution exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let ub = self.u.mul_vec(b);
        let mut y = vec![0; self.cols];
        for (i, &val) in ub.iter().enumerate() {
            if i < self.rank() {
                let di = self.diagonal[i];
                if val % di != 0 {
                    return None;
                }
                y[i] = val / di;
            } else if val != 0 {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Basis of the integer kernel `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        (self.rank()..self.cols).map(|j| self.v.col(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gl2_root_row_gives_sigma_one_zero() {
        let a = IntMatrix::from_rows(&[vec![1, -1]], 2);
        let s = Smith::new(&a);
        assert_eq!(s.elementary_divisors(), &[1]);
        assert_eq!(s.solve(&[1]).unwrap(), vec![1, 0]);
        let ker = s.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert_eq!(a.mul_vec(&ker[0]), vec![0]);
    }

    #[test]
    fn torsion_shows_in_divisors() {
        let a = IntMatrix::from_rows(&[vec![2]], 1);
        let s = Smith::new(&a);
        assert_eq!(s.elementary_divisors(), &[2]);
        assert!(s.solve(&[1]).is_none());
        assert_eq!(s.solve(&[4]).unwrap(), vec![2]);
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        let s = Smith::new(&a);
        assert_eq!(s.elementary_divisors(), &[1, 6]);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..4).prop_flat_map(|(m, n)| {
            proptest::collection::vec(-4i64..5, m * n)
                .prop_map(move |data| IntMatrix { rows: m, cols: n, data })
        })
    }

    proptest! {
        #[test]
        fn decomposition_is_consistent(a in small_matrix()) {
            let s = Smith::new(&a);
            let d = s.u.mul(&a).mul(&s.v);
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    let expected = if i == j && i < s.rank() { s.diagonal[i] } else { 0 };
                    prop_assert_eq!(d[(i, j)], expected);
                }
            }
            for w in s.diagonal.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            for k in s.kernel_basis() {
                prop_assert!(a.mul_vec(&k).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_finds_solutions_of_consistent_systems(
            a in small_matrix(),
            seed in proptest::collection::vec(-3i64..4, 3),
        ) {
            let x0: Vec<i64> = seed.iter().cycle().take(a.cols()).copied().collect();
            let b = a.mul_vec(&x0);
            let x = s_solve(&a, &b).expect("consistent system");
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }

    fn s_solve(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
        Smith::new(a).solve(b)
    }
}
