//! Exact integer matrices: Smith and Hermite normal forms, kernels, solving.
//!
//! All arithmetic is over `BigInt`, so normal forms are exact at any size
//! this crate handles. Matrices are row-major and columns are the natural
//! carriers of lattices (a lattice is the column span of a matrix).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat({}x{})[", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn scalar(n: usize, c: &BigInt) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { c.clone() } else { BigInt::zero() })
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        Mat::from_fn(entries.len(), entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, c: &BigInt) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn map_mod(&self, n: &BigInt) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].mod_floor(n))
    }

    /// Columns `sel` of `self`, in order.
    pub fn select_cols(&self, sel: &[usize]) -> Mat {
        Mat::from_fn(self.rows, sel.len(), |i, j| self[(i, sel[j])].clone())
    }

    pub fn col(&self, j: usize) -> Mat {
        self.select_cols(&[j])
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    /// Block diagonal [self 0; 0 other].
    pub fn block_diag(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Kronecker product self ⊗ other.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
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

    /// row[a] += c * row[b]
    fn add_row(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(b, j)] * c;
            self[(a, j)] += t;
        }
    }

    /// col[a] += c * col[b]
    fn add_col(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, b)] * c;
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let t = -self[(i, a)].clone();
            self[(i, a)] = t;
        }
    }
}

/// Smith normal form `l * a * r = d` with `l`, `r` unimodular and `d` diagonal
/// with a divisibility chain d_1 | d_2 | ... The inverses are tracked so that
/// bases can be read off without separate inversions.
pub struct Snf {
    pub d: Mat,
    pub l: Mat,
    pub linv: Mat,
    pub r: Mat,
    pub rinv: Mat,
    pub rank: usize,
}

pub fn smith(a: &Mat) -> Snf {
    let (nr, nc) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut l = Mat::identity(nr);
    let mut linv = Mat::identity(nr);
    let mut r = Mat::identity(nc);
    let mut rinv = Mat::identity(nc);

    let mut k = 0;
    while k < nr.min(nc) {
        // Find the pivot: nonzero entry of least absolute value in the minor.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..nr {
            for j in k..nc {
                if !d[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        l.swap_rows(k, pi);
        linv.swap_cols(k, pi);
        d.swap_cols(k, pj);
        r.swap_cols(k, pj);
        rinv.swap_rows(k, pj);

        loop {
            // Clear column k below the pivot.
            let mut dirty = false;
            for i in (k + 1)..nr {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = fair_quot(&d[(i, k)], &d[(k, k)]);
                if !q.is_zero() {
                    let nq = -q.clone();
                    d.add_row(i, k, &nq);
                    l.add_row(i, k, &nq);
                    linv.add_col(k, i, &q);
                }
                if !d[(i, k)].is_zero() {
                    // Remainder nonzero: swap it into the pivot and restart.
                    d.swap_rows(k, i);
                    l.swap_rows(k, i);
                    linv.swap_cols(k, i);
                    dirty = true;
                }
            }
            for j in (k + 1)..nc {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = fair_quot(&d[(k, j)], &d[(k, k)]);
                if !q.is_zero() {
                    let nq = -q.clone();
                    d.add_col(j, k, &nq);
                    r.add_col(j, k, &nq);
                    rinv.add_row(k, j, &q);
                }
                if !d[(k, j)].is_zero() {
                    d.swap_cols(k, j);
                    r.swap_cols(k, j);
                    rinv.swap_rows(k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot divides its row and column; enforce divisibility into the minor.
            let mut fixed = true;
            'scan: for i in (k + 1)..nr {
                for j in (k + 1)..nc {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        // Fold row i into row k so the offending entry enters them.
                        let one = BigInt::one();
                        d.add_row(k, i, &one);
                        l.add_row(k, i, &one);
                        let negone = -BigInt::one();
                        linv.add_col(i, k, &negone);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            l.negate_row(k);
            linv.negate_col(k);
        }
        k += 1;
    }
    let rank = (0..nr.min(nc)).take_while(|&i| !d[(i, i)].is_zero()).count();
    Snf { d, l, linv, r, rinv, rank }
}

/// Quotient with remainder of minimal absolute value; keeps SNF pivots small.
fn fair_quot(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    // Bias toward |remainder| <= |b|/2.
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Column-style Hermite normal form: the canonical basis of the column
/// lattice of `a`. Returns an `n x r` matrix in column echelon form with
/// positive pivots and reduced entries; two matrices span the same lattice
/// iff their HNFs are equal.
pub fn hnf(a: &Mat) -> Mat {
    let n = a.rows();
    let mut w = a.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut col = 0;
    for row in 0..n {
        if col >= w.cols() {
            break;
        }
        // Euclid out all entries in this row to the right of `col`.
        loop {
            let mut j_min: Option<usize> = None;
            for j in col..w.cols() {
                if !w[(row, j)].is_zero()
                    && j_min.map_or(true, |m| w[(row, j)].abs() < w[(row, m)].abs())
                {
                    j_min = Some(j);
                }
            }
            let Some(jm) = j_min else { break };
            w.swap_cols(col, jm);
            let mut done = true;
            for j in (col + 1)..w.cols() {
                if w[(row, j)].is_zero() {
                    continue;
                }
                let q = fair_quot(&w[(row, j)], &w[(row, col)]);
                let nq = -q;
                w.add_col(j, col, &nq);
                if !w[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if w[(row, col)].is_zero() {
            continue;
        }
        if w[(row, col)].is_negative() {
            w.negate_col(col);
        }
        // Reduce earlier pivot columns against this one.
        for &(_, pc) in &pivots {
            let q = w[(row, pc)].div_floor(&w[(row, col)]);
            if !q.is_zero() {
                let nq = -q;
                w.add_col(pc, col, &nq);
            }
        }
        pivots.push((row, col));
        col += 1;
    }
    let sel: Vec<usize> = (0..col).collect();
    w.select_cols(&sel)
}

/// Does the column lattice of `l` contain vector `v`?
pub fn lattice_contains(l: &Mat, v: &Mat) -> bool {
    solve(l, v).is_some()
}

/// Is lattice(a) a sublattice of lattice(b)?
pub fn lattice_subset(a: &Mat, b: &Mat) -> bool {
    solve(b, a).is_some()
}

pub fn lattice_eq(a: &Mat, b: &Mat) -> bool {
    hnf(a) == hnf(b)
}

/// Solve `a * x = b` over the integers (b may have several columns).
/// Returns any solution, or None if none exists.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), b.rows());
    let snf = smith(a);
    // a = linv d rinv, so a x = b  <=>  d (rinv x) = l b.
    let lb = snf.l.mul(b);
    let mut y = Mat::zero(a.cols(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            if i < snf.rank {
                let (q, r) = lb[(i, j)].div_rem(&snf.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !lb[(i, j)].is_zero() {
                return None;
            }
        }
    }
    Some(snf.r.mul(&y))
}

/// Basis of {x : a x = 0} as columns.
pub fn kernel(a: &Mat) -> Mat {
    let snf = smith(a);
    let free: Vec<usize> = (snf.rank..a.cols()).collect();
    snf.r.select_cols(&free)
}

/// Basis of the lattice {x : a x ≡ 0 mod n} (n > 0), as columns.
/// With n = 0 this is the plain kernel.
pub fn kernel_mod(a: &Mat, n: &BigInt) -> Mat {
    if n.is_zero() {
        return kernel(a);
    }
    let snf = smith(a);
    // x = r y; condition d_i y_i ≡ 0 mod n, i.e. y_i ∈ (n/gcd(d_i,n)) Z.
    let mut cols = Mat::zero(a.cols(), a.cols());
    for i in 0..a.cols() {
        if i < snf.rank {
            let g = snf.d[(i, i)].gcd(n);
            cols[(i, i)] = n / g;
        } else {
            cols[(i, i)] = BigInt::one();
        }
    }
    hnf(&snf.r.mul(&cols))
}

/// Basis of the preimage lattice {x : m x ∈ lattice(l)}, as columns.
pub fn preimage_lattice(m: &Mat, l: &Mat) -> Mat {
    assert_eq!(m.rows(), l.rows());
    // Kernel of [m | -l]; project to the x-part.
    let stacked = m.hcat(&l.neg());
    let k = kernel(&stacked);
    let top = Mat::from_fn(m.cols(), k.cols(), |i, j| k[(i, j)].clone());
    hnf(&top)
}

/// Sum of two column lattices.
pub fn lattice_sum(a: &Mat, b: &Mat) -> Mat {
    hnf(&a.hcat(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> Mat {
        Mat::from_rows_i64(rows)
    }

    fn check_snf(a: &Mat) {
        let s = smith(a);
        assert_eq!(s.l.mul(a).mul(&s.r), s.d, "L*A*R != D");
        assert_eq!(s.l.mul(&s.linv), Mat::identity(a.rows()), "linv");
        assert_eq!(s.r.mul(&s.rinv), Mat::identity(a.cols()), "rinv");
        for i in 0..a.rows().min(a.cols()) {
            for j in 0..a.cols() {
                if i != j {
                    assert!(i >= a.rows() || j >= a.cols() || s.d[(i, j)].is_zero());
                }
            }
            if i + 1 < a.rows().min(a.cols()) && !s.d[(i + 1, i + 1)].is_zero() {
                assert!(
                    (&s.d[(i + 1, i + 1)] % &s.d[(i, i)]).is_zero(),
                    "no divisibility chain"
                );
            }
        }
    }

    #[test]
    fn snf_identity() {
        let a = Mat::identity(3);
        let s = smith(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn snf_diag_2_3() {
        // diag(2,3) has invariant factors 1, 6.
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let s = smith(&a);
        assert_eq!(s.d[(0, 0)], BigInt::from(1));
        assert_eq!(s.d[(1, 1)], BigInt::from(6));
        check_snf(&a);
    }

    #[test]
    fn snf_zero() {
        let a = Mat::zero(2, 3);
        let s = smith(&a);
        assert!(s.d.is_zero());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn snf_known_4x4() {
        let a = m(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = smith(&a);
        check_snf(&a);
        let diag: Vec<i64> = (0..4).map(|i| i64::try_from(&s.d[(i, i)]).unwrap()).collect();
        assert_eq!(diag, vec![1, 3, 21, 0]);
    }

    #[test]
    fn snf_random_small() {
        // Deterministic pseudo-random sweep; the identity L*A*R = D is the oracle.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let rows = (next() % 5 + 1) as usize;
            let cols = (next() % 5 + 1) as usize;
            let a = Mat::from_fn(rows, cols, |_, _| BigInt::from((next() % 41) as i64 - 20));
            check_snf(&a);
        }
    }

    #[test]
    fn hnf_canonical() {
        let a = m(&[vec![2, 4], vec![0, 2]]);
        let b = m(&[vec![2, 0], vec![2, 2]]);
        // Same lattice iff HNFs agree.
        assert_ne!(hnf(&a), hnf(&b));
        let c = m(&[vec![4, 2], vec![2, 0]]);
        assert_eq!(hnf(&b), hnf(&c));
    }

    #[test]
    fn solve_and_kernel() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let b = m(&[vec![4], vec![9]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        assert!(solve(&a, &m(&[vec![1], vec![0]])).is_none());

        let k = kernel(&m(&[vec![1, 2, 3]]));
        assert_eq!(k.cols(), 2);
        assert!(m(&[vec![1, 2, 3]]).mul(&k).is_zero());
    }

    #[test]
    fn kernel_mod_basic() {
        // {x : 2x ≡ 0 mod 8} = 4Z.
        let a = m(&[vec![2]]);
        let k = kernel_mod(&a, &BigInt::from(8));
        assert_eq!(k, m(&[vec![4]]));
    }

    #[test]
    fn preimage_basic() {
        // {x : 2x ∈ 6Z} = 3Z.
        let p = preimage_lattice(&m(&[vec![2]]), &m(&[vec![6]]));
        assert_eq!(p, m(&[vec![3]]));
    }
}
