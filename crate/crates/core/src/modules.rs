//! Finitely generated modules over Z and Z/N, presented as subquotients.
//!
//! A `Subquotient` is a pair of lattices B ⊆ A ⊆ Z^n; the module is A/B.
//! Cohomology groups, sheaf sections, Hom-modules and tower levels are all
//! of this shape, and maps between them are induced by ambient integer
//! matrices. Working over Z/N just folds N·A into B, so one engine covers
//! both rings.

use crate::matrix::{
    hnf, kernel_mod, lattice_eq, lattice_subset, lattice_sum, preimage_lattice, smith, solve, Mat,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Base ring: Z or Z/N (N ≥ 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Int,
    Mod(BigInt),
}

impl Ring {
    /// 0 for Z, N for Z/N — the value fed to modular kernels.
    pub fn modulus(&self) -> BigInt {
        match self {
            Ring::Int => BigInt::zero(),
            Ring::Mod(n) => n.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Ring::Int => "Z".to_string(),
            Ring::Mod(n) => format!("Z/{}", n),
        }
    }

    /// Is there a ring map self → other (reduction)? Z maps anywhere;
    /// Z/N maps to Z/M iff M | N.
    pub fn reduces_to(&self, other: &Ring) -> bool {
        match (self, other) {
            (Ring::Int, _) => true,
            (Ring::Mod(_), Ring::Int) => false,
            (Ring::Mod(n), Ring::Mod(m)) => (n % m).is_zero(),
        }
    }
}

/// A f.g. abelian group / Z-N-module in invariant factor form.
/// Factors satisfy d_1 | d_2 | ..., with 0 denoting a free Z summand;
/// unit factors are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgModule {
    pub factors: Vec<BigInt>,
}

impl FgModule {
    pub fn zero() -> Self {
        FgModule { factors: vec![] }
    }

    pub fn from_factors(factors: Vec<BigInt>) -> Self {
        let mut torsion: Vec<BigInt> = Vec::new();
        let mut free = 0usize;
        for f in factors {
            if f.is_zero() {
                free += 1;
            } else if !f.abs().is_one() {
                torsion.push(f.abs());
            }
        }
        torsion.sort();
        let mut factors = torsion;
        factors.extend(std::iter::repeat(BigInt::zero()).take(free));
        FgModule { factors }
    }

    pub fn from_i64(factors: &[i64]) -> Self {
        FgModule::from_factors(factors.iter().map(|&f| BigInt::from(f)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_zero()).count()
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| !f.is_zero()).cloned().collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().product())
    }

    /// Is every element killed by a power of p and the module finite?
    pub fn is_finite_p_group(&self, p: &BigInt) -> bool {
        self.is_finite()
            && self.factors.iter().all(|f| {
                let mut f = f.clone();
                while (&f % p).is_zero() {
                    f /= p;
                }
                f.is_one()
            })
    }

    /// The prime-to-p part of the torsion subgroup.
    pub fn prime_to_p_torsion(&self, p: &BigInt) -> FgModule {
        let fac = self
            .torsion_factors()
            .iter()
            .map(|f| {
                let mut f = f.clone();
                while (&f % p).is_zero() {
                    f /= p;
                }
                f
            })
            .collect();
        FgModule::from_factors(fac)
    }
}

impl std::fmt::Display for FgModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{}", d) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A subquotient A/B of Z^n with B ⊆ A, over a ring whose modulus has been
/// folded into B (and A, for modular kernels).
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    a: Mat, // HNF basis of A
    b: Mat, // HNF basis of B
}

impl Subquotient {
    /// A/B from generator matrices (columns). For ring Z/N, pass the lattices
    /// as they are over Z; N·A is folded into B automatically.
    pub fn new(ambient: usize, a_gens: &Mat, b_gens: &Mat, ring: &Ring) -> Self {
        assert_eq!(a_gens.rows(), ambient);
        assert_eq!(b_gens.rows(), ambient);
        let a = hnf(a_gens);
        let b = match ring {
            Ring::Int => hnf(b_gens),
            Ring::Mod(n) => hnf(&b_gens.hcat(&a.scale(n))),
        };
        debug_assert!(lattice_subset(&b, &a), "B not contained in A");
        Subquotient { ambient, a, b }
    }

    /// The full module R^n for the given ring: Z^n / (N·Z^n).
    pub fn full(ambient: usize, ring: &Ring) -> Self {
        Subquotient::new(ambient, &Mat::identity(ambient), &Mat::zero(ambient, 0), ring)
    }

    /// Z^g / columns(rels), e.g. an invariant-factor presentation.
    pub fn from_presentation(gens: usize, rels: &Mat, ring: &Ring) -> Self {
        Subquotient::new(gens, &Mat::identity(gens), rels, ring)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cycles(&self) -> &Mat {
        &self.a
    }

    pub fn boundaries(&self) -> &Mat {
        &self.b
    }

    /// Invariant factors of A/B, with 0s for free summands.
    pub fn fg_module(&self) -> FgModule {
        if self.a.cols() == 0 {
            return FgModule::zero();
        }
        let y = solve(&self.a, &self.b).expect("B ⊆ A violated");
        let s = smith(&y);
        let mut factors: Vec<BigInt> = (0..s.rank).map(|i| s.d[(i, i)].clone()).collect();
        factors.extend(std::iter::repeat(BigInt::zero()).take(self.a.cols() - s.rank));
        FgModule::from_factors(factors)
    }

    pub fn is_zero_module(&self) -> bool {
        lattice_subset(&self.a, &self.b)
    }

    /// Is the ambient vector a member of A?
    pub fn contains(&self, v: &Mat) -> bool {
        solve(&self.a, v).is_some()
    }

    /// Are two ambient vectors equal in A/B?
    pub fn same_class(&self, v: &Mat, w: &Mat) -> bool {
        solve(&self.b, &v.sub(w)).is_some()
    }

    /// Generators of A/B as ambient vectors paired with their orders
    /// (0 = infinite), dropping unit factors. The generators are adapted:
    /// order·gen ∈ B for each finite order.
    pub fn adapted_generators(&self) -> Vec<(Mat, BigInt)> {
        if self.a.cols() == 0 {
            return vec![];
        }
        let y = solve(&self.a, &self.b).expect("B ⊆ A violated");
        let s = smith(&y);
        // a * linv has columns adapted to the factors: column i has order d_i.
        let basis = self.a.mul(&s.linv);
        let mut gens = Vec::new();
        for i in 0..self.a.cols() {
            let order = if i < s.rank { s.d[(i, i)].clone() } else { BigInt::zero() };
            if order.is_one() {
                continue;
            }
            gens.push((basis.col(i), order));
        }
        gens
    }

    /// All elements of a finite subquotient as ambient representatives.
    /// Returns None if infinite or if the count would exceed `budget`.
    pub fn enumerate(&self, budget: usize) -> Option<Vec<Mat>> {
        let gens = self.adapted_generators();
        let mut count: usize = 1;
        for (_, order) in &gens {
            if order.is_zero() {
                return None;
            }
            let o = usize::try_from(order).ok()?;
            count = count.checked_mul(o)?;
            if count > budget {
                return None;
            }
        }
        let mut elems = vec![Mat::zero(self.ambient, 1)];
        for (gen, order) in &gens {
            let o = usize::try_from(order).unwrap();
            let mut next = Vec::with_capacity(elems.len() * o);
            let mut multiple = Mat::zero(self.ambient, 1);
            for _ in 0..o {
                for e in &elems {
                    next.push(e.add(&multiple));
                }
                multiple = multiple.add(gen);
            }
            elems = next;
        }
        Some(elems)
    }
}

/// A homomorphism of subquotients induced by an ambient matrix.
#[derive(Clone, Debug)]
pub struct SqMap {
    pub source: Subquotient,
    pub target: Subquotient,
    pub matrix: Mat,
}

impl SqMap {
    pub fn new(source: Subquotient, target: Subquotient, matrix: Mat) -> Self {
        assert_eq!(matrix.rows(), target.ambient);
        assert_eq!(matrix.cols(), source.ambient);
        SqMap { source, target, matrix }
    }

    pub fn identity(sq: &Subquotient) -> Self {
        SqMap::new(sq.clone(), sq.clone(), Mat::identity(sq.ambient))
    }

    /// F·A ⊆ A' and F·B ⊆ B'.
    pub fn is_well_defined(&self) -> bool {
        lattice_subset(&self.matrix.mul(&self.source.a), &self.target.a)
            && lattice_subset(&self.matrix.mul(&self.source.b), &self.target.b)
    }

    pub fn compose(&self, inner: &SqMap) -> SqMap {
        SqMap::new(inner.source.clone(), self.target.clone(), self.matrix.mul(&inner.matrix))
    }

    pub fn eq_map(&self, other: &SqMap) -> bool {
        lattice_subset(&self.matrix.sub(&other.matrix).mul(&self.source.a), &self.target.b)
    }

    pub fn is_zero_map(&self) -> bool {
        lattice_subset(&self.matrix.mul(&self.source.a), &self.target.b)
    }

    /// Kernel as a subquotient of the source ambient.
    pub fn kernel(&self) -> Subquotient {
        // {x ∈ A : F x ∈ B'} / B
        let pre = preimage_lattice(&self.matrix, &self.target.b);
        // intersect with A: preimage of A-lattice intersected via solve trick
        let inter = lattice_intersection(&self.source.a, &pre);
        Subquotient { ambient: self.source.ambient, a: inter, b: self.source.b.clone() }
    }

    /// Image as a subquotient of the target ambient.
    pub fn image(&self) -> Subquotient {
        let img = lattice_sum(&self.matrix.mul(&self.source.a), &self.target.b);
        Subquotient { ambient: self.target.ambient, a: img, b: self.target.b.clone() }
    }

    pub fn cokernel(&self) -> Subquotient {
        let b = lattice_sum(&self.matrix.mul(&self.source.a), &self.target.b);
        Subquotient { ambient: self.target.ambient, a: self.target.a.clone(), b }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero_module()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero_module()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Intersection of two column lattices.
pub fn lattice_intersection(a: &Mat, b: &Mat) -> Mat {
    // {x in lattice(a)} ∩ lattice(b) = a · {u : a u ∈ lattice(b)}
    let pre = preimage_lattice(a, b);
    hnf(&a.mul(&pre))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> Mat {
        Mat::from_rows_i64(rows)
    }

    #[test]
    fn quotient_invariant_factors() {
        // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 in canonical form (1|6 chain -> [6]).
        let sq = Subquotient::from_presentation(2, &m(&[vec![2, 0], vec![0, 3]]), &Ring::Int);
        assert_eq!(sq.fg_module(), FgModule::from_i64(&[6]));
        // Z^2 / <(2,0)> = Z/2 + Z.
        let sq = Subquotient::from_presentation(2, &m(&[vec![2], vec![0]]), &Ring::Int);
        assert_eq!(sq.fg_module(), FgModule::from_i64(&[2, 0]));
    }

    #[test]
    fn mod_ring_folds_modulus() {
        // (Z/8)^1 / <2> = Z/2.
        let sq = Subquotient::from_presentation(1, &m(&[vec![2]]), &Ring::Mod(BigInt::from(8)));
        assert_eq!(sq.fg_module(), FgModule::from_i64(&[2]));
    }

    #[test]
    fn map_kernel_image() {
        // multiplication by 2 on Z/8: kernel = 4Z/8 = Z/2, image = 2Z/8 = Z/4, coker = Z/2.
        let r = Ring::Mod(BigInt::from(8));
        let sq = Subquotient::full(1, &r);
        let f = SqMap::new(sq.clone(), sq, m(&[vec![2]]));
        assert!(f.is_well_defined());
        assert_eq!(f.kernel().fg_module(), FgModule::from_i64(&[2]));
        assert_eq!(f.image().fg_module(), FgModule::from_i64(&[4]));
        assert_eq!(f.cokernel().fg_module(), FgModule::from_i64(&[2]));
        assert!(!f.is_iso());
    }

    #[test]
    fn enumerate_small() {
        let r = Ring::Mod(BigInt::from(4));
        let sq = Subquotient::full(1, &r);
        let elems = sq.enumerate(100).unwrap();
        assert_eq!(elems.len(), 4);
        let free = Subquotient::full(1, &Ring::Int);
        assert!(free.enumerate(100).is_none());
    }

    #[test]
    fn p_group_classification() {
        let p = BigInt::from(2);
        assert!(FgModule::from_i64(&[4, 8]).is_finite_p_group(&p));
        assert!(!FgModule::from_i64(&[6]).is_finite_p_group(&p));
        assert!(!FgModule::from_i64(&[0]).is_finite_p_group(&p));
        assert!(FgModule::zero().is_finite_p_group(&p));
        assert_eq!(
            FgModule::from_i64(&[12]).prime_to_p_torsion(&p),
            FgModule::from_i64(&[3])
        );
    }
}
