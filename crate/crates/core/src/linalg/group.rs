use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith, solve_with, Smith};
use crate::error::{Error, Result};

/// Canonical invariants of a finitely generated abelian group: `Z^free ⊕ ⊕ Z/d_i`, `d_i ≥ 2`, `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Invariants {
    pub free: usize,
    pub torsion: Vec<BigInt>,
}

impl Invariants {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free + self.torsion.len() <= 1
    }

    /// The order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join("+"))
    }
}

struct Inner {
    relations: IntMatrix,
    invariants: Invariants,
    /// `Some(orders)` when there is one nonnegative diagonal relator per generator (0 = free).
    diagonal: Option<Vec<BigInt>>,
    /// Diagonal with orders ≥ 2 in divisibility order, followed by free generators.
    canonical: bool,
    smith: OnceLock<Smith>,
}

/// A finitely generated abelian group `Z^g / im(R)`; the columns of `R` are relators.
#[derive(Clone)]
pub struct PresentedGroup(Arc<Inner>);

impl PresentedGroup {
    pub fn new(relations: IntMatrix) -> Self {
        let diagonal = diagonal_orders(&relations);
        let canonical = diagonal.as_deref().is_some_and(is_canonical_orders);
        let (invariants, smith) = match &diagonal {
            Some(orders) if canonical => (invariants_from_orders(orders), OnceLock::new()),
            _ => {
                let s = smith(&relations);
                let torsion: Vec<BigInt> = s.diag.iter().filter(|d| !d.is_one()).cloned().collect();
                let inv = Invariants { free: relations.rows() - s.rank(), torsion };
                (inv, OnceLock::from(s))
            }
        };
        PresentedGroup(Arc::new(Inner { relations, invariants, diagonal, canonical, smith }))
    }

    pub fn free(rank: usize) -> Self {
        Self::new(IntMatrix::zeros(rank, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Canonical group with one generator per entry; entry 0 means free, otherwise the order.
    /// Orders must be ≥ 2, nondecreasing under divisibility, and precede all zeros.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let g = orders.len();
        let mut r = IntMatrix::zeros(g, g);
        for (i, d) in orders.iter().enumerate() {
            r.set(i, i, d.clone());
        }
        let grp = Self::new(r);
        debug_assert!(grp.is_canonical(), "orders {orders:?} are not canonical");
        grp
    }

    pub fn cyclic(order: &BigInt) -> Self {
        if order.is_one() {
            Self::zero()
        } else {
            Self::from_orders(std::slice::from_ref(order))
        }
    }

    /// The canonical group with the given invariants.
    pub fn from_invariants(inv: &Invariants) -> Self {
        let mut orders = inv.torsion.clone();
        orders.extend(std::iter::repeat(BigInt::zero()).take(inv.free));
        Self::from_orders(&orders)
    }

    pub fn generators(&self) -> usize {
        self.0.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    pub fn invariants(&self) -> &Invariants {
        &self.0.invariants
    }

    pub fn is_zero(&self) -> bool {
        self.0.invariants.is_zero()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    /// Orders of the generators of a diagonal presentation (0 = free).
    pub fn orders(&self) -> Option<&[BigInt]> {
        self.0.diagonal.as_deref()
    }

    pub fn smith(&self) -> &Smith {
        self.0.smith.get_or_init(|| smith(&self.0.relations))
    }

    pub fn ptr_eq(&self, other: &PresentedGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Whether two presentations are literally the same (same generators and relators).
    pub fn same_presentation(&self, other: &PresentedGroup) -> bool {
        self.ptr_eq(other) || self.0.relations == other.0.relations
    }

    /// Whether `v` lies in the relation lattice, i.e. represents zero.
    pub fn is_trivial_element(&self, v: &[BigInt]) -> bool {
        if let Some(orders) = &self.0.diagonal {
            return v.iter().zip(orders).all(|(x, d)| if d.is_zero() { x.is_zero() } else { x.is_multiple_of(d) });
        }
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        solve_with(self.smith(), v).is_some()
    }

    /// Reduces a coordinate vector to its least nonnegative representative when diagonal.
    pub fn reduce(&self, v: &mut [BigInt]) {
        if let Some(orders) = &self.0.diagonal {
            for (x, d) in v.iter_mut().zip(orders) {
                if !d.is_zero() {
                    *x = x.mod_floor(d);
                }
            }
        }
    }

    /// Reduces each row of `m` modulo the order of the corresponding generator.
    pub fn reduce_rows(&self, m: &mut IntMatrix) {
        if let Some(orders) = &self.0.diagonal {
            for (i, d) in orders.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                for j in 0..m.cols() {
                    let x = m.get(i, j).mod_floor(d);
                    m.set(i, j, x);
                }
            }
        }
    }

    /// An isomorphism onto the canonical presentation, with its inverse.
    pub fn canonicalize(&self) -> (PresentedGroup, GroupHom, GroupHom) {
        if self.is_canonical() {
            let id = GroupHom::identity(self);
            return (self.clone(), id.clone(), id);
        }
        let s = self.smith();
        let g = self.generators();
        let kept: Vec<usize> = (0..g).filter(|&i| i >= s.rank() || !s.diag[i].is_one()).collect();
        let orders: Vec<BigInt> =
            kept.iter().map(|&i| if i < s.rank() { s.diag[i].clone() } else { BigInt::zero() }).collect();
        let canon = PresentedGroup::from_orders(&orders);
        let to = GroupHom::new_unchecked(self.clone(), canon.clone(), s.u.select_rows(&kept));
        let from = GroupHom::new_unchecked(canon.clone(), self.clone(), s.u_inv.select_columns(&kept));
        (canon, to, from)
    }

    /// Direct sum of canonical groups is not canonical in general; this keeps the block presentation.
    pub fn direct_sum(groups: &[PresentedGroup]) -> PresentedGroup {
        let blocks: Vec<IntMatrix> = groups.iter().map(|g| g.relations().clone()).collect();
        PresentedGroup::new(IntMatrix::block_diagonal(&blocks))
    }
}

fn diagonal_orders(r: &IntMatrix) -> Option<Vec<BigInt>> {
    let g = r.rows();
    if r.cols() == 0 {
        return Some(vec![BigInt::zero(); g]);
    }
    if r.cols() != g {
        return None;
    }
    let mut orders = Vec::with_capacity(g);
    for i in 0..g {
        for j in 0..g {
            if i != j && !r.get(i, j).is_zero() {
                return None;
            }
        }
        if r.get(i, i).is_negative() {
            return None;
        }
        orders.push(r.get(i, i).clone());
    }
    Some(orders)
}

fn is_canonical_orders(orders: &[BigInt]) -> bool {
    let mut seen_free = false;
    let mut prev: Option<&BigInt> = None;
    for d in orders {
        if d.is_zero() {
            seen_free = true;
            continue;
        }
        if seen_free || d.is_one() {
            return false;
        }
        if prev.is_some_and(|p| !d.is_multiple_of(p)) {
            return false;
        }
        prev = Some(d);
    }
    true
}

fn invariants_from_orders(orders: &[BigInt]) -> Invariants {
    Invariants {
        free: orders.iter().filter(|d| d.is_zero()).count(),
        torsion: orders.iter().filter(|d| !d.is_zero()).cloned().collect(),
    }
}

impl fmt::Debug for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{} gens; {}>", self.invariants(), self.generators(), self.relations())
    }
}

impl fmt::Display for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariants())
    }
}

/// A homomorphism given on generators; column `j` is the image of source generator `j`.
#[derive(Clone)]
pub struct GroupHom {
    pub source: PresentedGroup,
    pub target: PresentedGroup,
    pub matrix: IntMatrix,
}

impl GroupHom {
    /// Builds a homomorphism after checking that relators map into the target relation lattice.
    pub fn new(source: PresentedGroup, target: PresentedGroup, matrix: IntMatrix) -> Result<Self> {
        let h = Self::new_unchecked(source, target, matrix);
        h.check_well_defined()?;
        Ok(h)
    }

    /// Builds a homomorphism, reducing entries modulo a canonical target, without the lattice check.
    pub fn new_unchecked(source: PresentedGroup, target: PresentedGroup, mut matrix: IntMatrix) -> Self {
        assert_eq!(
            (matrix.rows(), matrix.cols()),
            (target.generators(), source.generators()),
            "homomorphism matrix has the wrong shape"
        );
        target.reduce_rows(&mut matrix);
        GroupHom { source, target, matrix }
    }

    pub fn identity(g: &PresentedGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.generators()))
    }

    pub fn zero(source: &PresentedGroup, target: &PresentedGroup) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), IntMatrix::zeros(target.generators(), source.generators()))
    }

    pub fn scalar(g: &PresentedGroup, k: &BigInt) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::scalar(g.generators(), k))
    }

    pub fn check_well_defined(&self) -> Result<()> {
        let img = &self.matrix * self.source.relations();
        for j in 0..img.cols() {
            if !self.target.is_trivial_element(&img.column(j)) {
                return Err(Error::IllDefined(format!("relator {j} of {:?} maps outside the relations of {:?}", self.source, self.target)));
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = self.matrix.mul_vec(v);
        self.target.reduce(&mut w);
        w
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        assert_eq!(first.target.generators(), self.source.generators(), "composition shape mismatch");
        GroupHom::new_unchecked(first.source.clone(), self.target.clone(), &self.matrix * &first.matrix)
    }

    pub fn add(&self, other: &GroupHom) -> GroupHom {
        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), &self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &GroupHom) -> GroupHom {
        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), &self.matrix - &other.matrix)
    }

    pub fn scale(&self, k: &BigInt) -> GroupHom {
        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(k))
    }

    /// `self^e` for an endomorphism, reducing at every step.
    pub fn pow(&self, mut e: u64) -> GroupHom {
        let mut result = GroupHom::identity(&self.source);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        result
    }

    /// Equality as homomorphisms: every column of the difference is trivial in the target.
    pub fn equals(&self, other: &GroupHom) -> bool {
        let d = &self.matrix - &other.matrix;
        (0..d.cols()).all(|j| self.target.is_trivial_element(&d.column(j)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_trivial_element(&self.matrix.column(j)))
    }

    pub fn is_identity(&self) -> bool {
        self.source.generators() == self.target.generators() && self.equals(&GroupHom::identity(&self.target))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {}", self.source, self.target, self.matrix)
    }
}
