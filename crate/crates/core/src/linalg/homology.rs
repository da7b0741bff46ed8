//! Subquotients `ker / im` of presented groups, with explicit lifts and projections.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{GroupHom, PresentedGroup};
use super::matrix::IntMatrix;
use super::snf::smith;
use crate::error::{Error, Result};

/// `Z = {x : d_out x ∈ im R_D}` modulo `im d_in + im R_C`, presented canonically.
///
/// Cycles are expressed in a lattice basis `K` (columns in ambient coordinates). A cycle `x` has
/// `K`-coordinates `(coord·x)_i / divisors_i`, and its class is `proj · (K-coordinates)`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: PresentedGroup,
    pub ambient: PresentedGroup,
    /// `ambient.generators() × group.generators()`: a cycle representing each generator.
    pub lift: IntMatrix,
    coord: IntMatrix,
    divisors: Vec<BigInt>,
    /// Rows of `coord` beyond the lattice rank; a cycle has zero there.
    coord_null: IntMatrix,
    proj: IntMatrix,
}

impl Subquotient {
    /// Class of an ambient cycle; errors if `x` is not in the cycle lattice.
    pub fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.coord_null.mul_vec(x).iter().any(|v| !v.is_zero()) {
            return Err(Error::NotCompatible("vector is not a cycle".into()));
        }
        let raw = self.coord.mul_vec(x);
        let mut z = Vec::with_capacity(raw.len());
        for (v, d) in raw.iter().zip(&self.divisors) {
            let (q, r) = v.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NotCompatible("vector is not a cycle".into()));
            }
            z.push(q);
        }
        let mut out = self.proj.mul_vec(&z);
        self.group.reduce(&mut out);
        Ok(out)
    }

    /// The map from the subquotient back to the ambient group is only defined on cycles; this is the
    /// quotient map `cycles -> group` as a homomorphism from the cycle lattice in `K`-coordinates.
    pub fn lattice_rank(&self) -> usize {
        self.divisors.len()
    }

    /// Projection from the ambient group, valid when every element is a cycle (cokernels).
    pub fn projection_hom(&self) -> Result<GroupHom> {
        let g = self.ambient.generators();
        let mut cols = Vec::with_capacity(g);
        for j in 0..g {
            let mut e = vec![BigInt::zero(); g];
            e[j] = BigInt::one();
            cols.push(self.project(&e)?);
        }
        let m = IntMatrix::from_columns(self.group.generators(), &cols);
        GroupHom::new(self.ambient.clone(), self.group.clone(), m)
    }

    /// Inclusion into the ambient group, valid when nothing is divided out (kernels).
    pub fn inclusion_hom(&self) -> Result<GroupHom> {
        GroupHom::new(self.group.clone(), self.ambient.clone(), self.lift.clone())
    }
}

/// Homology `ker(d_out) / im(d_in)` at the middle group.
pub fn homology_at(d_in: &GroupHom, d_out: &GroupHom) -> Result<Subquotient> {
    let c = &d_in.target;
    if c.generators() != d_out.source.generators() {
        return Err(Error::Shape("d_in target and d_out source differ".into()));
    }
    if !d_out.compose(d_in).is_zero() {
        return Err(Error::CompositionNonzero);
    }
    let g = c.generators();
    let rd = d_out.target.relations();

    // cycle lattice: first g coordinates of ker [d_out | R_D]
    let stacked = d_out.matrix.hconcat(rd);
    let ks = smith(&stacked);
    let kcols: Vec<usize> = (ks.rank()..stacked.cols()).collect();
    let gens = ks.v.select_columns(&kcols).submatrix(0, g, 0, kcols.len());

    // lattice basis K = U⁻¹[:, i]·d_i of the span of the generating set
    let ls = smith(&gens);
    let r = ls.rank();
    let idx: Vec<usize> = (0..r).collect();
    let mut basis = ls.u_inv.select_columns(&idx);
    for (i, d) in ls.diag.iter().enumerate() {
        for row in 0..g {
            let v = basis.get(row, i) * d;
            basis.set(row, i, v);
        }
    }
    let coord = ls.u.select_rows(&idx);
    let null_idx: Vec<usize> = (r..g).collect();
    let coord_null = ls.u.select_rows(&null_idx);
    let divisors = ls.diag.clone();

    // boundaries and ambient relators in K-coordinates
    let bound = d_in.matrix.hconcat(c.relations());
    let mut rel = IntMatrix::zeros(r, bound.cols());
    let cu = &coord * &bound;
    for j in 0..bound.cols() {
        for i in 0..r {
            let (q, rem) = cu.get(i, j).div_rem(&divisors[i]);
            if !rem.is_zero() {
                // only possible when d_out kills neither the boundaries nor the relators of C
                return Err(Error::IllDefined("boundary or relator outside the cycle lattice".into()));
            }
            rel.set(i, j, q);
        }
    }

    let qs = smith(&rel);
    let kept: Vec<usize> = (0..r).filter(|&i| i >= qs.rank() || !qs.diag[i].is_one()).collect();
    let orders: Vec<BigInt> =
        kept.iter().map(|&i| if i < qs.rank() { qs.diag[i].clone() } else { BigInt::zero() }).collect();
    let group = PresentedGroup::from_orders(&orders);
    let lift = &basis * &qs.u_inv.select_columns(&kept);
    let proj = qs.u.select_rows(&kept);
    Ok(Subquotient { group, ambient: c.clone(), lift, coord, divisors, coord_null, proj })
}

/// Kernel of `f` as a subgroup of its source.
pub fn kernel(f: &GroupHom) -> Result<Subquotient> {
    let zero_in = GroupHom::zero(&PresentedGroup::zero(), &f.source);
    homology_at(&zero_in, f)
}

/// Cokernel of `f` as a quotient of its target.
pub fn cokernel(f: &GroupHom) -> Result<Subquotient> {
    let zero_out = GroupHom::zero(&f.target, &PresentedGroup::zero());
    homology_at(f, &zero_out)
}

/// Cokernel together with the projection from the target.
pub fn cokernel_with_projection(f: &GroupHom) -> Result<(PresentedGroup, GroupHom)> {
    let q = cokernel(f)?;
    let p = q.projection_hom()?;
    Ok((q.group, p))
}

/// The map on subquotients induced by a chain-level matrix `f: source.ambient -> target.ambient`.
pub fn induced_hom(f: &IntMatrix, source: &Subquotient, target: &Subquotient) -> Result<GroupHom> {
    if f.cols() != source.ambient.generators() || f.rows() != target.ambient.generators() {
        return Err(Error::Shape("chain map does not match the ambient groups".into()));
    }
    let img = f * &source.lift;
    let mut cols = Vec::with_capacity(img.cols());
    for j in 0..img.cols() {
        cols.push(target.project(&img.column(j))?);
    }
    let m = IntMatrix::from_columns(target.group.generators(), &cols);
    GroupHom::new(source.group.clone(), target.group.clone(), m)
        .map_err(|e| Error::NotCompatible(format!("boundaries not sent to boundaries ({e})")))
}
