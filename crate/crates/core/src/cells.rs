//! Equivariant cell structures on representation spheres and their cellular chain complexes of
//! Mackey functors.
//!
//! A representation `V = t + Σ k_h λ_h` gets the base cell `S^t` followed by `k_h` pairs of free
//! `G/C_{p^h}` cells for each `h`, in decreasing `h`. Inside a pair the top cell attaches by
//! `1 - γ`; the bottom cell of a pair attaches to the previous top cell through the point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{GroupHom, IntMatrix, PresentedGroup};
use crate::mackey::{
    cell_automorphism, counit, ind_res, mackey_homology, make_constant_z, pull, unit, GroupContext, MackeyFunctor,
    MackeyMorphism, MackeySubquotient,
};
use crate::reps::RealRep;

/// A pair of free cells `(G/C_{p^level})_+ ∧ e^dim, e^{dim+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellBlock {
    pub level: u32,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellStructure {
    pub base_dim: u64,
    pub blocks: Vec<CellBlock>,
}

impl CellStructure {
    pub fn top_dim(&self) -> u64 {
        self.blocks.last().map_or(self.base_dim, |b| b.dim + 1)
    }

    pub fn cell_count(&self) -> usize {
        1 + 2 * self.blocks.len()
    }
}

pub fn cell_structure(v: &RealRep) -> CellStructure {
    let mut blocks = Vec::new();
    let mut d = v.triv;
    for h in (0..v.ctx.n).rev() {
        for _ in 0..v.mult[h as usize] {
            blocks.push(CellBlock { level: h, dim: d + 1 });
            d += 2;
        }
    }
    CellStructure { base_dim: v.triv, blocks }
}

/// A bounded chain complex; `terms[i]` sits in degree `offset + i` and `diffs[i]` maps
/// `terms[i + 1] -> terms[i]`.
#[derive(Clone, Debug)]
pub struct MackeyComplex {
    pub ctx: GroupContext,
    pub offset: i64,
    pub terms: Vec<MackeyFunctor>,
    pub diffs: Vec<MackeyMorphism>,
}

impl MackeyComplex {
    /// Builds the complex and rejects it unless `∂∂ = 0`.
    pub fn new(ctx: GroupContext, offset: i64, terms: Vec<MackeyFunctor>, diffs: Vec<MackeyMorphism>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Construction(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        let c = MackeyComplex { ctx, offset, terms, diffs };
        for i in 1..c.diffs.len() {
            if !c.diffs[i - 1].compose(&c.diffs[i]).is_zero() {
                return Err(Error::Construction(format!("∂∂ ≠ 0 at degree {}", c.offset + i as i64 + 1)));
            }
        }
        Ok(c)
    }

    pub fn min_degree(&self) -> i64 {
        self.offset
    }

    pub fn max_degree(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }

    pub fn term(&self, d: i64) -> Option<&MackeyFunctor> {
        usize::try_from(d - self.offset).ok().and_then(|i| self.terms.get(i))
    }

    /// Homology in degree `d`, zero outside the support.
    pub fn homology(&self, d: i64) -> Result<MackeySubquotient> {
        let Some(c) = self.term(d) else {
            let z = MackeyFunctor::zero(self.ctx);
            return mackey_homology(&MackeyMorphism::zero(&z, &z), &MackeyMorphism::zero(&z, &z));
        };
        let i = (d - self.offset) as usize;
        let zero = MackeyFunctor::zero(self.ctx);
        let d_in = if i < self.diffs.len() { self.diffs[i].clone() } else { MackeyMorphism::zero(&zero, c) };
        let d_out = if i > 0 { self.diffs[i - 1].clone() } else { MackeyMorphism::zero(c, &zero) };
        mackey_homology(&d_in, &d_out)
    }

    /// `(degree, homology)` for every degree of the support.
    pub fn homology_all(&self) -> Result<Vec<(i64, MackeyFunctor)>> {
        (self.min_degree()..=self.max_degree()).map(|d| Ok((d, self.homology(d)?.functor))).collect()
    }

    /// Checks that level 0 has the homology of a sphere of dimension `dim` with coefficients `g`.
    fn check_underlying(&self, dim: i64, g: &PresentedGroup) -> Result<()> {
        for d in self.min_degree()..=self.max_degree() {
            let h = self.homology(d)?;
            let got = h.functor.level(0).invariants();
            let ok = if d == dim { got == g.invariants() } else { got.is_zero() };
            if !ok {
                return Err(Error::Construction(format!("underlying homology in degree {d} is {got}, not that of a {dim}-sphere")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self.terms.iter().map(|t| serde_json::to_value(t.to_json()).expect("serializable")).collect();
        let diffs: Vec<_> = self
            .diffs
            .iter()
            .map(|f| f.maps.iter().map(|g| g.matrix.to_nested().iter().map(|r| r.iter().map(crate::mackey::big_to_value).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect();
        serde_json::json!({ "offset": self.offset, "terms": terms, "diffs": diffs })
    }
}

/// Levelwise direct sum of several functors; generators are concatenated in order.
fn sum_of(ctx: GroupContext, parts: &[MackeyFunctor]) -> MackeyFunctor {
    let mut it = parts.iter();
    let Some(first) = it.next() else { return MackeyFunctor::zero(ctx) };
    it.fold(first.clone(), |acc, f| acc.direct_sum(f).expect("same group"))
}

/// A morphism between sums given by `(target part, source part, morphism)` entries.
fn block_morphism(
    ctx: GroupContext,
    sources: &[MackeyFunctor],
    targets: &[MackeyFunctor],
    entries: &[(usize, usize, MackeyMorphism)],
) -> MackeyMorphism {
    let (src, tgt) = (sum_of(ctx, sources), sum_of(ctx, targets));
    let maps = ctx
        .levels()
        .map(|l| {
            let off = |parts: &[MackeyFunctor]| {
                let mut o = vec![0];
                for f in parts {
                    o.push(o.last().unwrap() + f.level(l).generators());
                }
                o
            };
            let (so, to) = (off(sources), off(targets));
            let mut a = IntMatrix::zeros(*to.last().unwrap(), *so.last().unwrap());
            for (t, s, f) in entries {
                let m = &f.at(l).matrix;
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        let v = a.get(to[*t] + i, so[*s] + j) + m.get(i, j);
                        a.set(to[*t] + i, so[*s] + j, v);
                    }
                }
            }
            GroupHom::new_unchecked(src.level(l).clone(), tgt.level(l).clone(), a)
        })
        .collect();
    MackeyMorphism::new_unchecked(src, tgt, maps)
}

/// Reduced cellular chains of `S^V` with coefficients in `M`, supported in degrees `triv..=dim V`.
pub fn chain_complex(v: &RealRep, m: &MackeyFunctor) -> Result<MackeyComplex> {
    let ctx = m.ctx();
    if v.ctx != ctx {
        return Err(Error::LevelMismatch("representation and coefficients over different groups".into()));
    }
    let cells = cell_structure(v);
    let mut terms = vec![m.clone()];
    let mut diffs = Vec::new();
    let mut prev: Option<u32> = None;
    for b in &cells.blocks {
        let c = ind_res(b.level, m);
        let attach = match prev {
            None => counit(b.level, m),
            Some(hp) => unit(hp, m).compose(&counit(b.level, m)),
        };
        let spin = MackeyMorphism::identity(&c).sub(&cell_automorphism(b.level, m));
        terms.push(c.clone());
        terms.push(c);
        diffs.push(attach);
        diffs.push(spin);
        prev = Some(b.level);
    }
    let cx = MackeyComplex::new(ctx, v.triv as i64, terms, diffs)?;
    cx.check_underlying(v.dim() as i64, m.level(0))?;
    Ok(cx)
}

/// The complex for `S^{λ_k - λ_j} ∧ HZ`, `j < k < n`, graded so that its answer sits in degree 0:
///
/// ```text
/// C_2 = Z[G/C_{p^k}]
/// C_1 = Z[G/C_{p^k}] ⊕ Z[G/C_{p^j}]
/// C_0 = Z ⊕ Z[G/C_{p^j}]
/// ```
///
/// with `∂_2 = (1 - γ, ι)` and `∂_1 = [[ε, 0], [-ι, 1 - γ]]`, where `ι` is the inclusion of
/// fixed points and `ε` the fold map.
pub fn virtual_form_complex(k: u32, j: u32, ctx: GroupContext) -> Result<MackeyComplex> {
    if !(j < k && k < ctx.n) {
        return Err(Error::Index(format!("need 0 <= j < k <= n - 1, got j = {j}, k = {k}, n = {}", ctx.n)));
    }
    let z = make_constant_z(ctx);
    let (ck, cj) = (ind_res(k, &z), ind_res(j, &z));
    let spin = |h: u32, c: &MackeyFunctor| MackeyMorphism::identity(c).sub(&cell_automorphism(h, &z));
    let iota = pull(k, j, &z);
    let d2 = block_morphism(ctx, &[ck.clone()], &[ck.clone(), cj.clone()], &[(0, 0, spin(k, &ck)), (1, 0, iota.clone())]);
    let d1 = block_morphism(
        ctx,
        &[ck.clone(), cj.clone()],
        &[z.clone(), cj.clone()],
        &[(0, 0, counit(k, &z)), (1, 0, iota.neg()), (1, 1, spin(j, &cj))],
    );
    let terms = vec![d1.target.clone(), d1.source.clone(), d2.source.clone()];
    let cx = MackeyComplex::new(ctx, 0, terms, vec![d1, d2])?;
    cx.check_underlying(0, z.level(0))?;
    Ok(cx)
}

/// Cochains of `S^{λ_m}` with coefficients in `M`, written homologically in degrees `-2..=0`:
/// `M -> Ind_m Res_m M -> Ind_m Res_m M`, restriction-and-diagonal then `1 - γ`.
/// Homology in degree `-s` is `H^s(S^{λ_m}; M)`.
pub fn cochain_minus_lambda(m: u32, coeff: &MackeyFunctor) -> Result<MackeyComplex> {
    let ctx = coeff.ctx();
    if m >= ctx.n {
        return Err(Error::Index(format!("need m < n = {}, got {m}", ctx.n)));
    }
    let c = ind_res(m, coeff);
    let spin = MackeyMorphism::identity(&c).sub(&cell_automorphism(m, coeff));
    let diag = unit(m, coeff);
    MackeyComplex::new(ctx, -2, vec![c.clone(), c, coeff.clone()], vec![spin, diag])
}
