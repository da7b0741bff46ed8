use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::context::GroupContext;
use crate::error::{Error, Result};
use crate::linalg::{GroupHom, IntMatrix, PresentedGroup};

/// A Mackey functor for `C_{p^n}`, stored as its Lewis diagram.
///
/// `res[m]: M(m+1) -> M(m)`, `tr[m]: M(m) -> M(m+1)`, and `weyl[m]` is the action of `γ` on `M(m)`.
#[derive(Clone)]
pub struct MackeyFunctor {
    ctx: GroupContext,
    levels: Vec<PresentedGroup>,
    res: Vec<GroupHom>,
    tr: Vec<GroupHom>,
    weyl: Vec<GroupHom>,
}

/// One failed axiom, with the level at which it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub level: u32,
    pub axiom: &'static str,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at level {}", self.axiom, self.level)
    }
}

impl MackeyFunctor {
    /// Assembles a functor from its structure maps, checking shapes and well-definedness.
    pub fn from_parts(
        ctx: GroupContext,
        levels: Vec<PresentedGroup>,
        res: Vec<GroupHom>,
        tr: Vec<GroupHom>,
        weyl: Vec<GroupHom>,
    ) -> Result<Self> {
        let n = ctx.n as usize;
        if levels.len() != n + 1 || res.len() != n || tr.len() != n || weyl.len() != n + 1 {
            return Err(Error::LevelMismatch(format!("expected {} levels", n + 1)));
        }
        for m in 0..n {
            expect_between(&res[m], &levels[m + 1], &levels[m], "res")?;
            expect_between(&tr[m], &levels[m], &levels[m + 1], "tr")?;
        }
        for m in 0..=n {
            expect_between(&weyl[m], &levels[m], &levels[m], "weyl")?;
        }
        for h in res.iter().chain(&tr).chain(&weyl) {
            h.check_well_defined()?;
        }
        Ok(MackeyFunctor { ctx, levels, res, tr, weyl })
    }

    pub(crate) fn from_parts_unchecked(
        ctx: GroupContext,
        levels: Vec<PresentedGroup>,
        res: Vec<GroupHom>,
        tr: Vec<GroupHom>,
        weyl: Vec<GroupHom>,
    ) -> Self {
        debug_assert!(levels.len() == ctx.n as usize + 1);
        MackeyFunctor { ctx, levels, res, tr, weyl }
    }

    /// A functor whose levels are cyclic with trivial Weyl action.
    ///
    /// `orders[m]` is the order of level `m` (0 for `Z`, 1 for the zero group); structure maps are
    /// the given integer scalars.
    pub fn cyclic(ctx: GroupContext, orders: &[BigInt], res: &[BigInt], tr: &[BigInt]) -> Result<Self> {
        let levels: Vec<PresentedGroup> = orders.iter().map(PresentedGroup::cyclic).collect();
        let scalar = |s: &PresentedGroup, t: &PresentedGroup, k: &BigInt| {
            let mut m = IntMatrix::zeros(t.generators(), s.generators());
            if m.rows() == 1 && m.cols() == 1 {
                m.set(0, 0, k.clone());
            }
            GroupHom::new_unchecked(s.clone(), t.clone(), m)
        };
        let n = ctx.n as usize;
        let res_h = (0..n).map(|m| scalar(&levels[m + 1], &levels[m], &res[m])).collect();
        let tr_h = (0..n).map(|m| scalar(&levels[m], &levels[m + 1], &tr[m])).collect();
        let weyl = levels.iter().map(GroupHom::identity).collect();
        Self::from_parts(ctx, levels, res_h, tr_h, weyl)
    }

    pub fn zero(ctx: GroupContext) -> Self {
        let n = ctx.n as usize;
        let z = PresentedGroup::zero();
        let zh = GroupHom::identity(&z);
        MackeyFunctor {
            ctx,
            levels: vec![z; n + 1],
            res: vec![zh.clone(); n],
            tr: vec![zh.clone(); n],
            weyl: vec![zh; n + 1],
        }
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn level(&self, m: u32) -> &PresentedGroup {
        &self.levels[m as usize]
    }

    pub fn levels(&self) -> &[PresentedGroup] {
        &self.levels
    }

    pub fn res(&self, m: u32) -> &GroupHom {
        &self.res[m as usize]
    }

    pub fn tr(&self, m: u32) -> &GroupHom {
        &self.tr[m as usize]
    }

    pub fn weyl(&self, m: u32) -> &GroupHom {
        &self.weyl[m as usize]
    }

    pub fn res_maps(&self) -> &[GroupHom] {
        &self.res
    }

    pub fn tr_maps(&self) -> &[GroupHom] {
        &self.tr
    }

    pub fn weyl_maps(&self) -> &[GroupHom] {
        &self.weyl
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(PresentedGroup::is_zero)
    }

    pub fn is_cyclic_levelwise(&self) -> bool {
        self.levels.iter().all(|g| g.invariants().is_cyclic())
    }

    /// `weyl[m]^e` with `e` taken modulo the Weyl group order; negative exponents allowed.
    pub fn weyl_pow(&self, m: u32, e: i64) -> GroupHom {
        let ord = self.ctx.weyl_order(m) as i64;
        self.weyl[m as usize].pow(e.rem_euclid(ord) as u64)
    }

    /// Composite restriction from level `hi` down to level `lo`.
    pub fn res_between(&self, hi: u32, lo: u32) -> GroupHom {
        assert!(lo <= hi);
        let mut f = GroupHom::identity(self.level(hi));
        for s in (lo..hi).rev() {
            f = self.res(s).compose(&f);
        }
        f
    }

    /// Composite transfer from level `lo` up to level `hi`.
    pub fn tr_between(&self, lo: u32, hi: u32) -> GroupHom {
        assert!(lo <= hi);
        let mut f = GroupHom::identity(self.level(lo));
        for s in lo..hi {
            f = self.tr(s).compose(&f);
        }
        f
    }

    /// Every violated Mackey axiom; empty for a valid functor.
    pub fn check_axioms(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        let ctx = self.ctx;
        for m in ctx.levels() {
            let w = self.weyl(m);
            if !w.pow(ctx.weyl_order(m)).is_identity() {
                out.push(AxiomViolation { level: m, axiom: "weyl order" });
            }
            if m == ctx.n && !w.is_identity() {
                out.push(AxiomViolation { level: m, axiom: "weyl trivial at top" });
            }
        }
        for m in 0..ctx.n {
            let (r, t) = (self.res(m), self.tr(m));
            if !r.compose(self.weyl(m + 1)).equals(&self.weyl(m).compose(r)) {
                out.push(AxiomViolation { level: m, axiom: "res equivariance" });
            }
            if !self.weyl(m + 1).compose(t).equals(&t.compose(self.weyl(m))) {
                out.push(AxiomViolation { level: m, axiom: "tr equivariance" });
            }
            let step = self.weyl(m).pow(ctx.pow(ctx.n - m - 1));
            let mut norm = GroupHom::zero(self.level(m), self.level(m));
            let mut power = GroupHom::identity(self.level(m));
            for _ in 0..ctx.p {
                norm = norm.add(&power);
                power = power.compose(&step);
            }
            if !r.compose(t).equals(&norm) {
                out.push(AxiomViolation { level: m, axiom: "double coset" });
            }
        }
        out
    }

    /// Levelwise canonical presentation, with structure maps transported.
    pub fn canonical(&self) -> MackeyFunctor {
        if self.levels.iter().all(PresentedGroup::is_canonical) {
            return self.clone();
        }
        let parts: Vec<_> = self.levels.iter().map(PresentedGroup::canonicalize).collect();
        let conj = |h: &GroupHom, s: usize, t: usize| parts[t].1.compose(&h.compose(&parts[s].2));
        let n = self.ctx.n as usize;
        MackeyFunctor {
            ctx: self.ctx,
            levels: parts.iter().map(|p| p.0.clone()).collect(),
            res: (0..n).map(|m| conj(&self.res[m], m + 1, m)).collect(),
            tr: (0..n).map(|m| conj(&self.tr[m], m, m + 1)).collect(),
            weyl: (0..=n).map(|m| conj(&self.weyl[m], m, m)).collect(),
        }
    }

    /// Levelwise direct sum.
    pub fn direct_sum(&self, other: &MackeyFunctor) -> Result<MackeyFunctor> {
        if self.ctx != other.ctx {
            return Err(Error::LevelMismatch("direct sum of functors for different groups".into()));
        }
        let levels: Vec<PresentedGroup> = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| PresentedGroup::direct_sum(&[a.clone(), b.clone()]))
            .collect();
        let sum = |a: &GroupHom, b: &GroupHom, s: &PresentedGroup, t: &PresentedGroup| {
            GroupHom::new_unchecked(s.clone(), t.clone(), IntMatrix::block_diagonal(&[a.matrix.clone(), b.matrix.clone()]))
        };
        let n = self.ctx.n as usize;
        Ok(MackeyFunctor {
            ctx: self.ctx,
            res: (0..n).map(|m| sum(&self.res[m], &other.res[m], &levels[m + 1], &levels[m])).collect(),
            tr: (0..n).map(|m| sum(&self.tr[m], &other.tr[m], &levels[m], &levels[m + 1])).collect(),
            weyl: (0..=n).map(|m| sum(&self.weyl[m], &other.weyl[m], &levels[m], &levels[m])).collect(),
            levels,
        })
    }

    /// Replaces one transfer; used to build deliberately broken functors.
    pub fn with_transfer(&self, m: u32, tr: GroupHom) -> Result<MackeyFunctor> {
        expect_between(&tr, self.level(m), self.level(m + 1), "tr")?;
        let mut out = self.clone();
        out.tr[m as usize] = tr;
        Ok(out)
    }

    /// The single scalar of a map between cyclic groups (0 when either side is trivial).
    pub fn scalar_of(h: &GroupHom) -> Option<BigInt> {
        match (h.matrix.rows(), h.matrix.cols()) {
            (1, 1) => Some(h.matrix.get(0, 0).clone()),
            (0, _) | (_, 0) => Some(BigInt::zero()),
            _ => None,
        }
    }
}

fn expect_between(h: &GroupHom, s: &PresentedGroup, t: &PresentedGroup, what: &str) -> Result<()> {
    if h.matrix.cols() != s.generators() || h.matrix.rows() != t.generators() {
        return Err(Error::Shape(format!("{what} has shape {}x{}", h.matrix.rows(), h.matrix.cols())));
    }
    Ok(())
}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lv: Vec<String> = self.levels.iter().map(|g| g.to_string()).collect();
        write!(f, "Mackey(p={}, n={}, levels=[{}])", self.ctx.p, self.ctx.n, lv.join(", "))
    }
}

/// A natural transformation, one homomorphism per level.
#[derive(Clone, Debug)]
pub struct MackeyMorphism {
    pub source: MackeyFunctor,
    pub target: MackeyFunctor,
    pub maps: Vec<GroupHom>,
}

impl MackeyMorphism {
    /// Builds a morphism after checking that it commutes with res, tr and weyl.
    pub fn new(source: MackeyFunctor, target: MackeyFunctor, maps: Vec<GroupHom>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, maps);
        f.check()?;
        Ok(f)
    }

    pub fn new_unchecked(source: MackeyFunctor, target: MackeyFunctor, maps: Vec<GroupHom>) -> Self {
        MackeyMorphism { source, target, maps }
    }

    /// Builds a morphism from raw matrices, one per level.
    pub fn from_matrices(source: &MackeyFunctor, target: &MackeyFunctor, mats: Vec<IntMatrix>) -> Result<Self> {
        let maps = mats
            .into_iter()
            .enumerate()
            .map(|(m, a)| GroupHom::new(source.levels[m].clone(), target.levels[m].clone(), a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source.clone(), target.clone(), maps)
    }

    pub fn identity(m: &MackeyFunctor) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), m.levels.iter().map(GroupHom::identity).collect())
    }

    pub fn zero(source: &MackeyFunctor, target: &MackeyFunctor) -> Self {
        let maps = source.levels.iter().zip(&target.levels).map(|(s, t)| GroupHom::zero(s, t)).collect();
        Self::new_unchecked(source.clone(), target.clone(), maps)
    }

    pub fn at(&self, m: u32) -> &GroupHom {
        &self.maps[m as usize]
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if s.ctx != t.ctx || self.maps.len() != s.levels.len() {
            return Err(Error::LevelMismatch("morphism between functors for different groups".into()));
        }
        for m in s.ctx.levels() {
            let f = self.at(m);
            if f.matrix.cols() != s.level(m).generators() || f.matrix.rows() != t.level(m).generators() {
                return Err(Error::Shape(format!("morphism at level {m}")));
            }
            f.check_well_defined()?;
            if !f.compose(s.weyl(m)).equals(&t.weyl(m).compose(f)) {
                return Err(Error::NotCompatible(format!("morphism does not commute with weyl at level {m}")));
            }
        }
        for m in 0..s.ctx.n {
            let (lo, hi) = (self.at(m), self.at(m + 1));
            if !lo.compose(s.res(m)).equals(&t.res(m).compose(hi)) {
                return Err(Error::NotCompatible(format!("morphism does not commute with res at level {m}")));
            }
            if !hi.compose(s.tr(m)).equals(&t.tr(m).compose(lo)) {
                return Err(Error::NotCompatible(format!("morphism does not commute with tr at level {m}")));
            }
        }
        Ok(())
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &MackeyMorphism) -> MackeyMorphism {
        let maps = self.maps.iter().zip(&first.maps).map(|(a, b)| a.compose(b)).collect();
        Self::new_unchecked(first.source.clone(), self.target.clone(), maps)
    }

    pub fn add(&self, other: &MackeyMorphism) -> MackeyMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn sub(&self, other: &MackeyMorphism) -> MackeyMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn neg(&self) -> MackeyMorphism {
        let maps = self.maps.iter().map(|a| a.scale(&-BigInt::one())).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(GroupHom::is_zero)
    }

    /// `1 - γ` on a functor, using its own Weyl action.
    pub fn one_minus_weyl(m: &MackeyFunctor) -> MackeyMorphism {
        let maps = m.ctx.levels().map(|l| GroupHom::identity(m.level(l)).sub(m.weyl(l))).collect();
        Self::new_unchecked(m.clone(), m.clone(), maps)
    }
}
