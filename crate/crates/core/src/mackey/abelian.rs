//! Levelwise kernels, cokernels and homology in the category of Mackey functors.

use super::context::GroupContext;
use super::families::{make_b, make_b_ell, make_constant_z, make_z};
use super::functor::{MackeyFunctor, MackeyMorphism};
use super::induction::one_minus_gamma;
use super::iso::mackey_iso;
use crate::error::{Error, Result};
use crate::linalg::{homology_at, induced_hom, GroupHom, Subquotient};

/// A subquotient Mackey functor with its levelwise witnesses.
#[derive(Clone, Debug)]
pub struct MackeySubquotient {
    pub functor: MackeyFunctor,
    pub witnesses: Vec<Subquotient>,
}

/// Homology of `A -> B -> C` at `B`.
pub fn mackey_homology(d_in: &MackeyMorphism, d_out: &MackeyMorphism) -> Result<MackeySubquotient> {
    let b = &d_in.target;
    let ctx = b.ctx();
    if d_out.source.ctx() != ctx {
        return Err(Error::LevelMismatch("differentials over different groups".into()));
    }
    let witnesses: Vec<Subquotient> =
        ctx.levels().map(|m| homology_at(d_in.at(m), d_out.at(m))).collect::<Result<_>>()?;
    let w = |m: u32| &witnesses[m as usize];
    let res = (0..ctx.n).map(|m| induced_hom(&b.res(m).matrix, w(m + 1), w(m))).collect::<Result<Vec<GroupHom>>>()?;
    let tr = (0..ctx.n).map(|m| induced_hom(&b.tr(m).matrix, w(m), w(m + 1))).collect::<Result<Vec<GroupHom>>>()?;
    let weyl = ctx.levels().map(|m| induced_hom(&b.weyl(m).matrix, w(m), w(m))).collect::<Result<Vec<GroupHom>>>()?;
    let levels = witnesses.iter().map(|s| s.group.clone()).collect();
    let functor = MackeyFunctor::from_parts(ctx, levels, res, tr, weyl)?;
    Ok(MackeySubquotient { functor, witnesses })
}

pub fn mackey_kernel(f: &MackeyMorphism) -> Result<MackeySubquotient> {
    let zero = MackeyFunctor::zero(f.source.ctx());
    mackey_homology(&MackeyMorphism::zero(&zero, &f.source), f)
}

pub fn mackey_cokernel(f: &MackeyMorphism) -> Result<MackeySubquotient> {
    let zero = MackeyFunctor::zero(f.target.ctx());
    mackey_homology(f, &MackeyMorphism::zero(&f.target, &zero))
}

impl MackeySubquotient {
    /// Inclusion into the ambient functor (kernels only).
    pub fn inclusion(&self, ambient: &MackeyFunctor) -> Result<MackeyMorphism> {
        let maps = self.witnesses.iter().map(Subquotient::inclusion_hom).collect::<Result<Vec<_>>>()?;
        MackeyMorphism::new(self.functor.clone(), ambient.clone(), maps)
    }

    /// Projection from the ambient functor (cokernels only).
    pub fn projection(&self, ambient: &MackeyFunctor) -> Result<MackeyMorphism> {
        let maps = self.witnesses.iter().map(Subquotient::projection_hom).collect::<Result<Vec<_>>>()?;
        MackeyMorphism::new(ambient.clone(), self.functor.clone(), maps)
    }
}

/// The map induced on subquotients by a chain-level morphism of the ambient functors.
pub fn induced_morphism(f: &MackeyMorphism, source: &MackeySubquotient, target: &MackeySubquotient) -> Result<MackeyMorphism> {
    let maps = source
        .witnesses
        .iter()
        .zip(&target.witnesses)
        .enumerate()
        .map(|(m, (s, t))| induced_hom(&f.maps[m].matrix, s, t))
        .collect::<Result<Vec<_>>>()?;
    MackeyMorphism::new(source.functor.clone(), target.functor.clone(), maps)
}

/// Checks `0 -> Z -> Z[G/C_{p^k}] -> Z[G/C_{p^k}] -> Z(n,k) -> 0` for every `k`, and
/// `0 -> B_{min(l,k)} -> Ind_l Res_l B_k -> Ind_l Res_l B_k -> B^{l-k}_{k,0} -> 0` for every
/// `1 <= k <= n` and `0 <= l <= n`, identifying kernels and cokernels up to isomorphism.
/// Returns one line per failure.
pub fn exactness_failures(ctx: GroupContext) -> Vec<String> {
    let mut failures = Vec::new();
    let mut expect = |what: String, got: Result<MackeySubquotient>, want: Result<MackeyFunctor>| match (got, want) {
        (Ok(g), Ok(w)) if mackey_iso(&g.functor, &w).is_iso() => {}
        (Ok(_), Ok(_)) => failures.push(format!("{what}: not isomorphic")),
        (Err(e), _) | (_, Err(e)) => failures.push(format!("{what}: {e}")),
    };
    let z = make_constant_z(ctx);
    for k in 0..=ctx.n {
        let d = one_minus_gamma(k, &z);
        expect(format!("ker(1-γ) on Z[G/C_{{p^{k}}}]"), mackey_kernel(&d), Ok(z.clone()));
        expect(format!("coker(1-γ) on Z[G/C_{{p^{k}}}]"), mackey_cokernel(&d), make_z(ctx.n, k, ctx));
    }
    for k in 1..=ctx.n {
        let b = make_b(k, 0, ctx);
        for l in 0..=ctx.n {
            let d = one_minus_gamma(l, &b);
            expect(format!("ker(1-γ) on Ind_{l} Res_{l} B_{k}"), mackey_kernel(&d), Ok(make_b(k.min(l), 0, ctx)));
            expect(format!("coker(1-γ) on Ind_{l} Res_{l} B_{k}"), mackey_cokernel(&d), make_b_ell(k, 0, l as i64 - k as i64, ctx));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{make_b, make_b_ell, make_constant_z, make_z, mackey_iso, one_minus_gamma, GroupContext};

    #[test]
    fn exactness_suite_is_clean() {
        assert!(exactness_failures(GroupContext::new(3, 2).unwrap()).is_empty());
    }

    #[test]
    fn permutation_resolution_of_z() {
        for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 2)] {
            let c = GroupContext::new(p, n).unwrap();
            let z = make_constant_z(c);
            for k in 0..=n {
                let d = one_minus_gamma(k, &z);
                let ker = mackey_kernel(&d).unwrap();
                let coker = mackey_cokernel(&d).unwrap();
                assert!(mackey_iso(&ker.functor, &z).is_iso(), "kernel, k={k}, ({p},{n})");
                assert!(mackey_iso(&coker.functor, &make_z(n, k, c).unwrap()).is_iso(), "cokernel, k={k}, ({p},{n})");
            }
        }
    }

    #[test]
    fn induced_b_sequence() {
        for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 2)] {
            let c = GroupContext::new(p, n).unwrap();
            for k in 0..=n {
                let b = make_b(k, 0, c);
                for l in 0..=n {
                    let d = one_minus_gamma(l, &b);
                    let ker = mackey_kernel(&d).unwrap().functor;
                    let coker = mackey_cokernel(&d).unwrap().functor;
                    assert!(mackey_iso(&ker, &make_b(k.min(l), 0, c)).is_iso(), "ker k={k} l={l} ({p},{n})");
                    let expect = make_b_ell(k, 0, l as i64 - k as i64, c).unwrap();
                    assert!(mackey_iso(&coker, &expect).is_iso(), "coker k={k} l={l} ({p},{n})");
                }
            }
        }
    }
}
