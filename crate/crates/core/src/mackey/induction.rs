//! Restriction, induction and inflation, plus the natural maps between `Ind_h Res_h M` for
//! varying `h` that appear as cellular differentials.
//!
//! Level `m` of `Ind_h N` is a sum of `p^{n-max(h,m)}` blocks, each a copy of `N(min(h,m))`.

use super::context::GroupContext;
use super::functor::{MackeyFunctor, MackeyMorphism};
use crate::linalg::{GroupHom, IntMatrix, PresentedGroup};

/// Assembles a block matrix from `(target block, source block, matrix)` entries; repeats add up.
fn assemble(tsize: &[usize], ssize: &[usize], entries: &[(usize, usize, IntMatrix)]) -> IntMatrix {
    let toff: Vec<usize> = offsets(tsize);
    let soff: Vec<usize> = offsets(ssize);
    let mut out = IntMatrix::zeros(toff[tsize.len()], soff[ssize.len()]);
    for (t, s, m) in entries {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = out.get(toff[*t] + i, soff[*s] + j) + m.get(i, j);
                out.set(toff[*t] + i, soff[*s] + j, v);
            }
        }
    }
    out
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut off = vec![0];
    for s in sizes {
        off.push(off.last().unwrap() + s);
    }
    off
}

fn repeated(g: &PresentedGroup, count: usize) -> PresentedGroup {
    if count == 1 {
        g.clone()
    } else {
        PresentedGroup::direct_sum(&vec![g.clone(); count])
    }
}

/// Restriction to `C_{p^h}`: levels `0..=h`, Weyl generator `γ^{p^{n-h}}`.
pub fn restrict(h: u32, m: &MackeyFunctor) -> MackeyFunctor {
    let ctx = m.ctx();
    assert!(h <= ctx.n, "restriction level above n");
    let sub = ctx.subgroup(h);
    let step = ctx.pow(ctx.n - h);
    MackeyFunctor::from_parts_unchecked(
        sub,
        m.levels()[..=h as usize].to_vec(),
        m.res_maps()[..h as usize].to_vec(),
        m.tr_maps()[..h as usize].to_vec(),
        (0..=h).map(|l| m.weyl(l).pow(step)).collect(),
    )
}

fn block_count(ctx: GroupContext, h: u32, m: u32) -> usize {
    ctx.pow(ctx.n - h.max(m)) as usize
}

/// Induction from `C_{p^h}` to `C_{p^n}` (the context `ctx`).
pub fn induce(h: u32, nf: &MackeyFunctor, ctx: GroupContext) -> MackeyFunctor {
    assert_eq!(nf.ctx().n, h, "induced functor must live on C_(p^h)");
    assert_eq!(nf.ctx().p, ctx.p);
    let n = ctx.n;
    let blocks: Vec<usize> = ctx.levels().map(|m| block_count(ctx, h, m)).collect();
    let base = |m: u32| nf.level(h.min(m));
    let sizes = |m: u32| vec![base(m).generators(); blocks[m as usize]];
    let levels: Vec<PresentedGroup> = ctx.levels().map(|m| repeated(base(m), blocks[m as usize])).collect();

    let mut weyl = Vec::new();
    for m in ctx.levels() {
        let nb = blocks[m as usize];
        let entries: Vec<_> = (0..nb)
            .map(|y| {
                let map = if y + 1 == nb && m < h {
                    nf.weyl(m).matrix.clone()
                } else {
                    IntMatrix::identity(base(m).generators())
                };
                ((y + 1) % nb, y, map)
            })
            .collect();
        let a = assemble(&sizes(m), &sizes(m), &entries);
        weyl.push(GroupHom::new_unchecked(levels[m as usize].clone(), levels[m as usize].clone(), a));
    }

    let mut res = Vec::new();
    let mut tr = Vec::new();
    for m in 0..n {
        let (lo, hi) = (blocks[m as usize], blocks[m as usize + 1]);
        let (r, t) = if h > m {
            (nf.res(m).matrix.clone(), nf.tr(m).matrix.clone())
        } else {
            let id = IntMatrix::identity(base(m).generators());
            (id.clone(), id)
        };
        let re: Vec<_> = (0..lo).map(|y| (y, y % hi, r.clone())).collect();
        let te: Vec<_> = (0..lo).map(|y| (y % hi, y, t.clone())).collect();
        let (sl, sh) = (sizes(m), sizes(m + 1));
        res.push(GroupHom::new_unchecked(levels[m as usize + 1].clone(), levels[m as usize].clone(), assemble(&sl, &sh, &re)));
        tr.push(GroupHom::new_unchecked(levels[m as usize].clone(), levels[m as usize + 1].clone(), assemble(&sh, &sl, &te)));
    }
    MackeyFunctor::from_parts_unchecked(ctx, levels, res, tr, weyl)
}

/// `Ind_h Res_h M`.
pub fn ind_res(h: u32, m: &MackeyFunctor) -> MackeyFunctor {
    induce(h, &restrict(h, m), m.ctx())
}

/// Pullback along `G -> G/C_{p^j}`: zeros at levels below `j`, then `M` shifted up by `j`.
pub fn inflate(j: u32, m: &MackeyFunctor, ctx: GroupContext) -> MackeyFunctor {
    assert_eq!(m.ctx(), ctx.quotient(j), "inflation expects a functor on the quotient");
    let zero = PresentedGroup::zero();
    let level = |l: u32| if l < j { zero.clone() } else { m.level(l - j).clone() };
    let levels: Vec<PresentedGroup> = ctx.levels().map(level).collect();
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for l in 0..ctx.n {
        if l < j {
            res.push(GroupHom::zero(&levels[l as usize + 1], &levels[l as usize]));
            tr.push(GroupHom::zero(&levels[l as usize], &levels[l as usize + 1]));
        } else {
            res.push(m.res(l - j).clone());
            tr.push(m.tr(l - j).clone());
        }
    }
    let weyl = ctx
        .levels()
        .map(|l| if l < j { GroupHom::identity(&zero) } else { m.weyl(l - j).clone() })
        .collect();
    MackeyFunctor::from_parts_unchecked(ctx, levels, res, tr, weyl)
}

/// The automorphism of `Ind_h Res_h M` induced by translating the orbit `G/C_{p^h}` by `γ`.
pub fn cell_automorphism(h: u32, m: &MackeyFunctor) -> MackeyMorphism {
    let ctx = m.ctx();
    let ir = ind_res(h, m);
    let mut maps = Vec::new();
    for l in ctx.levels() {
        let nb = block_count(ctx, h, l);
        let lm = h.min(l);
        let size = vec![m.level(lm).generators(); nb];
        let entries: Vec<_> = (0..nb)
            .map(|y| {
                let e = if y == 0 && h > l { 1 - ctx.pow(ctx.n - h) as i64 } else { 1 };
                ((y + nb - 1) % nb, y, m.weyl_pow(lm, e).matrix)
            })
            .collect();
        let g = ir.level(l);
        maps.push(GroupHom::new_unchecked(g.clone(), g.clone(), assemble(&size, &size, &entries)));
    }
    MackeyMorphism::new_unchecked(ir.clone(), ir, maps)
}

/// `1 - A` for the cell automorphism `A` at stabilizer level `h`.
pub fn one_minus_gamma(h: u32, m: &MackeyFunctor) -> MackeyMorphism {
    MackeyMorphism::identity(&ind_res(h, m)).sub(&cell_automorphism(h, m))
}

/// Shift and level data for the projection `G/C_{p^hs} -> G/C_{p^hb}` at level `l`.
fn fold(ctx: GroupContext, hs: u32, hb: u32, l: u32) -> Vec<(usize, usize, i64)> {
    let nbs = block_count(ctx, hs, l);
    let nbb = block_count(ctx, hb, l);
    (0..nbs)
        .map(|ys| {
            let yb = ys % nbb;
            let shift = if hb > l { (ys - yb) as i64 } else { 0 };
            (ys, yb, shift)
        })
        .collect()
}

/// The covariant map `Ind_hs Res_hs M -> Ind_hb Res_hb M` induced by `G/C_{p^hs} -> G/C_{p^hb}`.
pub fn push(hs: u32, hb: u32, m: &MackeyFunctor) -> MackeyMorphism {
    assert!(hs <= hb);
    let ctx = m.ctx();
    let (src, tgt) = (ind_res(hs, m), ind_res(hb, m));
    let mut maps = Vec::new();
    for l in ctx.levels() {
        let (ms, mb) = (hs.min(l), hb.min(l));
        let tr = m.tr_between(ms, mb);
        let entries: Vec<_> = fold(ctx, hs, hb, l)
            .into_iter()
            .map(|(ys, yb, shift)| (yb, ys, m.weyl_pow(mb, shift).compose(&tr).matrix))
            .collect();
        let ssize = vec![m.level(ms).generators(); block_count(ctx, hs, l)];
        let tsize = vec![m.level(mb).generators(); block_count(ctx, hb, l)];
        maps.push(GroupHom::new_unchecked(src.level(l).clone(), tgt.level(l).clone(), assemble(&tsize, &ssize, &entries)));
    }
    MackeyMorphism::new_unchecked(src, tgt, maps)
}

/// The contravariant map `Ind_hb Res_hb M -> Ind_hs Res_hs M` induced by `G/C_{p^hs} -> G/C_{p^hb}`.
pub fn pull(hb: u32, hs: u32, m: &MackeyFunctor) -> MackeyMorphism {
    assert!(hs <= hb);
    let ctx = m.ctx();
    let (src, tgt) = (ind_res(hb, m), ind_res(hs, m));
    let mut maps = Vec::new();
    for l in ctx.levels() {
        let (ms, mb) = (hs.min(l), hb.min(l));
        let res = m.res_between(mb, ms);
        let entries: Vec<_> = fold(ctx, hs, hb, l)
            .into_iter()
            .map(|(ys, yb, shift)| (ys, yb, res.compose(&m.weyl_pow(mb, -shift)).matrix))
            .collect();
        let ssize = vec![m.level(mb).generators(); block_count(ctx, hb, l)];
        let tsize = vec![m.level(ms).generators(); block_count(ctx, hs, l)];
        maps.push(GroupHom::new_unchecked(src.level(l).clone(), tgt.level(l).clone(), assemble(&tsize, &ssize, &entries)));
    }
    MackeyMorphism::new_unchecked(src, tgt, maps)
}

/// `M -> Ind_h Res_h M`, restriction followed by the diagonal.
pub fn unit(h: u32, m: &MackeyFunctor) -> MackeyMorphism {
    pull(m.ctx().n, h, m)
}

/// `Ind_h Res_h M -> M`, the fold map.
pub fn counit(h: u32, m: &MackeyFunctor) -> MackeyMorphism {
    push(h, m.ctx().n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::families::{make_b, make_constant_z, make_z};

    fn ctx(p: u64, n: u32) -> GroupContext {
        GroupContext::new(p, n).unwrap()
    }

    #[test]
    fn induced_functors_satisfy_axioms() {
        for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 2)] {
            let c = ctx(p, n);
            for base in [make_constant_z(c), make_b(1, 0, c), make_b(2, 1, c), make_z(n, 0, c).unwrap()] {
                for h in 0..=n {
                    let ir = ind_res(h, &base);
                    assert!(ir.check_axioms().is_empty(), "IndRes_{h} fails for ({p},{n})");
                    assert!(restrict(h, &base).check_axioms().is_empty());
                    cell_automorphism(h, &base).check().unwrap();
                    for hs in 0..=h {
                        push(hs, h, &base).check().unwrap();
                        pull(h, hs, &base).check().unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn top_induction_is_identity() {
        let c = ctx(3, 2);
        let b = make_b(2, 0, c);
        let ir = ind_res(2, &b);
        for l in c.levels() {
            assert_eq!(ir.level(l).invariants(), b.level(l).invariants());
        }
        assert!(one_minus_gamma(2, &b).is_zero());
    }

    #[test]
    fn inflation_inserts_zeros() {
        let c = ctx(3, 3);
        let b = make_b(1, 0, c.quotient(2));
        let inf = inflate(2, &b, c);
        assert!(inf.check_axioms().is_empty());
        assert!(inf.level(1).is_zero() && inf.level(2).is_zero());
        assert_eq!(inf.level(3).to_string(), "Z/3");
    }
}
