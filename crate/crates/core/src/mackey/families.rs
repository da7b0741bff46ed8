//! The named families: forms of `Z`, forms of `B`, and permutation functors.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::context::GroupContext;
use super::functor::MackeyFunctor;
use super::induction::{induce, restrict};
use crate::error::{Error, Result};

/// `Z(k, j)`: constant value `Z`, `res = p` exactly on the steps `j ≤ s < k`.
pub fn make_z(k: u32, j: u32, ctx: GroupContext) -> Result<MackeyFunctor> {
    if j > k || k > ctx.n {
        return Err(Error::Index(format!("Z({k},{j}) needs 0 <= j <= k <= {}", ctx.n)));
    }
    let p = BigInt::from(ctx.p);
    let n = ctx.n as usize;
    let orders = vec![BigInt::zero(); n + 1];
    let res: Vec<BigInt> =
        (0..ctx.n).map(|s| if j <= s && s < k { p.clone() } else { BigInt::one() }).collect();
    let tr: Vec<BigInt> = res.iter().map(|r| if r.is_one() { p.clone() } else { BigInt::one() }).collect();
    MackeyFunctor::cyclic(ctx, &orders, &res, &tr)
}

/// The constant functor `Z`.
pub fn make_constant_z(ctx: GroupContext) -> MackeyFunctor {
    make_z(0, 0, ctx).expect("Z(0,0) always exists")
}

/// `Z* = Z(n, 0)`.
pub fn make_dual_z(ctx: GroupContext) -> MackeyFunctor {
    make_z(ctx.n, 0, ctx).expect("Z(n,0) always exists")
}

/// Exponent of the order of `B^ℓ_{k,j}` at level `m`.
fn b_exponent(k: u32, j: u32, m: u32) -> u32 {
    k.min(m.saturating_sub(j))
}

/// Generic form of `B`: level `m` is `Z/p^{min(k, max(0, m-j))}`; steps `s -> s+1` with
/// `s + 1 <= switch` have `res` the quotient and `tr = p`, steps above have `res = p`, `tr = 1`.
fn b_shape(k: u32, j: u32, switch: u32, ctx: GroupContext) -> MackeyFunctor {
    let p = BigInt::from(ctx.p);
    let orders: Vec<BigInt> = ctx.levels().map(|m| ctx.big_pow(b_exponent(k, j, m))).collect();
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for s in 0..ctx.n {
        if s + 1 <= switch {
            res.push(BigInt::one());
            tr.push(p.clone());
        } else {
            res.push(p.clone());
            tr.push(BigInt::one());
        }
    }
    MackeyFunctor::cyclic(ctx, &orders, &res, &tr).expect("forms of B are well defined")
}

fn clamp(x: u32, ctx: GroupContext) -> u32 {
    x.min(ctx.n)
}

/// `B_{k,j}`; indices above `n` are clamped to `n`.
pub fn make_b(k: u32, j: u32, ctx: GroupContext) -> MackeyFunctor {
    let (k, j) = (clamp(k, ctx), clamp(j, ctx));
    b_shape(k, j, ctx.n, ctx)
}

/// `B*_{k,j}`; indices above `n` are clamped to `n`.
pub fn make_b_star(k: u32, j: u32, ctx: GroupContext) -> MackeyFunctor {
    let (k, j) = (clamp(k, ctx), clamp(j, ctx));
    b_shape(k, j, k + j, ctx)
}

/// `B^ℓ_{k,j}`: agrees with `B_{k,j}` up to level `ℓ+k+j` and with `B*_{k,j}` above it.
/// For `-k <= ℓ < 0` it is `B*_{k+ℓ,j}`, which makes `ℓ = 0` continuous and matches the
/// cokernels of `γ - 1` on `Ind_ℓ Res_ℓ B_k` for `ℓ < k`.
pub fn make_b_ell(k: u32, j: u32, ell: i64, ctx: GroupContext) -> Result<MackeyFunctor> {
    let (k, j) = (clamp(k, ctx), clamp(j, ctx));
    if ell < -(k as i64) {
        return Err(Error::Index(format!("B^{ell}_{{{k},{j}}} needs l >= -k")));
    }
    if ell < 0 {
        return Ok(make_b_star((k as i64 + ell) as u32, j, ctx));
    }
    let switch = (ell as u64 + k as u64 + j as u64).min(ctx.n as u64) as u32;
    Ok(b_shape(k, j, switch, ctx))
}

/// Fixed points of `Z[G/C_{p^k}]`: rank `p^{n-max(k,m)}` at level `m`.
pub fn make_perm(k: u32, ctx: GroupContext) -> Result<MackeyFunctor> {
    if k > ctx.n {
        return Err(Error::Index(format!("perm({k}) needs k <= {}", ctx.n)));
    }
    Ok(induce(k, &restrict(k, &make_constant_z(ctx)), ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> GroupContext {
        GroupContext::new(p, n).unwrap()
    }

    fn orders(m: &MackeyFunctor) -> Vec<String> {
        m.levels().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn z_variants_for_c_p2() {
        let c = ctx(3, 2);
        let z21 = make_z(2, 1, c).unwrap();
        assert_eq!(MackeyFunctor::scalar_of(z21.res(1)), Some(BigInt::from(3)));
        assert_eq!(MackeyFunctor::scalar_of(z21.res(0)), Some(BigInt::from(1)));
        assert_eq!(MackeyFunctor::scalar_of(z21.tr(1)), Some(BigInt::from(1)));
        assert_eq!(MackeyFunctor::scalar_of(z21.tr(0)), Some(BigInt::from(3)));
        assert!(make_z(1, 2, c).is_err());
        for k in 0..=2 {
            for j in 0..=k {
                assert!(make_z(k, j, c).unwrap().check_axioms().is_empty());
            }
        }
    }

    #[test]
    fn b_levels_match_value_formula() {
        let c = ctx(3, 3);
        assert_eq!(orders(&make_b(1, 1, c)), ["0", "0", "Z/3", "Z/3"]);
        assert_eq!(orders(&make_b(2, 0, c)), ["0", "Z/3", "Z/9", "Z/9"]);
        assert!(make_b(0, 2, c).is_zero());
        assert_eq!(orders(&make_b(7, 0, c)), orders(&make_b(3, 0, c)));
    }

    #[test]
    fn perm_ranks() {
        let c = ctx(3, 2);
        let p0 = make_perm(0, c).unwrap();
        let ranks: Vec<usize> = p0.levels().iter().map(|g| g.invariants().free).collect();
        assert_eq!(ranks, [9, 3, 1]);
        assert!(p0.check_axioms().is_empty());
    }
}
