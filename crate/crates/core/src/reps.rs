//! Real representations of `C_{p^n}` up to JO-equivalence.
//!
//! A representation is `triv` trivial dimensions plus `mult[k]` copies of `λ_k = λ(p^k)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mackey::GroupContext;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRep {
    pub ctx: GroupContext,
    pub triv: u64,
    pub mult: Vec<u64>,
}

impl RealRep {
    pub fn zero(ctx: GroupContext) -> Self {
        RealRep { ctx, triv: 0, mult: vec![0; ctx.n as usize] }
    }

    pub fn trivial(ctx: GroupContext, dim: u64) -> Self {
        RealRep { triv: dim, ..Self::zero(ctx) }
    }

    /// `λ_k`; `k >= n` gives the trivial representation of dimension 2.
    pub fn lambda(ctx: GroupContext, k: u32) -> Self {
        let mut r = Self::zero(ctx);
        if k < ctx.n {
            r.mult[k as usize] = 1;
        } else {
            r.triv = 2;
        }
        r
    }

    pub fn from_parts(ctx: GroupContext, triv: u64, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != ctx.n as usize {
            return Err(Error::Index(format!("expected {} multiplicities, got {}", ctx.n, mult.len())));
        }
        Ok(RealRep { ctx, triv, mult })
    }

    pub fn dim(&self) -> u64 {
        self.triv + 2 * self.mult.iter().sum::<u64>()
    }

    /// Dimension of the `C_{p^m}`-fixed points.
    pub fn fixed_dim(&self, m: u32) -> u64 {
        self.triv + 2 * self.mult[m as usize..].iter().sum::<u64>()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn lambda_count(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn add(&self, other: &RealRep) -> RealRep {
        debug_assert_eq!(self.ctx, other.ctx);
        RealRep {
            ctx: self.ctx,
            triv: self.triv + other.triv,
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self - other` when `other` is contained in `self` summand by summand.
    pub fn sub(&self, other: &RealRep) -> Option<RealRep> {
        let mut mult = Vec::with_capacity(self.mult.len());
        for (a, b) in self.mult.iter().zip(&other.mult) {
            mult.push(a.checked_sub(*b)?);
        }
        Some(RealRep { ctx: self.ctx, triv: self.triv.checked_sub(other.triv)?, mult })
    }

    pub fn scale(&self, k: u64) -> RealRep {
        RealRep { ctx: self.ctx, triv: self.triv * k, mult: self.mult.iter().map(|a| a * k).collect() }
    }

    /// Restriction to `C_{p^m}`: `λ_k` stays `λ_k` for `k < m` and becomes trivial otherwise.
    pub fn restrict(&self, m: u32) -> RealRep {
        let sub = self.ctx.subgroup(m);
        let extra: u64 = self.mult[m as usize..].iter().sum();
        RealRep { ctx: sub, triv: self.triv + 2 * extra, mult: self.mult[..m as usize].to_vec() }
    }

    /// Largest `k` with `λ_k` a summand.
    pub fn max_lambda(&self) -> Option<u32> {
        (0..self.ctx.n).rev().find(|&k| self.mult[k as usize] > 0)
    }

    /// Parses `2t+3l0+1l1`; coefficients default to 1 and `0` is the zero representation.
    pub fn parse(text: &str, ctx: GroupContext) -> Result<RealRep> {
        let mut r = RealRep::zero(ctx);
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty representation".into() });
        }
        if trimmed == "0" {
            return Ok(r);
        }
        let mut pos = 0;
        for term in text.split('+') {
            let lead = term.len() - term.trim_start().len();
            let t = term.trim();
            let at = pos + lead;
            pos += term.len() + 1;
            let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
            let coeff: u64 = if digits == 0 {
                1
            } else {
                t[..digits].parse().map_err(|_| Error::Parse { pos: at, msg: "coefficient too large".into() })?
            };
            let rest = &t[digits..];
            if rest == "t" {
                r.triv += coeff;
            } else if let Some(k) = rest.strip_prefix('l') {
                let k: u32 = k.parse().map_err(|_| Error::Parse { pos: at + digits + 1, msg: format!("expected a level after `l`, found `{k}`") })?;
                if k >= ctx.n {
                    return Err(Error::Parse { pos: at + digits + 1, msg: format!("l{k} needs k < n = {}", ctx.n) });
                }
                r.mult[k as usize] += coeff;
            } else {
                return Err(Error::Parse { pos: at + digits, msg: format!("expected `t` or `l<k>`, found `{rest}`") });
            }
        }
        Ok(r)
    }

    /// Notation in the style `9λ + 3λ_1 + λ_2 + 2`.
    pub fn pretty(&self) -> String {
        let mut parts = Vec::new();
        for (k, &c) in self.mult.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sym = if k == 0 { "λ".to_string() } else { format!("λ_{k}") };
            parts.push(if c == 1 { sym } else { format!("{c}{sym}") });
        }
        if self.triv > 0 {
            parts.push(self.triv.to_string());
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> RepJson {
        RepJson { p: self.ctx.p, n: self.ctx.n, triv: self.triv, mult: self.mult.clone() }
    }
}

impl fmt::Display for RealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.triv > 0 {
            parts.push(format!("{}t", self.triv));
        }
        for (k, &c) in self.mult.iter().enumerate() {
            if c > 0 {
                parts.push(format!("{c}l{k}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub p: u64,
    pub n: u32,
    pub triv: u64,
    pub mult: Vec<u64>,
}

/// JO-class of `λ(r)`: `λ_{v_p(r)}`, or trivial of dimension 2 when `p^n | r`.
pub fn jo_reduce(r: i64, ctx: GroupContext) -> RealRep {
    if r == 0 {
        return RealRep::trivial(ctx, 2);
    }
    RealRep::lambda(ctx, ctx.valuation(r.unsigned_abs()))
}

/// `c_ℓ = (p^ℓ - 1)/2`
pub fn c(ctx: GroupContext, l: u32) -> u64 {
    (ctx.pow(l) - 1) / 2
}

/// The regular representation `ρ = 1 + Σ_{j=1}^{(p^n-1)/2} λ(j)`.
pub fn rho(ctx: GroupContext) -> RealRep {
    let mut r = RealRep::trivial(ctx, 1);
    for j in 1..=c(ctx, ctx.n) {
        r = r.add(&jo_reduce(j as i64, ctx));
    }
    r
}

/// The reduced regular representation `ρ - 1`.
pub fn rho_bar(ctx: GroupContext) -> RealRep {
    rho(ctx).sub(&RealRep::trivial(ctx, 1)).expect("ρ contains a trivial summand")
}

/// `V_j = V_{j-1} + λ(2j-1)`, `V_0 = 0`.
pub fn v_recursive(j: u64, ctx: GroupContext) -> RealRep {
    let mut v = RealRep::zero(ctx);
    for i in 1..=j {
        v = v.add(&jo_reduce(2 * i as i64 - 1, ctx));
    }
    v
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `V_j` by the floor-function formula.
pub fn v_floor(j: u64, ctx: GroupContext) -> RealRep {
    let p = ctx.p as i64;
    let j = j as i64;
    let c1 = c(ctx, 1) as i64;
    let mut r = RealRep::zero(ctx);
    for l in 0..ctx.n {
        let pl = ctx.pow(l) as i64;
        let cl = c(ctx, l) as i64;
        let s: i64 = (0..p).filter(|&t| t != c1).map(|t| floor_div(j + pl * p - 1 - cl - pl * t, pl * p)).sum();
        r.mult[l as usize] = s as u64;
    }
    r.triv = 2 * floor_div(j + c(ctx, ctx.n) as i64, ctx.order() as i64) as u64;
    r
}

/// Coefficients `(k_n, ..., k_0)` of `V_{(ap-1)/2}`: `k_{n-ℓ}` multiplies `λ_ℓ`, `k_0` counts
/// trivial 2-planes.
pub fn v_coeffs_special(a: u64, ctx: GroupContext) -> Result<Vec<u64>> {
    if a % 2 == 0 {
        return Err(Error::Parity(a));
    }
    let p = ctx.p as i64;
    let b = ((a - 1) / 2) as i64;
    let c1 = c(ctx, 1) as i64;
    let n = ctx.n;
    let mut out = Vec::with_capacity(n as usize + 1);
    for l in 0..=n {
        let k = if l == n {
            floor_div(b * p + c1 + c(ctx, n) as i64, ctx.order() as i64)
        } else if l == 0 {
            (p - 1) * b + c1
        } else {
            let pl = ctx.pow(l) as i64;
            let pl1 = ctx.pow(l - 1) as i64;
            let cl1 = c(ctx, l - 1) as i64;
            (0..p).filter(|&t| t != c1).map(|t| floor_div(b + pl - 1 - cl1 - pl1 * t, pl)).sum()
        };
        out.push(k as u64);
    }
    Ok(out)
}

/// The bounds `(p-1)⌊b/p^ℓ⌋ <= k_{n-ℓ} <= (p-1)⌊(b+p^ℓ)/p^ℓ⌋` for `0 < ℓ < n`.
pub fn special_bounds(a: u64, l: u32, ctx: GroupContext) -> (u64, u64) {
    let b = (a - 1) / 2;
    let pl = ctx.pow(l);
    ((ctx.p - 1) * (b / pl), (ctx.p - 1) * ((b + pl) / pl))
}

/// The special-form tag of `V_j` within the first period, if any.
pub fn special_tag(j: u64, ctx: GroupContext) -> Option<String> {
    let order = ctx.order();
    let cn = c(ctx, ctx.n);
    if j == order {
        return Some("= 2ρ".into());
    }
    if j == cn {
        return Some("= ρ − 1".into());
    }
    if j == cn + 1 {
        return Some("= ρ + 1".into());
    }
    if j == cn + 2 && j < order {
        let step = jo_reduce(2 * j as i64 - 1, ctx);
        return Some(format!("= ρ + {} + 1", step.pretty()));
    }
    if j + 2 >= order && j > cn + 2 && j < order {
        let rest = v_recursive(order - j, ctx).pretty().replace(" + ", " − ");
        return Some(format!("= 2ρ − {rest}"));
    }
    None
}

/// Checks the identities relating `V_j` to `ρ`; returns one line per failure.
pub fn rep_identities_check(ctx: GroupContext) -> Vec<String> {
    let order = ctx.order();
    let two_rho = rho(ctx).scale(2);
    let one = RealRep::trivial(ctx, 1);
    let mut failures = Vec::new();
    let vs: Vec<RealRep> = (0..=2 * order).map(|j| v_recursive(j, ctx)).collect();
    if vs[order as usize] != two_rho {
        failures.push(format!("V_{order} != 2ρ"));
    }
    let cn = c(ctx, ctx.n) as usize;
    if Some(&vs[cn]) != rho(ctx).sub(&one).as_ref() {
        failures.push(format!("V_{cn} != ρ - 1"));
    }
    if vs[cn + 1] != rho(ctx).add(&one) {
        failures.push(format!("V_{} != ρ + 1", cn + 1));
    }
    for j in 1..order as usize {
        if vs[j + order as usize] != two_rho.add(&vs[j]) {
            failures.push(format!("V_{} != 2ρ + V_{j}", j + order as usize));
        }
        if Some(&vs[order as usize - j]) != two_rho.sub(&vs[j]).as_ref() {
            failures.push(format!("V_{} != 2ρ - V_{j}", order as usize - j));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> GroupContext {
        GroupContext::new(p, n).unwrap()
    }

    #[test]
    fn jo_classes() {
        let c = ctx(3, 3);
        assert_eq!(jo_reduce(6, c), RealRep::lambda(c, 1));
        assert_eq!(jo_reduce(27, c), RealRep::trivial(c, 2));
        assert_eq!(jo_reduce(1, c), RealRep::lambda(c, 0));
        assert_eq!(jo_reduce(0, c), RealRep::trivial(c, 2));
    }

    #[test]
    fn regular_representation() {
        assert_eq!(rho(ctx(3, 1)).to_string(), "1t+1l0");
        assert_eq!(rho(ctx(3, 3)).scale(2).to_string(), "2t+18l0+6l1+2l2");
        for (p, n) in [(3, 1), (3, 2), (5, 2), (7, 1)] {
            let c = ctx(p, n);
            assert_eq!(rho(c).dim(), c.order());
            assert_eq!(rho_bar(c).dim(), c.order() - 1);
        }
    }

    #[test]
    fn sequence_examples() {
        let c = ctx(3, 3);
        assert_eq!(v_recursive(1, c).pretty(), "λ");
        assert_eq!(v_recursive(5, c).pretty(), "3λ + λ_1 + λ_2");
        assert_eq!(v_recursive(14, c).pretty(), "9λ + 3λ_1 + λ_2 + 2");
        assert_eq!(v_floor(13, c).pretty(), "9λ + 3λ_1 + λ_2");
        assert!(v_floor(0, c).is_zero());
        for j in 0..100 {
            assert_eq!(v_floor(j, c), v_recursive(j, c));
            assert_eq!(v_floor(j, c).dim(), 2 * j);
        }
    }

    #[test]
    fn special_coefficients() {
        let c = ctx(3, 3);
        assert_eq!(v_coeffs_special(1, c).unwrap(), vec![1, 0, 0, 0]);
        let v13 = v_floor(13, c);
        assert_eq!(v_coeffs_special(9, c).unwrap(), vec![v13.mult[0], v13.mult[1], v13.mult[2], v13.triv / 2]);
        assert!(matches!(v_coeffs_special(4, c), Err(Error::Parity(4))));
    }

    #[test]
    fn grammar() {
        let c = ctx(3, 2);
        let r = RealRep::parse("2t+3l0+l1", c).unwrap();
        assert_eq!(r.to_string(), "2t+3l0+1l1");
        assert_eq!(RealRep::parse(&r.to_string(), c).unwrap(), r);
        assert!(RealRep::parse("0", c).unwrap().is_zero());
        match RealRep::parse("1t+2x", c) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(RealRep::parse("l2", c).is_err());
    }

    #[test]
    fn tags_for_c27() {
        let c = ctx(3, 3);
        let tags: Vec<(u64, String)> = (1..=27).filter_map(|j| special_tag(j, c).map(|t| (j, t))).collect();
        let expect = [
            (13, "= ρ − 1"),
            (14, "= ρ + 1"),
            (15, "= ρ + λ + 1"),
            (25, "= 2ρ − λ − λ_1"),
            (26, "= 2ρ − λ"),
            (27, "= 2ρ"),
        ];
        assert_eq!(tags.len(), expect.len());
        for ((j, t), (ej, et)) in tags.iter().zip(expect) {
            assert_eq!((*j, t.as_str()), (ej, et));
        }
    }
}
