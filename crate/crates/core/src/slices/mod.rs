//! Slices of `S^{∞λ} ∧ HZ` and `S^{mλ} ∧ HZ`, their `E_2` pages, and chart rendering.

mod chart;
mod render;

pub use chart::{e2_page, legend, Annotation, Cell, Chart, ChartJson, CellJson, Glyph, Target};
pub use render::{render, Format};

use crate::mackey::{GroupContext, NamedFunctor};
use crate::reps::{v_recursive, RealRep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceDescription {
    Contractible { dim: i64 },
    /// `Σ^{rep} H(coefficient)`, with `dim rep` equal to the slice dimension.
    Nontrivial { dim: i64, rep: RealRep, coefficient: NamedFunctor },
}

impl SliceDescription {
    pub fn dim(&self) -> i64 {
        match self {
            SliceDescription::Contractible { dim } | SliceDescription::Nontrivial { dim, .. } => *dim,
        }
    }

    pub fn is_contractible(&self) -> bool {
        matches!(self, SliceDescription::Contractible { .. })
    }
}

/// The `d`-slice of `S^{∞λ} ∧ HZ`: nontrivial only for even `d` with `p | d + 1`, where it is
/// `Σ^{V_{d/2}} H B_{v_p(d+1)}`.
pub fn slice_of_l(d: i64, ctx: GroupContext) -> SliceDescription {
    if d < 0 || d % 2 != 0 || (d + 1) % ctx.p as i64 != 0 {
        return SliceDescription::Contractible { dim: d };
    }
    let j = (d / 2) as u64;
    let k = ctx.valuation(d as u64 + 1).min(ctx.n);
    SliceDescription::Nontrivial { dim: d, rep: v_recursive(j, ctx), coefficient: NamedFunctor::B(k, 0) }
}

/// The `d`-slice of `S^{mλ} ∧ HZ`: that of `S^{∞λ} ∧ HZ` below `2m`, `Σ^{V_m} HZ` at `2m`, and
/// contractible above.
pub fn slice_tower_finite(m: u64, d: i64, ctx: GroupContext) -> SliceDescription {
    let top = 2 * m as i64;
    if d < top {
        slice_of_l(d, ctx)
    } else if d == top {
        SliceDescription::Nontrivial { dim: d, rep: v_recursive(m, ctx), coefficient: NamedFunctor::Z }
    } else {
        SliceDescription::Contractible { dim: d }
    }
}

/// An exact rational, always in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Self {
        let g = num_integer::gcd(num, den).max(1) * den.signum();
        Ratio { num: num / g, den: den / g }
    }
}

/// Chart coordinates `(x, y) = (t - s, s - (p-1)(t+1)/p)`.
pub fn regrade(s: i64, t: i64, ctx: GroupContext) -> (i64, Ratio) {
    let p = ctx.p as i64;
    (t - s, Ratio::new(p * s - (p - 1) * (t + 1), p))
}

/// `d_{1+2pr}` becomes `d_{1+2r}` after regrading.
pub fn regraded_differential_index(r: u64) -> u64 {
    1 + 2 * r
}
