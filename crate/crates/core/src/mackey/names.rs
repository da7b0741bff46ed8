//! Names for the standard functors, the coefficient grammar, and identification by isomorphism.

use std::fmt;

use super::context::GroupContext;
use super::families::{make_b, make_b_ell, make_b_star, make_constant_z, make_dual_z, make_perm, make_z};
use super::functor::MackeyFunctor;
use super::iso::mackey_iso;
use crate::error::{Error, Result};
use crate::linalg::Invariants;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NamedFunctor {
    Zero,
    /// The constant functor.
    Z,
    /// The dual `Z* = Z(n,0)`, kept as its own spelling on input.
    ZDual,
    ZForm(u32, u32),
    B(u32, u32),
    BStar(u32, u32),
    BEll(u32, u32, i64),
    Perm(u32),
}

impl NamedFunctor {
    pub fn build(&self, ctx: GroupContext) -> Result<MackeyFunctor> {
        match *self {
            NamedFunctor::Zero => Ok(MackeyFunctor::zero(ctx)),
            NamedFunctor::Z => Ok(make_constant_z(ctx)),
            NamedFunctor::ZDual => Ok(make_dual_z(ctx)),
            NamedFunctor::ZForm(k, j) => make_z(k, j, ctx),
            NamedFunctor::B(k, j) => Ok(make_b(k, j, ctx)),
            NamedFunctor::BStar(k, j) => Ok(make_b_star(k, j, ctx)),
            NamedFunctor::BEll(k, j, l) => make_b_ell(k, j, l, ctx),
            NamedFunctor::Perm(k) => make_perm(k, ctx),
        }
    }

    /// Parses the coefficient grammar: `0`, `Z`, `Z*`, `Z(k,j)`, `B(k,j)`, `B*(k,j)`, `Bl(k,j,l)`,
    /// `perm(k)`. `B` indices above `n` are clamped; each clamp produces a warning line.
    pub fn parse(text: &str, ctx: GroupContext) -> Result<(NamedFunctor, Vec<String>)> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, args) = match t.find('(') {
            Some(i) => {
                if !t.ends_with(')') {
                    return Err(Error::Parse { pos: t.len(), msg: "expected `)`".into() });
                }
                (&t[..i], parse_args(&t[i + 1..t.len() - 1], i + 1)?)
            }
            None => (t.as_str(), Vec::new()),
        };
        let mut warnings = Vec::new();
        let mut idx = |v: i64, what: &str| -> Result<u32> {
            if v < 0 {
                return Err(Error::Index(format!("{what} = {v} must be nonnegative")));
            }
            if v > ctx.n as i64 {
                warnings.push(format!("warning: {what} = {v} clamped to n = {}", ctx.n));
                return Ok(ctx.n);
            }
            Ok(v as u32)
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() != k {
                return Err(Error::Parse { pos: head.len(), msg: format!("`{head}` takes {k} arguments") });
            }
            Ok(())
        };
        let named = match head {
            "0" => {
                arity(0)?;
                NamedFunctor::Zero
            }
            "Z" if args.is_empty() => NamedFunctor::Z,
            "Z*" => {
                arity(0)?;
                NamedFunctor::ZDual
            }
            "Z" => {
                arity(2)?;
                let (k, j) = (args[0], args[1]);
                if k < 0 || j < 0 || j > k || k > ctx.n as i64 {
                    return Err(Error::Index(format!("Z({k},{j}) needs 0 <= j <= k <= {}", ctx.n)));
                }
                NamedFunctor::ZForm(k as u32, j as u32)
            }
            "B" => {
                arity(2)?;
                NamedFunctor::B(idx(args[0], "k")?, idx(args[1], "j")?)
            }
            "B*" => {
                arity(2)?;
                NamedFunctor::BStar(idx(args[0], "k")?, idx(args[1], "j")?)
            }
            "Bl" => {
                arity(3)?;
                let k = idx(args[0], "k")?;
                let j = idx(args[1], "j")?;
                if args[2] < -(k as i64) {
                    return Err(Error::Index(format!("l = {} must be at least -k", args[2])));
                }
                NamedFunctor::BEll(k, j, args[2])
            }
            "perm" => {
                arity(1)?;
                if args[0] < 0 || args[0] > ctx.n as i64 {
                    return Err(Error::Index(format!("perm({}) needs 0 <= k <= {}", args[0], ctx.n)));
                }
                NamedFunctor::Perm(args[0] as u32)
            }
            _ => return Err(Error::UnknownCoefficient(text.to_string())),
        };
        Ok((named, warnings))
    }
}

fn parse_args(s: &str, offset: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for part in s.split(',') {
        let v = part.parse::<i64>().map_err(|_| Error::Parse { pos, msg: format!("expected an integer, found `{part}`") })?;
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}

impl fmt::Display for NamedFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFunctor::Zero => write!(f, "0"),
            NamedFunctor::Z => write!(f, "Z"),
            NamedFunctor::ZDual => write!(f, "Z*"),
            NamedFunctor::ZForm(k, j) => write!(f, "Z({k},{j})"),
            NamedFunctor::B(k, j) => write!(f, "B({k},{j})"),
            NamedFunctor::BStar(k, j) => write!(f, "B*({k},{j})"),
            NamedFunctor::BEll(k, j, l) => write!(f, "Bl({k},{j},{l})"),
            NamedFunctor::Perm(k) => write!(f, "perm({k})"),
        }
    }
}

/// The standard functors for one group, in a fixed order with one representative per
/// isomorphism class.
pub struct Library {
    ctx: GroupContext,
    entries: Vec<(NamedFunctor, MackeyFunctor, Vec<Invariants>)>,
}

impl Library {
    pub fn new(ctx: GroupContext) -> Self {
        let n = ctx.n;
        let mut names = vec![NamedFunctor::Zero, NamedFunctor::Z];
        for k in 1..=n {
            for j in 0..k {
                names.push(NamedFunctor::ZForm(k, j));
            }
        }
        for j in 0..n {
            for k in 1..=n - j {
                names.push(NamedFunctor::B(k, j));
            }
        }
        for j in 0..n {
            for k in 1..n - j {
                names.push(NamedFunctor::BStar(k, j));
            }
        }
        for j in 0..n {
            for k in 1..n.saturating_sub(j) {
                for l in 1..(n - k - j) as i64 {
                    names.push(NamedFunctor::BEll(k, j, l));
                }
            }
        }
        let entries = names
            .into_iter()
            .map(|nm| {
                let f = nm.build(ctx).expect("library entries are valid");
                let inv = f.levels().iter().map(|g| g.invariants().clone()).collect();
                (nm, f, inv)
            })
            .collect();
        Library { ctx, entries }
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn entries(&self) -> impl Iterator<Item = (&NamedFunctor, &MackeyFunctor)> {
        self.entries.iter().map(|(n, f, _)| (n, f))
    }

    /// The library name of a functor isomorphic to `m`, if any.
    pub fn identify(&self, m: &MackeyFunctor) -> Option<NamedFunctor> {
        if m.ctx() != self.ctx {
            return None;
        }
        let inv: Vec<&Invariants> = m.levels().iter().map(|g| g.invariants()).collect();
        self.entries
            .iter()
            .filter(|(_, _, i)| i.iter().eq(inv.iter().copied()))
            .find(|(_, f, _)| mackey_iso(m, f).is_iso())
            .map(|(n, _, _)| n.clone())
    }

    /// The canonical library name of a named functor (e.g. `B(0,j)` is `0`).
    pub fn normalize(&self, name: &NamedFunctor) -> Option<NamedFunctor> {
        self.identify(&name.build(self.ctx).ok()?)
    }
}
