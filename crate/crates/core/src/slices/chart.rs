use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{regrade, slice_of_l, slice_tower_finite, Ratio, SliceDescription};
use crate::bredon::bredon_homology;
use crate::error::{Error, Result};
use crate::mackey::{mackey_iso, GroupContext, Library, MackeyFunctor, MackeyJson, NamedFunctor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `S^{∞λ} ∧ HZ`
    Infinite,
    /// `S^{mλ} ∧ HZ`
    Finite(u64),
}

impl Target {
    pub fn parse(text: &str) -> Result<Target> {
        if text == "inf-lambda" {
            return Ok(Target::Infinite);
        }
        if let Some(m) = text.strip_prefix("m-lambda:") {
            return m
                .parse()
                .map(Target::Finite)
                .map_err(|_| Error::Parse { pos: 9, msg: format!("expected a nonnegative integer after `m-lambda:`, found `{m}`") });
        }
        Err(Error::Parse { pos: 0, msg: format!("unknown target `{text}`; expected `inf-lambda` or `m-lambda:<m>`") })
    }

    pub fn slice(&self, d: i64, ctx: GroupContext) -> SliceDescription {
        match *self {
            Target::Infinite => slice_of_l(d, ctx),
            Target::Finite(m) => slice_tower_finite(m, d, ctx),
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Infinite => write!(f, "inf-lambda"),
            Target::Finite(m) => write!(f, "m-lambda:{m}"),
        }
    }
}

/// How a legend entry is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Glyph {
    Dot,
    UnderlinedDot,
    UnderlinedDotStar,
    DoubleUnderlinedDot,
    Circle,
    UnderlinedCircle,
    DoubleCircle,
    Square,
}

pub struct LegendEntry {
    pub name: NamedFunctor,
    pub glyph: Glyph,
    pub symbol: &'static str,
    pub ascii: char,
}

/// The chart symbols for `p`-torsion functors of small exponent and for `Z`.
pub fn legend() -> Vec<LegendEntry> {
    use NamedFunctor::*;
    let e = |name, glyph, symbol, ascii| LegendEntry { name, glyph, symbol, ascii };
    vec![
        e(B(1, 0), Glyph::Dot, "•", '.'),
        e(B(1, 1), Glyph::UnderlinedDot, "•̲", '_'),
        e(BStar(1, 1), Glyph::UnderlinedDotStar, "•̲*", '*'),
        e(B(1, 2), Glyph::DoubleUnderlinedDot, "•̳", '='),
        e(B(2, 0), Glyph::Circle, "○", 'o'),
        e(B(2, 1), Glyph::UnderlinedCircle, "○̲", 'u'),
        e(B(3, 0), Glyph::DoubleCircle, "◎", '@'),
        e(Z, Glyph::Square, "□", '#'),
    ]
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub s: i64,
    pub t: i64,
    pub x: i64,
    pub y: Ratio,
    /// Legend symbol, or a bracketed list of level invariants when no legend entry matches.
    pub symbol: String,
    pub glyph: Option<Glyph>,
    pub name: Option<NamedFunctor>,
    pub functor: MackeyFunctor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub from: [i64; 2],
    pub to: [i64; 2],
    /// `differential` or `extension`; extensions are drawn dashed.
    pub kind: String,
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub ctx: GroupContext,
    pub target: Target,
    pub t_range: (i64, i64),
    pub cells: Vec<Cell>,
    pub annotations: Vec<Annotation>,
}

fn fallback_symbol(m: &MackeyFunctor) -> String {
    let parts: Vec<String> = m.levels().iter().rev().map(|g| g.invariants().to_string()).collect();
    format!("[{}]", parts.join("|"))
}

/// The `E_2` page over slice dimensions `t_range.0..=t_range.1`; cells are sorted by `(t, s)`.
pub fn e2_page(target: Target, t_range: (i64, i64), ctx: GroupContext) -> Result<Chart> {
    let lib = Library::new(ctx);
    let glyphs: Vec<(LegendEntry, MackeyFunctor)> = legend()
        .into_iter()
        .filter(|e| match e.name {
            NamedFunctor::B(k, j) | NamedFunctor::BStar(k, j) => k + j <= ctx.n,
            _ => true,
        })
        .map(|e| {
            let f = e.name.build(ctx).expect("legend entries are valid");
            (e, f)
        })
        .collect();
    let columns: Vec<Result<Vec<Cell>>> = (t_range.0..=t_range.1.max(t_range.0 - 1))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|t| {
            let SliceDescription::Nontrivial { rep, coefficient, .. } = target.slice(t, ctx) else { return Ok(Vec::new()) };
            let table = bredon_homology(&rep, &coefficient.build(ctx)?)?;
            let mut cells = Vec::new();
            for e in table.entries.into_iter().filter(|e| !e.functor.is_zero()) {
                let s = t - e.degree;
                let (x, y) = regrade(s, t, ctx);
                let hit = glyphs.iter().find(|(_, g)| mackey_iso(&e.functor, g).is_iso());
                cells.push(Cell {
                    s,
                    t,
                    x,
                    y,
                    symbol: hit.map_or_else(|| fallback_symbol(&e.functor), |(l, _)| l.symbol.to_string()),
                    glyph: hit.map(|(l, _)| l.glyph),
                    name: lib.identify(&e.functor),
                    functor: e.functor,
                });
            }
            cells.sort_by_key(|c| c.s);
            Ok(cells)
        })
        .collect();
    let mut cells = Vec::new();
    for c in columns {
        cells.extend(c?);
    }
    Ok(Chart { ctx, target, t_range, cells, annotations: Vec::new() })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellJson {
    pub s: i64,
    pub t: i64,
    pub x: i64,
    #[serde(rename = "yNum")]
    pub y_num: i64,
    #[serde(rename = "yDen")]
    pub y_den: i64,
    pub symbol: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub functor: MackeyJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartJson {
    pub p: u64,
    pub n: u32,
    pub target: String,
    pub cells: Vec<CellJson>,
    pub annotations: Vec<Annotation>,
}

impl Chart {
    pub fn cell_at(&self, s: i64, t: i64) -> Option<&Cell> {
        self.cells.iter().find(|c| c.s == s && c.t == t)
    }

    /// Slice dimensions with at least one nonzero cell.
    pub fn columns(&self) -> Vec<i64> {
        let mut ts: Vec<i64> = self.cells.iter().map(|c| c.t).collect();
        ts.dedup();
        ts
    }

    pub fn to_json(&self) -> ChartJson {
        ChartJson {
            p: self.ctx.p,
            n: self.ctx.n,
            target: self.target.to_string(),
            cells: self
                .cells
                .iter()
                .map(|c| CellJson {
                    s: c.s,
                    t: c.t,
                    x: c.x,
                    y_num: c.y.num,
                    y_den: c.y.den,
                    symbol: c.symbol.clone(),
                    name: c.name.as_ref().map(ToString::to_string),
                    functor: c.functor.to_json(),
                })
                .collect(),
            annotations: self.annotations.clone(),
        }
    }

    /// Attaches annotations after checking that both ends of every arrow are cells.
    pub fn with_annotations(mut self, annotations: Vec<Annotation>) -> Result<Self> {
        for a in &annotations {
            for [s, t] in [a.from, a.to] {
                if self.cell_at(s, t).is_none() {
                    return Err(Error::Index(format!("annotation endpoint (s,t) = ({s},{t}) is not a chart cell")));
                }
            }
        }
        self.annotations = annotations;
        Ok(self)
    }
}
