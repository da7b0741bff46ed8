//! JSON form of a Mackey functor: `{p, n, levels: [{rank, torsion}], res, tr, weyl}`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use super::context::GroupContext;
use super::functor::MackeyFunctor;
use crate::error::{Error, Result};
use crate::linalg::{GroupHom, IntMatrix, Invariants, PresentedGroup};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelJson {
    pub rank: usize,
    pub torsion: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MackeyJson {
    pub p: u64,
    pub n: u32,
    pub levels: Vec<LevelJson>,
    pub res: Vec<Vec<Vec<Value>>>,
    pub tr: Vec<Vec<Vec<Value>>>,
    pub weyl: Vec<Vec<Vec<Value>>>,
}

pub fn big_to_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

pub fn value_to_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| Error::Json(format!("not an integer: {n}"))),
        other => Err(Error::Json(format!("expected an integer, found {other}"))),
    }
}

fn matrix_to_json(m: &IntMatrix) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(big_to_value).collect()).collect()
}

fn matrix_from_json(rows: &[Vec<Value>], nrows: usize, ncols: usize) -> Result<IntMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Json(format!("expected a {nrows}x{ncols} matrix")));
    }
    let data = rows.iter().flatten().map(value_to_big).collect::<Result<Vec<_>>>()?;
    IntMatrix::from_vec(nrows, ncols, data)
}

impl MackeyFunctor {
    /// Serializes the canonical form; `from_json` inverts this exactly.
    pub fn to_json(&self) -> MackeyJson {
        let c = self.canonical();
        MackeyJson {
            p: c.ctx().p,
            n: c.ctx().n,
            levels: c
                .levels()
                .iter()
                .map(|g| LevelJson { rank: g.invariants().free, torsion: g.invariants().torsion.iter().map(big_to_value).collect() })
                .collect(),
            res: c.res_maps().iter().map(|h| matrix_to_json(&h.matrix)).collect(),
            tr: c.tr_maps().iter().map(|h| matrix_to_json(&h.matrix)).collect(),
            weyl: c.weyl_maps().iter().map(|h| matrix_to_json(&h.matrix)).collect(),
        }
    }

    pub fn from_json(j: &MackeyJson) -> Result<MackeyFunctor> {
        let ctx = GroupContext::new(j.p, j.n)?;
        let levels = j
            .levels
            .iter()
            .map(|l| {
                let torsion = l.torsion.iter().map(value_to_big).collect::<Result<Vec<_>>>()?;
                Ok(PresentedGroup::from_invariants(&Invariants { free: l.rank, torsion }))
            })
            .collect::<Result<Vec<_>>>()?;
        if levels.len() != ctx.n as usize + 1 {
            return Err(Error::Json(format!("expected {} levels", ctx.n + 1)));
        }
        let hom = |rows: &[Vec<Value>], s: &PresentedGroup, t: &PresentedGroup| -> Result<GroupHom> {
            GroupHom::new(s.clone(), t.clone(), matrix_from_json(rows, t.generators(), s.generators())?)
        };
        let n = ctx.n as usize;
        if j.res.len() != n || j.tr.len() != n || j.weyl.len() != n + 1 {
            return Err(Error::Json("wrong number of structure maps".into()));
        }
        let res = (0..n).map(|m| hom(&j.res[m], &levels[m + 1], &levels[m])).collect::<Result<Vec<_>>>()?;
        let tr = (0..n).map(|m| hom(&j.tr[m], &levels[m], &levels[m + 1])).collect::<Result<Vec<_>>>()?;
        let weyl = (0..=n).map(|m| hom(&j.weyl[m], &levels[m], &levels[m])).collect::<Result<Vec<_>>>()?;
        MackeyFunctor::from_parts(ctx, levels, res, tr, weyl)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{make_b_ell, make_perm};

    #[test]
    fn round_trip_is_exact() {
        let c = GroupContext::new(3, 3).unwrap();
        for f in [make_b_ell(1, 0, 1, c).unwrap(), make_perm(1, c).unwrap()] {
            let j = f.to_json();
            let text = serde_json::to_string(&j).unwrap();
            let back: MackeyJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, j);
            let g = MackeyFunctor::from_json(&back).unwrap();
            assert_eq!(g.to_json(), j);
        }
    }
}
