//! Isomorphism testing between Mackey functors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::functor::{MackeyFunctor, MackeyMorphism};
use crate::linalg::{GroupHom, IntMatrix, PresentedGroup};

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(MackeyMorphism),
    NotIsomorphic,
    /// Levels are not all cyclic and the identity on canonical presentations is not an isomorphism.
    Undetermined,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Decides whether `a ≅ b`, producing a witness isomorphism `a -> b` when one is found.
pub fn mackey_iso(a: &MackeyFunctor, b: &MackeyFunctor) -> IsoVerdict {
    if a.ctx() != b.ctx() {
        return IsoVerdict::NotIsomorphic;
    }
    if a.levels().iter().zip(b.levels()).any(|(x, y)| x.invariants() != y.invariants()) {
        return IsoVerdict::NotIsomorphic;
    }
    let (ca, cb) = (a.canonical(), b.canonical());
    let found = if ca.is_cyclic_levelwise() {
        match cyclic_search(&ca, &cb) {
            Some(units) => units,
            None => return IsoVerdict::NotIsomorphic,
        }
    } else {
        let maps: Vec<GroupHom> =
            ca.levels().iter().zip(cb.levels()).map(|(s, t)| GroupHom::new_unchecked(s.clone(), t.clone(), IntMatrix::identity(s.generators()))).collect();
        match MackeyMorphism::new(ca.clone(), cb.clone(), maps) {
            Ok(f) => return IsoVerdict::Isomorphic(transport(a, b, &f)),
            Err(_) => return IsoVerdict::Undetermined,
        }
    };
    let maps = ca
        .levels()
        .iter()
        .zip(cb.levels())
        .zip(found)
        .map(|((s, t), u)| {
            let mut m = IntMatrix::zeros(t.generators(), s.generators());
            if m.rows() == 1 {
                m.set(0, 0, u);
            }
            GroupHom::new_unchecked(s.clone(), t.clone(), m)
        })
        .collect();
    let f = MackeyMorphism::new_unchecked(ca, cb, maps);
    debug_assert!(f.check().is_ok(), "cyclic search produced a non-morphism");
    IsoVerdict::Isomorphic(transport(a, b, &f))
}

/// Conjugates an isomorphism between canonical forms back to the given presentations.
fn transport(a: &MackeyFunctor, b: &MackeyFunctor, f: &MackeyMorphism) -> MackeyMorphism {
    let maps = a
        .levels()
        .iter()
        .zip(b.levels())
        .zip(&f.maps)
        .map(|((s, t), g)| {
            let (_, to, _) = s.canonicalize();
            let (_, _, from) = t.canonicalize();
            from.compose(&g.compose(&to))
        })
        .collect();
    MackeyMorphism::new_unchecked(a.clone(), b.clone(), maps)
}

fn order(g: &PresentedGroup) -> Option<BigInt> {
    match g.orders() {
        Some([d]) => Some(d.clone()),
        _ => None,
    }
}

fn units(g: &PresentedGroup) -> Vec<BigInt> {
    match order(g) {
        None => vec![BigInt::zero()],
        Some(d) if d.is_zero() => vec![BigInt::one(), -BigInt::one()],
        Some(d) => {
            let mut out = Vec::new();
            let mut u = BigInt::one();
            while u < d {
                if u.gcd(&d).is_one() {
                    out.push(u.clone());
                }
                u += 1;
            }
            out
        }
    }
}

fn congruent(x: &BigInt, y: &BigInt, d: &Option<BigInt>) -> bool {
    match d {
        None => true,
        Some(d) if d.is_zero() => x == y,
        Some(d) => (x - y).is_multiple_of(d),
    }
}

fn scalar(h: &GroupHom) -> BigInt {
    MackeyFunctor::scalar_of(h).expect("cyclic levels")
}

/// Level-by-level search for unit multipliers commuting with every structure map.
fn cyclic_search(a: &MackeyFunctor, b: &MackeyFunctor) -> Option<Vec<BigInt>> {
    let ctx = a.ctx();
    for m in ctx.levels() {
        let d = order(a.level(m));
        if !congruent(&scalar(a.weyl(m)), &scalar(b.weyl(m)), &d) {
            return None;
        }
    }
    // feasible[m] = reachable multipliers at level m, with a parent index into feasible[m-1]
    let mut feasible: Vec<Vec<(BigInt, usize)>> = vec![units(a.level(0)).into_iter().map(|u| (u, 0)).collect()];
    for m in 0..ctx.n {
        let (dl, dh) = (order(a.level(m)), order(a.level(m + 1)));
        let (ra, rb) = (scalar(a.res(m)), scalar(b.res(m)));
        let (ta, tb) = (scalar(a.tr(m)), scalar(b.tr(m)));
        let mut next = Vec::new();
        for uh in units(a.level(m + 1)) {
            let parent = feasible[m as usize].iter().position(|(ul, _)| {
                congruent(&(ul * &ra), &(&rb * &uh), &dl) && congruent(&(&uh * &ta), &(&tb * ul), &dh)
            });
            if let Some(i) = parent {
                next.push((uh, i));
            }
        }
        if next.is_empty() {
            return None;
        }
        feasible.push(next);
    }
    let mut out = vec![BigInt::zero(); ctx.n as usize + 1];
    let mut idx = 0;
    for m in (0..=ctx.n as usize).rev() {
        let (u, parent) = &feasible[m][idx];
        out[m] = u.clone();
        idx = *parent;
    }
    Some(out)
}
