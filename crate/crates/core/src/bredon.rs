//! Bredon homology of representation spheres: the cellular oracle, the closed form for `B_k`
//! coefficients, and the harness comparing them.

use std::fmt;

use serde::Serialize;

use crate::cells::{chain_complex, cochain_minus_lambda};
use crate::error::{Error, Result};
use crate::mackey::{lewis_diagram, mackey_iso, GroupContext, IsoVerdict, Library, MackeyFunctor, NamedFunctor};
use crate::reps::RealRep;

#[derive(Clone, Debug)]
pub struct HomologyEntry {
    pub degree: i64,
    pub functor: MackeyFunctor,
    pub name: Option<NamedFunctor>,
}

/// Homology in degrees `0..=dim V`; every other degree is zero.
#[derive(Clone, Debug)]
pub struct HomologyTable {
    pub ctx: GroupContext,
    pub entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    pub fn get(&self, s: i64) -> Option<&MackeyFunctor> {
        self.entries.iter().find(|e| e.degree == s).map(|e| &e.functor)
    }

    /// Degrees with nonzero homology.
    pub fn support(&self) -> Vec<i64> {
        self.entries.iter().filter(|e| !e.functor.is_zero()).map(|e| e.degree).collect()
    }

    pub fn top_degree(&self) -> Option<i64> {
        self.support().last().copied()
    }

    /// Fills in library names by isomorphism.
    pub fn identify(&mut self, lib: &Library) {
        for e in &mut self.entries {
            e.name = lib.identify(&e.functor);
        }
    }
}

/// The oracle: homology of the cellular complex of `S^V` with coefficients `M`.
pub fn bredon_homology(v: &RealRep, m: &MackeyFunctor) -> Result<HomologyTable> {
    let cx = chain_complex(v, m)?;
    let mut entries = Vec::new();
    for s in 0..=v.dim() as i64 {
        let functor = if s < cx.min_degree() { MackeyFunctor::zero(m.ctx()) } else { cx.homology(s)?.functor.canonical() };
        entries.push(HomologyEntry { degree: s, functor, name: None });
    }
    Ok(HomologyTable { ctx: m.ctx(), entries })
}

/// `V` with the summands invisible to `B_{k,j}` removed and the trivial part split off as a shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub rep: RealRep,
    pub shift: u64,
    pub note: String,
}

/// Drops every `λ_i` with `i <= j` (their cells only see levels where `B_{k,j}` vanishes) and moves
/// the trivial summand into a degree shift.
pub fn normalize_for_b(v: &RealRep, j: u32) -> Normalized {
    let mut rep = v.clone();
    let mut dropped = Vec::new();
    for i in 0..=j.min(v.ctx.n.saturating_sub(1)) {
        if v.ctx.n > 0 && rep.mult[i as usize] > 0 {
            dropped.push(format!("{}l{i}", rep.mult[i as usize]));
            rep.mult[i as usize] = 0;
        }
    }
    let shift = rep.triv;
    rep.triv = 0;
    let mut parts = Vec::new();
    if !dropped.is_empty() {
        parts.push(format!("dropped {}", dropped.join("+")));
    }
    if shift > 0 {
        parts.push(format!("shift {shift}"));
    }
    Normalized { rep, shift, note: if parts.is_empty() { "unchanged".into() } else { parts.join(", ") } }
}

/// Multiplicities and partial sums attached to a fixed-point-free `V` without `λ_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormIndex {
    /// `k[r]` for `1 <= r <= n` multiplies `λ_{n-r}`; `k[0]` is unused.
    pub k: Vec<u64>,
    /// `big_k[i] = 2 Σ_{r <= i} k[r]`.
    pub big_k: Vec<u64>,
    /// Indices `i` with `k[i] != 0`, increasing.
    pub support: Vec<u32>,
    /// `h[r] = n - support[r]`, decreasing.
    pub h: Vec<u32>,
}

impl ClosedFormIndex {
    pub fn new(v: &RealRep) -> Self {
        let n = v.ctx.n;
        let mut k = vec![0];
        let mut big_k = vec![0];
        for r in 1..=n {
            k.push(v.mult[(n - r) as usize]);
            big_k.push(big_k[r as usize - 1] + 2 * k[r as usize]);
        }
        let support: Vec<u32> = (1..=n).filter(|&i| k[i as usize] != 0).collect();
        let h = support.iter().map(|&i| n - i).collect();
        ClosedFormIndex { k, big_k, support, h }
    }
}

/// Which case of the closed form produced a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    Bottom,
    One,
    InteriorEven,
    InteriorOdd,
    Edge,
    EdgePlusOne,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub degree: i64,
    pub name: NamedFunctor,
    pub rule: Rule,
    /// The case reads `h_{m+1}`, which is undefined; `h_{m+1} = 0` was used.
    pub ambiguous: bool,
}

fn b(k: u32, j: u32) -> NamedFunctor {
    if k == 0 {
        NamedFunctor::Zero
    } else {
        NamedFunctor::B(k, j)
    }
}

fn b_star(k: u32, j: u32) -> NamedFunctor {
    if k == 0 {
        NamedFunctor::Zero
    } else {
        NamedFunctor::BStar(k, j)
    }
}

/// The predicted homology of `S^V` with coefficients in `B_k`, degree by degree in `0..=dim V`.
pub fn closed_form_bk(v: &RealRep, k: u32) -> Result<Vec<Prediction>> {
    if v.triv != 0 {
        return Err(Error::NormalizationRequired(format!("{v} has a trivial summand")));
    }
    if v.ctx.n > 0 && v.mult[0] != 0 {
        return Err(Error::NormalizationRequired(format!("{v} does not restrict trivially to C_p")));
    }
    let dim = v.dim() as i64;
    if k == 0 {
        return Ok((0..=dim).map(|s| Prediction { degree: s, name: NamedFunctor::Zero, rule: Rule::Empty, ambiguous: false }).collect());
    }
    let ctx = v.ctx;
    let n = ctx.n;
    let k = k.min(n);
    if v.is_zero() {
        return Ok(vec![Prediction { degree: 0, name: b(k, 0), rule: Rule::Bottom, ambiguous: false }]);
    }
    let idx = ClosedFormIndex::new(v);
    let m = idx.h.len() - 1;
    let hr = |r: usize| -> (u32, bool) { if r <= m { (idx.h[r], false) } else { (0, true) } };
    let mut out = Vec::new();
    for s in 0..=dim {
        let p = if s == 0 {
            Prediction { degree: s, name: b(k, idx.h[0]), rule: Rule::Bottom, ambiguous: false }
        } else if s == 1 {
            let h0 = idx.h[0];
            Prediction { degree: s, name: b_star(h0.min(k), h0.max(k)), rule: Rule::One, ambiguous: false }
        } else if let Some(r) = (0..=m).find(|&r| idx.big_k[idx.support[r] as usize] as i64 == s) {
            let (next, amb) = hr(r + 1);
            Prediction { degree: s, name: b(k.min(idx.h[r]), next), rule: Rule::Edge, ambiguous: amb }
        } else if let Some(r) = (0..=m).find(|&r| idx.big_k[idx.support[r] as usize] as i64 + 1 == s) {
            let (next, amb) = hr(r + 1);
            let name = b_star(k.min(next), k.min(idx.h[r]).max(next));
            Prediction { degree: s, name, rule: Rule::EdgePlusOne, ambiguous: amb }
        } else {
            let i = (1..=n).find(|&i| (idx.big_k[i as usize - 1] as i64) < s && s <= idx.big_k[i as usize] as i64).expect("s within dim V");
            let lo = idx.big_k[i as usize - 1] as i64;
            let hi = idx.big_k[i as usize] as i64;
            let h = n - i;
            if s % 2 == 0 && lo + 2 <= s && s <= hi - 2 {
                Prediction { degree: s, name: b(k.min(h), h), rule: Rule::InteriorEven, ambiguous: false }
            } else if s % 2 == 1 && lo + 3 <= s && s <= hi - 1 {
                Prediction { degree: s, name: b_star(k.min(h), h), rule: Rule::InteriorOdd, ambiguous: false }
            } else {
                return Err(Error::IllDefined(format!("no case covers degree {s} for {v}")));
            }
        };
        out.push(p);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    /// The case needed an undefined index; the oracle value is authoritative.
    Ambiguous,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub p: u64,
    pub n: u32,
    pub rep: String,
    pub k: u32,
    pub degree: i64,
    pub predicted: String,
    pub verdict: Verdict,
    /// Whether the oracle agrees with the prediction made under the `h_{m+1} = 0` reading.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_diagram: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual_diagram: Option<String>,
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}^{} V={} k={} s={}: {} ({:?})", self.p, self.n, self.rep, self.k, self.degree, self.predicted, self.verdict)
    }
}

/// Compares the closed form with the oracle in every degree. `V` is normalized first; the
/// oracle always runs on the original `V`.
pub fn verify_closed_form(v: &RealRep, k: u32) -> Result<Vec<CaseReport>> {
    let coeff = NamedFunctor::B(k.min(v.ctx.n), 0).build(v.ctx)?;
    verify_closed_form_against(v, k, &coeff)
}

/// As [`verify_closed_form`], but the oracle runs with the given coefficients in place of `B_k`.
pub fn verify_closed_form_against(v: &RealRep, k: u32, coeff: &MackeyFunctor) -> Result<Vec<CaseReport>> {
    let ctx = v.ctx;
    let norm = normalize_for_b(v, 0);
    let predicted = closed_form_bk(&norm.rep, k)?;
    let oracle = bredon_homology(v, coeff)?;
    let mut out = Vec::new();
    for pr in predicted {
        let s = pr.degree + norm.shift as i64;
        let expected = pr.name.build(ctx)?;
        let zero = MackeyFunctor::zero(ctx);
        let actual = oracle.get(s).unwrap_or(&zero);
        let agrees = matches!(mackey_iso(&expected, actual), IsoVerdict::Isomorphic(_));
        let verdict = match (pr.ambiguous, agrees) {
            (true, _) => Verdict::Ambiguous,
            (false, true) => Verdict::Match,
            (false, false) => Verdict::Mismatch,
        };
        let show = verdict == Verdict::Mismatch;
        out.push(CaseReport {
            p: ctx.p,
            n: ctx.n,
            rep: v.to_string(),
            k,
            degree: s,
            predicted: pr.name.to_string(),
            oracle_agrees: pr.ambiguous.then_some(agrees),
            expected_diagram: show.then(|| lewis_diagram(&expected)),
            actual_diagram: show.then(|| lewis_diagram(actual)),
            verdict,
        });
    }
    for e in &oracle.entries {
        if !out.iter().any(|c| c.degree == e.degree) && !e.functor.is_zero() {
            out.push(CaseReport {
                p: ctx.p,
                n: ctx.n,
                rep: v.to_string(),
                k,
                degree: e.degree,
                predicted: "0".into(),
                verdict: Verdict::Mismatch,
                oracle_agrees: None,
                expected_diagram: Some(lewis_diagram(&MackeyFunctor::zero(ctx))),
                actual_diagram: Some(lewis_diagram(&e.functor)),
            });
        }
    }
    Ok(out)
}

/// Every fixed-point-free `V` without `λ_0` summands and with `dim V <= max_dim`, in a fixed order.
pub fn fixed_point_free_reps(ctx: GroupContext, max_dim: u64) -> Vec<RealRep> {
    let mut out = vec![RealRep::zero(ctx)];
    for l in 1..ctx.n {
        let mut next = Vec::new();
        for r in &out {
            let mut r = r.clone();
            while r.dim() <= max_dim {
                next.push(r.clone());
                r.mult[l as usize] += 1;
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub cases: Vec<CaseReport>,
    pub matched: usize,
    pub ambiguous: usize,
    pub mismatched: usize,
    /// Computations that failed outright; each also counts as a mismatch.
    pub errors: Vec<String>,
}

impl SweepReport {
    pub fn push(&mut self, cases: Vec<CaseReport>) {
        for c in cases {
            match c.verdict {
                Verdict::Match => self.matched += 1,
                Verdict::Ambiguous => self.ambiguous += 1,
                Verdict::Mismatch => self.mismatched += 1,
            }
            self.cases.push(c);
        }
    }

    pub fn push_error(&mut self, e: String) {
        self.mismatched += 1;
        self.errors.push(e);
    }
}

/// Compares the closed form with the oracle for every `V` from [`fixed_point_free_reps`] and
/// every `1 <= k <= n`. `coeff(k)` supplies the oracle's coefficients.
pub fn closed_form_sweep(ctx: GroupContext, max_dim: u64, coeff: impl Fn(u32) -> Result<MackeyFunctor> + Sync) -> SweepReport {
    use rayon::prelude::*;
    let jobs: Vec<(RealRep, u32)> =
        fixed_point_free_reps(ctx, max_dim).into_iter().flat_map(|v| (1..=ctx.n).map(move |k| (v.clone(), k))).collect();
    let results: Vec<Result<Vec<CaseReport>>> =
        jobs.par_iter().map(|(v, k)| verify_closed_form_against(v, *k, &coeff(*k)?)).collect();
    let mut report = SweepReport::default();
    for ((v, k), r) in jobs.iter().zip(results) {
        match r {
            Ok(cases) => report.push(cases),
            Err(e) => report.push_error(format!("V={v} k={k}: {e}")),
        }
    }
    report
}

/// `(H^0, H^1)` of `S^V` with coefficients `M`, read off the bottom cells of `S^V`.
pub fn cohomology_h01(v: &RealRep, m: &MackeyFunctor) -> Result<(MackeyFunctor, MackeyFunctor)> {
    let ctx = m.ctx();
    let zero = MackeyFunctor::zero(ctx);
    if v.triv >= 2 {
        return Ok((zero.clone(), zero));
    }
    let Some(top) = v.max_lambda() else { return Err(Error::NoLambdaSummand) };
    let cx = cochain_minus_lambda(top, m)?;
    let h0 = cx.homology(0)?.functor.canonical();
    if v.triv == 1 {
        return Ok((zero, h0));
    }
    Ok((h0, cx.homology(-1)?.functor.canonical()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{make_b, make_constant_z};

    fn ctx(p: u64, n: u32) -> GroupContext {
        GroupContext::new(p, n).unwrap()
    }

    #[test]
    fn lambda_with_constant_coefficients() {
        let c = ctx(3, 1);
        let lib = Library::new(c);
        let mut t = bredon_homology(&RealRep::lambda(c, 0), &make_constant_z(c)).unwrap();
        t.identify(&lib);
        assert_eq!(t.support(), vec![0, 2]);
        assert_eq!(t.entries[2].name, Some(NamedFunctor::Z));
        assert_eq!(t.entries[0].name, Some(NamedFunctor::B(1, 0)));
    }

    #[test]
    fn bottom_degree_for_two_lambda() {
        let c = ctx(3, 3);
        let t = bredon_homology(&RealRep::parse("2l0", c).unwrap(), &make_b(1, 0, c)).unwrap();
        assert!(mackey_iso(t.get(0).unwrap(), &make_b(1, 0, c)).is_iso());
    }

    #[test]
    fn normalization() {
        let c = ctx(3, 3);
        let nv = normalize_for_b(&RealRep::parse("2t+l0+l2", c).unwrap(), 0);
        assert_eq!(nv.rep.to_string(), "1l2");
        assert_eq!(nv.shift, 2);
    }

    #[test]
    fn h01_vanish() {
        let c = ctx(3, 2);
        let (h0, h1) = cohomology_h01(&RealRep::parse("l1+l0", c).unwrap(), &make_b(1, 0, c)).unwrap();
        assert!(h0.is_zero() && h1.is_zero());
        assert!(matches!(cohomology_h01(&RealRep::trivial(c, 1), &make_b(1, 0, c)), Err(Error::NoLambdaSummand)));
    }

    #[test]
    fn closed_form_matches_oracle() {
        for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 2)] {
            let c = ctx(p, n);
            for v in fixed_point_free_reps(c, 8) {
                for k in 1..=n {
                    for case in verify_closed_form(&v, k).unwrap() {
                        assert_ne!(case.verdict, Verdict::Mismatch, "{case}");
                        if case.verdict == Verdict::Ambiguous {
                            assert_eq!(case.oracle_agrees, Some(true), "{case}");
                        }
                    }
                }
            }
        }
    }
}
