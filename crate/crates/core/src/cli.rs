//! The `slicecalc` command line. Exit codes: 0 success, 1 verification failure, 2 usage, parse
//! or I/O error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bredon::{bredon_homology, closed_form_sweep, cohomology_h01, fixed_point_free_reps};
use crate::error::{Error, Result};
use crate::linalg::GroupHom;
use crate::mackey::{exactness_failures, lewis_diagram, make_b, GroupContext, Library, MackeyFunctor, NamedFunctor};
use crate::reps::{rep_identities_check, special_tag, v_recursive, RealRep};
use crate::slices::{e2_page, render, Annotation, Format, Target};

#[derive(Parser, Debug)]
#[command(name = "slicecalc", version, about = "Bredon homology of representation spheres and slice charts for C_{p^n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Group {
    /// Odd prime p.
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Exponent n >= 1 of the group C_{p^n}.
    #[arg(long, default_value_t = 3)]
    n: u32,
}

impl Group {
    fn ctx(&self) -> Result<GroupContext> {
        if self.n == 0 {
            return Err(Error::Index("--n must be at least 1".into()));
        }
        GroupContext::new(self.p, self.n)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate V_j = λ(1) + λ(3) + ... + λ(2j-1) up to JO-equivalence.
    Vseq {
        #[command(flatten)]
        group: Group,
        #[arg(long = "max")]
        max_j: u64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Bredon homology of S^V with Mackey functor coefficients.
    Homology {
        #[command(flatten)]
        group: Group,
        /// Representation, e.g. `2t+3l0+l1`.
        #[arg(long)]
        rep: String,
        /// Coefficients: 0, Z, Z*, Z(k,j), B(k,j), B*(k,j), Bl(k,j,l), perm(k).
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Check the closed forms against the cellular computation.
    Verify {
        #[command(flatten)]
        group: Group,
        #[arg(long = "max-dim")]
        max_dim: u64,
        #[arg(long, default_value = "json")]
        format: String,
        /// Perturb one transfer of the coefficients; the run must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Slice spectral sequence chart.
    Chart {
        #[command(flatten)]
        group: Group,
        /// `inf-lambda` or `m-lambda:<m>`.
        #[arg(long)]
        target: String,
        /// Slice dimensions `lo:hi`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        trange: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "svg")]
        format: String,
        /// JSON list of arrows `{"from": [s, t], "to": [s, t], "kind": "differential" | "extension"}`.
        #[arg(long)]
        annotations: Option<PathBuf>,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SLICECALC_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("SLICECALC_THREADS must be a positive integer, got `{v}`") })?;
    // A pool may already exist when the CLI runs more than once in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn io_err(path: Option<&PathBuf>, e: std::io::Error) -> Error {
    Error::Io { path: path.cloned().unwrap_or_else(|| PathBuf::from("<stdout>")), source: e }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| io_err(None, e))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Vseq { group, max_j, format } => cmd_vseq(group.ctx()?, max_j, &format, out).map(|_| 0),
        Command::Homology { group, rep, coeff, format } => cmd_homology(group.ctx()?, &rep, &coeff, &format, out, err).map(|_| 0),
        Command::Verify { group, max_dim, format, inject_fault } => cmd_verify(group.ctx()?, max_dim, &format, inject_fault, out),
        Command::Chart { group, target, trange, out: path, format, annotations } => {
            cmd_chart(group.ctx()?, &target, &trange, path, &format, annotations, out).map(|_| 0)
        }
    }
}

fn text_or_json(format: &str) -> Result<bool> {
    match format {
        "text" => Ok(false),
        "json" => Ok(true),
        other => Err(Error::UnsupportedFormat(other.into())),
    }
}

fn cmd_vseq(ctx: GroupContext, max_j: u64, format: &str, out: &mut dyn Write) -> Result<()> {
    let json = text_or_json(format)?;
    let rows: Vec<(u64, RealRep, Option<String>)> = (1..=max_j).map(|j| (j, v_recursive(j, ctx), special_tag(j, ctx))).collect();
    if json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(j, v, tag)| json!({ "j": j, "rep": v.to_json(), "text": v.to_string(), "pretty": v.pretty(), "tag": tag }))
            .collect();
        return emit(out, &(serde_json::to_string_pretty(&json!({ "p": ctx.p, "n": ctx.n, "rows": rows })).expect("serializable") + "\n"));
    }
    let mut s = String::new();
    let w = rows.iter().map(|(_, v, _)| v.to_string().len()).max().unwrap_or(0);
    for (j, v, tag) in &rows {
        let line = format!("{j:>4}  {:<w$}  {}  {}", v.to_string(), v.pretty(), tag.as_deref().unwrap_or(""));
        s.push_str(line.trim_end());
        s.push('\n');
    }
    emit(out, &s)
}

fn cmd_homology(ctx: GroupContext, rep: &str, coeff: &str, format: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let json = text_or_json(format)?;
    let v = RealRep::parse(rep, ctx)?;
    let (name, warnings) = NamedFunctor::parse(coeff, ctx)?;
    for w in warnings {
        let _ = writeln!(err, "{w}");
    }
    let mut table = bredon_homology(&v, &name.build(ctx)?)?;
    table.identify(&Library::new(ctx));
    let nonzero: Vec<_> = table.entries.iter().filter(|e| !e.functor.is_zero()).collect();
    if json {
        let degrees: Vec<_> = nonzero
            .iter()
            .map(|e| json!({ "degree": e.degree, "name": e.name.as_ref().map(ToString::to_string), "functor": e.functor.to_json() }))
            .collect();
        let doc = json!({ "p": ctx.p, "n": ctx.n, "rep": v.to_string(), "coeff": name.to_string(), "degrees": degrees });
        return emit(out, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"));
    }
    let mut s = format!("H_*(S^{{{}}}; {}) over C_{}\n", v, name, ctx.order());
    if nonzero.is_empty() {
        s.push_str("all degrees zero\n");
    }
    for e in nonzero {
        s.push_str(&format!("\nH_{} = {}\n", e.degree, e.name.as_ref().map_or("(unnamed)".to_string(), ToString::to_string)));
        s.push_str(&lewis_diagram(&e.functor));
    }
    emit(out, &s)
}

/// `B_k` with the top transfer moved by one.
fn faulty_b(k: u32, ctx: GroupContext) -> Result<MackeyFunctor> {
    let b = make_b(k, 0, ctx);
    let m = ctx.n - 1;
    let tr = b.tr(m);
    let mut a = tr.matrix.clone();
    for i in 0..a.rows().min(a.cols()) {
        let v = a.get(i, i) + 1;
        a.set(i, i, v);
    }
    b.with_transfer(m, GroupHom::new_unchecked(tr.source.clone(), tr.target.clone(), a))
}

fn cmd_verify(ctx: GroupContext, max_dim: u64, format: &str, fault: bool, out: &mut dyn Write) -> Result<i32> {
    let json = text_or_json(format)?;
    if fault && ctx.n < 2 {
        return Err(Error::Index("--inject-fault needs n >= 2: B_k has no nonzero transfer over C_p".into()));
    }
    let identities = rep_identities_check(ctx);
    let exactness = exactness_failures(ctx);
    let report = closed_form_sweep(ctx, max_dim, |k| if fault { faulty_b(k, ctx) } else { Ok(make_b(k, 0, ctx)) });
    let mut vanishing = Vec::new();
    for v in fixed_point_free_reps(ctx, max_dim) {
        let Some(top) = v.max_lambda() else { continue };
        for k in 1..=top {
            let coeff = if fault { faulty_b(k, ctx)? } else { make_b(k, 0, ctx) };
            match cohomology_h01(&v, &coeff) {
                Ok((h0, h1)) if h0.is_zero() && h1.is_zero() => {}
                Ok(_) => vanishing.push(format!("V={v} k={k}: H^0 or H^1 nonzero")),
                Err(e) => vanishing.push(format!("V={v} k={k}: {e}")),
            }
        }
    }
    let ok = report.mismatched == 0 && identities.is_empty() && exactness.is_empty() && vanishing.is_empty();
    if json {
        let doc = json!({
            "p": ctx.p,
            "n": ctx.n,
            "maxDim": max_dim,
            "cases": report.cases,
            "matched": report.matched,
            "ambiguous": report.ambiguous,
            "mismatched": report.mismatched,
            "errors": report.errors,
            "identityFailures": identities,
            "exactnessFailures": exactness,
            "vanishingFailures": vanishing,
            "ok": ok,
        });
        emit(out, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
    } else {
        let mut s = format!(
            "C_{} max-dim {}: matched {}, ambiguous {}, mismatched {}\n",
            ctx.order(),
            max_dim,
            report.matched,
            report.ambiguous,
            report.mismatched
        );
        for c in report.cases.iter().filter(|c| c.verdict == crate::bredon::Verdict::Mismatch) {
            s.push_str(&format!("mismatch: {c}\n"));
        }
        for line in report.errors.iter().chain(&identities).chain(&exactness).chain(&vanishing) {
            s.push_str(&format!("failure: {line}\n"));
        }
        s.push_str(if ok { "ok\n" } else { "FAILED\n" });
        emit(out, &s)?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn parse_trange(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse { pos: 0, msg: format!("expected `lo:hi`, found `{text}`") };
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn cmd_chart(
    ctx: GroupContext,
    target: &str,
    trange: &str,
    path: Option<PathBuf>,
    format: &str,
    annotations: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<()> {
    let target = Target::parse(target)?;
    let format = Format::parse(format)?;
    let range = parse_trange(trange)?;
    let mut chart = e2_page(target, range, ctx)?;
    if let Some(a) = annotations {
        let text = std::fs::read_to_string(&a).map_err(|e| io_err(Some(&a), e))?;
        let list: Vec<Annotation> = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{}: {e}", a.display())))?;
        chart = chart.with_annotations(list)?;
    }
    let doc = render(&chart, format);
    match path {
        Some(p) => std::fs::write(&p, doc).map_err(|e| io_err(Some(&p), e)),
        None => emit(out, &doc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut full = vec!["slicecalc"];
        full.extend_from_slice(args);
        let code = run(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn trange_parsing() {
        assert_eq!(parse_trange("-2:54").unwrap(), (-2, 54));
        assert!(parse_trange("3").is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["vseq", "--p", "4", "--max", "3"]).0, 2);
        assert_eq!(call(&["vseq", "--n", "0", "--max", "3"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        let (code, _, err) = call(&["homology", "--p", "3", "--n", "1", "--rep", "1q0", "--coeff", "Z"]);
        assert_eq!(code, 2);
        assert!(err.contains("position"), "{err}");
    }

    #[test]
    fn vseq_empty() {
        let (code, out, _) = call(&["vseq", "--max", "0"]);
        assert_eq!((code, out.as_str()), (0, ""));
    }
}
