use super::functor::MackeyFunctor;
use crate::linalg::GroupHom;

fn orbit_name(p: u64, n: u32, m: u32) -> String {
    match m {
        0 => "G/e".to_string(),
        _ if m == n => "G/G".to_string(),
        _ => format!("G/C_{}", p.pow(m)),
    }
}

fn label(h: &GroupHom) -> String {
    if h.source.is_zero() || h.target.is_zero() {
        return "0".into();
    }
    match MackeyFunctor::scalar_of(h) {
        Some(s) => s.to_string(),
        None => h.matrix.to_string(),
    }
}

/// Text Lewis diagram, `G/G` at the top, with restriction and transfer labels between levels.
pub fn lewis_diagram(m: &MackeyFunctor) -> String {
    let ctx = m.ctx();
    let canon = m.canonical();
    let width = ctx.levels().map(|l| orbit_name(ctx.p, ctx.n, l).len()).max().unwrap_or(3);
    let mut out = String::new();
    for l in ctx.levels().rev() {
        let name = orbit_name(ctx.p, ctx.n, l);
        out.push_str(&format!("{name:<width$}  {}", canon.level(l)));
        let w = canon.weyl(l);
        if !w.is_identity() {
            out.push_str(&format!("  (gamma: {})", w.matrix));
        }
        out.push('\n');
        if l > 0 {
            let pad = " ".repeat(width);
            out.push_str(&format!("{pad}  | res {}  ^ tr {}\n", label(canon.res(l - 1)), label(canon.tr(l - 1))));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{make_b, make_constant_z, GroupContext};

    #[test]
    fn constant_z_for_c_p() {
        let c = GroupContext::new(5, 1).unwrap();
        let text = lewis_diagram(&make_constant_z(c));
        assert_eq!(text, "G/G  Z\n     | res 1  ^ tr 5\nG/e  Z\n");
    }

    #[test]
    fn b11_for_c27() {
        let c = GroupContext::new(3, 3).unwrap();
        let text = lewis_diagram(&make_b(1, 1, c));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "G/G    Z/3");
        assert_eq!(lines[1], "       | res 1  ^ tr 0");
        assert_eq!(lines[2], "G/C_9  Z/3");
        assert_eq!(lines[3], "       | res 0  ^ tr 0");
        assert_eq!(lines[4], "G/C_3  0");
        assert_eq!(lines[6], "G/e    0");
    }
}
