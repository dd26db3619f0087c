//! CPLEX-style LP text dump of a master model, for cross-checking with
//! external solvers. Objective coefficients are written as decimals with
//! the exact fraction in a trailing comment.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use super::master::MasterModel;
use crate::fraction;

pub fn write_lp(model: &MasterModel) -> String {
    let mut out = String::new();
    writeln!(out, "\\ co-3-plex master: {} rows, {} columns", model.row_count(), model.columns().len()).unwrap();
    out.push_str("Maximize\n obj:");
    let mut any = false;
    for c in model.columns() {
        if c.objective.is_zero() {
            continue;
        }
        let approx = c.objective.to_f64().unwrap_or(f64::NAN);
        write!(out, " {} {approx} {}", if approx < 0.0 { "-" } else { "+" }, c.name()).unwrap();
        any = true;
    }
    if !any {
        out.push_str(" 0 ");
        out.push_str(model.columns().first().map_or("x", |c| c.kind.prefix()));
    }
    out.push('\n');
    for c in model.columns() {
        if !c.objective.is_zero() && !c.objective.is_integer() {
            writeln!(out, "\\ {} = {}", c.name(), fraction(&c.objective)).unwrap();
        }
    }
    out.push_str("Subject To\n");
    let mut rows: Vec<Vec<(i64, String)>> = vec![Vec::new(); model.row_count()];
    for c in model.columns() {
        for &(r, a) in &c.coeffs {
            rows[r].push((a, c.name()));
        }
    }
    let k = model.cliques().len();
    for (r, terms) in rows.iter().enumerate() {
        let name = if r < k { format!("clique{}", r + 1) } else { format!("star{}", r - k + 1) };
        write!(out, " {name}:").unwrap();
        if terms.is_empty() {
            out.push_str(" 0 x");
        }
        for (a, v) in terms {
            write!(out, " {} {} {v}", if *a < 0 { "-" } else { "+" }, a.abs()).unwrap();
        }
        writeln!(out, " <= {}", model.rhs(r)).unwrap();
    }
    out.push_str("End\n");
    out.replace(" + -", " - ").replace(" - -", " - ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::chordal_cliques;
    use crate::lp::build_master;
    use crate::Graph;

    #[test]
    fn edge_dump() {
        let g = Graph::path(2);
        let m = build_master(&g, &chordal_cliques(&g).unwrap(), &[], &[[0, 1].into()]).unwrap();
        let text = write_lp(&m);
        assert!(text.contains(" clique1: + 1 x_1 + 1 x_2 - 1 p_1_2 <= 1"), "{text}");
        assert!(text.contains(" star1: - 1 x_1 + 1 p_1_2 <= 0"), "{text}");
        assert!(text.ends_with("End\n"));
    }
}
