//! Human-readable dump in CPLEX LP format (`Maximize` / `Subject To` /
//! `Bounds` / `End`). Coefficients are printed with shortest round-trip
//! precision; zero coefficients are omitted; free variables are listed as
//! `name free` because LP-format variables default to `>= 0`.

use std::fmt::Write;

use super::LpModel;

fn term(out: &mut String, first: &mut bool, coeff: f64, name: &str) {
    if coeff == 0.0 {
        return;
    }
    let sign = if coeff < 0.0 { "-" } else { "+" };
    let mag = coeff.abs();
    if *first {
        if coeff < 0.0 {
            out.push_str(" -");
        }
    } else {
        let _ = write!(out, " {sign}");
    }
    if mag == 1.0 {
        let _ = write!(out, " {name}");
    } else {
        let _ = write!(out, " {mag:?} {name}");
    }
    *first = false;
}

fn expr(out: &mut String, coeffs: &[f64], names: &[String]) {
    let mut first = true;
    for (a, name) in coeffs.iter().zip(names) {
        term(out, &mut first, *a, name);
    }
    if first {
        out.push_str(" 0 ");
        out.push_str(&names[0]);
    }
}

pub fn write_lp_format(model: &LpModel) -> String {
    let names = model.names();
    let mut out = String::from("\\ dispersion LP model\nMaximize\n obj:");
    if names.is_empty() {
        out.push_str("\nSubject To\nEnd\n");
        return out;
    }
    expr(&mut out, model.objective(), names);
    out.push_str("\nSubject To\n");
    for (r, c) in model.constraints().iter().enumerate() {
        match &c.name {
            Some(n) => {
                let _ = write!(out, " {n}:");
            }
            None => {
                let _ = write!(out, " c{r}:");
            }
        }
        expr(&mut out, &c.coeffs, names);
        let _ = writeln!(out, " {} {:?}", c.relation.symbol(), c.rhs);
    }
    out.push_str("Bounds\n");
    for (j, name) in names.iter().enumerate() {
        let (lo, hi) = model.bounds(j);
        match (lo.is_finite(), hi.is_finite()) {
            (false, false) => {
                let _ = writeln!(out, " {name} free");
            }
            (true, true) => {
                let _ = writeln!(out, " {lo:?} <= {name} <= {hi:?}");
            }
            (true, false) => {
                let _ = writeln!(out, " {name} >= {lo:?}");
            }
            (false, true) => {
                let _ = writeln!(out, " -inf <= {name} <= {hi:?}");
            }
        }
    }
    out.push_str("End\n");
    out
}
