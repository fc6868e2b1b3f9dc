//! Line-oriented input format describing an algebra with a structure pack,
//! plus the canonical exporter. `#` starts a comment. Lines:
//!
//! ```text
//! dim <odd integer>
//! params <ident>*
//! bracket <i> <j> = <linear combination of e1..eN>
//! phi <j> = <linear combination>
//! xi = <linear combination>
//! eta = <expr>*
//! metric diag <expr>*
//! metric row <i> <expr>*
//! ```
//!
//! Unlisted brackets and phi columns are zero; `bracket j i` follows by
//! antisymmetry and restating it is an error, as is any conflicting metric
//! entry. List entries (`eta`, `metric`) are whitespace separated, so each
//! must be written without internal spaces.

use crate::error::{Error, Result};
use crate::exact::{parse_combination, parse_expr, ParamSpace, Rat, Scalar};
use crate::liealg::{LieAlgebraSpec, Vector};
use crate::structure::{Matrix, StructurePack};
use std::collections::BTreeMap;

/// Evaluate every coefficient at the assignment, producing a fully
/// rational algebra and structure over the empty parameter space. The
/// assignment must cover every parameter that actually appears.
pub fn specialize(
    alg: &LieAlgebraSpec,
    pack: &StructurePack,
    map: &BTreeMap<String, Rat>,
) -> Result<(LieAlgebraSpec, StructurePack)> {
    let space = ParamSpace::empty();
    let n = alg.dim();
    let ev = |s: &Scalar| -> Result<Scalar> { Ok(Scalar::from_rat(&space, s.eval_rat(map)?)) };
    let mut c = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c.push(ev(alg.c(i, j, k))?);
            }
        }
    }
    let alg2 = LieAlgebraSpec::new(n, space.clone(), c)?;
    let mut phi = Matrix::zeros(&space, n);
    let mut g = Matrix::zeros(&space, n);
    for i in 0..n {
        for j in 0..n {
            phi.set(i, j, ev(pack.phi.get(i, j))?);
            g.set(i, j, ev(pack.g.get(i, j))?);
        }
    }
    let xi = Vector {
        comps: pack.xi.comps.iter().map(&ev).collect::<Result<Vec<_>>>()?,
    };
    let eta = pack.eta.iter().map(&ev).collect::<Result<Vec<_>>>()?;
    let pack2 = StructurePack::new(space, phi, xi, eta, g)?;
    Ok((alg2, pack2))
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::SpecFile {
        line,
        msg: msg.into(),
    }
}

fn wrap(line: usize, e: Error) -> Error {
    match e {
        Error::SpecFile { .. } => e,
        other => err(line, other.to_string()),
    }
}

fn parse_index(tok: &str, dim: usize, line: usize) -> Result<usize> {
    let k: usize = tok
        .parse()
        .map_err(|_| err(line, format!("expected a basis index, got `{tok}`")))?;
    if k == 0 || k > dim {
        return Err(err(line, format!("basis index out of range: {k}")));
    }
    Ok(k - 1)
}

pub fn parse_spec(text: &str) -> Result<(LieAlgebraSpec, StructurePack)> {
    // strip comments, keep line numbers
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut dim: Option<(usize, usize)> = None;
    let mut params: Option<(usize, Vec<String>)> = None;
    for (no, line) in &lines {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("dim") => {
                if dim.is_some() {
                    return Err(err(*no, "duplicate dim line"));
                }
                let tok = it
                    .next()
                    .ok_or_else(|| err(*no, "dim requires an integer"))?;
                let d: usize = tok
                    .parse()
                    .map_err(|_| err(*no, format!("invalid dimension `{tok}`")))?;
                if d == 0 || d % 2 == 0 {
                    return Err(err(*no, "dimension must be a positive odd integer"));
                }
                if it.next().is_some() {
                    return Err(err(*no, "trailing input after dim"));
                }
                dim = Some((*no, d));
            }
            Some("params") => {
                if params.is_some() {
                    return Err(err(*no, "duplicate params line"));
                }
                params = Some((*no, it.map(str::to_string).collect()));
            }
            _ => {}
        }
    }
    let (_, n) = dim.ok_or_else(|| err(1, "missing dim line"))?;
    let space = match params {
        Some((no, names)) => ParamSpace::new(names.iter().map(String::as_str))
            .map_err(|e| wrap(no, e))?,
        None => ParamSpace::new(std::iter::empty::<&str>()).unwrap(),
    };

    let mut c = vec![vec![vec![Scalar::zero(&space); n]; n]; n];
    let mut bracket_seen = vec![vec![false; n]; n];
    let mut phi = Matrix::zeros(&space, n);
    let mut phi_seen = vec![false; n];
    let mut xi: Option<Vector> = None;
    let mut eta: Option<Vec<Scalar>> = None;
    let mut g = Matrix::zeros(&space, n);
    let mut g_seen = vec![vec![false; n]; n];

    for (no, line) in &lines {
        let mut it = line.split_whitespace();
        let keyword = it.next().unwrap();
        match keyword {
            "dim" | "params" => {}
            "bracket" => {
                let i = parse_index(
                    it.next().ok_or_else(|| err(*no, "bracket requires two indices"))?,
                    n,
                    *no,
                )?;
                let j = parse_index(
                    it.next().ok_or_else(|| err(*no, "bracket requires two indices"))?,
                    n,
                    *no,
                )?;
                if i == j {
                    return Err(err(*no, "bracket of a vector with itself is zero"));
                }
                let rest = expect_eq_rest(line, *no)?;
                if bracket_seen[i][j] || bracket_seen[j][i] {
                    return Err(err(*no, format!("duplicate bracket ({},{})", i + 1, j + 1)));
                }
                let comps = parse_combination(rest, &space, n).map_err(|e| wrap(*no, e))?;
                for (k, v) in comps.into_iter().enumerate() {
                    c[j][i][k] = -&v;
                    c[i][j][k] = v;
                }
                bracket_seen[i][j] = true;
                bracket_seen[j][i] = true;
            }
            "phi" => {
                let j = parse_index(
                    it.next().ok_or_else(|| err(*no, "phi requires a column index"))?,
                    n,
                    *no,
                )?;
                if phi_seen[j] {
                    return Err(err(*no, format!("duplicate phi column {}", j + 1)));
                }
                let rest = expect_eq_rest(line, *no)?;
                let comps = parse_combination(rest, &space, n).map_err(|e| wrap(*no, e))?;
                for (i, v) in comps.into_iter().enumerate() {
                    phi.set(i, j, v);
                }
                phi_seen[j] = true;
            }
            "xi" => {
                if xi.is_some() {
                    return Err(err(*no, "duplicate xi line"));
                }
                let rest = expect_eq_rest(line, *no)?;
                let comps = parse_combination(rest, &space, n).map_err(|e| wrap(*no, e))?;
                let mut v = Vector::zero(&space, n);
                v.comps = comps;
                xi = Some(v);
            }
            "eta" => {
                if eta.is_some() {
                    return Err(err(*no, "duplicate eta line"));
                }
                let rest = expect_eq_rest(line, *no)?;
                let entries: Vec<&str> = rest.split_whitespace().collect();
                if entries.len() != n {
                    return Err(err(*no, format!("eta requires {n} entries")));
                }
                let mut comps = Vec::with_capacity(n);
                for e in entries {
                    comps.push(parse_expr(e, &space).map_err(|e| wrap(*no, e))?);
                }
                eta = Some(comps);
            }
            "metric" => {
                let form = it
                    .next()
                    .ok_or_else(|| err(*no, "metric requires `diag` or `row`"))?;
                match form {
                    "diag" => {
                        let entries: Vec<&str> = it.collect();
                        if entries.len() != n {
                            return Err(err(*no, format!("metric diag requires {n} entries")));
                        }
                        for (i, e) in entries.into_iter().enumerate() {
                            set_metric(&mut g, &mut g_seen, i, i,
                                parse_expr(e, &space).map_err(|er| wrap(*no, er))?, *no)?;
                        }
                        // a diag line pins every off-diagonal entry to zero
                        for i in 0..n {
                            for j in 0..n {
                                if i != j {
                                    set_metric(
                                        &mut g,
                                        &mut g_seen,
                                        i,
                                        j,
                                        Scalar::zero(&space),
                                        *no,
                                    )?;
                                }
                            }
                        }
                    }
                    "row" => {
                        let i = parse_index(
                            it.next()
                                .ok_or_else(|| err(*no, "metric row requires an index"))?,
                            n,
                            *no,
                        )?;
                        let entries: Vec<&str> = it.collect();
                        if entries.len() != n {
                            return Err(err(*no, format!("metric row requires {n} entries")));
                        }
                        for (j, e) in entries.into_iter().enumerate() {
                            let v = parse_expr(e, &space).map_err(|er| wrap(*no, er))?;
                            set_metric(&mut g, &mut g_seen, i, j, v, *no)?;
                        }
                    }
                    other => {
                        return Err(err(*no, format!("unknown metric form `{other}`")))
                    }
                }
            }
            other => return Err(err(*no, format!("unknown keyword `{other}`"))),
        }
    }

    let xi = xi.ok_or_else(|| err(lines.len(), "missing xi line"))?;
    let eta = eta.ok_or_else(|| err(lines.len(), "missing eta line"))?;
    for i in 0..n {
        for j in 0..n {
            if !g_seen[i][j] && !g_seen[j][i] {
                return Err(err(
                    lines.len(),
                    format!("metric entry ({},{}) not specified", i + 1, j + 1),
                ));
            }
            if !g_seen[i][j] {
                let v = g.get(j, i).clone();
                g.set(i, j, v);
            }
        }
    }

    let flat: Vec<Scalar> = c
        .into_iter()
        .flat_map(|p| p.into_iter().flatten())
        .collect();
    let alg = LieAlgebraSpec::new(n, space.clone(), flat)?;
    let pack = StructurePack::new(space, phi, xi, eta, g)?;
    Ok((alg, pack))
}

/// Symmetric completion with conflict detection.
fn set_metric(
    g: &mut Matrix,
    seen: &mut [Vec<bool>],
    i: usize,
    j: usize,
    v: Scalar,
    line: usize,
) -> Result<()> {
    if seen[i][j] {
        if g.get(i, j) != &v {
            return Err(err(
                line,
                format!("conflicting metric entries at ({},{})", i + 1, j + 1),
            ));
        }
        return Ok(());
    }
    if seen[j][i] && g.get(j, i) != &v {
        return Err(err(
            line,
            format!(
                "metric entry ({},{}) conflicts with its transpose",
                i + 1,
                j + 1
            ),
        ));
    }
    g.set(i, j, v);
    seen[i][j] = true;
    Ok(())
}

fn expect_eq_rest<'a>(line: &'a str, no: usize) -> Result<&'a str> {
    match line.split_once('=') {
        Some((_, rest)) if !rest.trim().is_empty() => Ok(rest.trim()),
        _ => Err(err(no, "expected `= <expression>`")),
    }
}

fn fmt_expr(s: &Scalar) -> String {
    let text: String = s.to_string().split_whitespace().collect();
    text
}

fn fmt_combination(comps: &[Scalar], space: &std::sync::Arc<ParamSpace>) -> String {
    let one = Scalar::one(space);
    let minus_one = -&one;
    let mut pieces = Vec::new();
    for (k, v) in comps.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        if v == &one {
            pieces.push(format!("e{}", k + 1));
        } else if v == &minus_one {
            pieces.push(format!("-e{}", k + 1));
        } else {
            pieces.push(format!("({})*e{}", v, k + 1));
        }
    }
    if pieces.is_empty() {
        "0*e1".to_string()
    } else {
        pieces.join(" + ")
    }
}

/// Canonical export; `parse_spec(export_spec(alg, s))` reproduces the input
/// componentwise.
pub fn export_spec(alg: &LieAlgebraSpec, s: &StructurePack) -> String {
    let n = s.dim();
    let space = s.space();
    let mut out = String::new();
    out.push_str(&format!("dim {n}\n"));
    let names = space.names();
    if !names.is_empty() {
        out.push_str(&format!("params {}\n", names.join(" ")));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let v = alg.bracket_basis(i, j);
            if !v.is_zero() {
                out.push_str(&format!(
                    "bracket {} {} = {}\n",
                    i + 1,
                    j + 1,
                    fmt_combination(&v.comps, space)
                ));
            }
        }
    }
    for j in 0..n {
        let col: Vec<Scalar> = (0..n).map(|i| s.phi.get(i, j).clone()).collect();
        if col.iter().any(|v| !v.is_zero()) {
            out.push_str(&format!("phi {} = {}\n", j + 1, fmt_combination(&col, space)));
        }
    }
    out.push_str(&format!("xi = {}\n", fmt_combination(&s.xi.comps, space)));
    let eta: Vec<String> = s.eta.iter().map(fmt_expr).collect();
    out.push_str(&format!("eta = {}\n", eta.join(" ")));
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || s.g.get(i, j).is_zero()));
    if diagonal {
        let d: Vec<String> = (0..n).map(|i| fmt_expr(s.g.get(i, i))).collect();
        out.push_str(&format!("metric diag {}\n", d.join(" ")));
    } else {
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| fmt_expr(s.g.get(i, j))).collect();
            out.push_str(&format!("metric row {} {}\n", i + 1, row.join(" ")));
        }
    }
    out
}
