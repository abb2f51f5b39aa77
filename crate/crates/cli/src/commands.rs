use num_bigint::BigInt;
use serde_json::{json, Value};

use degmult::cayley::{cayley_mv_direct, cayley_mv_formula, formula_sum, formula_terms, multiplicity_cayley, Grid};
use degmult::colength::{multiplicity_oracle, Colength};
use degmult::envelope::{minimax_check, standard_simplex, tropical_piece_count};
use degmult::fans::{dual_fan, transversality_failure, oda_missing};
use degmult::genpos::{default_shift_radius, general_position_check, CheckOptions, Mode};
use degmult::json::{self as dj, GridCells};
use degmult::newton::{
    bernstein_local, homogeneous_multiplicity, multiplicity_formula, newton_polyhedron, principal_part, simplex_grid,
};
use degmult::pairs::{mixed_volume_pairs, mixed_volume_truncation, truncation_level};
use degmult::rational::{binomial, factorial, Rat};
use degmult::{Error, PolyMatrix, Result};

use crate::{Method, MvMethod, Settings};

use crate::report::Report;

fn colength_json(c: &Colength) -> Value {
    match c {
        Colength::Finite { value, degree } => json!({"value": value.to_string(), "degree": degree}),
        Colength::Unbounded { degree_cap } => json!({"unbounded": true, "degree_cap": degree_cap}),
    }
}

pub fn multiplicity(input: Value, method: Method, s: &Settings) -> Result<Report> {
    let mut rep = Report::new("multiplicity", input.clone());
    rep.method = Some(method.name().into());
    let matrix: Option<PolyMatrix> = if dj::is_matrix(&input) { Some(dj::matrix(&input)?) } else { None };
    let grid = match &matrix {
        Some(a) => a.newton_grid(),
        None => dj::polyhedron_grid(&input)?,
    };
    let mut values: Vec<Option<BigInt>> = Vec::new();
    // Under `all`, a precondition failure of one route is reported in-band.
    let mut record = |rep: &mut Report, key: &str, r: Result<BigInt>| -> Result<()> {
        match r {
            Ok(v) => {
                rep.set(key, v.to_string());
                values.push(Some(v));
            }
            Err(e) if method == Method::All && !e.is_parse() => {
                rep.set(key, json!({ "error": e.to_string() }));
                values.push(None);
            }
            Err(e) => return Err(e),
        }
        Ok(())
    };
    if matches!(method, Method::Formula | Method::All) {
        record(&mut rep, "formula", multiplicity_formula(&grid))?;
    }
    if matches!(method, Method::Cayley | Method::All) {
        record(&mut rep, "cayley", multiplicity_cayley(&grid))?;
    }
    if matches!(method, Method::Oracle | Method::All) {
        match &matrix {
            Some(a) => {
                let c = multiplicity_oracle(a, s.max_degree)?;
                rep.set("oracle", colength_json(&c));
                values.push(c.value().cloned());
            }
            None if method == Method::Oracle => {
                return Err(Error::Precondition("the oracle needs polynomial entries, not polyhedra".into()));
            }
            None => rep.set("oracle", Value::Null),
        }
    }
    if grid.len() == 1 {
        if let Ok(v) = bernstein_local(&grid[0]) {
            rep.set("local_degree", v.to_string());
        }
    }
    if values.len() > 1 {
        let agree = values.iter().all(|v| v.is_some() && *v == values[0]);
        rep.set("agree", agree);
    }
    Ok(rep)
}

pub fn genpos(input: Value, mode: Mode, s: &Settings) -> Result<Report> {
    let a = dj::matrix(&input)?;
    let mut rep = Report::new("genpos", input);
    rep.method = Some(match mode {
        Mode::Witness => "witness".into(),
        Mode::Oracle => "oracle".into(),
    });
    let opts = CheckOptions {
        mode,
        samples: s.samples,
        shift_radius: s.shift_radius,
        seed: s.seed,
        degree_cap: s.max_degree,
    };
    let verdict = general_position_check(&a, &opts)?;
    if mode == Mode::Witness {
        let radius = s.shift_radius.unwrap_or_else(|| default_shift_radius(&a.newton_grid()));
        rep.set("shift_radius", radius);
        rep.set("seed", s.seed.to_string());
    }
    if let Value::Object(map) = dj::verdict_json(&verdict) {
        rep.result.extend(map);
    }
    Ok(rep)
}

fn pairs_input(input: &Value) -> Result<Vec<degmult::BoundedPair>> {
    let list = match input.get("pairs") {
        Some(p) => p,
        None => input,
    };
    dj::as_array(list, "pairs")?.iter().map(dj::pair).collect()
}

pub fn mixed_volume(input: Value, method: MvMethod) -> Result<Report> {
    let pairs = pairs_input(&input)?;
    let mut rep = Report::new("mixed-volume", input);
    rep.method = Some(method.name().into());
    let q = pairs.len();
    let mut values: Vec<Rat> = Vec::new();
    if matches!(method, MvMethod::Counts | MvMethod::All) {
        let v = mixed_volume_pairs(&pairs)?;
        rep.set("counts", dj::rat_json(&v));
        values.push(v);
    }
    if matches!(method, MvMethod::Truncation | MvMethod::All) {
        let level = truncation_level(&pairs);
        let v = mixed_volume_truncation(&pairs, level)?;
        rep.set("truncation", dj::rat_json(&v));
        rep.set("level", level);
        values.push(v);
    }
    let mv = values[0].clone();
    rep.set("mixed_volume", dj::rat_json(&mv));
    rep.set("normalized", dj::rat_json(&(mv * Rat::from_integer(factorial(q)))));
    if values.len() > 1 {
        rep.set("agree", values.iter().all(|v| *v == values[0]));
    }
    Ok(rep)
}

pub fn cayley_mv(input: Value) -> Result<Report> {
    let grid = match dj::grid(&input)? {
        GridCells::Pairs(cells) => Grid::from_pairs(cells)?,
        GridCells::Polyhedra(cells) => {
            let nonempty = || cells.iter().flatten().flatten();
            if nonempty().all(|p| p.is_orthant_kind()) {
                Grid::orthant(cells)?
            } else if nonempty().all(|p| p.is_bounded()) {
                Grid::bounded(cells)?
            } else {
                return Err(Error::Precondition("entries must be all orthant polyhedra or all bounded".into()));
            }
        }
    };
    let mut rep = Report::new("cayley-mv", input);
    rep.method = Some(format!("{:?}", grid.kind()).to_lowercase());
    let formula = cayley_mv_formula(&grid)?;
    let direct = cayley_mv_direct(&grid)?;
    rep.set("formula", dj::rat_json(&formula));
    rep.set("direct", dj::rat_json(&direct));
    rep.set("normalized", formula_sum(&grid)?.to_string());
    rep.set("terms", formula_terms(&grid)?.len());
    rep.set("agree", formula == direct);
    Ok(rep)
}

pub fn homogeneous(input: Value) -> Result<Report> {
    let d = dj::int_matrix(input.get("degrees").unwrap_or(&input), "degrees")?;
    let n = d.len();
    let k = d.first().map_or(0, |r| r.len());
    if n == 0 || d.iter().any(|r| r.len() != k) {
        return Err(Error::Parse("degrees must be an n × k integer array".into()));
    }
    let m = match input.get("m") {
        Some(m) => dj::as_usize(m, "m")?,
        None => (k + 1).saturating_sub(n),
    };
    let mut rep = Report::new("homogeneous", input);
    let value = homogeneous_multiplicity(&d, m)?;
    rep.set("multiplicity", value.to_string());
    if k + 1 == n + m {
        let simplex = multiplicity_formula(&simplex_grid(&d)?)?;
        rep.set("simplex_formula", simplex.to_string());
        rep.set("agree", simplex == value);
    }
    Ok(rep)
}

pub fn newton(input: Value) -> Result<Report> {
    let a = if dj::is_matrix(&input) {
        dj::matrix(&input)?
    } else {
        PolyMatrix::new(vec![vec![dj::polynomial(&input)?]])?
    };
    let mut rep = Report::new("newton", input);
    let polys: Vec<Vec<Value>> = a
        .entries()
        .iter()
        .map(|r| r.iter().map(|f| dj::polyhedron_json(&newton_polyhedron(f))).collect())
        .collect();
    let parts: Vec<Vec<Value>> = a
        .entries()
        .iter()
        .map(|r| r.iter().map(|f| principal_part(f).map(|p| dj::polynomial_json(&p))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let text: Vec<Vec<Value>> =
        a.entries().iter().map(|r| r.iter().map(|f| Value::String(newton_polyhedron(f).to_string())).collect()).collect();
    rep.set("newton_polyhedra", polys);
    rep.set("principal_parts", parts);
    rep.set("summary", text);
    Ok(rep)
}

pub fn oda(input: Value) -> Result<Report> {
    let polys: Vec<_> = dj::as_array(
        input.get("polytopes").ok_or_else(|| Error::Parse("missing field \"polytopes\"".into()))?,
        "polytopes",
    )?
    .iter()
    .map(dj::polyhedron)
    .collect::<Result<_>>()?;
    let mut rep = Report::new("oda", input.clone());
    let missing = oda_missing(&polys)?;
    rep.set("identity_holds", missing.is_empty());
    rep.set("missing", json!(missing));
    if let Some(sh) = input.get("shifts") {
        let shifts = dj::rat_matrix(sh, "shifts")?;
        let fans = polys.iter().map(dual_fan).collect::<Result<Vec<_>>>()?;
        let failure = transversality_failure(&fans, &shifts)?;
        rep.set("transversal", failure.is_none());
        if let Some(tuple) = failure {
            let cones: Vec<Value> =
                tuple.iter().enumerate().map(|(i, &c)| dj::cone_json(&fans[i].cones[c].cone)).collect();
            rep.set("failing_cones", cones);
        }
    }
    Ok(rep)
}

fn functions(input: &Value) -> Result<Vec<Vec<Rat>>> {
    dj::rat_matrix(input.get("functions").ok_or_else(|| Error::Parse("missing field \"functions\"".into()))?, "functions")
}

pub fn minimax(input: Value) -> Result<Report> {
    let ls = functions(&input)?;
    let a = dj::int_vec(input.get("point").ok_or_else(|| Error::Parse("missing field \"point\"".into()))?, "point")?;
    let vertices = match input.get("vertices") {
        Some(v) => dj::int_matrix(v, "vertices")?,
        None => standard_simplex(a.len()),
    };
    let mut rep = Report::new("minimax", input);
    let r = minimax_check(&ls, &vertices, &a)?;
    rep.set("envelope", dj::rat_json(&r.envelope));
    rep.set("vertex_max", r.vertex_max.as_ref().map_or(Value::Null, dj::rat_json));
    rep.set("equal", r.equal);
    Ok(rep)
}

pub fn pieces(input: Value) -> Result<Report> {
    let ls = functions(&input)?;
    let q = match input.get("q") {
        Some(q) => dj::as_usize(q, "q")?,
        None => ls.first().map_or(0, |l| l.len()),
    };
    let mut rep = Report::new("pieces", input);
    let count = tropical_piece_count(&ls, q)?;
    rep.set("pieces", count);
    rep.set("expected", binomial((ls.len() + q) as i64, q as i64).to_string());
    Ok(rep)
}
