//! JSON interchange formats. Numbers that may be fractional are written as
//! rational strings `"p"` or `"p/q"`; recession axes are 1-based.
//!
//! * polyhedron: `{"dim": q, "generators": [[ints]], "recession_axes": [ints]}`
//! * pair: `{"gamma": polyhedron, "delta": polyhedron}`
//! * grid: `{"n": n, "k": k, "entries": [[polyhedron | pair | null]]}`
//! * polynomial: `{"m": m, "terms": [{"exp": [ints], "re": "p/q", "im": "p/q"}]}`
//! * matrix: `{"n": n, "k": k, "entries": [[polynomial]]}`
//! * cone: `{"dim": q, "generators": [[rationals]]}`; output adds `"cone_dim"`

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fans::RationalCone;
use crate::genpos::{FaceCollection, Verdict};
use crate::pairs::BoundedPair;
use crate::poly::{PolyMatrix, Polynomial};
use crate::polyhedron::LatticePolyhedron;
use crate::rational::{fmt_rat, parse_rat, Rat};
use crate::scalar::Scalar;

fn bad(what: &str) -> Error {
    Error::Parse(what.to_string())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing field {key:?}")))
}

pub fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(&format!("{what} must be a non-negative integer")))
}

pub fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(&format!("{what} must be an integer")))
}

pub fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(&format!("{what} must be an array")))
}

pub fn int_vec(v: &Value, what: &str) -> Result<Vec<i64>> {
    as_array(v, what)?.iter().map(|x| as_i64(x, what)).collect()
}

pub fn int_matrix(v: &Value, what: &str) -> Result<Vec<Vec<i64>>> {
    as_array(v, what)?.iter().map(|r| int_vec(r, what)).collect()
}

/// A rational given as a string `"p/q"` or as a JSON integer.
pub fn rational(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad(&format!("expected a rational, found {v}"))),
    }
}

pub fn rat_vec(v: &Value, what: &str) -> Result<Vec<Rat>> {
    as_array(v, what)?.iter().map(rational).collect()
}

pub fn rat_matrix(v: &Value, what: &str) -> Result<Vec<Vec<Rat>>> {
    as_array(v, what)?.iter().map(|r| rat_vec(r, what)).collect()
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn polyhedron(v: &Value) -> Result<LatticePolyhedron> {
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let gens = int_matrix(field(v, "generators")?, "generators")?;
    if gens.iter().any(|g| g.len() != dim) {
        return Err(bad("generator length differs from dim"));
    }
    let axes = match v.get("recession_axes") {
        Some(a) => int_vec(a, "recession_axes")?,
        None => Vec::new(),
    };
    let mut rec = Vec::with_capacity(axes.len());
    for a in axes {
        if a < 1 || a as usize > dim {
            return Err(bad(&format!("recession axis {a} outside 1..={dim}")));
        }
        rec.push(a as usize - 1);
    }
    LatticePolyhedron::new(dim, gens, rec)
}

pub fn polyhedron_json(p: &LatticePolyhedron) -> Value {
    json!({
        "dim": p.dim(),
        "generators": p.generators(),
        "recession_axes": p.recession_axes().iter().map(|s| s + 1).collect::<Vec<_>>(),
    })
}

pub fn pair(v: &Value) -> Result<BoundedPair> {
    BoundedPair::new(polyhedron(field(v, "gamma")?)?, polyhedron(field(v, "delta")?)?)
}

pub fn pair_json(p: &BoundedPair) -> Value {
    json!({"gamma": polyhedron_json(p.gamma()), "delta": polyhedron_json(p.delta())})
}

/// Grid cells, each a polyhedron, a pair, or `None` for the empty entry.
#[derive(Debug, Clone)]
pub enum GridCells {
    Polyhedra(Vec<Vec<Option<LatticePolyhedron>>>),
    Pairs(Vec<Vec<Option<BoundedPair>>>),
}

fn grid_shape(v: &Value) -> Result<(usize, usize, &Vec<Value>)> {
    let entries = as_array(field(v, "entries")?, "entries")?;
    let n = match v.get("n") {
        Some(n) => as_usize(n, "n")?,
        None => entries.len(),
    };
    let k = match v.get("k") {
        Some(k) => as_usize(k, "k")?,
        None => entries.first().and_then(|r| r.as_array()).map_or(0, |r| r.len()),
    };
    if entries.len() != n || entries.iter().any(|r| r.as_array().is_none_or(|r| r.len() != k)) {
        return Err(bad("entries do not form an n × k array"));
    }
    Ok((n, k, entries))
}

pub fn grid(v: &Value) -> Result<GridCells> {
    let (_, _, entries) = grid_shape(v)?;
    let cells: Vec<&Value> = entries.iter().flat_map(|r| r.as_array().unwrap()).collect();
    let is_pair = cells.iter().any(|c| c.get("gamma").is_some());
    if is_pair {
        let rows = entries
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(|c| if c.is_null() { Ok(None) } else { pair(c).map(Some) }).collect())
            .collect::<Result<_>>()?;
        Ok(GridCells::Pairs(rows))
    } else {
        let rows = entries
            .iter()
            .map(|r| {
                r.as_array().unwrap().iter().map(|c| if c.is_null() { Ok(None) } else { polyhedron(c).map(Some) }).collect()
            })
            .collect::<Result<_>>()?;
        Ok(GridCells::Polyhedra(rows))
    }
}

/// A grid in which every entry is a polyhedron.
pub fn polyhedron_grid(v: &Value) -> Result<Vec<Vec<LatticePolyhedron>>> {
    match grid(v)? {
        GridCells::Polyhedra(rows) => rows
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.ok_or_else(|| bad("null entry where a polyhedron is required"))).collect())
            .collect(),
        GridCells::Pairs(_) => Err(bad("expected polyhedra, found pairs")),
    }
}

pub fn grid_json(cells: &[Vec<LatticePolyhedron>]) -> Value {
    let entries: Vec<Vec<Value>> = cells.iter().map(|r| r.iter().map(polyhedron_json).collect()).collect();
    json!({"n": cells.len(), "k": cells.first().map_or(0, |r| r.len()), "entries": entries})
}

pub fn scalar(v: &Value) -> Result<Scalar> {
    let re = rational(field(v, "re")?)?;
    let im = match v.get("im") {
        Some(x) => rational(x)?,
        None => Rat::from_integer(0.into()),
    };
    Ok(Scalar::new(re, im))
}

pub fn scalar_json(s: &Scalar) -> Value {
    json!({"re": rat_json(&s.re), "im": rat_json(&s.im)})
}

pub fn polynomial(v: &Value) -> Result<Polynomial> {
    let m = as_usize(field(v, "m")?, "m")?;
    let terms = as_array(field(v, "terms")?, "terms")?
        .iter()
        .map(|t| {
            let e = int_vec(field(t, "exp")?, "exp")?;
            if e.len() != m {
                return Err(bad("exponent length differs from m"));
            }
            Ok((e, scalar(t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(m, terms)
}

pub fn polynomial_json(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(e, c)| json!({"exp": e, "re": rat_json(&c.re), "im": rat_json(&c.im)}))
        .collect();
    json!({"m": p.num_vars(), "terms": terms})
}

pub fn is_matrix(v: &Value) -> bool {
    v.get("entries")
        .and_then(|e| e.as_array())
        .and_then(|rows| rows.first())
        .and_then(|r| r.as_array())
        .and_then(|r| r.first())
        .is_some_and(|c| c.get("terms").is_some())
}

pub fn matrix(v: &Value) -> Result<PolyMatrix> {
    let (_, _, entries) = grid_shape(v)?;
    let rows = entries
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(polynomial).collect())
        .collect::<Result<_>>()?;
    PolyMatrix::new(rows)
}

pub fn matrix_json(a: &PolyMatrix) -> Value {
    let entries: Vec<Vec<Value>> = a.entries().iter().map(|r| r.iter().map(polynomial_json).collect()).collect();
    json!({"n": a.rows(), "k": a.cols(), "entries": entries})
}

pub fn cone(v: &Value) -> Result<RationalCone> {
    let q = as_usize(field(v, "dim")?, "dim")?;
    RationalCone::new(q, rat_matrix(field(v, "generators")?, "generators")?)
}

pub fn cone_json(c: &RationalCone) -> Value {
    let gens: Vec<Vec<Value>> = c.generators().iter().map(|g| g.iter().map(rat_json).collect()).collect();
    json!({"dim": c.ambient_dim(), "cone_dim": c.dim(), "generators": gens})
}

pub fn collection_json(c: &FaceCollection) -> Value {
    let cells: Vec<Vec<Value>> =
        c.cells.iter().map(|r| r.iter().map(|f| f.as_ref().map_or(Value::Null, polyhedron_json)).collect()).collect();
    Value::Array(cells.into_iter().map(Value::Array).collect())
}

pub fn verdict_json(v: &Verdict) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), json!(v.name()));
    match v {
        Verdict::Fail { collection, point } => {
            out.insert(
                "witness".into(),
                json!({
                    "collection": collection_json(collection),
                    "point": point.iter().map(scalar_json).collect::<Vec<_>>(),
                }),
            );
        }
        Verdict::Inconclusive { collections, points } => {
            out.insert("collections".into(), json!(collections));
            out.insert("points".into(), json!(points));
        }
        Verdict::InGeneralPosition { multiplicity } => {
            out.insert("multiplicity".into(), json!(multiplicity.to_string()));
        }
        Verdict::NotInGeneralPosition { oracle, formula } => {
            out.insert("oracle".into(), json!(oracle.to_string()));
            out.insert("formula".into(), json!(formula.to_string()));
        }
        Verdict::Unresolved { formula, degree_cap } => {
            out.insert("formula".into(), json!(formula.to_string()));
            out.insert("degree_cap".into(), json!(degree_cap));
        }
    }
    Value::Object(out)
}
